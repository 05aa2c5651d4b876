#pragma once

#include <algorithm>
#include <optional>
#include <vector>

namespace frugal {

template <class Cost>
struct FlowArc {
    int from = 0;
    int to = 0;
    int capacity = 1;
    Cost cost{};
};

template <class Cost>
struct MinCostFlowResult {
    int flow = 0;
    Cost cost{};
    std::vector<int> arc_flow;
};

/// Successive shortest augmenting paths with Dijkstra on reduced costs.
///
/// Arc costs must be non-negative. Sends up to `limit` units from s to t (as much
/// as possible when limit < 0). `Cost` needs +, -, < and a zero default value;
/// with costs that are distinct on every arc subset (symbolic perturbation) the
/// optimal arc set is unique, so the result does not depend on path order.
template <class Cost>
MinCostFlowResult<Cost> min_cost_flow(int vertex_count, const std::vector<FlowArc<Cost>>& arcs, int s, int t,
                                      int limit)
{
    struct Residual {
        int to;
        int capacity;
        Cost cost;
        int reverse;
    };
    std::vector<std::vector<Residual>> graph(vertex_count);
    std::vector<std::pair<int, int>> position(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        if (a.from == a.to) {
            // A loop never lies on a shortest path; it simply carries nothing.
            position[i] = {-1, -1};
            continue;
        }
        position[i] = {a.from, static_cast<int>(graph[a.from].size())};
        graph[a.from].push_back({a.to, a.capacity, a.cost, static_cast<int>(graph[a.to].size())});
        graph[a.to].push_back({a.from, 0, Cost{} - a.cost, static_cast<int>(graph[a.from].size()) - 1});
    }

    MinCostFlowResult<Cost> result;
    std::vector<Cost> potential(vertex_count);
    while (limit < 0 || result.flow < limit) {
        std::vector<std::optional<Cost>> dist(vertex_count);
        std::vector<std::pair<int, int>> parent(vertex_count, {-1, -1});
        std::vector<bool> done(vertex_count, false);
        dist[s] = Cost{};
        for (;;) {
            int u = -1;
            for (int v = 0; v < vertex_count; ++v)
                if (!done[v] && dist[v] && (u < 0 || *dist[v] < *dist[u]))
                    u = v;
            if (u < 0)
                break;
            done[u] = true;
            for (int i = 0; i < static_cast<int>(graph[u].size()); ++i) {
                const auto& r = graph[u][i];
                if (r.capacity <= 0 || done[r.to])
                    continue;
                Cost candidate = *dist[u] + r.cost + potential[u] - potential[r.to];
                if (!dist[r.to] || candidate < *dist[r.to]) {
                    dist[r.to] = candidate;
                    parent[r.to] = {u, i};
                }
            }
        }
        if (!dist[t])
            break;

        Cost farthest{};
        for (int v = 0; v < vertex_count; ++v)
            if (dist[v] && farthest < *dist[v])
                farthest = *dist[v];
        for (int v = 0; v < vertex_count; ++v)
            potential[v] = potential[v] + (dist[v] ? *dist[v] : farthest);

        int push = limit < 0 ? -1 : limit - result.flow;
        for (int v = t; v != s; v = parent[v].first) {
            const auto& r = graph[parent[v].first][parent[v].second];
            push = push < 0 ? r.capacity : std::min(push, r.capacity);
        }
        for (int v = t; v != s; v = parent[v].first) {
            auto& r = graph[parent[v].first][parent[v].second];
            r.capacity -= push;
            graph[r.to][r.reverse].capacity += push;
            result.cost = result.cost + r.cost * push;
        }
        result.flow += push;
    }

    result.arc_flow.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (position[i].first < 0)
            continue;
        const auto& r = graph[position[i].first][position[i].second];
        result.arc_flow[i] = arcs[i].capacity - r.capacity;
    }
    return result;
}

} // namespace frugal
