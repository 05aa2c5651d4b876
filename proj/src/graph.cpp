#include "frugal/graph.hpp"

#include "frugal/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace frugal {

int Graph::add_vertex(std::string name)
{
    if (vertex_lookup_.contains(name))
        throw InputError("duplicate vertex '" + name + "'");
    int index = vertex_count();
    vertex_lookup_.emplace(name, index);
    vertices_.push_back(std::move(name));
    return index;
}

int Graph::ensure_vertex(std::string_view name)
{
    if (auto found = find_vertex(name))
        return *found;
    return add_vertex(std::string(name));
}

int Graph::add_edge(std::string id, std::string_view tail, std::string_view head)
{
    return add_edge(std::move(id), vertex_index(tail), vertex_index(head));
}

int Graph::add_edge(std::string id, int tail, int head)
{
    if (tail < 0 || tail >= vertex_count() || head < 0 || head >= vertex_count())
        throw InputError("edge '" + id + "' has an endpoint outside the graph");
    if (edge_lookup_.contains(id))
        throw InputError("duplicate edge id '" + id + "'");
    int index = edge_count();
    edge_lookup_.emplace(id, index);
    edges_.push_back(Edge{std::move(id), tail, head});
    return index;
}

void Graph::set_terminals(std::string_view source, std::string_view sink)
{
    int s = vertex_index(source);
    int t = vertex_index(sink);
    if (s == t)
        throw InputError("source and sink must differ");
    source_ = s;
    sink_ = t;
}

std::optional<int> Graph::find_vertex(std::string_view name) const
{
    auto it = vertex_lookup_.find(std::string(name));
    if (it == vertex_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> Graph::find_edge(std::string_view id) const
{
    auto it = edge_lookup_.find(std::string(id));
    if (it == edge_lookup_.end())
        return std::nullopt;
    return it->second;
}

int Graph::vertex_index(std::string_view name) const
{
    if (auto found = find_vertex(name))
        return *found;
    throw InputError("unknown vertex '" + std::string(name) + "'");
}

int Graph::edge_index(std::string_view id) const
{
    if (auto found = find_edge(id))
        return *found;
    throw InputError("unknown edge '" + std::string(id) + "'");
}

int Graph::source() const
{
    if (!source_)
        throw DomainError("graph has no designated source");
    return *source_;
}

int Graph::sink() const
{
    if (!sink_)
        throw DomainError("graph has no designated sink");
    return *sink_;
}

std::vector<int> Graph::edge_ranks() const
{
    std::vector<int> order(edges_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return edges_[a].id < edges_[b].id; });
    std::vector<int> rank(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = static_cast<int>(i);
    return rank;
}

std::vector<std::string> Graph::sorted_edge_ids() const
{
    std::vector<std::string> ids;
    ids.reserve(edges_.size());
    for (const auto& e : edges_)
        ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::vector<int>> Graph::out_edges() const
{
    std::vector<std::vector<int>> out(vertices_.size());
    for (int e = 0; e < edge_count(); ++e) {
        out[edges_[e].tail].push_back(e);
        if (!directed_ && edges_[e].head != edges_[e].tail)
            out[edges_[e].head].push_back(e);
    }
    for (auto& list : out)
        std::sort(list.begin(), list.end(), [&](int a, int b) { return edges_[a].id < edges_[b].id; });
    return out;
}

std::vector<std::vector<int>> Graph::in_edges() const
{
    std::vector<std::vector<int>> in(vertices_.size());
    for (int e = 0; e < edge_count(); ++e) {
        in[edges_[e].head].push_back(e);
        if (!directed_ && edges_[e].head != edges_[e].tail)
            in[edges_[e].tail].push_back(e);
    }
    for (auto& list : in)
        std::sort(list.begin(), list.end(), [&](int a, int b) { return edges_[a].id < edges_[b].id; });
    return in;
}

std::vector<std::vector<int>> Graph::neighbours() const
{
    std::vector<std::set<int>> sets(vertices_.size());
    for (const auto& e : edges_) {
        if (e.tail == e.head)
            continue;
        sets[e.tail].insert(e.head);
        sets[e.head].insert(e.tail);
    }
    std::vector<std::vector<int>> result;
    result.reserve(sets.size());
    for (const auto& s : sets)
        result.emplace_back(s.begin(), s.end());
    return result;
}

Graph Graph::edge_subgraph(std::span<const std::string> edge_ids) const
{
    Graph sub(directed_);
    for (const auto& name : vertices_)
        sub.add_vertex(name);
    for (const auto& id : edge_ids) {
        const Edge& e = edge(edge_index(id));
        sub.add_edge(e.id, e.tail, e.head);
    }
    if (source_)
        sub.set_terminals(vertices_[*source_], vertices_[*sink_]);
    return sub;
}

namespace {

int find_root(std::vector<int>& parent, int v)
{
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

int other_end(const Edge& e, int from)
{
    return e.tail == from ? e.head : e.tail;
}

bool edge_enabled(std::span<const bool> enabled, int e)
{
    return enabled.empty() || enabled[e];
}

} // namespace

std::pair<Graph, VertexMap> contract_edges(const Graph& g, const std::set<std::string>& keep)
{
    for (const auto& id : keep)
        g.edge_index(id);

    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : g.edges()) {
        if (keep.contains(e.id))
            continue;
        int a = find_root(parent, e.tail);
        int b = find_root(parent, e.head);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }

    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < g.vertex_count(); ++v)
        groups[find_root(parent, v)].push_back(v);

    auto is_terminal = [&](int v, bool want_source) {
        if (!g.has_terminals())
            return false;
        return want_source ? v == g.source() : v == g.sink();
    };

    std::map<int, std::string> names;
    for (const auto& [root, members] : groups) {
        bool has_source = std::any_of(members.begin(), members.end(), [&](int v) { return is_terminal(v, true); });
        bool has_sink = std::any_of(members.begin(), members.end(), [&](int v) { return is_terminal(v, false); });
        if (has_source && has_sink)
            throw DomainError("contraction merges the source with the sink");
        std::string name;
        if (has_source)
            name = g.vertex_name(g.source());
        else if (has_sink)
            name = g.vertex_name(g.sink());
        else {
            name = g.vertex_name(members.front());
            for (int v : members)
                name = std::min(name, g.vertex_name(v));
        }
        names.emplace(root, std::move(name));
    }

    Graph contracted(g.directed());
    VertexMap map;
    // Super-vertices appear in the order of their first original member.
    for (int v = 0; v < g.vertex_count(); ++v) {
        const std::string& name = names.at(find_root(parent, v));
        if (!contracted.find_vertex(name))
            contracted.add_vertex(name);
        map.emplace(g.vertex_name(v), name);
    }
    for (const auto& e : g.edges()) {
        if (!keep.contains(e.id))
            continue;
        contracted.add_edge(e.id, contracted.vertex_index(map.at(g.vertex_name(e.tail))),
                            contracted.vertex_index(map.at(g.vertex_name(e.head))));
    }
    if (g.has_terminals())
        contracted.set_terminals(map.at(g.vertex_name(g.source())), map.at(g.vertex_name(g.sink())));
    return {std::move(contracted), std::move(map)};
}

std::vector<std::vector<int>> enumerate_st_path_indices(const Graph& g, std::size_t cap)
{
    const int s = g.source();
    const int t = g.sink();
    const auto out = g.out_edges();

    std::vector<std::vector<int>> paths;
    std::vector<int> current;
    std::vector<bool> on_path(g.vertex_count(), false);

    // Iterative DFS; each frame remembers the next out-edge to try.
    struct Frame {
        int vertex;
        std::size_t next;
    };
    std::vector<Frame> stack{{s, 0}};
    on_path[s] = true;
    while (!stack.empty()) {
        Frame& frame = stack.back();
        if (frame.next == out[frame.vertex].size()) {
            on_path[frame.vertex] = false;
            stack.pop_back();
            if (!current.empty())
                current.pop_back();
            continue;
        }
        int e = out[frame.vertex][frame.next++];
        int w = other_end(g.edge(e), frame.vertex);
        if (on_path[w])
            continue;
        if (w == t) {
            current.push_back(e);
            paths.push_back(current);
            current.pop_back();
            if (paths.size() > cap)
                throw ScaleError("more than " + std::to_string(cap) + " simple s-t paths");
            continue;
        }
        current.push_back(e);
        on_path[w] = true;
        stack.push_back({w, 0});
    }
    return paths;
}

std::vector<std::vector<std::string>> enumerate_st_paths(const Graph& g, std::size_t cap)
{
    std::vector<std::vector<std::string>> named;
    for (const auto& path : enumerate_st_path_indices(g, cap)) {
        std::vector<std::string> ids;
        ids.reserve(path.size());
        for (int e : path)
            ids.push_back(g.edge(e).id);
        named.push_back(std::move(ids));
    }
    return named;
}

std::vector<bool> reachable_from(const Graph& g, int from, std::span<const bool> enabled)
{
    const auto out = g.out_edges();
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : out[v]) {
            if (!edge_enabled(enabled, e))
                continue;
            int w = other_end(g.edge(e), v);
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

std::vector<bool> reaching(const Graph& g, int to, std::span<const bool> enabled)
{
    const auto in = g.in_edges();
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<int> queue{to};
    seen[to] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : in[v]) {
            if (!edge_enabled(enabled, e))
                continue;
            int w = other_end(g.edge(e), v);
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

bool reachable(const Graph& g, std::string_view from, std::string_view to)
{
    int a = g.vertex_index(from);
    int b = g.vertex_index(to);
    return reachable_from(g, a, {})[b];
}

int unit_max_flow(const Graph& g, std::span<const bool> enabled, int limit)
{
    const int s = g.source();
    const int t = g.sink();
    const auto out = g.out_edges();
    const auto in = g.in_edges();
    std::vector<char> used(g.edge_count(), 0);

    int value = 0;
    while (limit < 0 || value < limit) {
        // BFS over the residual graph; parent stores (edge, forward?) per vertex.
        std::vector<std::pair<int, bool>> parent(g.vertex_count(), {-1, true});
        std::vector<bool> seen(g.vertex_count(), false);
        std::deque<int> queue{s};
        seen[s] = true;
        while (!queue.empty() && !seen[t]) {
            int v = queue.front();
            queue.pop_front();
            for (int e : out[v]) {
                if (!edge_enabled(enabled, e) || used[e] || g.edge(e).tail != v)
                    continue;
                int w = g.edge(e).head;
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = {e, true};
                    queue.push_back(w);
                }
            }
            for (int e : in[v]) {
                if (!edge_enabled(enabled, e) || !used[e] || g.edge(e).head != v)
                    continue;
                int w = g.edge(e).tail;
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = {e, false};
                    queue.push_back(w);
                }
            }
        }
        if (!seen[t])
            break;
        for (int v = t; v != s;) {
            auto [e, forward] = parent[v];
            used[e] = forward ? 1 : 0;
            v = forward ? g.edge(e).tail : g.edge(e).head;
        }
        ++value;
    }
    return value;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices)
{
    Graph sub(g.directed());
    std::vector<bool> inside(g.vertex_count(), false);
    for (int v : vertices) {
        inside[v] = true;
        sub.add_vertex(g.vertex_name(v));
    }
    for (const auto& e : g.edges())
        if (inside[e.tail] && inside[e.head])
            sub.add_edge(e.id, sub.vertex_index(g.vertex_name(e.tail)), sub.vertex_index(g.vertex_name(e.head)));
    return sub;
}

std::vector<std::vector<int>> connected_components(const Graph& g)
{
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : g.edges()) {
        int a = find_root(parent, e.tail);
        int b = find_root(parent, e.head);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < g.vertex_count(); ++v)
        groups[find_root(parent, v)].push_back(v);
    std::vector<std::vector<int>> result;
    for (auto& [root, members] : groups)
        result.push_back(std::move(members));
    return result;
}

} // namespace frugal
