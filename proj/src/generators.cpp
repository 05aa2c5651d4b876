#include "frugal/generators.hpp"

#include "frugal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace frugal {

std::string padded_id(char prefix, int index)
{
    std::string digits = std::to_string(index);
    if (digits.size() < 2)
        digits.insert(0, 2 - digits.size(), '0');
    return std::string(1, prefix) + digits;
}

namespace {

std::string vertex_label(int i) { return "v" + std::to_string(i); }

// Internal vertices of generated networks: a, b, c, ... (never s or t).
std::string internal_label(int i)
{
    std::string name(1, static_cast<char>('a' + i));
    if (i >= 18)
        throw ScaleError("generated networks are limited to 18 internal vertices");
    return name;
}

bool connected(int n, const std::vector<std::pair<int, int>>& pairs, std::uint32_t mask)
{
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    int parts = n;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1) {
            int a = find(pairs[i].first);
            int b = find(pairs[i].second);
            if (a != b) {
                parent[a] = b;
                --parts;
            }
        }
    return parts == 1;
}

Graph undirected_from_pairs(int n, const std::vector<std::pair<int, int>>& edges)
{
    Graph g(false);
    for (int v = 0; v < n; ++v)
        g.add_vertex(vertex_label(v));
    int next = 0;
    for (auto [a, b] : edges)
        g.add_edge(padded_id('e', next++), a, b);
    return g;
}

} // namespace

std::vector<Graph> connected_graphs_up_to_isomorphism(int n)
{
    if (n < 1 || n > 6)
        throw ScaleError("isomorphism-class enumeration is limited to 1..6 vertices");
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            pair_index[a][b] = pair_index[b][a] = static_cast<int>(pairs.size());
            pairs.emplace_back(a, b);
        }
    std::vector<std::vector<int>> permutations;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do
        permutations.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> classes;
    const std::uint32_t total = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!connected(n, pairs, mask))
            continue;
        std::uint32_t canonical = mask;
        for (const auto& p : permutations) {
            std::uint32_t image = 0;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1)
                    image |= std::uint32_t{1} << pair_index[p[pairs[i].first]][p[pairs[i].second]];
            canonical = std::min(canonical, image);
        }
        classes.insert(canonical);
    }
    std::vector<Graph> graphs;
    for (std::uint32_t mask : classes) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1)
                edges.push_back(pairs[i]);
        graphs.push_back(undirected_from_pairs(n, edges));
    }
    return graphs;
}

Graph random_undirected_graph(std::mt19937_64& rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (coin(rng))
                edges.emplace_back(a, b);
    return undirected_from_pairs(n, edges);
}

Graph random_connected_graph(std::mt19937_64& rng, int n, double extra_edge_probability)
{
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
        edges.emplace(parent, v);
    }
    std::bernoulli_distribution coin(extra_edge_probability);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!edges.count({a, b}) && coin(rng))
                edges.emplace(a, b);
    return undirected_from_pairs(n, {edges.begin(), edges.end()});
}

Graph random_flow_network(std::mt19937_64& rng, int min_flow, int max_vertices, int max_edges)
{
    if (max_vertices < 2 || max_edges < min_flow)
        throw InputError("flow network bounds leave no room for the requested flow");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = std::uniform_int_distribution<int>(2, max_vertices)(rng);
        int m = std::uniform_int_distribution<int>(min_flow, max_edges)(rng);
        Graph g(true);
        g.add_vertex("s");
        for (int i = 0; i + 2 < n; ++i)
            g.add_vertex(internal_label(i));
        g.add_vertex("t");
        g.set_terminals("s", "t");
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int e = 0; e < m; ++e) {
            int tail, head;
            do {
                tail = pick(rng);
                head = pick(rng);
            } while (tail == head || tail == n - 1 || head == 0);
            g.add_edge(padded_id('e', e), tail, head);
        }
        if (unit_max_flow(g, {}, min_flow) >= min_flow)
            return g;
    }
    throw DomainError("could not generate a network with the requested flow");
}

Graph random_st_dag(std::mt19937_64& rng, int max_vertices, int max_edges)
{
    if (max_vertices < 3 || max_edges < 2)
        throw InputError("a DAG without an s-t edge needs 3 vertices and 2 edges");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int n = std::uniform_int_distribution<int>(3, max_vertices)(rng);
        int m = std::uniform_int_distribution<int>(2, max_edges)(rng);
        Graph g(true);
        g.add_vertex("s");
        for (int i = 0; i + 2 < n; ++i)
            g.add_vertex(internal_label(i));
        g.add_vertex("t");
        g.set_terminals("s", "t");
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int e = 0; e < m; ++e) {
            int tail, head;
            do {
                tail = pick(rng);
                head = pick(rng);
                if (tail > head)
                    std::swap(tail, head);
            } while (tail == head || (tail == 0 && head == n - 1));
            g.add_edge(padded_id('e', e), tail, head);
        }
        if (reachable(g, "s", "t"))
            return g;
    }
    throw DomainError("could not generate a DAG with an s-t path");
}

CostVector random_costs(std::mt19937_64& rng, const std::vector<std::string>& agents, int max_numerator,
                        int max_denominator)
{
    std::uniform_int_distribution<int> num(0, max_numerator);
    std::uniform_int_distribution<int> den(1, max_denominator);
    CostVector costs;
    for (const auto& a : agents) {
        int p = num(rng);
        int q = den(rng);
        costs[a] = make_rational(p, q);
    }
    return costs;
}

CostVector random_edge_costs(std::mt19937_64& rng, const Graph& g, int max_numerator, int max_denominator)
{
    return random_costs(rng, g.sorted_edge_ids(), max_numerator, max_denominator);
}

Graph three_path_network()
{
    Graph g(true);
    for (const char* v : {"s", "a", "b", "t"})
        g.add_vertex(v);
    g.set_terminals("s", "t");
    g.add_edge("u", "s", "t");
    g.add_edge("v", "s", "a");
    g.add_edge("w", "s", "b");
    g.add_edge("x", "a", "t");
    g.add_edge("y", "b", "t");
    return g;
}

} // namespace frugal
