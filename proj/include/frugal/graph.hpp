#pragma once

#include "frugal/caps.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace frugal {

struct Edge {
    std::string id;
    int tail = 0;
    int head = 0;
};

/// Multigraph with string-named vertices and uniquely named edges.
///
/// Parallel edges and self-loops are allowed. Vertex and edge indices are
/// insertion positions; anything that breaks ties uses sorted edge ids instead.
class Graph {
public:
    explicit Graph(bool directed = true) : directed_(directed) {}

    int add_vertex(std::string name);
    /// Index of `name`, adding it first if missing.
    int ensure_vertex(std::string_view name);
    int add_edge(std::string id, std::string_view tail, std::string_view head);
    int add_edge(std::string id, int tail, int head);
    void set_terminals(std::string_view source, std::string_view sink);

    bool directed() const { return directed_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::string& vertex_name(int v) const { return vertices_.at(v); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::optional<int> find_vertex(std::string_view name) const;
    std::optional<int> find_edge(std::string_view id) const;
    /// Like find_*, but an unknown name is an InputError.
    int vertex_index(std::string_view name) const;
    int edge_index(std::string_view id) const;

    bool has_terminals() const { return source_.has_value(); }
    int source() const;
    int sink() const;

    /// Edge indices leaving each vertex (both endpoints when undirected), sorted by edge id.
    std::vector<std::vector<int>> out_edges() const;
    std::vector<std::vector<int>> in_edges() const;
    /// Position of every edge in sorted-id order.
    std::vector<int> edge_ranks() const;
    std::vector<std::string> sorted_edge_ids() const;
    /// Neighbour sets of an undirected graph, ignoring self-loops and parallels.
    std::vector<std::vector<int>> neighbours() const;

    /// Same vertices and terminals, only the listed edges.
    Graph edge_subgraph(std::span<const std::string> edge_ids) const;

private:
    bool directed_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> vertex_lookup_;
    std::unordered_map<std::string, int> edge_lookup_;
    std::optional<int> source_;
    std::optional<int> sink_;
};

/// Original vertex name -> name of the super-vertex it was merged into.
using VertexMap = std::map<std::string, std::string>;

/// Merge the endpoints of every edge not in `keep`.
///
/// Each super-vertex is named after its source or sink member if it has one,
/// otherwise after its lexicographically smallest member. Kept edges keep their
/// ids, and kept edges that collapse to self-loops are retained.
std::pair<Graph, VertexMap> contract_edges(const Graph& g, const std::set<std::string>& keep);

/// All simple directed s-t paths as edge-index sequences, in lexicographic order of
/// their edge-id sequences. Throws ScaleError past `cap` paths.
std::vector<std::vector<int>> enumerate_st_path_indices(const Graph& g,
                                                        std::size_t cap = default_caps().max_paths);
std::vector<std::vector<std::string>> enumerate_st_paths(const Graph& g,
                                                         std::size_t cap = default_caps().max_paths);

/// True iff `to` is reachable from `from` along edges (every vertex reaches itself).
bool reachable(const Graph& g, std::string_view from, std::string_view to);

/// Vertices reachable from `from` using only enabled edges (all edges when `enabled` is empty).
std::vector<bool> reachable_from(const Graph& g, int from, std::span<const bool> enabled = {});
/// Vertices that reach `to` using only enabled edges.
std::vector<bool> reaching(const Graph& g, int to, std::span<const bool> enabled = {});

/// Max number of edge-disjoint s-t paths over enabled edges, stopping early at `limit`.
int unit_max_flow(const Graph& g, std::span<const bool> enabled = {}, int limit = -1);

/// Subgraph induced by the given vertices, keeping their relative order.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Connected components of the underlying undirected graph, each sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const Graph& g);

} // namespace frugal
