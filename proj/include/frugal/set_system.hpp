#pragma once

#include "frugal/caps.hpp"
#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace frugal {

/// Bit i stands for the agent of rank i in sorted-id order.
using AgentMask = std::uint64_t;

enum class SystemKind { VertexCover, KFlow, Cut };

const char* to_string(SystemKind kind);
/// Accepts "vertex-cover", "k-flow", "cut".
SystemKind parse_system_kind(std::string_view text);

/// Maximal independent sets of a graph given as neighbour bitmasks (at most 64
/// vertices), in increasing numeric order. Throws ScaleError past `cap` sets.
std::vector<AgentMask> maximal_independent_sets(const std::vector<AgentMask>& neighbours,
                                                std::size_t cap = default_caps().max_independent_sets);

/// A vertex-cover, k-flow or cut set system over the agents of a graph.
///
/// Vertex cover: agents are the vertices of an undirected graph. k-flow and cut:
/// agents are the edges of a directed graph with terminals. Minimal feasible sets
/// are enumerated on first use and shared between copies.
class SetSystem {
public:
    static SetSystem vertex_cover(Graph g);
    static SetSystem k_flow(Graph g, int k);
    static SetSystem cut(Graph g);

    SystemKind kind() const { return kind_; }
    int k() const { return k_; }
    const Graph& graph() const { return graph_; }
    const std::vector<std::string>& agents() const { return agents_; }
    int agent_count() const { return static_cast<int>(agents_.size()); }
    int rank(std::string_view agent) const;

    AgentMask mask_of(const std::set<std::string>& agent_set) const;
    std::set<std::string> agents_of(AgentMask mask) const;

    /// Minimal feasible sets in increasing mask order. Throws ScaleError past the
    /// enumeration caps and MonopolyError if some agent lies in all of them.
    const std::vector<AgentMask>& minimal_masks() const;
    std::vector<std::set<std::string>> minimal_feasible_sets() const;

    /// Costs in rank order; every agent must be priced, costs non-negative.
    std::vector<Rational> cost_array(const CostVector& costs) const;

    /// The cheapest minimal feasible set; ties go to the smaller mask.
    AgentMask cheapest_set(const CostVector& costs) const;

private:
    struct Cache;

    SetSystem(SystemKind kind, Graph g, int k);
    std::vector<AgentMask> enumerate() const;
    std::vector<AgentMask> enumerate_vertex_covers() const;
    std::vector<AgentMask> enumerate_flows() const;
    std::vector<AgentMask> enumerate_cuts() const;

    SystemKind kind_;
    Graph graph_;
    int k_ = 0;
    std::vector<std::string> agents_;
    std::shared_ptr<Cache> cache_;
};

struct NuResult {
    Rational value;
    /// Every agent; agents outside the winning set bid their cost.
    CostVector bids;
    std::set<std::string> winning_set;
};

/// Maximum total bid of the winning set over the full-information equilibria
/// in which the cheapest set wins: maximise sum_S b subject to b >= c on S,
/// b = c elsewhere, and sum_{S\T} b <= sum_{T\S} c for every minimal feasible T.
NuResult nu(const SetSystem& sys, const CostVector& costs);

/// nu at the unit cost vector of `agent`.
Rational tot(const SetSystem& sys, const std::string& agent);

/// Every winning agent lies outside some minimal feasible set T whose bid total equals the winning set's.
bool has_tight_sets(const SetSystem& sys, const NuResult& result);

/// Fractional clique number of an undirected graph via its maximal independent sets.
Rational fractional_clique_number(const Graph& g);

/// Undirected graph induced by the neighbours of `vertex` (excluding the vertex itself).
Graph neighbourhood_graph(const Graph& g, std::string_view vertex);

/// Costs that are 1 on `agent` and 0 on every other agent of the system.
CostVector unit_costs(const std::vector<std::string>& agents, const std::string& agent);

/// The entries of `costs` for the agents in `keep`; each must be present.
CostVector restrict_costs(const CostVector& costs, const std::set<std::string>& keep);

} // namespace frugal
