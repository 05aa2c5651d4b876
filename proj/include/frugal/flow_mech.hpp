#pragma once

#include "frugal/eigen_mech.hpp"
#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace frugal {

/// Edge set of the cheapest integral flow of value `units` over unit-capacity
/// edges, ties broken by sorted edge id (absent later ids preferred). Edges not
/// in `costs` are unusable. Nothing when the max flow is below `units`.
std::optional<std::set<std::string>> min_cost_unit_flow(const Graph& g, int units, const CostVector& costs);

/// Pruning step of the k-flow mechanism. Throws MonopolyError when the max flow is below k+1.
std::set<std::string> min_cost_kplus1_flow(const Graph& g, int k, const CostVector& bids);

/// Throws DomainError unless `h` is acyclic with flow value exactly `units`
/// (every non-terminal vertex balanced).
void check_unit_flow(const Graph& g, const std::set<std::string>& h, int units);

struct FlowVcReduction {
    int k = 0;
    /// g restricted to the edges of H.
    Graph h;
    /// Undirected, one vertex per H edge.
    Graph conflict;
    std::map<std::string, Rational> tot;
};

/// Two H edges conflict iff neither one's head reaches the other's tail inside H.
FlowVcReduction vc_from_flow(const Graph& g, const std::set<std::string>& h, int k);

/// EV instance of the reduction answering cover queries with min-cost k-flows in H.
VcInstance flow_vc_instance(const FlowVcReduction& reduction);

struct FlowAuctionOutcome {
    std::set<std::string> pruned;
    AuctionOutcome outcome;
};

/// The k-flow mechanism: prune to the cheapest (k+1)-flow, then run EV on the
/// reduction. A winner's payment is the smaller of its EV threshold and the
/// highest bid at which it would stay in the pruned flow.
FlowAuctionOutcome fm_run(const Graph& g, int k, const CostVector& bids);

/// k times the costliest s-t path of the (k+1)-flow H.
Rational nu_flow_fast(const Graph& g, const std::set<std::string>& h, int k, const CostVector& costs);

/// k times the costliest of the k+1 paths obtained by peeling s-t paths off H,
/// always following the lowest (or, when `reversed`, highest) edge id.
Rational nu_flow_by_peeling(const Graph& g, const std::set<std::string>& h, int k, const CostVector& costs,
                            bool reversed);

} // namespace frugal
