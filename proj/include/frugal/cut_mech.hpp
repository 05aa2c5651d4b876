#pragma once

#include "frugal/eigen_mech.hpp"
#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace frugal {

enum class DoubleCutMethod { PrimalDual, LpFallback };
enum class CutExtraction { UConstruction, DistanceThreshold, Lp };

const char* to_string(DoubleCutMethod method);
const char* to_string(CutExtraction extraction);

struct DoubleCutResult {
    std::set<std::string> double_cut;
    /// Source sides of the two cuts, s1 inside s2.
    std::set<std::string> s1;
    std::set<std::string> s2;
    Rational cost;
    /// Real parts of the final flow value, total relief and 2|f| - sum r.
    Rational flow_value;
    Rational total_relief;
    Rational dual_objective;
    /// Cost equals the dual objective exactly (tie-break terms included).
    bool certified = false;
    DoubleCutMethod method = DoubleCutMethod::PrimalDual;
    CutExtraction extraction = CutExtraction::UConstruction;
    /// No edge leaves both s1 and s2.
    bool cuts_disjoint = false;
    /// Every edge with positive relief leaves s1 or s2.
    bool relief_edges_cross = false;
    /// The residual graph never had a negative cycle or a t-s path shorter than -1.
    bool residual_checks_held = true;
    int augmentations = 0;
    std::map<std::string, Rational> flow;
    std::map<std::string, Rational> relief;
};

/// Edges lying on at least one simple s-t path.
std::set<std::string> edges_on_st_paths(const Graph& g);

/// True iff every s-t path uses at least two edges of `edges`.
bool is_double_cut(const Graph& g, const std::set<std::string>& edges);

/// Minimum-cost double cut by the relief-flow primal-dual method, with ties
/// broken by sorted edge id. Falls back to the double-cut LP when no extracted
/// pair of cuts matches the dual objective. Throws MonopolyError on an s-t edge.
DoubleCutResult min_double_cut(const Graph& g, const CostVector& costs);

struct DoubleCutLp {
    Rational value;
    /// Integral optimum with the same tie-break as min_double_cut.
    std::set<std::string> edges;
};

/// Exact optimum of the double-cut LP over enumerated s-t paths.
DoubleCutLp solve_double_cut_lp(const Graph& g, const CostVector& costs);

struct PairGroup {
    std::string vertex;
    /// Edges s -> vertex and vertex -> t of H.
    std::vector<std::string> into;
    std::vector<std::string> out_of;
};

struct ContractedCut {
    Graph h;
    VertexMap vertex_map;
    std::vector<PairGroup> groups;
};

/// Contract every s-t path edge outside the double cut and split H into its
/// parallel classes. Throws DomainError if some s-t path of H does not have length 2.
ContractedCut contract_to_h(const Graph& g, const DoubleCutResult& dc);

struct CutAuctionOutcome {
    DoubleCutResult double_cut;
    ContractedCut contracted;
    AuctionOutcome outcome;
};

/// Conflict graph of the contracted instance: complete bipartite between the
/// two sides of every group; Tot is 1 everywhere.
Graph cut_conflict_graph(const ContractedCut& contracted);

/// EV instance over the double-cut edges with the per-group side solver.
VcInstance cut_vc_instance(const ContractedCut& contracted);

/// The cut mechanism: prune to the minimum double cut, contract, run EV. A
/// winner's payment is the smaller of its EV threshold and the highest bid at
/// which it would stay in the double cut.
CutAuctionOutcome cm_run(const Graph& g, const CostVector& bids);

} // namespace frugal
