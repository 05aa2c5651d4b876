#pragma once

#include "frugal/eigen_mech.hpp"
#include "frugal/graph.hpp"
#include "frugal/rational.hpp"
#include "frugal/set_system.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace frugal {

struct BruteDoubleCut {
    Rational cost;
    std::set<std::string> edges;
};

/// Cheapest edge set meeting every s-t path at least twice, by subset enumeration
/// (ties to the set whose highest differing edge id is absent). Above the subset
/// cap the double-cut LP answers instead.
BruteDoubleCut brute_double_cut(const Graph& g, const CostVector& costs);

/// Pairs {e, f} (e < f) of H edges that lie together on some minimum s-t cut of H,
/// found by enumerating every vertex bipartition.
std::set<std::pair<std::string, std::string>> min_cut_conflicts(const Graph& g, const std::set<std::string>& h);

/// Conflict pairs read off an undirected conflict graph, endpoints ordered.
std::set<std::pair<std::string, std::string>> conflict_pairs(const Graph& conflict);

/// A deterministic auction over a fixed agent list, treated as a black box.
struct MechanismUnderTest {
    std::string name;
    std::vector<std::string> agents;
    Mechanism run;
};

struct Violation {
    /// "raised-loser-won", "lowered-winner-changed-set", "payment-below-bid",
    /// "threshold-mismatch" or "mechanism-error".
    std::string kind;
    std::string agent;
    Rational original_bid;
    Rational perturbed_bid;
    std::set<std::string> original_winners;
    std::set<std::string> perturbed_winners;
    std::string detail;
};

struct PerturbationReport {
    std::string instance;
    std::uint64_t seed = 0;
    int trials = 0;
    int checks = 0;
    /// Largest |payment - bisected threshold| / max(1, payment) seen.
    double max_threshold_gap = 0;
    std::vector<Violation> violations;
    bool passed() const { return violations.empty(); }
};

struct TruthfulnessOptions {
    /// Bisect every winner's threshold (the expensive part of a trial).
    bool bisect_thresholds = true;
    double threshold_tolerance = 1e-6;
};

/// For `trials` seeded random bid vectors: raise every loser's bid (it must keep
/// losing), lower every winner's bid (the winning set must not change), and
/// bisect every winner's threshold against its payment.
PerturbationReport check_truthfulness(const MechanismUnderTest& mechanism, int trials, std::uint64_t seed,
                                      const TruthfulnessOptions& options = {});

using CostSampler = std::function<CostVector(std::mt19937_64&)>;

/// max over sampled cost vectors with nu > 0 of total payment / nu(c); 0 when none qualify.
double measure_frugality(const MechanismUnderTest& mechanism, const SetSystem& sys, const CostSampler& sampler,
                         int trials, std::uint64_t seed);

/// Cycles through the unit cost vectors of the agents.
CostSampler unit_vector_sampler(std::vector<std::string> agents);

/// Random rationals p/q with p in [0, max_numerator] and q in [1, max_denominator].
CostSampler random_cost_sampler(std::vector<std::string> agents, int max_numerator = 20, int max_denominator = 4);

/// Negative control: picks the cover minimising the sum of rounded-down bids,
/// settling ties toward the larger exact total, and pays each winner its bid.
Mechanism broken_tie_break_mechanism(const VcInstance& inst);

/// Undirected graph over the instance agents (isolated ones included) with its conflict edges.
Graph conflict_graph_of(const VcInstance& inst);

} // namespace frugal
