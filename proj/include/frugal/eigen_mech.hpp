#pragma once

#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace frugal {

struct AuctionOutcome {
    std::set<std::string> winners;
    /// Every agent of the auction; losers get 0.
    std::map<std::string, double> payments;
    double total = 0;
    /// Payments as exact rationals of the (rational-rounded) scaling vector; infinite
    /// thresholds never occur for winners.
    std::map<std::string, Rational> exact_payments;
    std::map<std::string, double> scaled_bids;
    std::vector<double> lambdas;
};

using Mechanism = std::function<AuctionOutcome(const CostVector&)>;

/// Answers the three minimum-cover queries EV needs. Agents are instance indices;
/// costs are the scaled bids. Ties between covers of equal cost go to the cover
/// whose highest differing agent is absent.
class CoverSolver {
public:
    virtual ~CoverSolver() = default;
    /// Indices of the chosen cover, ascending.
    virtual std::vector<int> min_cover(const std::vector<Rational>& cost) const = 0;
    /// Cheapest cover containing u, with u counted at 0.
    virtual Rational min_cost_containing(const std::vector<Rational>& cost, int u) const = 0;
    /// Cheapest cover avoiding u, or nothing when every cover needs u.
    virtual std::optional<Rational> min_cost_excluding(const std::vector<Rational>& cost, int u) const = 0;
};

struct VcComponent {
    std::vector<int> members;
    double lambda = 0;
};

/// Conflict graph over agents with Tot values, stripped of isolated agents, plus
/// the dominant eigenpair of K = diag(1/Tot) A on each connected component.
class VcInstance {
public:
    /// `conflict` is read as undirected; self-loops are rejected. Every non-isolated
    /// vertex needs a Tot value of at least 1.
    static VcInstance build(const Graph& conflict, const std::map<std::string, Rational>& tot);

    /// Same instance answering cover queries with `solver`.
    VcInstance with_solver(std::shared_ptr<const CoverSolver> solver) const;

    const std::vector<std::string>& agents() const { return agents_; }
    const std::vector<std::string>& isolated() const { return isolated_; }
    int index(std::string_view agent) const;
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    const std::vector<Rational>& tot() const { return tot_; }
    const std::vector<VcComponent>& components() const { return components_; }
    int component_of(int agent) const { return component_of_[agent]; }
    /// Eigenvector entries, maximum 1 on each component.
    const std::vector<double>& q() const { return q_; }
    /// q rounded to a fixed binary grid; the mechanism scales bids by these.
    const std::vector<Rational>& q_exact() const { return q_exact_; }
    double lambda(int agent) const { return components_[component_of_[agent]].lambda; }
    double max_lambda() const;
    /// max over components of ||K q - lambda q||_inf / ||q||_inf.
    double eigen_residual() const;
    const CoverSolver& solver() const { return *solver_; }

private:
    std::vector<std::string> agents_;
    std::vector<std::string> isolated_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<Rational> tot_;
    std::vector<VcComponent> components_;
    std::vector<int> component_of_;
    std::vector<double> q_;
    std::vector<Rational> q_exact_;
    std::shared_ptr<const CoverSolver> solver_;
};

/// Exhaustive solver over the minimal covers of each component.
std::shared_ptr<const CoverSolver> make_brute_force_solver(const VcInstance& inst);

/// The eigenvector mechanism. `bids` must price every conflict-graph vertex,
/// isolated ones included; isolated agents never win.
AuctionOutcome ev_run(const VcInstance& inst, const CostVector& bids);

/// max over agents v of EV's total payment at the unit cost vector of v, divided by tot(v).
double ev_frugality_on_units(const VcInstance& inst);

struct ProbeResult {
    std::string agent;
    double ratio = 0;
    double lambda = 0;
};

/// Orient every conflict edge toward the endpoints `mechanism` selects at costs
/// (q_u, q_v), pick a vertex of a largest-lambda component whose out-neighbours
/// outweigh its in-neighbours in q, and report the mechanism's total payment at
/// q_v times the unit vector of v, divided by tot(v) q_v.
ProbeResult probe_lower_bound(const VcInstance& inst, const Mechanism& mechanism);

/// Pays every member of the cheapest unscaled cover its bid. Not truthful; kept
/// as a reference point for the probe.
AuctionOutcome pay_your_bid_run(const VcInstance& inst, const CostVector& bids);

/// Bids for every agent of the instance (isolated ones included).
std::vector<std::string> all_agents(const VcInstance& inst);

} // namespace frugal
