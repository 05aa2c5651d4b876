#include "frugal/flow_mech.hpp"

#include "frugal/errors.hpp"
#include "frugal/min_cost_flow.hpp"
#include "frugal/perturbed.hpp"
#include "frugal/set_system.hpp"

#include <algorithm>

namespace frugal {

namespace {

using FlowCost = Perturbed<Rational>;

void check_costs(const Graph& g, const CostVector& costs, bool require_all)
{
    for (const auto& [id, cost] : costs) {
        g.edge_index(id);
        if (cost < 0)
            throw InputError("negative cost for edge '" + id + "'");
    }
    if (require_all && costs.size() != static_cast<std::size_t>(g.edge_count()))
        throw InputError("costs must price every edge exactly once");
}

Rational total_cost(const std::set<std::string>& edges, const CostVector& costs)
{
    Rational sum = 0;
    for (const auto& e : edges)
        sum += costs.at(e);
    return sum;
}


std::vector<std::string> sorted_ids(const std::set<std::string>& ids) { return {ids.begin(), ids.end()}; }

} // namespace

std::optional<std::set<std::string>> min_cost_unit_flow(const Graph& g, int units, const CostVector& costs)
{
    check_costs(g, costs, false);
    std::vector<FlowArc<FlowCost>> arcs;
    std::vector<std::string> ids;
    int rank = 0;
    for (const auto& [id, cost] : costs) {
        const Edge& e = g.edge(g.edge_index(id));
        arcs.push_back({e.tail, e.head, 1, FlowCost(cost, tie_weight(rank++))});
        ids.push_back(id);
    }
    auto result = min_cost_flow(g.vertex_count(), arcs, g.source(), g.sink(), units);
    if (result.flow < units)
        return std::nullopt;
    std::set<std::string> used;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (result.arc_flow[i] > 0)
            used.insert(ids[i]);
    return used;
}

std::set<std::string> min_cost_kplus1_flow(const Graph& g, int k, const CostVector& bids)
{
    if (k < 1)
        throw InputError("k must be a positive integer");
    check_costs(g, bids, true);
    auto flow = min_cost_unit_flow(g, k + 1, bids);
    if (!flow)
        throw MonopolyError("fewer than k+1 edge-disjoint s-t paths");
    return *flow;
}

void check_unit_flow(const Graph& g, const std::set<std::string>& h, int units)
{
    const int n = g.vertex_count();
    std::vector<int> balance(n, 0), indegree(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& id : h) {
        const Edge& e = g.edge(g.edge_index(id));
        --balance[e.tail];
        ++balance[e.head];
        ++indegree[e.head];
        out[e.tail].push_back(e.head);
    }
    const int s = g.source();
    const int t = g.sink();
    for (int v = 0; v < n; ++v) {
        int expected = v == s ? -units : v == t ? units : 0;
        if (balance[v] != expected)
            throw DomainError("edge set is not a flow of value " + std::to_string(units) + " (imbalance at '" +
                              g.vertex_name(v) + "')");
    }
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int u : out[v])
            if (--indegree[u] == 0)
                ready.push_back(u);
    }
    if (seen != n)
        throw DomainError("flow edge set contains a cycle");
}

FlowVcReduction vc_from_flow(const Graph& g, const std::set<std::string>& h, int k)
{
    if (k < 1)
        throw InputError("k must be a positive integer");
    check_unit_flow(g, h, k + 1);
    FlowVcReduction red;
    red.k = k;
    auto ids = sorted_ids(h);
    red.h = g.edge_subgraph(ids);

    std::vector<std::vector<bool>> reach(red.h.vertex_count());
    for (int v = 0; v < red.h.vertex_count(); ++v)
        reach[v] = reachable_from(red.h, v);

    red.conflict = Graph(false);
    for (const auto& id : ids) {
        red.conflict.add_vertex(id);
        red.tot[id] = k;
    }
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const Edge& a = red.h.edge(red.h.edge_index(ids[i]));
            const Edge& b = red.h.edge(red.h.edge_index(ids[j]));
            if (!reach[a.head][b.tail] && !reach[b.head][a.tail])
                red.conflict.add_edge(ids[i] + "|" + ids[j], ids[i], ids[j]);
        }
    return red;
}

namespace {

// Covers of the flow conflict graph are exactly the edge sets of H containing a
// k-flow, so each query is one min-cost k-flow computation on H.
class FlowCoverSolver : public CoverSolver {
public:
    FlowCoverSolver(const FlowVcReduction& red, const std::vector<std::string>& agents)
        : h_(red.h), k_(red.k)
    {
        for (const auto& id : agents) {
            const Edge& e = h_.edge(h_.edge_index(id));
            tails_.push_back(e.tail);
            heads_.push_back(e.head);
        }
    }

    std::vector<int> min_cover(const std::vector<Rational>& cost) const override
    {
        auto result = solve(cost, -1);
        std::vector<int> cover;
        for (std::size_t i = 0; i < cost.size(); ++i)
            if (result.arc_flow[i] > 0)
                cover.push_back(static_cast<int>(i));
        return cover;
    }

    Rational min_cost_containing(const std::vector<Rational>& cost, int u) const override
    {
        std::vector<Rational> zeroed = cost;
        zeroed[u] = 0;
        return solve(zeroed, -1).cost.value;
    }

    std::optional<Rational> min_cost_excluding(const std::vector<Rational>& cost, int u) const override
    {
        auto result = solve(cost, u);
        if (result.flow < k_)
            return std::nullopt;
        return result.cost.value;
    }

private:
    MinCostFlowResult<FlowCost> solve(const std::vector<Rational>& cost, int skip) const
    {
        std::vector<FlowArc<FlowCost>> arcs;
        for (std::size_t i = 0; i < cost.size(); ++i)
            arcs.push_back({tails_[i], heads_[i], static_cast<int>(i) == skip ? 0 : 1,
                            FlowCost(cost[i], tie_weight(static_cast<int>(i)))});
        auto result = min_cost_flow(h_.vertex_count(), arcs, h_.source(), h_.sink(), k_);
        if (skip < 0 && result.flow < k_)
            throw DomainError("pruned flow carries fewer than k units");
        return result;
    }

    Graph h_;
    int k_;
    std::vector<int> tails_;
    std::vector<int> heads_;
};

} // namespace

VcInstance flow_vc_instance(const FlowVcReduction& reduction)
{
    auto inst = VcInstance::build(reduction.conflict, reduction.tot);
    if (!inst.isolated().empty())
        throw DomainError("flow conflict graph has an isolated edge '" + inst.isolated().front() + "'");
    return inst.with_solver(std::make_shared<FlowCoverSolver>(reduction, inst.agents()));
}

FlowAuctionOutcome fm_run(const Graph& g, int k, const CostVector& bids)
{
    FlowAuctionOutcome result;
    result.pruned = min_cost_kplus1_flow(g, k, bids);
    auto reduction = vc_from_flow(g, result.pruned, k);
    auto inst = flow_vc_instance(reduction);
    auto inner = ev_run(inst, restrict_costs(bids, result.pruned));

    AuctionOutcome& out = result.outcome;
    out.winners = inner.winners;
    out.scaled_bids = inner.scaled_bids;
    out.lambdas = inner.lambdas;
    for (const auto& [id, bid] : bids) {
        out.payments[id] = 0.0;
        out.exact_payments[id] = 0;
    }
    const Rational pruned_cost = total_cost(result.pruned, bids);
    Rational total = 0;
    for (const auto& e : inner.winners) {
        Rational pay = inner.exact_payments.at(e);
        CostVector without = bids;
        without.erase(e);
        if (auto detour = min_cost_unit_flow(g, k + 1, without)) {
            Rational stay_threshold = total_cost(*detour, bids) - pruned_cost + bids.at(e);
            pay = std::min(pay, stay_threshold);
        }
        out.exact_payments[e] = pay;
        out.payments[e] = to_double(pay);
        total += pay;
    }
    out.total = to_double(total);
    return result;
}

Rational nu_flow_fast(const Graph& g, const std::set<std::string>& h, int k, const CostVector& costs)
{
    check_unit_flow(g, h, k + 1);
    const int n = g.vertex_count();
    std::vector<std::vector<int>> out(n);
    std::vector<int> indegree(n, 0);
    for (const auto& id : h) {
        int e = g.edge_index(id);
        out[g.edge(e).tail].push_back(e);
        ++indegree[g.edge(e).head];
    }
    std::vector<std::optional<Rational>> longest(n);
    longest[g.source()] = Rational(0);
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0)
            ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        for (int e : out[v]) {
            int w = g.edge(e).head;
            if (longest[v]) {
                Rational candidate = *longest[v] + costs.at(g.edge(e).id);
                if (!longest[w] || *longest[w] < candidate)
                    longest[w] = candidate;
            }
            if (--indegree[w] == 0)
                ready.push_back(w);
        }
    }
    return k * longest[g.sink()].value_or(Rational(0));
}

Rational nu_flow_by_peeling(const Graph& g, const std::set<std::string>& h, int k, const CostVector& costs,
                            bool reversed)
{
    check_unit_flow(g, h, k + 1);
    std::vector<std::vector<int>> out(g.vertex_count());
    for (const auto& id : h) {
        int e = g.edge_index(id);
        out[g.edge(e).tail].push_back(e);
    }
    for (auto& list : out) {
        std::sort(list.begin(), list.end(), [&](int a, int b) { return g.edge(a).id < g.edge(b).id; });
        if (reversed)
            std::reverse(list.begin(), list.end());
    }
    Rational heaviest = 0;
    for (int path = 0; path <= k; ++path) {
        Rational cost = 0;
        for (int v = g.source(); v != g.sink();) {
            if (out[v].empty())
                throw DomainError("path peeling got stuck at '" + g.vertex_name(v) + "'");
            int e = out[v].front();
            out[v].erase(out[v].begin());
            cost += costs.at(g.edge(e).id);
            v = g.edge(e).head;
        }
        heaviest = std::max(heaviest, cost);
    }
    return k * heaviest;
}

} // namespace frugal
