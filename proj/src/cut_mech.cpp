#include "frugal/cut_mech.hpp"

#include "frugal/errors.hpp"
#include "frugal/lp.hpp"
#include "frugal/perturbed.hpp"

#include <algorithm>
#include <deque>

namespace frugal {

const char* to_string(DoubleCutMethod method)
{
    return method == DoubleCutMethod::PrimalDual ? "primal-dual" : "lp-fallback";
}

const char* to_string(CutExtraction extraction)
{
    switch (extraction) {
    case CutExtraction::UConstruction:
        return "u-construction";
    case CutExtraction::DistanceThreshold:
        return "distance-threshold";
    case CutExtraction::Lp:
        return "lp";
    }
    return "unknown";
}

namespace {

using Amount = Perturbed<Rational>;

constexpr int max_augmentations = 100000;

bool is_acyclic(const Graph& g)
{
    std::vector<int> indegree(g.vertex_count(), 0);
    for (const auto& e : g.edges())
        ++indegree[e.head];
    auto out = g.out_edges();
    std::vector<int> ready;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (indegree[v] == 0)
            ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int e : out[v])
            if (--indegree[g.edge(e).head] == 0)
                ready.push_back(g.edge(e).head);
    }
    return seen == g.vertex_count();
}

// Fewest double-cut edges on any s-v walk (0-1 BFS); -1 when unreachable.
std::vector<int> cut_levels(const Graph& g, const std::set<std::string>& edges)
{
    std::vector<int> level(g.vertex_count(), -1);
    auto out = g.out_edges();
    std::deque<std::pair<int, int>> queue{{g.source(), 0}};
    std::vector<bool> done(g.vertex_count(), false);
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (done[v])
            continue;
        done[v] = true;
        level[v] = d;
        for (int e : out[v]) {
            int w = g.edge(e).head;
            if (done[w])
                continue;
            if (edges.count(g.edge(e).id))
                queue.emplace_back(w, d + 1);
            else
                queue.emplace_front(w, d);
        }
    }
    return level;
}

std::set<std::string> leaving(const Graph& g, const std::vector<bool>& inside)
{
    std::set<std::string> out;
    for (const auto& e : g.edges())
        if (inside[e.tail] && !inside[e.head])
            out.insert(e.id);
    return out;
}

std::set<std::string> names_of(const Graph& g, const std::vector<bool>& inside)
{
    std::set<std::string> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (inside[v])
            out.insert(g.vertex_name(v));
    return out;
}

void check_cut_costs(const Graph& g, const CostVector& costs)
{
    for (const auto& [id, c] : costs) {
        g.edge_index(id);
        if (c < 0)
            throw InputError("negative cost for edge '" + id + "'");
    }
    if (costs.size() != static_cast<std::size_t>(g.edge_count()))
        throw InputError("costs must price every edge exactly once");
}

struct Arc {
    int from;
    int to;
    int edge;
    bool forward;
    int length;
};

using Label = std::pair<long, long>; // (length, hops)

struct ShortestPaths {
    std::vector<std::optional<Label>> dist;
    std::vector<int> pred;
    bool negative_cycle = false;
};

// Bellman-Ford from a set of sources; with `reversed`, distances run to the sources.
ShortestPaths bellman_ford(int n, const std::vector<Arc>& arcs, const std::vector<int>& sources, bool reversed)
{
    ShortestPaths sp;
    sp.dist.assign(n, std::nullopt);
    sp.pred.assign(n, -1);
    for (int v : sources)
        sp.dist[v] = Label{0, 0};
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
            int a = reversed ? arcs[i].to : arcs[i].from;
            int b = reversed ? arcs[i].from : arcs[i].to;
            if (!sp.dist[a])
                continue;
            Label candidate{sp.dist[a]->first + arcs[i].length, sp.dist[a]->second + 1};
            if (!sp.dist[b] || candidate < *sp.dist[b]) {
                sp.dist[b] = candidate;
                sp.pred[b] = i;
                changed = true;
            }
        }
        if (!changed)
            return sp;
        if (round == n)
            sp.negative_cycle = true;
    }
    return sp;
}

class ReliefFlow {
public:
    ReliefFlow(const Graph& g, std::vector<Amount> capacity)
        : g_(g), capacity_(std::move(capacity)), flow_(g.edge_count()), relief_(g.edge_count())
    {
        auto ranks = g_.edge_ranks();
        order_.resize(g_.edge_count());
        for (int e = 0; e < g_.edge_count(); ++e)
            order_[ranks[e]] = e;
    }

    void initial_max_flow()
    {
        const int s = g_.source();
        const int t = g_.sink();
        for (;;) {
            // Shortest augmenting path by BFS, arcs scanned in edge-id order.
            std::vector<int> pred(g_.vertex_count(), -1);
            std::vector<bool> seen(g_.vertex_count(), false);
            auto arcs = residual_arcs(false);
            std::vector<std::vector<int>> by_vertex(g_.vertex_count());
            for (int i = 0; i < static_cast<int>(arcs.size()); ++i)
                if (residual_capacity(arcs[i]).is_positive())
                    by_vertex[arcs[i].from].push_back(i);
            std::deque<int> queue{s};
            seen[s] = true;
            while (!queue.empty() && !seen[t]) {
                int v = queue.front();
                queue.pop_front();
                for (int i : by_vertex[v])
                    if (!seen[arcs[i].to]) {
                        seen[arcs[i].to] = true;
                        pred[arcs[i].to] = i;
                        queue.push_back(arcs[i].to);
                    }
            }
            if (!seen[t])
                return;
            std::optional<Amount> push;
            for (int v = t; v != s; v = arcs[pred[v]].from) {
                Amount room = residual_capacity(arcs[pred[v]]);
                if (!push || room < *push)
                    push = room;
            }
            for (int v = t; v != s; v = arcs[pred[v]].from) {
                const Arc& a = arcs[pred[v]];
                flow_[a.edge] = a.forward ? flow_[a.edge] + *push : flow_[a.edge] - *push;
            }
        }
    }

    /// One round of the main loop. Returns false once no s-t path of length at most 1 remains.
    bool augment()
    {
        const int n = g_.vertex_count();
        auto arcs = residual_arcs(false);
        auto forward = bellman_ford(n, arcs, {g_.source()}, false);
        auto backward = bellman_ford(n, arcs, {g_.sink()}, false);
        if (forward.negative_cycle || backward.negative_cycle ||
            (backward.dist[g_.source()] && backward.dist[g_.source()]->first < -1)) {
            checks_held = false;
            return false;
        }
        const auto& reach_t = forward.dist[g_.sink()];
        if (!reach_t || reach_t->first > 1)
            return false;

        std::vector<int> path;
        for (int v = g_.sink(); v != g_.source(); v = arcs[forward.pred[v]].from)
            path.push_back(forward.pred[v]);

        std::optional<Amount> delta;
        for (int i : path) {
            const Arc& a = arcs[i];
            std::optional<Amount> limit;
            if (a.forward && !saturated(a.edge))
                limit = capacity_[a.edge] + relief_[a.edge] - flow_[a.edge];
            else if (!a.forward)
                limit = relief_[a.edge].is_positive() ? relief_[a.edge] : flow_[a.edge];
            if (limit && (!delta || *limit < *delta))
                delta = limit;
        }
        if (!delta) {
            // Only saturated forward arcs: the path is too long to have been chosen.
            checks_held = false;
            return false;
        }
        for (int i : path) {
            const Arc& a = arcs[i];
            const int e = a.edge;
            if (a.forward) {
                if (saturated(e))
                    relief_[e] = relief_[e] + *delta;
                flow_[e] = flow_[e] + *delta;
            }
            else {
                if (relief_[e].is_positive())
                    relief_[e] = relief_[e] - *delta;
                flow_[e] = flow_[e] - *delta;
            }
        }
        ++augmentations;
        return true;
    }

    /// Residual arcs in edge-id order, forward arcs first. `drop_idle` removes
    /// forward arcs of edges without flow.
    std::vector<Arc> residual_arcs(bool drop_idle) const
    {
        std::vector<Arc> arcs;
        for (int e : order_) {
            if (drop_idle && flow_[e].is_zero())
                continue;
            const Edge& edge = g_.edge(e);
            arcs.push_back({edge.tail, edge.head, e, true, saturated(e) ? 1 : 0});
        }
        for (int e : order_) {
            if (!flow_[e].is_positive())
                continue;
            const Edge& edge = g_.edge(e);
            arcs.push_back({edge.head, edge.tail, e, false, relief_[e].is_positive() ? -1 : 0});
        }
        return arcs;
    }

    bool saturated(int e) const { return flow_[e] == capacity_[e] + relief_[e]; }

    Amount flow_value() const
    {
        Amount total;
        for (int e = 0; e < g_.edge_count(); ++e) {
            if (g_.edge(e).tail == g_.source())
                total += flow_[e];
            if (g_.edge(e).head == g_.source())
                total -= flow_[e];
        }
        return total;
    }

    Amount total_relief() const
    {
        Amount total;
        for (const auto& r : relief_)
            total += r;
        return total;
    }

    const std::vector<Amount>& flow() const { return flow_; }
    const std::vector<Amount>& relief() const { return relief_; }

    bool checks_held = true;
    int augmentations = 0;

private:
    Amount residual_capacity(const Arc& a) const
    {
        return a.forward ? capacity_[a.edge] + relief_[a.edge] - flow_[a.edge] : flow_[a.edge];
    }

    const Graph& g_;
    std::vector<Amount> capacity_;
    std::vector<Amount> flow_;
    std::vector<Amount> relief_;
    std::vector<int> order_;
};

} // namespace

std::set<std::string> edges_on_st_paths(const Graph& g)
{
    std::set<std::string> out;
    if (is_acyclic(g)) {
        auto from_s = reachable_from(g, g.source());
        auto to_t = reaching(g, g.sink());
        for (const auto& e : g.edges())
            if (from_s[e.tail] && to_t[e.head])
                out.insert(e.id);
        return out;
    }
    for (const auto& path : enumerate_st_paths(g))
        out.insert(path.begin(), path.end());
    return out;
}

bool is_double_cut(const Graph& g, const std::set<std::string>& edges)
{
    int level = cut_levels(g, edges)[g.sink()];
    return level < 0 || level >= 2;
}

DoubleCutLp solve_double_cut_lp(const Graph& g, const CostVector& costs)
{
    check_cut_costs(g, costs);
    const int m = g.edge_count();
    auto paths = enumerate_st_path_indices(g);
    auto ranks = g.edge_ranks();

    lp::LinearProgram program(m);
    for (int e = 0; e < m; ++e) {
        program.objective[e] = -costs.at(g.edge(e).id);
        std::vector<Rational> row(m);
        row[e] = 1;
        program.add(std::move(row), lp::Sense::LessEqual, 1);
    }
    for (const auto& path : paths) {
        std::vector<Rational> row(m);
        for (int e : path)
            row[e] = 1;
        program.add(std::move(row), lp::Sense::GreaterEqual, 2);
    }
    auto first = lp::solve(program);
    if (first.status != lp::Status::Optimal)
        throw DomainError(std::string("double-cut LP is ") + lp::to_string(first.status));

    // Among optimal points, the lexicographic tie-break is one more linear objective.
    lp::LinearProgram tie_break = program;
    tie_break.add(program.objective, lp::Sense::Equal, first.value);
    for (int e = 0; e < m; ++e)
        tie_break.objective[e] = -Rational(tie_weight(ranks[e]));
    auto second = lp::solve(tie_break);
    if (second.status != lp::Status::Optimal)
        throw DomainError(std::string("double-cut tie-break LP is ") + lp::to_string(second.status));

    DoubleCutLp result;
    result.value = -first.value;
    for (int e = 0; e < m; ++e) {
        const Rational& x = second.assignment[e];
        if (x == 1)
            result.edges.insert(g.edge(e).id);
        else if (x != 0)
            throw DomainError("double-cut LP returned a fractional vertex");
    }
    return result;
}

DoubleCutResult min_double_cut(const Graph& g, const CostVector& costs)
{
    check_cut_costs(g, costs);
    const int s = g.source();
    const int t = g.sink();
    for (const auto& e : g.edges())
        if (e.tail == s && e.head == t)
            throw MonopolyError("edge '" + e.id + "' joins source and sink directly");

    auto relevant = edges_on_st_paths(g);
    std::vector<std::string> relevant_ids(relevant.begin(), relevant.end());
    const Graph sub = g.edge_subgraph(relevant_ids);
    auto global_rank = g.edge_ranks();

    std::vector<Amount> capacity(sub.edge_count());
    for (int e = 0; e < sub.edge_count(); ++e) {
        const auto& id = sub.edge(e).id;
        capacity[e] = Amount(costs.at(id), tie_weight(global_rank[g.edge_index(id)]));
    }

    ReliefFlow state(sub, capacity);
    state.initial_max_flow();
    while (state.augment())
        if (state.augmentations >= max_augmentations) {
            state.checks_held = false;
            break;
        }

    DoubleCutResult result;
    result.residual_checks_held = state.checks_held;
    result.augmentations = state.augmentations;
    const Amount dual = state.flow_value() * 2 - state.total_relief();
    result.flow_value = state.flow_value().value;
    result.total_relief = state.total_relief().value;
    result.dual_objective = dual.value;
    std::set<std::string> relief_edges;
    for (int e = 0; e < sub.edge_count(); ++e) {
        result.flow[sub.edge(e).id] = state.flow()[e].value;
        result.relief[sub.edge(e).id] = state.relief()[e].value;
        if (state.relief()[e].is_positive())
            relief_edges.insert(sub.edge(e).id);
    }

    auto finish = [&](const std::vector<bool>& in1, const std::vector<bool>& in2) {
        auto cross1 = leaving(sub, in1);
        auto cross2 = leaving(sub, in2);
        result.double_cut = cross1;
        result.double_cut.insert(cross2.begin(), cross2.end());
        result.s1 = names_of(sub, in1);
        result.s2 = names_of(sub, in2);
        result.cost = 0;
        for (const auto& id : result.double_cut)
            result.cost += costs.at(id);
        result.cuts_disjoint = std::none_of(cross1.begin(), cross1.end(),
                                            [&](const std::string& id) { return cross2.count(id) > 0; });
        result.relief_edges_cross = std::all_of(relief_edges.begin(), relief_edges.end(), [&](const std::string& id) {
            return result.double_cut.count(id) > 0;
        });
    };

    // A pair of s-t cuts whose crossing edges form a double cut costing exactly the dual objective.
    auto certify = [&](const std::vector<bool>& in1, const std::vector<bool>& in2) {
        if (!in1[s] || in1[t] || !in2[s] || in2[t])
            return false;
        auto candidate = leaving(sub, in1);
        auto second = leaving(sub, in2);
        candidate.insert(second.begin(), second.end());
        if (!is_double_cut(sub, candidate))
            return false;
        Amount price;
        for (const auto& id : candidate)
            price += capacity[sub.edge_index(id)];
        if (price != dual)
            return false;
        finish(in1, in2);
        result.certified = true;
        return true;
    };

    const int n = sub.vertex_count();
    if (state.checks_held) {
        auto idle_free = state.residual_arcs(true);
        auto dist = bellman_ford(n, idle_free, {s}, false);
        if (!dist.negative_cycle) {
            std::vector<bool> in1(n), threshold(n);
            for (int v = 0; v < n; ++v) {
                in1[v] = dist.dist[v] && dist.dist[v]->first <= 0;
                threshold[v] = dist.dist[v] && dist.dist[v]->first <= 1;
            }

            std::vector<std::vector<int>> fwd(n), rev(n);
            for (const auto& a : idle_free) {
                fwd[a.from].push_back(a.to);
                rev[a.to].push_back(a.from);
            }
            auto sweep = [&](int start, const std::vector<std::vector<int>>& adj) {
                std::vector<bool> seen(n, false);
                std::vector<int> stack{start};
                seen[start] = true;
                while (!stack.empty()) {
                    int v = stack.back();
                    stack.pop_back();
                    for (int w : adj[v])
                        if (!seen[w]) {
                            seen[w] = true;
                            stack.push_back(w);
                        }
                }
                return seen;
            };
            auto to_t = sweep(t, rev);
            std::vector<int> u_set;
            std::vector<bool> in_u(n, false);
            for (const auto& id : relief_edges) {
                const Edge& e = sub.edge(sub.edge_index(id));
                if (dist.dist[e.tail] && dist.dist[e.tail]->first <= 0)
                    continue;
                auto from_head = sweep(e.head, fwd);
                for (int w = 0; w < n; ++w)
                    if (from_head[w] && to_t[w] && !in_u[w]) {
                        in_u[w] = true;
                        u_set.push_back(w);
                    }
            }
            std::vector<bool> in2(n, true);
            if (!u_set.empty()) {
                auto to_u = bellman_ford(n, idle_free, u_set, true);
                for (int y = 0; y < n; ++y)
                    if (to_u.dist[y] && to_u.dist[y]->first <= 0)
                        in2[y] = false;
            }

            if (certify(in1, in2))
                result.extraction = CutExtraction::UConstruction;
            else if (certify(in1, threshold))
                result.extraction = CutExtraction::DistanceThreshold;
        }
    }

    if (!result.certified) {
        CostVector relevant_costs;
        for (const auto& id : relevant)
            relevant_costs[id] = costs.at(id);
        auto exact = solve_double_cut_lp(sub, relevant_costs);
        auto level = cut_levels(sub, exact.edges);
        std::vector<bool> in1(n), in2(n);
        for (int v = 0; v < n; ++v) {
            in1[v] = level[v] == 0;
            in2[v] = level[v] == 0 || level[v] == 1;
        }
        finish(in1, in2);
        result.double_cut = exact.edges;
        result.cost = exact.value;
        result.method = DoubleCutMethod::LpFallback;
        result.extraction = CutExtraction::Lp;
        result.certified = result.cost == result.dual_objective && state.checks_held;
    }
    return result;
}

ContractedCut contract_to_h(const Graph& g, const DoubleCutResult& dc)
{
    auto relevant = edges_on_st_paths(g);
    for (const auto& id : dc.double_cut)
        if (!relevant.count(id))
            throw DomainError("double-cut edge '" + id + "' lies on no s-t path");
    std::vector<std::string> ids(relevant.begin(), relevant.end());
    auto [h, map] = contract_edges(g.edge_subgraph(ids), dc.double_cut);

    ContractedCut out;
    const int s = h.source();
    const int t = h.sink();
    std::map<std::string, PairGroup> groups;
    for (const auto& e : h.edges()) {
        bool into = e.tail == s && e.head != t && e.head != s;
        bool out_of = e.head == t && e.tail != s && e.tail != t;
        if (!into && !out_of)
            throw DomainError("contracted graph has an s-t path of length other than 2 through edge '" + e.id +
                              "'; the double cut is not minimal");
        const std::string& middle = h.vertex_name(into ? e.head : e.tail);
        auto& group = groups[middle];
        group.vertex = middle;
        (into ? group.into : group.out_of).push_back(e.id);
    }
    for (auto& [name, group] : groups) {
        if (group.into.empty() || group.out_of.empty())
            throw DomainError("contracted vertex '" + name + "' is not on an s-t path of length 2");
        std::sort(group.into.begin(), group.into.end());
        std::sort(group.out_of.begin(), group.out_of.end());
        out.groups.push_back(std::move(group));
    }
    out.h = std::move(h);
    out.vertex_map = std::move(map);
    return out;
}

Graph cut_conflict_graph(const ContractedCut& contracted)
{
    Graph conflict(false);
    std::vector<std::string> ids;
    for (const auto& group : contracted.groups) {
        ids.insert(ids.end(), group.into.begin(), group.into.end());
        ids.insert(ids.end(), group.out_of.begin(), group.out_of.end());
    }
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids)
        conflict.add_vertex(id);
    for (const auto& group : contracted.groups)
        for (const auto& a : group.into)
            for (const auto& b : group.out_of)
                conflict.add_edge(a + "|" + b, a, b);
    return conflict;
}

namespace {

// Each group is a complete bipartite component; a minimal cover takes one whole side.
class CutCoverSolver : public CoverSolver {
public:
    CutCoverSolver(const ContractedCut& contracted, const VcInstance& inst)
    {
        for (const auto& group : contracted.groups) {
            Sides sides;
            for (const auto& id : group.into)
                sides.first.push_back(inst.index(id));
            for (const auto& id : group.out_of)
                sides.second.push_back(inst.index(id));
            for (int v : sides.first)
                group_of_[v] = groups_.size();
            for (int v : sides.second)
                group_of_[v] = groups_.size();
            groups_.push_back(std::move(sides));
        }
    }

    std::vector<int> min_cover(const std::vector<Rational>& cost) const override
    {
        std::vector<int> cover;
        for (const auto& [a, b] : groups_) {
            const auto& side = price(a, cost) < price(b, cost) ? a : b;
            cover.insert(cover.end(), side.begin(), side.end());
        }
        std::sort(cover.begin(), cover.end());
        return cover;
    }

    Rational min_cost_containing(const std::vector<Rational>& cost, int u) const override
    {
        std::vector<Rational> zeroed = cost;
        zeroed[u] = 0;
        Rational total = 0;
        for (const auto& [a, b] : groups_)
            total += std::min(price(a, zeroed).value, price(b, zeroed).value);
        return total;
    }

    std::optional<Rational> min_cost_excluding(const std::vector<Rational>& cost, int u) const override
    {
        Rational total = 0;
        std::size_t home = group_of_.at(u);
        for (std::size_t i = 0; i < groups_.size(); ++i) {
            const auto& [a, b] = groups_[i];
            if (i == home) {
                bool in_a = std::find(a.begin(), a.end(), u) != a.end();
                total += price(in_a ? b : a, cost).value;
            }
            else {
                total += std::min(price(a, cost).value, price(b, cost).value);
            }
        }
        return total;
    }

private:
    using Sides = std::pair<std::vector<int>, std::vector<int>>;

    static Amount price(const std::vector<int>& side, const std::vector<Rational>& cost)
    {
        Amount total;
        for (int v : side)
            total += Amount(cost[v], tie_weight(v));
        return total;
    }

    std::vector<Sides> groups_;
    std::map<int, std::size_t> group_of_;
};

} // namespace

VcInstance cut_vc_instance(const ContractedCut& contracted)
{
    auto conflict = cut_conflict_graph(contracted);
    std::map<std::string, Rational> tot;
    for (const auto& name : conflict.vertex_names())
        tot[name] = 1;
    auto inst = VcInstance::build(conflict, tot);
    return inst.with_solver(std::make_shared<CutCoverSolver>(contracted, inst));
}

CutAuctionOutcome cm_run(const Graph& g, const CostVector& bids)
{
    CutAuctionOutcome result;
    result.double_cut = min_double_cut(g, bids);
    result.contracted = contract_to_h(g, result.double_cut);
    auto inst = cut_vc_instance(result.contracted);
    CostVector inner_bids;
    for (const auto& id : result.double_cut.double_cut)
        inner_bids[id] = bids.at(id);
    auto inner = ev_run(inst, inner_bids);

    AuctionOutcome& out = result.outcome;
    out.winners = inner.winners;
    out.scaled_bids = inner.scaled_bids;
    out.lambdas = inner.lambdas;
    for (const auto& [id, bid] : bids) {
        out.payments[id] = 0.0;
        out.exact_payments[id] = 0;
    }
    Rational everything = 0;
    for (const auto& [id, bid] : bids)
        everything += bid;
    Rational total = 0;
    for (const auto& e : inner.winners) {
        Rational pay = inner.exact_payments.at(e);
        // Priced above every other edge combined, e drops out unless it is unavoidable.
        CostVector priced_out = bids;
        priced_out[e] = everything + 1;
        auto alternative = min_double_cut(g, priced_out);
        if (!alternative.double_cut.count(e)) {
            Rational alternative_cost = 0;
            for (const auto& id : alternative.double_cut)
                alternative_cost += bids.at(id);
            pay = std::min(pay, Rational(alternative_cost - result.double_cut.cost + bids.at(e)));
        }
        out.exact_payments[e] = pay;
        out.payments[e] = to_double(pay);
        total += pay;
    }
    out.total = to_double(total);
    return result;
}

} // namespace frugal
