#include "frugal/set_system.hpp"

#include "frugal/errors.hpp"
#include "frugal/lp.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

namespace frugal {

const char* to_string(SystemKind kind)
{
    switch (kind) {
    case SystemKind::VertexCover:
        return "vertex-cover";
    case SystemKind::KFlow:
        return "k-flow";
    case SystemKind::Cut:
        return "cut";
    }
    return "unknown";
}

SystemKind parse_system_kind(std::string_view text)
{
    if (text == "vertex-cover")
        return SystemKind::VertexCover;
    if (text == "k-flow")
        return SystemKind::KFlow;
    if (text == "cut")
        return SystemKind::Cut;
    throw InputError("unknown set system kind '" + std::string(text) + "'");
}

namespace {

AgentMask bit(int i) { return AgentMask{1} << i; }

struct MisSearch {
    const std::vector<AgentMask>& neighbours;
    std::size_t cap;
    std::vector<AgentMask> found;

    // Bron-Kerbosch with pivoting on the complement graph.
    void expand(AgentMask r, AgentMask p, AgentMask x)
    {
        if (p == 0 && x == 0) {
            if (found.size() >= cap)
                throw ScaleError("more than " + std::to_string(cap) + " maximal independent sets");
            found.push_back(r);
            return;
        }
        int pivot = std::countr_zero(p | x);
        AgentMask candidates = p & neighbours[pivot];
        // Vertices adjacent to the pivot are the ones the pivot cannot stand in for.
        candidates |= p & bit(pivot);
        while (candidates) {
            int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            AgentMask compatible = ~(neighbours[v] | bit(v));
            expand(r | bit(v), p & compatible, x & compatible);
            p &= ~bit(v);
            x |= bit(v);
        }
    }
};

} // namespace

std::vector<AgentMask> maximal_independent_sets(const std::vector<AgentMask>& neighbours, std::size_t cap)
{
    const int n = static_cast<int>(neighbours.size());
    if (n > 64)
        throw ScaleError("independent-set enumeration is limited to 64 vertices");
    AgentMask p = 0;
    for (int v = 0; v < n; ++v)
        if (!(neighbours[v] & bit(v)))
            p |= bit(v);
    MisSearch search{neighbours, cap, {}};
    search.expand(0, p, 0);
    std::sort(search.found.begin(), search.found.end());
    return search.found;
}

struct SetSystem::Cache {
    std::once_flag once;
    std::vector<AgentMask> masks;
    std::exception_ptr error;
};

SetSystem::SetSystem(SystemKind kind, Graph g, int k)
    : kind_(kind), graph_(std::move(g)), k_(k), cache_(std::make_shared<Cache>())
{
    if (kind_ == SystemKind::VertexCover) {
        agents_ = graph_.vertex_names();
        std::sort(agents_.begin(), agents_.end());
    }
    else {
        agents_ = graph_.sorted_edge_ids();
        graph_.source();
        graph_.sink();
    }
    if (agents_.size() > 64)
        throw ScaleError("set systems are limited to 64 agents");
}

SetSystem SetSystem::vertex_cover(Graph g) { return SetSystem(SystemKind::VertexCover, std::move(g), 0); }

SetSystem SetSystem::k_flow(Graph g, int k)
{
    if (k < 1)
        throw InputError("k must be a positive integer");
    return SetSystem(SystemKind::KFlow, std::move(g), k);
}

SetSystem SetSystem::cut(Graph g) { return SetSystem(SystemKind::Cut, std::move(g), 0); }

int SetSystem::rank(std::string_view agent) const
{
    auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
    if (it == agents_.end() || *it != agent)
        throw InputError("unknown agent '" + std::string(agent) + "'");
    return static_cast<int>(it - agents_.begin());
}

AgentMask SetSystem::mask_of(const std::set<std::string>& agent_set) const
{
    AgentMask mask = 0;
    for (const auto& a : agent_set)
        mask |= bit(rank(a));
    return mask;
}

std::set<std::string> SetSystem::agents_of(AgentMask mask) const
{
    std::set<std::string> out;
    for (; mask; mask &= mask - 1)
        out.insert(agents_[std::countr_zero(mask)]);
    return out;
}

const std::vector<AgentMask>& SetSystem::minimal_masks() const
{
    std::call_once(cache_->once, [this] {
        try {
            cache_->masks = enumerate();
        }
        catch (...) {
            cache_->error = std::current_exception();
        }
    });
    if (cache_->error)
        std::rethrow_exception(cache_->error);
    return cache_->masks;
}

std::vector<std::set<std::string>> SetSystem::minimal_feasible_sets() const
{
    std::vector<std::set<std::string>> out;
    for (AgentMask m : minimal_masks())
        out.push_back(agents_of(m));
    return out;
}

std::vector<AgentMask> SetSystem::enumerate() const
{
    std::vector<AgentMask> masks;
    switch (kind_) {
    case SystemKind::VertexCover:
        masks = enumerate_vertex_covers();
        break;
    case SystemKind::KFlow:
        masks = enumerate_flows();
        break;
    case SystemKind::Cut:
        masks = enumerate_cuts();
        break;
    }
    std::sort(masks.begin(), masks.end());
    if (masks.empty())
        throw MonopolyError(std::string(to_string(kind_)) + " system has no feasible set");
    AgentMask common = masks.front();
    for (AgentMask m : masks)
        common &= m;
    if (common)
        throw MonopolyError("agent '" + agents_[std::countr_zero(common)] + "' lies in every feasible set");
    return masks;
}

std::vector<AgentMask> SetSystem::enumerate_vertex_covers() const
{
    const int n = agent_count();
    if (n > default_caps().max_enum_agents)
        throw ScaleError("vertex-cover enumeration is limited to " +
                         std::to_string(default_caps().max_enum_agents) + " agents");
    std::vector<AgentMask> adjacency(n, 0);
    for (const auto& e : graph_.edges()) {
        int a = rank(graph_.vertex_name(e.tail));
        int b = rank(graph_.vertex_name(e.head));
        adjacency[a] |= bit(b);
        adjacency[b] |= bit(a);
    }
    AgentMask all = n == 64 ? ~AgentMask{0} : bit(n) - 1;
    std::vector<AgentMask> covers;
    for (AgentMask independent : maximal_independent_sets(adjacency))
        covers.push_back(all & ~independent);
    return covers;
}

std::vector<AgentMask> SetSystem::enumerate_flows() const
{
    const int m = agent_count();
    if (m > default_caps().max_flow_enum_edges)
        throw ScaleError("k-flow enumeration is limited to " +
                         std::to_string(default_caps().max_flow_enum_edges) + " edges");
    std::vector<int> edge_of_rank(m);
    for (int r = 0; r < m; ++r)
        edge_of_rank[r] = graph_.edge_index(agents_[r]);

    const AgentMask subsets = bit(m);
    std::vector<char> feasible(subsets, 0);
    std::unique_ptr<bool[]> enabled(new bool[graph_.edge_count()]);
    const std::span<const bool> enabled_view(enabled.get(), graph_.edge_count());
    for (AgentMask mask = 0; mask < subsets; ++mask) {
        if (std::popcount(mask) < k_)
            continue;
        std::fill(enabled.get(), enabled.get() + graph_.edge_count(), false);
        for (int r = 0; r < m; ++r)
            if (mask & bit(r))
                enabled[edge_of_rank[r]] = true;
        feasible[mask] = unit_max_flow(graph_, enabled_view, k_) >= k_;
    }
    std::vector<AgentMask> out;
    for (AgentMask mask = 0; mask < subsets; ++mask) {
        if (!feasible[mask])
            continue;
        bool minimal = true;
        for (AgentMask rest = mask; rest && minimal; rest &= rest - 1)
            minimal = !feasible[mask & ~(rest & (~rest + 1))];
        if (minimal)
            out.push_back(mask);
    }
    return out;
}

std::vector<AgentMask> SetSystem::enumerate_cuts() const
{
    const int s = graph_.source();
    const int t = graph_.sink();
    std::vector<int> internal;
    for (int v = 0; v < graph_.vertex_count(); ++v)
        if (v != s && v != t)
            internal.push_back(v);
    if (static_cast<int>(internal.size()) > default_caps().max_enum_agents)
        throw ScaleError("cut enumeration is limited to " + std::to_string(default_caps().max_enum_agents) +
                         " non-terminal vertices");
    std::vector<int> rank_of_edge(graph_.edge_count());
    for (int e = 0; e < graph_.edge_count(); ++e)
        rank_of_edge[e] = rank(graph_.edge(e).id);

    std::vector<AgentMask> cuts;
    std::vector<char> side(graph_.vertex_count(), 0);
    const std::uint64_t count = std::uint64_t{1} << internal.size();
    for (std::uint64_t choice = 0; choice < count; ++choice) {
        side[s] = 1;
        side[t] = 0;
        for (std::size_t i = 0; i < internal.size(); ++i)
            side[internal[i]] = (choice >> i) & 1;
        AgentMask crossing = 0;
        for (int e = 0; e < graph_.edge_count(); ++e)
            if (side[graph_.edge(e).tail] && !side[graph_.edge(e).head])
                crossing |= bit(rank_of_edge[e]);
        cuts.push_back(crossing);
    }
    std::sort(cuts.begin(), cuts.end(),
              [](AgentMask a, AgentMask b) { return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<AgentMask> minimal;
    for (AgentMask c : cuts) {
        bool dominated = false;
        for (AgentMask m : minimal)
            if ((m & c) == m) {
                dominated = true;
                break;
            }
        if (!dominated)
            minimal.push_back(c);
    }
    return minimal;
}

std::vector<Rational> SetSystem::cost_array(const CostVector& costs) const
{
    std::vector<Rational> out(agents_.size());
    for (const auto& [agent, cost] : costs) {
        if (cost < 0)
            throw InputError("negative cost for agent '" + agent + "'");
        out[rank(agent)] = cost;
    }
    if (costs.size() != agents_.size())
        throw InputError("cost vector must price every agent exactly once");
    return out;
}

namespace {

Rational mask_cost(const std::vector<Rational>& c, AgentMask mask)
{
    Rational total = 0;
    for (; mask; mask &= mask - 1)
        total += c[std::countr_zero(mask)];
    return total;
}

} // namespace

AgentMask SetSystem::cheapest_set(const CostVector& costs) const
{
    auto c = cost_array(costs);
    const auto& masks = minimal_masks();
    AgentMask best = masks.front();
    Rational best_cost = mask_cost(c, best);
    for (AgentMask m : masks) {
        Rational cost = mask_cost(c, m);
        if (cost < best_cost || (cost == best_cost && m < best)) {
            best = m;
            best_cost = cost;
        }
    }
    return best;
}

NuResult nu(const SetSystem& sys, const CostVector& costs)
{
    auto c = sys.cost_array(costs);
    const auto& masks = sys.minimal_masks();
    const AgentMask winners = sys.cheapest_set(costs);

    std::vector<int> column_of(sys.agent_count(), -1);
    std::vector<int> winner_ranks;
    for (AgentMask rest = winners; rest; rest &= rest - 1) {
        int r = std::countr_zero(rest);
        column_of[r] = static_cast<int>(winner_ranks.size());
        winner_ranks.push_back(r);
    }

    NuResult result;
    result.winning_set = sys.agents_of(winners);
    for (int r = 0; r < sys.agent_count(); ++r)
        result.bids[sys.agents()[r]] = c[r];

    if (winner_ranks.empty()) {
        result.value = 0;
        return result;
    }

    lp::LinearProgram program(winner_ranks.size());
    program.lower_bounds.resize(winner_ranks.size());
    for (std::size_t j = 0; j < winner_ranks.size(); ++j) {
        program.objective[j] = 1;
        program.lower_bounds[j] = c[winner_ranks[j]];
    }
    for (AgentMask other : masks) {
        AgentMask only_winners = winners & ~other;
        if (other == winners || only_winners == 0)
            continue;
        std::vector<Rational> row(winner_ranks.size());
        for (AgentMask rest = only_winners; rest; rest &= rest - 1)
            row[column_of[std::countr_zero(rest)]] = 1;
        program.add(std::move(row), lp::Sense::LessEqual, mask_cost(c, other & ~winners));
    }
    auto solution = lp::solve(program);
    if (solution.status != lp::Status::Optimal)
        throw DomainError(std::string("equilibrium LP is ") + lp::to_string(solution.status));
    result.value = solution.value;
    for (std::size_t j = 0; j < winner_ranks.size(); ++j)
        result.bids[sys.agents()[winner_ranks[j]]] = solution.assignment[j];
    return result;
}

CostVector unit_costs(const std::vector<std::string>& agents, const std::string& agent)
{
    CostVector c;
    for (const auto& a : agents)
        c[a] = a == agent ? 1 : 0;
    return c;
}

Rational tot(const SetSystem& sys, const std::string& agent)
{
    sys.rank(agent);
    return nu(sys, unit_costs(sys.agents(), agent)).value;
}

bool has_tight_sets(const SetSystem& sys, const NuResult& result)
{
    auto b = sys.cost_array(result.bids);
    AgentMask winners = sys.mask_of(result.winning_set);
    Rational winning_total = mask_cost(b, winners);
    AgentMask covered = 0;
    for (AgentMask other : sys.minimal_masks())
        if (mask_cost(b, other) == winning_total)
            covered |= winners & ~other;
    return covered == winners;
}

Rational fractional_clique_number(const Graph& g)
{
    const int n = g.vertex_count();
    if (n == 0)
        return 0;
    if (n > 64)
        throw ScaleError("fractional clique number is limited to 64 vertices");
    auto adjacency = g.neighbours();
    std::vector<AgentMask> masks(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u : adjacency[v])
            masks[v] |= bit(u);
    lp::LinearProgram program(n);
    for (int v = 0; v < n; ++v)
        program.objective[v] = 1;
    for (AgentMask independent : maximal_independent_sets(masks)) {
        std::vector<Rational> row(n);
        for (int v = 0; v < n; ++v)
            if (independent & bit(v))
                row[v] = 1;
        program.add(std::move(row), lp::Sense::LessEqual, 1);
    }
    auto solution = lp::solve(program);
    if (solution.status != lp::Status::Optimal)
        throw DomainError(std::string("fractional clique LP is ") + lp::to_string(solution.status));
    return solution.value;
}

Graph neighbourhood_graph(const Graph& g, std::string_view vertex)
{
    int v = g.vertex_index(vertex);
    auto adjacency = g.neighbours();
    std::vector<int> around;
    for (int u : adjacency[v])
        if (u != v)
            around.push_back(u);
    std::sort(around.begin(), around.end());
    return induced_subgraph(g, around);
}

CostVector restrict_costs(const CostVector& costs, const std::set<std::string>& keep)
{
    CostVector out;
    for (const auto& id : keep) {
        auto it = costs.find(id);
        if (it == costs.end())
            throw InputError("missing cost for agent '" + id + "'");
        out.emplace(id, it->second);
    }
    return out;
}

} // namespace frugal
