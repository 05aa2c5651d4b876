#include "frugal/oracle.hpp"

#include "frugal/caps.hpp"
#include "frugal/cut_mech.hpp"
#include "frugal/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

namespace frugal {

BruteDoubleCut brute_double_cut(const Graph& g, const CostVector& costs)
{
    const int m = g.edge_count();
    if (m > default_caps().max_brute_cut_edges) {
        auto lp = solve_double_cut_lp(g, costs);
        return {lp.value, lp.edges};
    }
    auto ids = g.sorted_edge_ids();
    std::vector<Rational> price(m);
    for (int r = 0; r < m; ++r) {
        auto it = costs.find(ids[r]);
        if (it == costs.end())
            throw InputError("missing cost for edge '" + ids[r] + "'");
        price[r] = it->second;
    }
    std::optional<std::pair<Rational, std::uint64_t>> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Rational cost = 0;
        for (std::uint64_t rest = mask; rest; rest &= rest - 1)
            cost += price[std::countr_zero(rest)];
        if (best && (cost > best->first || (cost == best->first && mask > best->second)))
            continue;
        std::set<std::string> chosen;
        for (std::uint64_t rest = mask; rest; rest &= rest - 1)
            chosen.insert(ids[std::countr_zero(rest)]);
        if (is_double_cut(g, chosen))
            best = {cost, mask};
    }
    BruteDoubleCut result;
    result.cost = best->first;
    for (std::uint64_t rest = best->second; rest; rest &= rest - 1)
        result.edges.insert(ids[std::countr_zero(rest)]);
    return result;
}

std::set<std::pair<std::string, std::string>> min_cut_conflicts(const Graph& g, const std::set<std::string>& h)
{
    const int s = g.source();
    const int t = g.sink();
    std::vector<int> h_edges;
    std::set<int> touched{s, t};
    for (const auto& id : h) {
        int e = g.edge_index(id);
        h_edges.push_back(e);
        touched.insert(g.edge(e).tail);
        touched.insert(g.edge(e).head);
    }
    std::vector<int> free;
    for (int v : touched)
        if (v != s && v != t)
            free.push_back(v);
    if (static_cast<int>(free.size()) > default_caps().max_enum_agents)
        throw ScaleError("min-cut enumeration is limited to " + std::to_string(default_caps().max_enum_agents) +
                         " non-terminal vertices");

    std::vector<std::vector<std::string>> cuts;
    std::size_t smallest = h.size() + 1;
    std::vector<char> side(g.vertex_count(), 0);
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << free.size()); ++choice) {
        side[s] = 1;
        side[t] = 0;
        for (std::size_t i = 0; i < free.size(); ++i)
            side[free[i]] = (choice >> i) & 1;
        std::vector<std::string> crossing;
        for (int e : h_edges)
            if (side[g.edge(e).tail] && !side[g.edge(e).head])
                crossing.push_back(g.edge(e).id);
        if (crossing.size() < smallest) {
            smallest = crossing.size();
            cuts.clear();
        }
        if (crossing.size() == smallest)
            cuts.push_back(std::move(crossing));
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& cut : cuts)
        for (std::size_t i = 0; i < cut.size(); ++i)
            for (std::size_t j = 0; j < cut.size(); ++j)
                if (cut[i] < cut[j])
                    pairs.emplace(cut[i], cut[j]);
    return pairs;
}

std::set<std::pair<std::string, std::string>> conflict_pairs(const Graph& conflict)
{
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& e : conflict.edges()) {
        const auto& a = conflict.vertex_name(e.tail);
        const auto& b = conflict.vertex_name(e.head);
        if (a != b)
            pairs.emplace(std::min(a, b), std::max(a, b));
    }
    return pairs;
}

namespace {

Rational random_rational(std::mt19937_64& rng, int max_numerator, int max_denominator)
{
    std::uniform_int_distribution<int> num(0, max_numerator);
    std::uniform_int_distribution<int> den(1, max_denominator);
    int p = num(rng);
    int q = den(rng);
    return make_rational(p, q);
}

std::string describe(const std::set<std::string>& winners)
{
    std::string out = "{";
    for (const auto& w : winners) {
        if (out.size() > 1)
            out += ",";
        out += w;
    }
    return out + "}";
}

} // namespace

PerturbationReport check_truthfulness(const MechanismUnderTest& mechanism, int trials, std::uint64_t seed,
                                      const TruthfulnessOptions& options)
{
    PerturbationReport report;
    report.instance = mechanism.name;
    report.seed = seed;
    report.trials = trials;
    std::mt19937_64 rng(seed);

    auto record = [&](std::string kind, const std::string& agent, const Rational& before, const Rational& after,
                      const std::set<std::string>& w0, const std::set<std::string>& w1, std::string detail) {
        report.violations.push_back({std::move(kind), agent, before, after, w0, w1, std::move(detail)});
    };

    for (int trial = 0; trial < trials; ++trial) {
        CostVector bids;
        for (const auto& a : mechanism.agents)
            bids[a] = random_rational(rng, 20, 4);
        AuctionOutcome base;
        try {
            base = mechanism.run(bids);
        }
        catch (const std::exception& error) {
            record("mechanism-error", "", 0, 0, {}, {}, error.what());
            continue;
        }

        for (const auto& agent : mechanism.agents) {
            const Rational bid = bids.at(agent);
            const bool wins = base.winners.count(agent) > 0;
            CostVector changed = bids;
            try {
                if (!wins) {
                    ++report.checks;
                    changed[agent] = bid + make_rational(std::uniform_int_distribution<int>(1, 20)(rng),
                                                         std::uniform_int_distribution<int>(1, 4)(rng));
                    auto after = mechanism.run(changed);
                    if (after.winners.count(agent))
                        record("raised-loser-won", agent, bid, changed[agent], base.winners, after.winners,
                               "losing agent won after raising its bid");
                    continue;
                }

                ++report.checks;
                auto pay_it = base.exact_payments.find(agent);
                Rational pay = pay_it != base.exact_payments.end() ? pay_it->second
                                                                   : rational_from_double(base.payments.at(agent));
                if (pay < bid)
                    record("payment-below-bid", agent, bid, pay, base.winners, base.winners,
                           "winner paid less than its bid");

                ++report.checks;
                changed[agent] = bid * make_rational(std::uniform_int_distribution<int>(0, 3)(rng), 4);
                auto lowered = mechanism.run(changed);
                if (lowered.winners != base.winners)
                    record("lowered-winner-changed-set", agent, bid, changed[agent], base.winners, lowered.winners,
                           "winning set changed from " + describe(base.winners) + " to " +
                               describe(lowered.winners));

                if (!options.bisect_thresholds)
                    continue;
                ++report.checks;
                auto wins_at = [&](const Rational& x) {
                    CostVector probe = bids;
                    probe[agent] = x;
                    return mechanism.run(probe).winners.count(agent) > 0;
                };
                Rational lo = bid;
                Rational hi = std::max(Rational(2 * bid), Rational(bid + 1));
                int doublings = 0;
                while (wins_at(hi) && doublings < 64) {
                    lo = hi;
                    hi *= 2;
                    ++doublings;
                }
                if (doublings == 64) {
                    record("threshold-mismatch", agent, bid, hi, base.winners, base.winners,
                           "agent still wins at every probed bid");
                    continue;
                }
                const double scale = std::max(1.0, to_double(pay));
                const Rational width = rational_from_double(options.threshold_tolerance * scale / 4);
                while (hi - lo > width) {
                    Rational mid = (lo + hi) / 2;
                    (wins_at(mid) ? lo : hi) = mid;
                }
                double gap = std::abs(to_double((lo + hi) / 2 - pay)) / scale;
                report.max_threshold_gap = std::max(report.max_threshold_gap, gap);
                if (gap > options.threshold_tolerance)
                    record("threshold-mismatch", agent, bid, (lo + hi) / 2, base.winners, base.winners,
                           "payment " + format_rational(pay) + " differs from bisected threshold");
            }
            catch (const std::exception& error) {
                record("mechanism-error", agent, bid, changed[agent], base.winners, {}, error.what());
            }
        }
    }
    return report;
}

double measure_frugality(const MechanismUnderTest& mechanism, const SetSystem& sys, const CostSampler& sampler,
                         int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int trial = 0; trial < trials; ++trial) {
        CostVector costs = sampler(rng);
        Rational lower = nu(sys, costs).value;
        if (sgn(lower) == 0)
            continue;
        worst = std::max(worst, mechanism.run(costs).total / to_double(lower));
    }
    return worst;
}

CostSampler unit_vector_sampler(std::vector<std::string> agents)
{
    auto next = std::make_shared<std::size_t>(0);
    return [agents = std::move(agents), next](std::mt19937_64&) {
        const std::string& agent = agents[(*next)++ % agents.size()];
        return unit_costs(agents, agent);
    };
}

CostSampler random_cost_sampler(std::vector<std::string> agents, int max_numerator, int max_denominator)
{
    return [agents = std::move(agents), max_numerator, max_denominator](std::mt19937_64& rng) {
        CostVector costs;
        for (const auto& a : agents)
            costs[a] = random_rational(rng, max_numerator, max_denominator);
        return costs;
    };
}

Graph conflict_graph_of(const VcInstance& inst)
{
    Graph g(false);
    for (const auto& a : all_agents(inst))
        g.add_vertex(a);
    const auto& agents = inst.agents();
    for (std::size_t u = 0; u < agents.size(); ++u)
        for (int v : inst.adjacency()[u])
            if (static_cast<std::size_t>(v) > u)
                g.add_edge(agents[u] + "|" + agents[v], agents[u], agents[v]);
    return g;
}

Mechanism broken_tie_break_mechanism(const VcInstance& inst)
{
    auto sys = std::make_shared<SetSystem>(SetSystem::vertex_cover(conflict_graph_of(inst)));
    return [sys](const CostVector& bids) {
        auto b = sys->cost_array(bids);
        std::optional<AgentMask> best;
        BigInt best_floor;
        Rational best_exact;
        for (AgentMask cover : sys->minimal_masks()) {
            BigInt floors = 0;
            Rational exact = 0;
            for (AgentMask rest = cover; rest; rest &= rest - 1) {
                const Rational& x = b[std::countr_zero(rest)];
                BigInt whole;
                mpz_fdiv_q(whole.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
                floors += whole;
                exact += x;
            }
            if (!best || floors < best_floor || (floors == best_floor && exact > best_exact)) {
                best = cover;
                best_floor = floors;
                best_exact = exact;
            }
        }
        AuctionOutcome out;
        Rational total = 0;
        for (const auto& a : sys->agents()) {
            out.payments[a] = 0.0;
            out.exact_payments[a] = 0;
        }
        for (const auto& a : sys->agents_of(*best)) {
            out.winners.insert(a);
            out.exact_payments[a] = bids.at(a);
            out.payments[a] = to_double(bids.at(a));
            total += bids.at(a);
        }
        out.total = to_double(total);
        return out;
    };
}

} // namespace frugal
