#include "fixtures.hpp"

#include "frugal/errors.hpp"
#include "frugal/flow_mech.hpp"
#include "frugal/generators.hpp"
#include "frugal/oracle.hpp"
#include "frugal/set_system.hpp"

#include <doctest.h>

using namespace frugal;
using namespace fixtures;

namespace {

using Pairs = std::set<std::pair<std::string, std::string>>;

std::set<std::string> all_edges(const Graph& g)
{
    auto ids = g.sorted_edge_ids();
    return {ids.begin(), ids.end()};
}

Graph diamond_with_direct_edge()
{
    return network({"s", "a", "b", "t"},
                   {{"d", "s", "t"}, {"sa", "s", "a"}, {"at", "a", "t"}, {"sb", "s", "b"}, {"bt", "b", "t"},
                    {"ab", "a", "b"}});
}

// Cheapest union of `units` edge-disjoint paths among all path subsets.
Rational brute_flow_cost(const Graph& g, int units, const CostVector& c)
{
    auto paths = enumerate_st_paths(g);
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << paths.size()); ++mask) {
        if (std::popcount(mask) != units)
            continue;
        std::set<std::string> used;
        bool disjoint = true;
        for (std::size_t i = 0; i < paths.size(); ++i)
            if (mask >> i & 1)
                for (const auto& e : paths[i])
                    disjoint = used.insert(e).second && disjoint;
        if (!disjoint)
            continue;
        Rational cost = 0;
        for (const auto& e : used)
            cost += c.at(e);
        if (!best || cost < *best)
            best = cost;
    }
    return *best;
}

} // namespace

TEST_SUITE("flow-mech")
{
    TEST_CASE("pruning to the cheapest (k+1)-flow")
    {
        CHECK(min_cost_kplus1_flow(parallel(3), 1, costs({{"e1", 1}, {"e2", 2}, {"e3", 3}})) ==
              std::set<std::string>{"e1", "e2"});
        Graph fig = three_path_network();
        CHECK(min_cost_kplus1_flow(fig, 2, costs({{"u", 1}, {"v", 1}, {"w", 1}, {"x", 1}, {"y", 1}})) ==
              all_edges(fig));
        CHECK_THROWS_AS(min_cost_kplus1_flow(parallel(2), 2, costs({{"e1", 1}, {"e2", 1}})), MonopolyError);
    }

    TEST_CASE("pruning matches enumeration of path unions")
    {
        Graph g = diamond_with_direct_edge();
        std::mt19937_64 rng(17);
        for (int round = 0; round < 30; ++round) {
            auto c = random_edge_costs(rng, g);
            auto h = min_cost_kplus1_flow(g, 1, c);
            Rational cost = 0;
            for (const auto& e : h)
                cost += c.at(e);
            CHECK(cost == brute_flow_cost(g, 2, c));
            CHECK_NOTHROW(check_unit_flow(g, h, 2));
        }
    }

    TEST_CASE("conflict graph of the three-path network")
    {
        Graph fig = three_path_network();
        auto red = vc_from_flow(fig, all_edges(fig), 2);
        CHECK(conflict_pairs(red.conflict) ==
              Pairs{{"u", "v"}, {"u", "w"}, {"u", "x"}, {"u", "y"}, {"v", "w"}, {"x", "y"}, {"v", "y"}, {"w", "x"}});
        for (const auto& [agent, value] : red.tot)
            CHECK(value == 2);
    }

    TEST_CASE("two parallel edges conflict")
    {
        Graph g = parallel(2);
        auto red = vc_from_flow(g, all_edges(g), 1);
        CHECK(conflict_pairs(red.conflict) == Pairs{{"e1", "e2"}});
    }

    TEST_CASE("reachability rule matches minimum-cut enumeration on series-parallel flows")
    {
        // Series-parallel 3-flow: three parallel s-a edges, then a-t split into a chain and two direct edges.
        Graph g = network({"s", "a", "b", "t"},
                          {{"p1", "s", "a"}, {"p2", "s", "a"}, {"p3", "s", "a"}, {"q1", "a", "b"}, {"q2", "b", "t"},
                           {"q3", "a", "t"}, {"q4", "a", "t"}});
        auto h = all_edges(g);
        CHECK(conflict_pairs(vc_from_flow(g, h, 2).conflict) == min_cut_conflicts(g, h));
    }

    TEST_CASE("second-price behaviour on two parallel edges")
    {
        auto out = fm_run(parallel(2), 1, costs({{"e1", 1}, {"e2", 3}}));
        CHECK(out.outcome.winners == std::set<std::string>{"e1"});
        CHECK(out.outcome.payments.at("e1") == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(out.outcome.payments.at("e2") == 0.0);
    }

    TEST_CASE("three-path network with one costly edge")
    {
        Graph fig = three_path_network();
        auto out = fm_run(fig, 2, costs({{"u", 0}, {"v", 1}, {"w", 0}, {"x", 0}, {"y", 0}}));
        CHECK(out.pruned == all_edges(fig));
        CHECK(!out.outcome.winners.count("v"));
        CHECK(out.outcome.winners == std::set<std::string>{"u", "w", "y"});
        for (const auto& w : out.outcome.winners)
            CHECK(out.outcome.exact_payments.at(w) >= 0);
    }

    TEST_CASE("zero costs buy the first k-flow for free")
    {
        Graph fig = three_path_network();
        auto out = fm_run(fig, 1, costs({{"u", 0}, {"v", 0}, {"w", 0}, {"x", 0}, {"y", 0}}));
        CHECK(out.outcome.winners.size() >= 1);
        CHECK(out.outcome.total == 0.0);
        CHECK(out.outcome.winners == std::set<std::string>{"u"});
    }

    TEST_CASE("nu of a (k+1)-flow by longest path")
    {
        CHECK(nu_flow_fast(parallel(2), {"e1", "e2"}, 1, costs({{"e1", 1}, {"e2", 3}})) == 3);
        Graph fig = three_path_network();
        auto unit = costs({{"u", 1}, {"v", 1}, {"w", 1}, {"x", 1}, {"y", 1}});
        CHECK(nu_flow_fast(fig, all_edges(fig), 2, unit) == 4);
        auto zero = costs({{"u", 0}, {"v", 0}, {"w", 0}, {"x", 0}, {"y", 0}});
        CHECK(nu_flow_fast(fig, all_edges(fig), 2, zero) == 0);
    }

    TEST_CASE("longest-path nu agrees with the LP on random flows")
    {
        std::mt19937_64 rng(23);
        for (int round = 0; round < 25; ++round) {
            int k = 1 + round % 2;
            Graph g = random_flow_network(rng, k + 1, 6, 9);
            auto c = random_edge_costs(rng, g);
            auto h = min_cost_kplus1_flow(g, k, c);
            std::vector<std::string> ids(h.begin(), h.end());
            CHECK(nu_flow_fast(g, h, k, c) == nu(SetSystem::k_flow(g.edge_subgraph(ids), k), restrict_costs(c, h)).value);
        }
    }

    TEST_CASE("peeling one decomposition can undershoot the LP")
    {
        Graph g = network({"s", "a", "b", "t"}, {{"e1", "s", "a"},
                                                 {"e3", "s", "b"},
                                                 {"e4", "b", "t"},
                                                 {"e5", "a", "b"},
                                                 {"e6", "b", "t"}});
        auto c = costs({{"e1", 5}, {"e3", 0}, {"e4", 0}, {"e5", 5}, {"e6", 10}});
        std::set<std::string> h{"e1", "e3", "e4", "e5", "e6"};
        std::vector<std::string> ids(h.begin(), h.end());
        Rational lp = nu(SetSystem::k_flow(g.edge_subgraph(ids), 1), c).value;
        CHECK(nu_flow_fast(g, h, 1, c) == lp);
        CHECK(lp == 20);
        Rational low = std::min(nu_flow_by_peeling(g, h, 1, c, false), nu_flow_by_peeling(g, h, 1, c, true));
        CHECK(low <= lp);
    }

    TEST_CASE("flow validity")
    {
        Graph fig = three_path_network();
        CHECK_NOTHROW(check_unit_flow(fig, all_edges(fig), 3));
        CHECK_THROWS_AS(check_unit_flow(fig, {"u", "v"}, 2), DomainError);
    }
}
