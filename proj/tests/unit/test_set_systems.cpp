#include "fixtures.hpp"

#include "frugal/errors.hpp"
#include "frugal/generators.hpp"
#include "frugal/set_system.hpp"

#include <doctest.h>

using namespace frugal;
using namespace fixtures;

namespace {

std::vector<std::set<std::string>> sets(std::initializer_list<std::set<std::string>> items) { return items; }

} // namespace

TEST_SUITE("set-systems")
{
    TEST_CASE("minimal feasible sets")
    {
        auto tri = SetSystem::vertex_cover(triangle());
        CHECK(tri.minimal_feasible_sets() == sets({{"a", "b"}, {"a", "c"}, {"b", "c"}}));

        CHECK(SetSystem::k_flow(parallel(2), 1).minimal_feasible_sets() == sets({{"e1"}, {"e2"}}));

        CHECK(SetSystem::cut(st_path()).minimal_feasible_sets() == sets({{"ab"}, {"bt"}, {"sa"}}));
    }

    TEST_CASE("monopolies are refused")
    {
        CHECK_THROWS_AS(SetSystem::k_flow(parallel(1), 1).minimal_masks(), MonopolyError);
        CHECK_THROWS_AS(SetSystem::k_flow(parallel(2), 2).minimal_masks(), MonopolyError);
        Graph g = network({"s", "t"}, {{"e", "s", "t"}});
        CHECK_THROWS_AS(SetSystem::cut(g).minimal_masks(), MonopolyError);
    }

    TEST_CASE("nu on small systems")
    {
        auto two = SetSystem::k_flow(parallel(2), 1);
        auto result = nu(two, costs({{"e1", 1}, {"e2", 3}}));
        CHECK(result.value == 3);
        CHECK(result.winning_set == std::set<std::string>{"e1"});
        CHECK(result.bids.at("e2") == 3);

        auto tri = SetSystem::vertex_cover(triangle());
        auto tri_result = nu(tri, costs({{"a", 1}, {"b", 0}, {"c", 0}}));
        CHECK(tri_result.value == 2);
        CHECK(tri_result.winning_set == std::set<std::string>{"b", "c"});
        CHECK(has_tight_sets(tri, tri_result));

        CHECK(nu(tri, costs({{"a", 0}, {"b", 0}, {"c", 0}})).value == 0);
        CHECK(nu(SetSystem::cut(st_path()), costs({{"sa", 0}, {"ab", 0}, {"bt", 0}})).value == 0);
    }

    TEST_CASE("nu scales linearly")
    {
        std::mt19937_64 rng(7);
        auto sys = SetSystem::vertex_cover(random_connected_graph(rng, 5, 0.4));
        auto c = random_costs(rng, sys.agents());
        CostVector scaled = c;
        for (auto& [id, value] : scaled)
            value *= make_rational(7, 3);
        CHECK(nu(sys, scaled).value == make_rational(7, 3) * nu(sys, c).value);
    }

    TEST_CASE("tot values")
    {
        auto tri = SetSystem::vertex_cover(triangle());
        for (const char* v : {"a", "b", "c"})
            CHECK(tot(tri, v) == 2);
        auto star = SetSystem::vertex_cover(star3());
        CHECK(tot(star, "c") == 1);
        CHECK(tot(star, "l1") == 1);
    }

    TEST_CASE("fractional clique numbers")
    {
        CHECK(fractional_clique_number(triangle()) == 3);
        CHECK(fractional_clique_number(five_cycle()) == make_rational(5, 2));
        CHECK(fractional_clique_number(undirected({"a", "b", "c", "d"}, {})) == 1);
    }

    TEST_CASE("tot equals the fractional clique number of the neighbourhood")
    {
        std::mt19937_64 rng(11);
        for (int round = 0; round < 10; ++round) {
            Graph g = random_connected_graph(rng, 6, 0.5);
            auto sys = SetSystem::vertex_cover(g);
            for (const auto& v : g.vertex_names())
                CHECK(tot(sys, v) == fractional_clique_number(neighbourhood_graph(g, v)));
        }
    }

    TEST_CASE("costs must cover every agent and be non-negative")
    {
        auto tri = SetSystem::vertex_cover(triangle());
        CHECK_THROWS_AS(tri.cost_array(costs({{"a", 1}})), InputError);
        CHECK_THROWS_AS(tri.cost_array(costs({{"a", -1}, {"b", 0}, {"c", 0}})), InputError);
    }
}
