#include "fixtures.hpp"

#include "frugal/cut_mech.hpp"
#include "frugal/flow_mech.hpp"
#include "frugal/generators.hpp"
#include "frugal/oracle.hpp"
#include "frugal/set_system.hpp"

#include <doctest.h>

using namespace frugal;
using namespace fixtures;

namespace {

VcInstance instance_with_true_tot(const Graph& g)
{
    auto sys = SetSystem::vertex_cover(g);
    std::map<std::string, Rational> tot;
    auto nbrs = g.neighbours();
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!nbrs[v].empty())
            tot[g.vertex_name(v)] = frugal::tot(sys, g.vertex_name(v));
    auto inst = VcInstance::build(g, tot);
    return inst.with_solver(make_brute_force_solver(inst));
}

MechanismUnderTest ev_under_test(const VcInstance& inst)
{
    return {"ev", all_agents(inst), [inst](const CostVector& b) { return ev_run(inst, b); }};
}

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("brute-force double cuts")
    {
        auto path = brute_double_cut(st_path(), costs({{"sa", 1}, {"ab", 5}, {"bt", 2}}));
        CHECK(path.cost == 3);
        CHECK(path.edges == std::set<std::string>{"sa", "bt"});
        auto d = brute_double_cut(diamond(), costs({{"sa", 3}, {"at", 1}, {"sb", 4}, {"bt", 1}}));
        CHECK(d.edges == std::set<std::string>{"sa", "at", "sb", "bt"});
    }

    TEST_CASE("brute-force double cuts equal the LP on random DAGs")
    {
        std::mt19937_64 rng(37);
        for (int round = 0; round < 20; ++round) {
            Graph g = random_st_dag(rng, 6, 10);
            auto c = random_edge_costs(rng, g);
            auto brute = brute_double_cut(g, c);
            auto lp = solve_double_cut_lp(g, c);
            CHECK(brute.cost == lp.value);
            CHECK(brute.edges == lp.edges);
        }
    }

    TEST_CASE("EV passes the perturbation checks")
    {
        std::mt19937_64 rng(41);
        for (int round = 0; round < 4; ++round) {
            auto inst = instance_with_true_tot(random_connected_graph(rng, 5, 0.4));
            auto report = check_truthfulness(ev_under_test(inst), 15, 100 + round);
            CHECK(report.passed());
            CHECK(report.checks > 0);
            CHECK(report.max_threshold_gap <= 1e-6);
        }
    }

    TEST_CASE("FM passes the perturbation checks on 1-flows")
    {
        std::mt19937_64 rng(43);
        for (int round = 0; round < 3; ++round) {
            Graph g = random_flow_network(rng, 2, 5, 7);
            MechanismUnderTest mut{"fm", g.sorted_edge_ids(),
                                   [g](const CostVector& b) { return fm_run(g, 1, b).outcome; }};
            auto report = check_truthfulness(mut, 10, 200 + round);
            CHECK(report.passed());
        }
    }

    TEST_CASE("CM passes the perturbation checks")
    {
        std::mt19937_64 rng(47);
        Graph g = random_st_dag(rng, 5, 7);
        MechanismUnderTest mut{"cm", g.sorted_edge_ids(), [g](const CostVector& b) { return cm_run(g, b).outcome; }};
        CHECK(check_truthfulness(mut, 10, 300).passed());
    }

    TEST_CASE("a broken tie-break is caught")
    {
        auto inst = instance_with_true_tot(star3());
        MechanismUnderTest mut{"broken", all_agents(inst), broken_tie_break_mechanism(inst)};
        auto report = check_truthfulness(mut, 30, 7);
        CHECK(!report.passed());
    }

    TEST_CASE("reports are reproducible")
    {
        auto inst = instance_with_true_tot(triangle());
        auto a = check_truthfulness(ev_under_test(inst), 5, 9);
        auto b = check_truthfulness(ev_under_test(inst), 5, 9);
        CHECK(a.checks == b.checks);
        CHECK(a.max_threshold_gap == b.max_threshold_gap);
        CHECK(a.seed == 9);
    }

    TEST_CASE("frugality of EV on the triangle and the star")
    {
        auto tri = instance_with_true_tot(triangle());
        auto tri_sys = SetSystem::vertex_cover(triangle());
        CHECK(measure_frugality(ev_under_test(tri), tri_sys, unit_vector_sampler(tri_sys.agents()), 3, 1) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(measure_frugality(ev_under_test(tri), tri_sys, random_cost_sampler(tri_sys.agents()), 30, 1) <=
              1.0 + 1e-6);

        auto star = instance_with_true_tot(star3());
        auto star_sys = SetSystem::vertex_cover(star3());
        double lambda = star.max_lambda();
        CHECK(measure_frugality(ev_under_test(star), star_sys, unit_vector_sampler(star_sys.agents()), 4, 1) >=
              lambda - 1e-6);
        CHECK(measure_frugality(ev_under_test(star), star_sys, random_cost_sampler(star_sys.agents()), 30, 1) <=
              lambda + 1e-6);
    }

    TEST_CASE("frugality of FM on two parallel edges")
    {
        Graph g = parallel(2);
        MechanismUnderTest mut{"fm", g.sorted_edge_ids(), [g](const CostVector& b) { return fm_run(g, 1, b).outcome; }};
        auto sys = SetSystem::k_flow(g, 1);
        CHECK(measure_frugality(mut, sys, random_cost_sampler(sys.agents()), 30, 3) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("frugality of CM on the three-edge path")
    {
        Graph g = st_path();
        MechanismUnderTest mut{"cm", g.sorted_edge_ids(), [g](const CostVector& b) { return cm_run(g, b).outcome; }};
        auto sys = SetSystem::cut(g);
        double ratio = measure_frugality(mut, sys, random_cost_sampler(sys.agents()), 30, 5);
        CHECK(ratio <= 4.0);
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
}
