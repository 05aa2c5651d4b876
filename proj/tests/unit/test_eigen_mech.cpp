#include "fixtures.hpp"

#include "frugal/eigen_mech.hpp"
#include "frugal/errors.hpp"
#include "frugal/generators.hpp"
#include "frugal/set_system.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace frugal;
using namespace fixtures;

namespace {

std::map<std::string, Rational> uniform_tot(const Graph& g, long value)
{
    std::map<std::string, Rational> tot;
    for (const auto& v : g.vertex_names())
        tot[v] = value;
    return tot;
}

VcInstance instance(const Graph& g, const std::map<std::string, Rational>& tot)
{
    auto inst = VcInstance::build(g, tot);
    return inst.with_solver(make_brute_force_solver(inst));
}

VcInstance instance_with_true_tot(const Graph& g)
{
    auto sys = SetSystem::vertex_cover(g);
    std::map<std::string, Rational> tot;
    auto nbrs = g.neighbours();
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!nbrs[v].empty())
            tot[g.vertex_name(v)] = frugal::tot(sys, g.vertex_name(v));
    return instance(g, tot);
}

const double sqrt3 = std::sqrt(3.0);

} // namespace

TEST_SUITE("eigen-mech")
{
    TEST_CASE("eigenpairs of the small fixtures")
    {
        auto tri = instance(triangle(), uniform_tot(triangle(), 2));
        CHECK(tri.max_lambda() == doctest::Approx(1.0).epsilon(1e-12));
        for (double q : tri.q())
            CHECK(q == doctest::Approx(1.0).epsilon(1e-12));

        auto star = instance(star3(), uniform_tot(star3(), 1));
        CHECK(star.max_lambda() == doctest::Approx(sqrt3).epsilon(1e-12));
        CHECK(star.q()[star.index("c")] / star.q()[star.index("l1")] == doctest::Approx(sqrt3).epsilon(1e-12));

        auto edge = instance(single_edge(), uniform_tot(single_edge(), 1));
        CHECK(edge.max_lambda() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(edge.eigen_residual() <= 1e-12);
    }

    TEST_CASE("power iteration agrees with a dense eigensolver")
    {
        std::mt19937_64 rng(3);
        for (int round = 0; round < 20; ++round) {
            Graph g = random_connected_graph(rng, 7, 0.35);
            auto inst = instance_with_true_tot(g);
            const int n = static_cast<int>(inst.agents().size());
            Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
            for (int u = 0; u < n; ++u)
                for (int v : inst.adjacency()[u])
                    k(u, v) = 1.0 / to_double(inst.tot()[u]);
            Eigen::EigenSolver<Eigen::MatrixXd> solver(k);
            int best = 0;
            for (int i = 1; i < n; ++i)
                if (solver.eigenvalues()[i].real() > solver.eigenvalues()[best].real())
                    best = i;
            CHECK(inst.max_lambda() == doctest::Approx(solver.eigenvalues()[best].real()).epsilon(1e-10));
            Eigen::VectorXd vec = solver.eigenvectors().col(best).real();
            vec /= vec.cwiseAbs().maxCoeff();
            for (int u = 0; u < n; ++u)
                CHECK(inst.q()[u] == doctest::Approx(std::abs(vec[u])).epsilon(1e-9));
            CHECK(inst.eigen_residual() <= 1e-12);
        }
    }

    TEST_CASE("components get their own eigenpairs")
    {
        Graph g = undirected({"a", "b", "c", "d", "e", "f", "g"},
                             {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"d", "f"}, {"d", "g"}});
        auto inst = instance_with_true_tot(g);
        REQUIRE(inst.components().size() == 2);
        CHECK(inst.lambda(inst.index("a")) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(inst.lambda(inst.index("d")) == doctest::Approx(sqrt3).epsilon(1e-12));
    }

    TEST_CASE("triangle auction")
    {
        auto inst = instance(triangle(), uniform_tot(triangle(), 2));
        auto out = ev_run(inst, costs({{"a", 1}, {"b", 0}, {"c", 0}}));
        CHECK(out.winners == std::set<std::string>{"b", "c"});
        CHECK(out.payments.at("b") == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.payments.at("c") == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.payments.at("a") == 0.0);
        CHECK(out.total == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("star auction")
    {
        auto inst = instance(star3(), uniform_tot(star3(), 1));
        auto out = ev_run(inst, costs({{"c", 1}, {"l1", 0}, {"l2", 0}, {"l3", 0}}));
        CHECK(out.winners == std::set<std::string>{"l1", "l2", "l3"});
        for (const char* leaf : {"l1", "l2", "l3"})
            CHECK(out.payments.at(leaf) == doctest::Approx(1 / sqrt3).epsilon(1e-12));
        CHECK(out.total == doctest::Approx(sqrt3).epsilon(1e-12));
    }

    TEST_CASE("all-zero bids pick the first cover and pay nothing")
    {
        auto inst = instance(triangle(), uniform_tot(triangle(), 2));
        auto out = ev_run(inst, costs({{"a", 0}, {"b", 0}, {"c", 0}}));
        CHECK(out.winners == std::set<std::string>{"a", "b"});
        CHECK(out.total == 0.0);
    }

    TEST_CASE("winners cover, are individually rational, losers get nothing")
    {
        std::mt19937_64 rng(5);
        for (int round = 0; round < 20; ++round) {
            Graph g = random_connected_graph(rng, 6, 0.4);
            auto inst = instance_with_true_tot(g);
            auto bids = random_costs(rng, all_agents(inst));
            auto out = ev_run(inst, bids);
            for (const auto& e : g.edges())
                CHECK((out.winners.count(g.vertex_name(e.tail)) || out.winners.count(g.vertex_name(e.head))));
            for (const auto& [agent, pay] : out.exact_payments) {
                if (out.winners.count(agent))
                    CHECK(pay >= bids.at(agent));
                else
                    CHECK(pay == 0);
            }
        }
    }

    TEST_CASE("isolated agents are stripped and lose")
    {
        Graph g = undirected({"a", "b", "z"}, {{"a", "b"}});
        auto inst = instance(g, {{"a", 1}, {"b", 1}});
        CHECK(inst.isolated() == std::vector<std::string>{"z"});
        auto out = ev_run(inst, costs({{"a", 2}, {"b", 1}, {"z", 0}}));
        CHECK(out.winners == std::set<std::string>{"b"});
        CHECK(out.payments.at("z") == 0.0);
        CHECK(out.payments.at("b") == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("instance preconditions")
    {
        Graph loop = undirected({"a", "b"}, {{"a", "b"}, {"a", "a"}});
        CHECK_THROWS_AS(VcInstance::build(loop, {{"a", 1}, {"b", 1}}), MonopolyError);
        CHECK_THROWS_AS(VcInstance::build(single_edge(), {{"a", make_rational(1, 2)}, {"b", 1}}), DomainError);
        auto inst = instance(triangle(), uniform_tot(triangle(), 2));
        CHECK_THROWS_AS(ev_run(inst, costs({{"a", 1}})), InputError);
    }

    TEST_CASE("unit-vector frugality equals lambda")
    {
        CHECK(ev_frugality_on_units(instance(triangle(), uniform_tot(triangle(), 2))) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(ev_frugality_on_units(instance(star3(), uniform_tot(star3(), 1))) ==
              doctest::Approx(sqrt3).epsilon(1e-9));
        CHECK(ev_frugality_on_units(instance(single_edge(), uniform_tot(single_edge(), 1))) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("probe on the fixtures")
    {
        auto tri = instance(triangle(), uniform_tot(triangle(), 2));
        auto ev_tri = [&](const CostVector& b) { return ev_run(tri, b); };
        auto p = probe_lower_bound(tri, ev_tri);
        CHECK(p.ratio == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(p.ratio >= p.lambda / 2 - 1e-9);

        auto star = instance(star3(), uniform_tot(star3(), 1));
        auto ev_star = [&](const CostVector& b) { return ev_run(star, b); };
        auto q = probe_lower_bound(star, ev_star);
        CHECK(q.ratio == doctest::Approx(sqrt3).epsilon(1e-9));
        CHECK(q.lambda == doctest::Approx(sqrt3).epsilon(1e-12));
    }

    TEST_CASE("probe measures a pay-your-bid baseline without judging it")
    {
        auto star = instance(star3(), uniform_tot(star3(), 1));
        auto baseline = [&](const CostVector& b) { return pay_your_bid_run(star, b); };
        auto p = probe_lower_bound(star, baseline);
        CHECK(p.ratio >= 0);
        CHECK(!p.agent.empty());
    }
}
