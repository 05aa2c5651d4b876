#include "frugal/errors.hpp"
#include "frugal/lp.hpp"

#include <doctest.h>

using namespace frugal;
using namespace frugal::lp;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

} // namespace

TEST_SUITE("exact-lp")
{
    TEST_CASE("single bound")
    {
        LinearProgram lp(1);
        lp.objective = {r(1)};
        lp.add({r(1)}, Sense::LessEqual, r(3));
        auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.value == 3);
        CHECK(is_feasible(lp, sol.assignment));
    }

    TEST_CASE("fractional clique LP of the 5-cycle")
    {
        // Weights on the vertices of C5; every maximal independent set {i, i+2} carries at most 1.
        LinearProgram lp(5);
        lp.objective.assign(5, r(1));
        for (int i = 0; i < 5; ++i) {
            std::vector<Rational> row(5, r(0));
            row[i] = 1;
            row[(i + 2) % 5] = 1;
            lp.add(row, Sense::LessEqual, r(1));
        }
        auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.value == r(5, 2));
    }

    TEST_CASE("double-cut LP of the weighted path")
    {
        // min x.c with x_sa + x_ab + x_bt >= 2 and x <= 1, written as a maximisation.
        LinearProgram lp(3);
        lp.objective = {r(-1), r(-5), r(-2)};
        lp.add({r(1), r(1), r(1)}, Sense::GreaterEqual, r(2));
        for (int i = 0; i < 3; ++i) {
            std::vector<Rational> row(3, r(0));
            row[i] = 1;
            lp.add(row, Sense::LessEqual, r(1));
        }
        auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.value == -3);
        CHECK(sol.assignment == std::vector<Rational>{r(1), r(0), r(1)});
    }

    TEST_CASE("infeasible and unbounded programs")
    {
        LinearProgram infeasible(1);
        infeasible.objective = {r(1)};
        infeasible.add({r(1)}, Sense::LessEqual, r(1));
        infeasible.add({r(1)}, Sense::GreaterEqual, r(2));
        CHECK(solve(infeasible).status == Status::Infeasible);

        LinearProgram unbounded(2);
        unbounded.objective = {r(1), r(0)};
        unbounded.add({r(-1), r(1)}, Sense::LessEqual, r(1));
        CHECK(solve(unbounded).status == Status::Unbounded);
    }

    TEST_CASE("equalities and lower bounds")
    {
        LinearProgram lp(2);
        lp.objective = {r(1), r(2)};
        lp.lower_bounds = {r(1, 2), r(1, 3)};
        lp.add({r(1), r(1)}, Sense::Equal, r(2));
        auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.assignment[0] == r(1, 2));
        CHECK(sol.assignment[1] == r(3, 2));
        CHECK(sol.value == r(7, 2));
    }

    TEST_CASE("degenerate program terminates")
    {
        // Several constraints tight at the origin; Bland's rule must not cycle.
        LinearProgram lp(4);
        lp.objective = {r(10), r(-57), r(-9), r(-24)};
        lp.add({r(1, 2), r(-11, 2), r(-5, 2), r(9)}, Sense::LessEqual, r(0));
        lp.add({r(1, 2), r(-3, 2), r(-1, 2), r(1)}, Sense::LessEqual, r(0));
        lp.add({r(1), r(0), r(0), r(0)}, Sense::LessEqual, r(1));
        auto sol = solve(lp);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.value == 1);
    }

    TEST_CASE("malformed rows are input errors")
    {
        LinearProgram lp(2);
        lp.constraints.push_back({{r(1)}, Sense::LessEqual, r(1)});
        CHECK_THROWS_AS(lp.validate(), InputError);
    }
}
