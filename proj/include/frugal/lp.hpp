#pragma once

#include "frugal/rational.hpp"

#include <vector>

namespace frugal::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
    std::vector<Rational> coefficients;
    Sense sense = Sense::LessEqual;
    Rational rhs;
};

/// maximize objective . x  subject to the constraints and x >= lower_bounds.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    /// Empty means all zero; otherwise one entry per variable.
    std::vector<Rational> lower_bounds;

    explicit LinearProgram(std::size_t variables = 0) : objective(variables) {}

    std::size_t variable_count() const { return objective.size(); }
    void add(std::vector<Rational> coefficients, Sense sense, Rational rhs);
    /// Throws InputError when row lengths or bound counts disagree with the variable count.
    void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rational value;
    std::vector<Rational> assignment;
};

/// Exact two-phase primal simplex with Bland's rule. The returned assignment is a
/// basic solution, so it is a vertex of the feasible polytope.
Solution solve(const LinearProgram& lp);

/// Every constraint and bound holds exactly.
bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

const char* to_string(Status status);

} // namespace frugal::lp
