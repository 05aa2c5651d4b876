#include "frugal/lp.hpp"

#include "frugal/errors.hpp"

#include <optional>

namespace frugal::lp {

void LinearProgram::add(std::vector<Rational> coefficients, Sense sense, Rational rhs)
{
    constraints.push_back(Constraint{std::move(coefficients), sense, std::move(rhs)});
}

void LinearProgram::validate() const
{
    for (const auto& row : constraints)
        if (row.coefficients.size() != variable_count())
            throw InputError("constraint row length differs from the variable count");
    if (!lower_bounds.empty() && lower_bounds.size() != variable_count())
        throw InputError("lower bound count differs from the variable count");
}

const char* to_string(Status status)
{
    switch (status) {
    case Status::Optimal:
        return "optimal";
    case Status::Infeasible:
        return "infeasible";
    case Status::Unbounded:
        return "unbounded";
    }
    return "unknown";
}

namespace {

using Row = std::vector<Rational>;

class Tableau {
public:
    Tableau(std::vector<Row> rows, std::vector<int> basis, std::size_t columns)
        : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns)
    {
    }

    /// Maximise cost . column-vars over the current tableau. Columns with
    /// `allowed[j] == false` never enter the basis.
    Status optimise(const std::vector<Rational>& cost, const std::vector<bool>& allowed)
    {
        reset_objective(cost);
        for (;;) {
            // Bland: lowest-index improving column enters.
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < columns_; ++j)
                if (allowed[j] && sgn(objective_[j]) < 0) {
                    entering = j;
                    break;
                }
            if (!entering)
                return Status::Optimal;

            // Ratio test; ties go to the lowest-index basic variable.
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][*entering];
                if (sgn(a) <= 0)
                    continue;
                Rational ratio = rows_[i][columns_] / a;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving)
                return Status::Unbounded;
            pivot(*leaving, *entering);
        }
    }

    const Rational& objective_value() const { return objective_[columns_]; }

    void pivot(std::size_t r, std::size_t col)
    {
        Row& pivot_row = rows_[r];
        Rational inv = 1 / pivot_row[col];
        for (auto& entry : pivot_row)
            if (sgn(entry) != 0)
                entry *= inv;
        auto eliminate = [&](Row& row) {
            if (sgn(row[col]) == 0)
                return;
            Rational factor = row[col];
            for (std::size_t j = 0; j <= columns_; ++j)
                if (sgn(pivot_row[j]) != 0)
                    row[j] -= factor * pivot_row[j];
        };
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != r)
                eliminate(rows_[i]);
        if (!objective_.empty())
            eliminate(objective_);
        basis_[r] = static_cast<int>(col);
    }

    std::vector<Row>& rows() { return rows_; }
    std::vector<int>& basis() { return basis_; }
    std::size_t columns() const { return columns_; }

    void erase_row(std::size_t r)
    {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

private:
    // objective_[j] = c_B B^-1 A_j - c_j ; objective_[columns_] = current value.
    void reset_objective(const std::vector<Rational>& cost)
    {
        objective_.assign(columns_ + 1, Rational(0));
        for (std::size_t j = 0; j < columns_; ++j)
            objective_[j] = -cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (sgn(cb) == 0)
                continue;
            for (std::size_t j = 0; j <= columns_; ++j)
                if (sgn(rows_[i][j]) != 0)
                    objective_[j] += cb * rows_[i][j];
        }
    }

    std::vector<Row> rows_;
    std::vector<int> basis_;
    std::size_t columns_;
    Row objective_;
};

} // namespace

Solution solve(const LinearProgram& lp)
{
    lp.validate();
    const std::size_t n = lp.variable_count();

    std::vector<Rational> lower = lp.lower_bounds.empty() ? std::vector<Rational>(n) : lp.lower_bounds;

    // Every constraint becomes one or two rows a.y <= b with y = x - lower >= 0.
    std::vector<std::pair<Row, Rational>> le_rows;
    for (const auto& c : lp.constraints) {
        Rational shift = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(c.coefficients[j]) != 0)
                shift += c.coefficients[j] * lower[j];
        Rational b = c.rhs - shift;
        if (c.sense == Sense::LessEqual || c.sense == Sense::Equal)
            le_rows.emplace_back(c.coefficients, b);
        if (c.sense == Sense::GreaterEqual || c.sense == Sense::Equal) {
            Row negated(n);
            for (std::size_t j = 0; j < n; ++j)
                negated[j] = -c.coefficients[j];
            le_rows.emplace_back(std::move(negated), -b);
        }
    }

    const std::size_t m = le_rows.size();
    std::size_t artificial_count = 0;
    for (const auto& [row, b] : le_rows)
        if (sgn(b) < 0)
            ++artificial_count;

    // Columns: structural [0,n), slack [n,n+m), artificial [n+m, n+m+art); rhs last.
    const std::size_t columns = n + m + artificial_count;
    std::vector<Row> rows;
    std::vector<int> basis;
    rows.reserve(m);
    std::size_t next_artificial = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& [coeffs, b] = le_rows[i];
        Row row(columns + 1);
        bool flip = sgn(b) < 0;
        for (std::size_t j = 0; j < n; ++j)
            row[j] = flip ? Rational(-coeffs[j]) : coeffs[j];
        row[n + i] = flip ? -1 : 1;
        row[columns] = flip ? Rational(-b) : b;
        if (flip) {
            row[next_artificial] = 1;
            basis.push_back(static_cast<int>(next_artificial++));
        }
        else {
            basis.push_back(static_cast<int>(n + i));
        }
        rows.push_back(std::move(row));
    }

    Tableau tableau(std::move(rows), std::move(basis), columns);

    if (artificial_count > 0) {
        std::vector<Rational> phase_one(columns);
        for (std::size_t j = n + m; j < columns; ++j)
            phase_one[j] = -1;
        tableau.optimise(phase_one, std::vector<bool>(columns, true));
        if (sgn(tableau.objective_value()) < 0)
            return Solution{Status::Infeasible, Rational(0), {}};

        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < tableau.rows().size();) {
            if (static_cast<std::size_t>(tableau.basis()[i]) < n + m) {
                ++i;
                continue;
            }
            std::optional<std::size_t> replacement;
            for (std::size_t j = 0; j < n + m; ++j)
                if (sgn(tableau.rows()[i][j]) != 0) {
                    replacement = j;
                    break;
                }
            if (replacement) {
                tableau.pivot(i, *replacement);
                ++i;
            }
            else {
                tableau.erase_row(i);
            }
        }
    }

    std::vector<Rational> phase_two(columns);
    for (std::size_t j = 0; j < n; ++j)
        phase_two[j] = lp.objective[j];
    std::vector<bool> allowed(columns, false);
    for (std::size_t j = 0; j < n + m; ++j)
        allowed[j] = true;
    if (tableau.optimise(phase_two, allowed) == Status::Unbounded)
        return Solution{Status::Unbounded, Rational(0), {}};

    Solution solution;
    solution.status = Status::Optimal;
    solution.assignment = lower;
    for (std::size_t i = 0; i < tableau.rows().size(); ++i) {
        auto col = static_cast<std::size_t>(tableau.basis()[i]);
        if (col < n)
            solution.assignment[col] += tableau.rows()[i][columns];
    }
    solution.value = 0;
    for (std::size_t j = 0; j < n; ++j)
        solution.value += lp.objective[j] * solution.assignment[j];
    return solution;
}

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x)
{
    if (x.size() != lp.variable_count())
        return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        Rational lb = lp.lower_bounds.empty() ? Rational(0) : lp.lower_bounds[j];
        if (x[j] < lb)
            return false;
    }
    for (const auto& c : lp.constraints) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            lhs += c.coefficients[j] * x[j];
        switch (c.sense) {
        case Sense::LessEqual:
            if (lhs > c.rhs)
                return false;
            break;
        case Sense::GreaterEqual:
            if (lhs < c.rhs)
                return false;
            break;
        case Sense::Equal:
            if (lhs != c.rhs)
                return false;
            break;
        }
    }
    return true;
}

} // namespace frugal::lp
