#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace frugal {

// Exact arbitrary-precision fraction, always canonical (lowest terms, positive denominator).
// Beware of `auto` with gmpxx expressions: spell out Rational for intermediates.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Per-agent costs or bids keyed by agent id. Iteration order is the agent order
/// used for every lexicographic tie-break.
using CostVector = std::map<std::string, Rational>;

/// Accepts "p/q", "p", and "-p/q". Throws InputError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "p/q", including integers ("2/1").
std::string format_rational(const Rational& value);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

inline double to_double(const Rational& value) { return value.get_d(); }

/// p/q in lowest terms; q must be nonzero.
inline Rational make_rational(long p, long q)
{
    Rational r{BigInt(p), BigInt(q)};
    r.canonicalize();
    return r;
}

} // namespace frugal
