#pragma once

#include "frugal/rational.hpp"

namespace frugal {

/// A value plus an infinitesimal multiple `tie * eps`, ordered lexicographically.
///
/// Giving agent number i the infinitesimal weight 2^i makes every set of agents
/// cost something distinct, so any minimum-cost rule evaluated on perturbed costs
/// returns the cheapest set with ties broken the same way every time: the set
/// whose highest differing agent is absent wins. That fixed order is what the
/// composability of the pruning rules relies on.
template <class T>
struct Perturbed {
    T value{};
    BigInt tie{};

    Perturbed() = default;
    Perturbed(T v, BigInt t = 0) : value(std::move(v)), tie(std::move(t)) {}

    Perturbed& operator+=(const Perturbed& other)
    {
        value += other.value;
        tie += other.tie;
        return *this;
    }
    Perturbed& operator-=(const Perturbed& other)
    {
        value -= other.value;
        tie -= other.tie;
        return *this;
    }
    friend Perturbed operator+(Perturbed a, const Perturbed& b) { return a += b; }
    friend Perturbed operator-(Perturbed a, const Perturbed& b) { return a -= b; }
    friend Perturbed operator-(const Perturbed& a)
    {
        Perturbed r;
        r.value = -a.value;
        r.tie = -a.tie;
        return r;
    }

    friend Perturbed operator*(Perturbed a, long factor)
    {
        a.value *= factor;
        a.tie *= factor;
        return a;
    }

    friend bool operator==(const Perturbed& a, const Perturbed& b)
    {
        return a.value == b.value && a.tie == b.tie;
    }
    friend bool operator!=(const Perturbed& a, const Perturbed& b) { return !(a == b); }
    friend bool operator<(const Perturbed& a, const Perturbed& b)
    {
        if (a.value != b.value)
            return a.value < b.value;
        return a.tie < b.tie;
    }
    friend bool operator>(const Perturbed& a, const Perturbed& b) { return b < a; }
    friend bool operator<=(const Perturbed& a, const Perturbed& b) { return !(b < a); }
    friend bool operator>=(const Perturbed& a, const Perturbed& b) { return !(a < b); }

    bool is_zero() const { return value == 0 && tie == 0; }
    bool is_positive() const { return Perturbed() < *this; }
};

/// Infinitesimal weight of the agent at position `rank` in agent order.
inline BigInt tie_weight(int rank)
{
    BigInt w = 1;
    mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<mp_bitcnt_t>(rank));
    return w;
}

} // namespace frugal
