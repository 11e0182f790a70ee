#pragma once

/**
 * Brute-force reference implementations. Everything here enumerates ordered
 * index tuples directly from the definitions and shares no code with the
 * convolution-based fast paths it validates. Enumeration is exponential, so
 * the limits (m <= 4, n <= 16, degree <= 4) are hard caps.
 */

#include <cstddef>
#include <cstdint>
#include <utility>

#include "fps/error.hpp"
#include "fps/rational.hpp"
#include "fps/series.hpp"

namespace fps::oracle {

inline constexpr std::uint64_t kMaxPower = 4;
inline constexpr std::size_t kMaxIndex = 16;

namespace detail {

inline void check_limits(std::uint64_t m, std::size_t n) {
    if (m > kMaxPower || n > kMaxIndex)
        throw UsageError("oracle limits exceeded (m <= 4, n <= 16); use series::power "
                         "for larger instances");
}

// Visits every ordered m-tuple of nonnegative integers summing to n.
template <typename Visit>
void for_each_tuple(std::uint64_t m, std::size_t n, std::vector<std::size_t>& parts,
                    Visit&& visit) {
    if (parts.size() + 1 == m) {
        parts.push_back(n);
        visit(parts);
        parts.pop_back();
        return;
    }
    for (std::size_t k = 0; k <= n; ++k) {
        parts.push_back(k);
        for_each_tuple(m, n - k, parts, visit);
        parts.pop_back();
    }
}

} // namespace detail

/// (X^m)_n as the sum of x_{k_1}...x_{k_m} over all ordered tuples with sum n.
inline Rational naive_power_coeff(const Series& x, std::uint64_t m, std::size_t n) {
    detail::check_limits(m, n);
    if (n > x.order())
        throw UsageError("naive_power_coeff: index exceeds truncation order");
    if (m == 0)
        return Rational(n == 0 ? 1 : 0);
    Rational total(0);
    std::vector<std::size_t> parts;
    detail::for_each_tuple(m, n, parts, [&](const std::vector<std::size_t>& tuple) {
        Rational term(1);
        for (std::size_t k : tuple)
            term *= x[k];
        total += term;
    });
    return total;
}

/**
 * Splits the tuples of (X^m)_n into the core (every index <= n/2) and the
 * rest. A non-core tuple has exactly one index above n/2; that uniqueness
 * is asserted, since its failure would mean the partition logic is wrong.
 * Returns (core sum, tail sum / m), so core + m * tail = (X^m)_n.
 */
inline std::pair<Rational, Rational> naive_core_tail_coeff(const Series& x, std::uint64_t m,
                                                           std::size_t n) {
    detail::check_limits(m, n);
    if (m == 0)
        throw UsageError("naive_core_tail_coeff requires m >= 1");
    if (n > x.order())
        throw UsageError("naive_core_tail_coeff: index exceeds truncation order");
    Rational core(0);
    Rational tail_total(0);
    std::vector<std::size_t> parts;
    detail::for_each_tuple(m, n, parts, [&](const std::vector<std::size_t>& tuple) {
        Rational term(1);
        std::size_t large = 0;
        for (std::size_t k : tuple) {
            term *= x[k];
            if (2 * k > n)
                ++large;
        }
        if (large == 0) {
            core += term;
        } else {
            if (large != 1)
                throw InvariantViolation(
                    "naive_core_tail_coeff: tuple with two indices above n/2");
            tail_total += term;
        }
    });
    return {core, tail_total / Rational(static_cast<unsigned long>(m))};
}

/// A(X)_n as the double sum over j <= degree and k <= n of (A_j)_k (X^j)_{n-k}.
inline Rational naive_poly_coeff(const SeriesPoly& a, const Series& x, std::size_t n) {
    if (a.degree() > kMaxPower || n > kMaxIndex)
        throw UsageError("oracle limits exceeded (degree <= 4, n <= 16)");
    if (n > a.order() || n > x.order())
        throw UsageError("naive_poly_coeff: index exceeds truncation order");
    Rational total(0);
    for (std::size_t j = 0; j <= a.degree(); ++j) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (a[j][k] == 0)
                continue;
            total += a[j][k] * naive_power_coeff(x, j, n - k);
        }
    }
    return total;
}

} // namespace fps::oracle
