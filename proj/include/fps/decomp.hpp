#pragma once

/**
 * Core/tail power decomposition and the four-component decomposition of
 * A(X)_n.
 *
 * For a series X and m >= 0, the coefficient (X^m)_n splits as
 *
 *     (X^m)_n = (X^[m])_n + m * (X^<m>)_n,
 *
 * where the core X^[m] gathers the tuples k_1 + ... + k_m = n with every
 * k_i <= n/2 and the tail X^<m> gathers (once, for the m symmetric
 * placements) the tuples with a single index above n/2. Building on that,
 * for a polynomial A(t) over series, any n >= 1 and any lambda < n/2:
 *
 *     A(X)_n = head + gamma + delta + epsilon
 *
 * with head = sum_{l < lambda} A'(X)_l X_{n-l},
 *      gamma = sum_{lambda <= l < n/2} A'(X)_l X_{n-l},
 *      delta = sum_j (A_j X^[j])_n,
 *      epsilon = sum_j sum_{k+p+q=n, q<p<=n/2} j (A_j)_k (X^{j-1})_q X_p.
 *
 * Index conventions for the half-open real bounds, applied uniformly:
 * k_i <= n/2 means k_i <= floor(n/2); l < n/2 means l <= ceil(n/2) - 1.
 * decompose() re-verifies the identity on every call and treats a mismatch
 * as a fatal logic error.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fps/error.hpp"
#include "fps/rational.hpp"
#include "fps/series.hpp"

namespace fps {

/**
 * The core powers X^[0], ..., X^[m_max]: coefficient n of X^[m] sums
 * x_{k_1}...x_{k_m} over the tuples with k_1 + ... + k_m = n and every
 * k_i <= floor(n/2). The part bound depends on n, so each coefficient runs
 * its own bounded-part DP over (parts used, partial sum); the DP row after
 * j parts serves every power at once, so the whole family costs no more
 * than the largest member. No tuple is ever enumerated.
 */
inline std::vector<Series> core_power_family(const Series& x, std::uint64_t m_max) {
    const std::size_t n_max = x.order();
    std::vector<Series> out(m_max + 1, Series(n_max));
    out[0].at(0) = 1;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const std::size_t bound = n / 2;
        std::vector<Rational> row(n + 1, Rational(0));
        row[0] = 1;
        for (std::uint64_t parts = 1; parts <= m_max; ++parts) {
            std::vector<Rational> next(n + 1, Rational(0));
            for (std::size_t s = 0; s <= n; ++s) {
                if (row[s] == 0)
                    continue;
                const std::size_t k_hi = std::min(bound, n - s);
                for (std::size_t k = 0; k <= k_hi; ++k) {
                    if (x[k] == 0)
                        continue;
                    next[s + k] += row[s] * x[k];
                }
            }
            row = std::move(next);
            out[parts].at(n) = row[n];
        }
    }
    return out;
}

/// The core power X^[m] alone.
inline Series core_power(const Series& x, std::uint64_t m) {
    return std::move(core_power_family(x, m).back());
}

/**
 * The tail power X^<m>: coefficient n is sum_{l < n/2} (X^{m-1})_l X_{n-l}.
 * m = 0 is rejected; its multiplier in the decomposition is zero, so it is
 * never needed.
 */
inline Series tail_power(const Series& x, std::uint64_t m) {
    if (m == 0)
        throw UsageError("tail_power requires m >= 1");
    const Series p = power(x, m - 1);
    const std::size_t n_max = x.order();
    Series out(n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const std::size_t l_end = (n + 1) / 2; // l ranges over [0, ceil(n/2) - 1]
        Rational acc(0);
        for (std::size_t l = 0; l < l_end; ++l)
            acc += p[l] * x[n - l];
        out.at(n) = acc;
    }
    return out;
}

struct DecompComponents {
    std::size_t n = 0;
    std::size_t lambda = 0;
    Rational head;
    Rational gamma;
    Rational delta;
    Rational epsilon;
    Rational alpha_n; // A(X)_n, always equal to the component sum
};

/**
 * Shared precomputation for decompositions of one (A, X) pair across many
 * (n, lambda) queries: powers and core powers of X, A'(X), A(X), and
 * per-n caches for the lambda-independent delta and epsilon terms.
 */
class Decomposer {
public:
    Decomposer(const SeriesPoly& a, const Series& x)
        : a_(normalize_poly(a, std::min(a.order(), x.order()))),
          x_(x.order() == a_.order() ? x : truncated(x, a_.order())),
          ax_(eval_poly(a_, x_)),
          dax_(eval_poly(derivative_poly(a_), x_)),
          xcore_(core_power_family(x_, a_.degree())),
          delta_cache_(x_.order() + 1),
          epsilon_cache_(x_.order() + 1) {
        xpow_.reserve(a_.degree() + 1);
        for (std::size_t j = 0; j <= a_.degree(); ++j)
            xpow_.push_back(power(x_, j));
    }

    std::size_t order() const { return x_.order(); }
    const Series& alpha() const { return ax_; }
    const Series& derivative_at_x() const { return dax_; }

    Rational head(std::size_t n, std::size_t lambda) const {
        require_point(n, lambda);
        Rational acc(0);
        for (std::size_t l = 0; l < lambda; ++l)
            acc += dax_[l] * x_[n - l];
        return acc;
    }

    Rational gamma(std::size_t n, std::size_t lambda) const {
        require_point(n, lambda);
        Rational acc(0);
        for (std::size_t l = lambda; l < (n + 1) / 2; ++l)
            acc += dax_[l] * x_[n - l];
        return acc;
    }

    Rational delta(std::size_t n) {
        require_coefficient(n);
        if (!delta_cache_[n]) {
            Rational acc(0);
            for (std::size_t j = 0; j <= a_.degree(); ++j) {
                for (std::size_t k = 0; k <= n; ++k) {
                    if (a_[j][k] == 0)
                        continue;
                    acc += a_[j][k] * xcore_[j][n - k];
                }
            }
            delta_cache_[n] = std::move(acc);
        }
        return *delta_cache_[n];
    }

    Rational epsilon(std::size_t n) {
        require_coefficient(n);
        if (!epsilon_cache_[n]) {
            Rational acc(0);
            for (std::size_t j = 1; j <= a_.degree(); ++j) {
                const Rational jf(static_cast<unsigned long>(j));
                for (std::size_t k = 0; k <= n; ++k) {
                    if (a_[j][k] == 0)
                        continue;
                    const std::size_t rem = n - k;
                    // q = n - k - p with 0 <= q < p <= floor(n/2)
                    const std::size_t p_lo = rem / 2 + 1;
                    const std::size_t p_hi = std::min(n / 2, rem);
                    for (std::size_t p = p_lo; p <= p_hi; ++p)
                        acc += jf * a_[j][k] * xpow_[j - 1][rem - p] * x_[p];
                }
            }
            epsilon_cache_[n] = std::move(acc);
        }
        return *epsilon_cache_[n];
    }

    DecompComponents decompose(std::size_t n, std::size_t lambda) {
        require_point(n, lambda);
        DecompComponents c;
        c.n = n;
        c.lambda = lambda;
        c.head = head(n, lambda);
        c.gamma = gamma(n, lambda);
        c.delta = delta(n);
        c.epsilon = epsilon(n);
        c.alpha_n = ax_[n];
        if (c.head + c.gamma + c.delta + c.epsilon != c.alpha_n)
            throw InvariantViolation(
                "decomposition identity violated at n = " + std::to_string(n) +
                ", lambda = " + std::to_string(lambda) + "; this is a bug");
        return c;
    }

    const SeriesPoly& poly() const { return a_; }
    const Series& series() const { return x_; }

private:
    static SeriesPoly normalize_poly(const SeriesPoly& a, std::size_t order) {
        if (a.order() == order)
            return a;
        std::vector<Series> coeffs;
        coeffs.reserve(a.degree() + 1);
        for (const auto& s : a.coeffs())
            coeffs.push_back(truncated(s, order));
        return SeriesPoly(std::move(coeffs));
    }

    void require_coefficient(std::size_t n) const {
        if (n > x_.order())
            throw UsageError("coefficient index exceeds truncation order");
    }

    void require_point(std::size_t n, std::size_t lambda) const {
        if (n < 1 || n > x_.order())
            throw UsageError("decomposition index must satisfy 1 <= n <= order");
        if (2 * lambda >= n)
            throw UsageError("decomposition requires lambda < n/2");
    }

    SeriesPoly a_;
    Series x_;
    Series ax_;
    Series dax_;
    std::vector<Series> xcore_;
    std::vector<std::optional<Rational>> delta_cache_;
    std::vector<std::optional<Rational>> epsilon_cache_;
    std::vector<Series> xpow_;
};

inline Rational delta(const SeriesPoly& a, const Series& x, std::size_t n) {
    return Decomposer(a, x).delta(n);
}

inline Rational epsilon(const SeriesPoly& a, const Series& x, std::size_t n) {
    return Decomposer(a, x).epsilon(n);
}

inline Rational gamma(const SeriesPoly& a, const Series& x, std::size_t n, std::size_t lambda) {
    return Decomposer(a, x).gamma(n, lambda);
}

inline Rational head(const SeriesPoly& a, const Series& x, std::size_t n, std::size_t lambda) {
    return Decomposer(a, x).head(n, lambda);
}

inline DecompComponents decompose(const SeriesPoly& a, const Series& x, std::size_t n,
                                  std::size_t lambda) {
    return Decomposer(a, x).decompose(n, lambda);
}

struct RegionTally {
    struct Bucket {
        std::uint64_t count = 0;
        Rational sum = Rational(0);
    };
    std::size_t n = 0;
    std::size_t lambda = 0;
    Bucket core, epsilon, gamma, head;

    Rational total() const { return core.sum + epsilon.sum + gamma.sum + head.sum; }
};

inline constexpr std::size_t kRegionTallyMaxIndex = 24;
inline constexpr std::size_t kRegionTallyMaxDegree = 6;

/**
 * Enumerates every monomial contribution (A_j)_k x_{l_1}...x_{l_j} to
 * A(X)_n (skipping zero polynomial coefficients (A_j)_k, but not zero
 * series coefficients) and classifies it by the barycentric (k, p, q)
 * coordinates, where p is the unique index above (n-k)/2 of a non-core
 * tuple and q the sum of the remaining indices:
 *
 *   core:    every l_i <= (n-k)/2
 *   epsilon: q < p <= n/2
 *   gamma:   p > n/2 and n - p >= lambda
 *   head:    p > n/2 and n - p < lambda
 *
 * The four sums reproduce decompose()'s components exactly. Enumeration
 * cost grows like binom(n + degree - 1, degree - 1), hence the small-n
 * guardrails.
 */
inline RegionTally region_tally(const SeriesPoly& a, const Series& x, std::size_t n,
                                std::size_t lambda) {
    if (n < 1 || n > std::min(a.order(), x.order()))
        throw UsageError("region_tally index must satisfy 1 <= n <= order");
    if (2 * lambda >= n)
        throw UsageError("region_tally requires lambda < n/2");
    if (n > kRegionTallyMaxIndex || a.degree() > kRegionTallyMaxDegree)
        throw UsageError("region_tally enumeration limits exceeded (n <= 24, degree <= 6)");

    RegionTally tally;
    tally.n = n;
    tally.lambda = lambda;

    std::vector<std::size_t> parts;
    auto classify = [&](const Rational& coeff, const std::vector<std::size_t>& tuple,
                        std::size_t rem) {
        Rational value = coeff;
        bool large_found = false;
        std::size_t p = 0;
        for (std::size_t l : tuple) {
            value *= x[l];
            if (2 * l > rem) {
                large_found = true;
                p = l;
            }
        }
        RegionTally::Bucket* bucket = nullptr;
        if (!large_found)
            bucket = &tally.core;
        else if (2 * p <= n)
            bucket = &tally.epsilon; // q < p holds automatically here
        else
            bucket = (n - p >= lambda) ? &tally.gamma : &tally.head;
        bucket->count += 1;
        bucket->sum += value;
    };

    // recursive ordered-tuple enumeration per (j, k) with (A_j)_k != 0
    auto enumerate = [&](auto&& self, std::size_t remaining_positions, std::size_t remaining_sum,
                         const Rational& coeff, std::size_t rem) -> void {
        if (remaining_positions == 0) {
            if (remaining_sum == 0)
                classify(coeff, parts, rem);
            return;
        }
        if (remaining_positions == 1) {
            parts.push_back(remaining_sum);
            classify(coeff, parts, rem);
            parts.pop_back();
            return;
        }
        for (std::size_t k = 0; k <= remaining_sum; ++k) {
            parts.push_back(k);
            self(self, remaining_positions - 1, remaining_sum - k, coeff, rem);
            parts.pop_back();
        }
    };

    for (std::size_t j = 0; j <= a.degree(); ++j) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (a[j][k] == 0)
                continue;
            const std::size_t rem = n - k;
            if (j == 0) {
                if (rem == 0) {
                    tally.core.count += 1;
                    tally.core.sum += a[j][k];
                }
                continue;
            }
            enumerate(enumerate, j, rem, a[j][k], rem);
        }
    }
    return tally;
}

} // namespace fps
