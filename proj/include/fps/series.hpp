#pragma once

/**
 * Truncated formal power series over the rationals, and polynomials whose
 * coefficients are such series.
 *
 * A Series holds exact coefficients c_0..c_N for a truncation order N and
 * never pretends to know anything past N. Binary operations require equal
 * truncation orders; callers combining series of different orders truncate
 * to the minimum first (see truncated()). All operations are pure and
 * exact.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fps/error.hpp"
#include "fps/rational.hpp"

namespace fps {

class Series {
public:
    /// Zero series of the given truncation order.
    explicit Series(std::size_t order) : coeffs_(order + 1, Rational(0)) {}

    /// Takes coefficients c_0..c_N; order is inferred as size - 1.
    explicit Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw UsageError("a series needs at least the constant coefficient");
    }

    static Series constant(const Rational& value, std::size_t order) {
        Series s(order);
        s.coeffs_[0] = value;
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    const Rational& operator[](std::size_t n) const {
        if (n >= coeffs_.size())
            throw UsageError("coefficient index exceeds truncation order");
        return coeffs_[n];
    }

    Rational& at(std::size_t n) {
        if (n >= coeffs_.size())
            throw UsageError("coefficient index exceeds truncation order");
        return coeffs_[n];
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0)
                return false;
        return true;
    }

    /// Index of the first nonzero coefficient; nullopt for the zero series.
    std::optional<std::size_t> valuation() const {
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            if (coeffs_[n] != 0)
                return n;
        return std::nullopt;
    }

    /// Largest index with a nonzero coefficient; nullopt for the zero series.
    std::optional<std::size_t> top_degree() const {
        for (std::size_t n = coeffs_.size(); n-- > 0;)
            if (coeffs_[n] != 0)
                return n;
        return std::nullopt;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> idx;
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            if (coeffs_[n] != 0)
                idx.push_back(n);
        return idx;
    }

    bool operator==(const Series& other) const { return coeffs_ == other.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

namespace detail {

inline void require_same_order(const Series& a, const Series& b, const char* op) {
    if (a.order() != b.order())
        throw UsageError(std::string(op) +
                         ": truncation orders differ; truncate to the minimum first");
}

} // namespace detail

/// Drops coefficients past the requested order. Never extends.
inline Series truncated(const Series& a, std::size_t order) {
    if (order > a.order())
        throw UsageError("truncated: cannot extend a series past its truncation order");
    std::vector<Rational> c(a.coeffs().begin(), a.coeffs().begin() + order + 1);
    return Series(std::move(c));
}

inline Series add(const Series& a, const Series& b) {
    detail::require_same_order(a, b, "add");
    Series out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n)
        out.at(n) = a[n] + b[n];
    return out;
}

inline Series sub(const Series& a, const Series& b) {
    detail::require_same_order(a, b, "sub");
    Series out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n)
        out.at(n) = a[n] - b[n];
    return out;
}

inline Series scale(const Series& a, const Rational& factor) {
    Series out(a.order());
    for (std::size_t n = 0; n <= a.order(); ++n)
        out.at(n) = factor * a[n];
    return out;
}

/**
 * Cauchy product through the common truncation order. Gap series such as
 * sum z^(2^k) make the dense O(N^2) loop pointless, so when a factor is at
 * least 90% zeros the convolution runs over nonzero support pairs instead;
 * the result is identical either way.
 */
inline Series mul(const Series& a, const Series& b) {
    detail::require_same_order(a, b, "mul");
    const std::size_t n_max = a.order();
    Series out(n_max);
    const auto sa = a.support();
    const auto sb = b.support();
    const bool sparse =
        sa.size() * 10 <= n_max + 1 || sb.size() * 10 <= n_max + 1;
    if (sparse) {
        for (std::size_t i : sa) {
            for (std::size_t j : sb) {
                if (i + j > n_max)
                    break; // supports are ascending
                out.at(i + j) += a[i] * b[j];
            }
        }
        return out;
    }
    for (std::size_t i = 0; i <= n_max; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j <= n_max; ++j) {
            if (b[j] == 0)
                continue;
            out.at(i + j) += a[i] * b[j];
        }
    }
    return out;
}

/// X^m by repeated multiplication; X^0 = 1.
inline Series power(const Series& a, std::uint64_t m) {
    if (m == 0)
        return Series::constant(Rational(1), a.order());
    Series acc = a;
    for (std::uint64_t i = 1; i < m; ++i)
        acc = mul(acc, a);
    return acc;
}

/**
 * The unique X with C * X = D through the common order, by the recursion
 * X_n = D_n - sum_{j<n} C_{n-j} X_j after scaling both sides by 1/C_0.
 * Requires C_0 != 0.
 */
inline Series divide(const Series& d_series, const Series& c_series) {
    detail::require_same_order(d_series, c_series, "divide");
    if (c_series[0] == 0)
        throw DomainError("divide: C_0 = 0; cancel leading zeros first");
    const std::size_t n_max = d_series.order();
    const Rational inv_c0 = Rational(1) / c_series[0];
    Series c = scale(c_series, inv_c0);
    Series d = scale(d_series, inv_c0);
    // nonzero C indices >= 1 drive the inner sum
    std::vector<std::size_t> supp;
    for (std::size_t i = 1; i <= n_max; ++i)
        if (c[i] != 0)
            supp.push_back(i);
    Series x(n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        Rational acc = d[n];
        for (std::size_t i : supp) {
            if (i > n)
                break;
            acc -= c[i] * x[n - i];
        }
        x.at(n) = acc;
    }
    return x;
}

/// Series divided by z^k; the dropped coefficients must be zero.
inline Series shift_down(const Series& a, std::size_t k) {
    if (k > a.order())
        throw UsageError("shift_down: shift exceeds truncation order");
    for (std::size_t n = 0; n < k; ++n)
        if (a[n] != 0)
            throw UsageError("shift_down: dropped coefficient is nonzero");
    std::vector<Rational> c(a.coeffs().begin() + k, a.coeffs().end());
    return Series(std::move(c));
}

/**
 * divide() after cancelling the shared power of z: both series are shifted
 * down by valuation(C) when valuation(C) <= valuation(D). When D's
 * valuation is smaller the quotient would need negative powers, which is a
 * DomainError. The result's order is the common order minus the shift.
 */
inline Series divide_with_cancellation(const Series& d_series, const Series& c_series) {
    detail::require_same_order(d_series, c_series, "divide_with_cancellation");
    const auto vc = c_series.valuation();
    if (!vc)
        throw DomainError("divide_with_cancellation: C is the zero series");
    const auto vd = d_series.valuation();
    if (!vd) // D = 0: quotient is 0 at the shifted order
        return Series(d_series.order() - *vc);
    if (*vc > *vd)
        throw DomainError(
            "divide_with_cancellation: valuation(C) > valuation(D); C does not divide D");
    return divide(shift_down(d_series, *vc), shift_down(c_series, *vc));
}

/**
 * A polynomial A(t) = sum_{j<=m} A_j t^j whose coefficients A_j are series.
 * Members are truncated to a shared order on construction. Trailing
 * all-zero coefficients are allowed; degree is the stored length - 1.
 */
class SeriesPoly {
public:
    explicit SeriesPoly(std::vector<Series> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw UsageError("a series polynomial needs at least one coefficient");
        std::size_t min_order = coeffs_[0].order();
        for (const auto& s : coeffs_)
            min_order = std::min(min_order, s.order());
        for (auto& s : coeffs_)
            if (s.order() != min_order)
                s = truncated(s, min_order);
    }

    static SeriesPoly zero(std::size_t order) {
        return SeriesPoly(std::vector<Series>{Series(order)});
    }

    std::size_t degree() const { return coeffs_.size() - 1; }
    std::size_t order() const { return coeffs_[0].order(); }

    const Series& operator[](std::size_t j) const {
        if (j >= coeffs_.size())
            throw UsageError("polynomial coefficient index exceeds degree");
        return coeffs_[j];
    }

    const std::vector<Series>& coeffs() const { return coeffs_; }

    bool operator==(const SeriesPoly& other) const { return coeffs_ == other.coeffs_; }

private:
    std::vector<Series> coeffs_;
};

/// A(X) = sum_j A_j X^j through the common truncation order.
inline Series eval_poly(const SeriesPoly& a, const Series& x) {
    const std::size_t common = std::min(a.order(), x.order());
    const Series xt = x.order() == common ? x : truncated(x, common);
    Series result(common);
    Series xj = Series::constant(Rational(1), common); // X^j, starting at j = 0
    for (std::size_t j = 0; j <= a.degree(); ++j) {
        const Series aj =
            a[j].order() == common ? a[j] : truncated(a[j], common);
        result = add(result, mul(aj, xj));
        if (j < a.degree())
            xj = mul(xj, xt);
    }
    return result;
}

/// Formal derivative in t: sum_j j A_j t^(j-1). Degree 0 yields the zero polynomial.
inline SeriesPoly derivative_poly(const SeriesPoly& a) {
    if (a.degree() == 0)
        return SeriesPoly::zero(a.order());
    std::vector<Series> coeffs;
    coeffs.reserve(a.degree());
    for (std::size_t j = 1; j <= a.degree(); ++j)
        coeffs.push_back(scale(a[j], Rational(static_cast<unsigned long>(j))));
    return SeriesPoly(std::move(coeffs));
}

} // namespace fps
