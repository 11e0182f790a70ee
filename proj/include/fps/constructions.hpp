#pragma once

/**
 * Generators for the example series the growth machinery is exercised on,
 * and the gap-series coefficient checks for L(z) = sum_{k>=0} z^(2^k).
 *
 * The driving fact: (L^j)_n != 0 exactly when n is a sum of j powers of
 * two, i.e. popcount(n) <= j <= n. The index c(p, q) = 2^q - 2^(q-p) has
 * exactly p ones in binary, so (L^p)_{c(p,q)} counts the orderings of that
 * unique representation: p factorial. verify_gap_claims() reports what the
 * computed coefficients actually support instead of asserting any wider
 * zero window.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fps/error.hpp"
#include "fps/growth.hpp"
#include "fps/rational.hpp"
#include "fps/series.hpp"

namespace fps {

/// c(p, q) = 2^q - 2^(q-p), the gap index with p binary ones. Requires 1 <= p < q.
inline std::uint64_t c_index(unsigned p, unsigned q) {
    if (p < 1 || p >= q)
        throw UsageError("c_index requires 1 <= p < q");
    if (q >= 63)
        throw UsageError("c_index requires q < 63");
    return (std::uint64_t{1} << q) - (std::uint64_t{1} << (q - p));
}

/// L(z) = sum z^(2^k): coefficient 1 at every power of two, 0 elsewhere.
inline Series liouville_series(std::size_t order) {
    if (order < 1)
        throw UsageError("liouville_series requires order >= 1");
    Series out(order);
    for (std::uint64_t k = 1; k <= order; k <<= 1)
        out.at(static_cast<std::size_t>(k)) = 1;
    return out;
}

/// X_n = n!.
inline Series factorial_series(std::size_t order) {
    Series out(order);
    Rational fact(1);
    out.at(0) = fact;
    for (std::size_t n = 1; n <= order; ++n) {
        fact *= Rational(static_cast<unsigned long>(n));
        out.at(n) = fact;
    }
    return out;
}

inline constexpr std::size_t kSuperfactorialMaxOrder = 8;

/// X_n = 2^(n!), exactly. Coefficients explode, hence the small order cap.
inline Series superfactorial_series(std::size_t order) {
    if (order > kSuperfactorialMaxOrder)
        throw UsageError("superfactorial_series supports order <= 8; use the "
                         "factorial_exponent growth law beyond that");
    Series out(order);
    for (std::size_t n = 0; n <= order; ++n) {
        Integer fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, fact.get_ui());
        out.at(n) = Rational(pw);
    }
    return out;
}

/// X_n = 2^(-n!), exactly; |X_n|_2 = 2^(n!).
inline Series padic_superfactorial_series(std::size_t order) {
    if (order > kSuperfactorialMaxOrder)
        throw UsageError("padic_superfactorial_series supports order <= 8");
    Series out(order);
    for (std::size_t n = 0; n <= order; ++n) {
        Integer fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, fact.get_ui());
        out.at(n) = make_rational(1, pw);
    }
    return out;
}

/// Growth law log2|X_n| = n! for X_n = 2^(n!) under the archimedean value.
inline GrowthSpec superfactorial_growth() {
    return GrowthSpec::factorial_exponent(Rational(1), Rational(0), Rational(0));
}

/// The same law describes |X_n|_2 for X_n = 2^(-n!) under the 2-adic value.
inline GrowthSpec padic_superfactorial_growth() {
    return GrowthSpec::factorial_exponent(Rational(1), Rational(0), Rational(0));
}

struct GapClaimReport {
    unsigned p = 0, q = 0;
    std::uint64_t c = 0;                // c(p, q)
    std::vector<Rational> coeff_at_c;   // (L^j)_c for j = 0..p
    Integer p_factorial, q_factorial;
    bool matches_p_factorial = false;   // (L^p)_c == p!, the combinatorial count
    bool matches_q_factorial = false;   // (L^p)_c == q!, recorded for comparison
    bool zeros_below_p = false;         // (L^j)_c == 0 for all j < p
    std::uint64_t zero_window_radius_verified = 0; // largest w: (L^j)_n = 0 for 0 < |c-n| < w
    std::uint64_t candidate_radius = 0;            // 2^(q-p), the wider radius under test
    bool paper_radius_holds = false;               // verified radius >= candidate radius
    struct Counterexample {
        unsigned j = 0;
        std::uint64_t n = 0;
        Rational value;
    };
    std::vector<Counterexample> counterexamples;   // nonzeros inside the candidate window
    std::size_t computed_order = 0;
};

inline constexpr unsigned kGapMaxP = 4;
inline constexpr unsigned kGapMaxQ = 14;

/**
 * Computes L^0..L^p out to c(p,q) + max(d_max, 2^(q-p)) by sparse
 * convolution and reports: the coefficients at c(p,q), the largest zero
 * window radius around c(p,q) the data verifies, and every nonzero inside
 * the wider candidate radius 2^(q-p).
 */
inline GapClaimReport verify_gap_claims(unsigned p, unsigned q, std::uint64_t d_max = 0) {
    if (p < 1 || p > kGapMaxP || q <= p || q > kGapMaxQ)
        throw UsageError("verify_gap_claims requires 1 <= p <= 4 and p < q <= 14");

    GapClaimReport report;
    report.p = p;
    report.q = q;
    report.c = c_index(p, q);
    report.candidate_radius = std::uint64_t{1} << (q - p);

    const std::size_t order =
        static_cast<std::size_t>(report.c + std::max(d_max, report.candidate_radius));
    report.computed_order = order;

    const Series l = liouville_series(order);
    std::vector<Series> lpow;
    lpow.reserve(p + 1);
    lpow.push_back(Series::constant(Rational(1), order));
    for (unsigned j = 1; j <= p; ++j)
        lpow.push_back(mul(lpow.back(), l));

    const std::size_t c = static_cast<std::size_t>(report.c);
    for (unsigned j = 0; j <= p; ++j)
        report.coeff_at_c.push_back(lpow[j][c]);

    mpz_fac_ui(report.p_factorial.get_mpz_t(), p);
    mpz_fac_ui(report.q_factorial.get_mpz_t(), q);
    report.matches_p_factorial = report.coeff_at_c[p] == Rational(report.p_factorial);
    report.matches_q_factorial = report.coeff_at_c[p] == Rational(report.q_factorial);
    report.zeros_below_p = true;
    for (unsigned j = 0; j < p; ++j)
        if (report.coeff_at_c[j] != 0)
            report.zeros_below_p = false;

    auto any_nonzero_at = [&](std::size_t n, unsigned* which) {
        for (unsigned j = 0; j <= p; ++j) {
            if (lpow[j][n] != 0) {
                if (which)
                    *which = j;
                return true;
            }
        }
        return false;
    };

    // walk outward until some L^j is nonzero; distance of the first hit is
    // the verified radius
    std::uint64_t w = 0;
    for (std::uint64_t t = 1;; ++t) {
        bool hit = false;
        if (t <= report.c)
            hit = any_nonzero_at(c - static_cast<std::size_t>(t), nullptr);
        if (!hit && c + t <= order)
            hit = any_nonzero_at(c + static_cast<std::size_t>(t), nullptr);
        if (hit) {
            w = t;
            break;
        }
        if (t > report.c && c + t > order)
            break; // exhausted the computed range with no nonzero (cannot happen for L)
    }
    report.zero_window_radius_verified = w;
    report.paper_radius_holds = w >= report.candidate_radius;

    for (std::uint64_t t = 1; t < report.candidate_radius; ++t) {
        for (int side = 0; side < 2; ++side) {
            if (side == 0 && t > report.c)
                continue;
            const std::size_t n = side == 0 ? c - static_cast<std::size_t>(t)
                                            : c + static_cast<std::size_t>(t);
            if (n > order)
                continue;
            for (unsigned j = 0; j <= p; ++j)
                if (lpow[j][n] != 0)
                    report.counterexamples.push_back({j, n, lpow[j][n]});
        }
    }
    return report;
}

struct PunchlineReport {
    unsigned p = 0, q = 0;
    std::size_t n = 0;           // least index with (A_m)_n != 0
    std::size_t d = 0;           // max degree over the coefficient series
    std::uint64_t window = 0;    // verified zero-window radius
    bool conclusive = false;     // window > d + n
    std::optional<unsigned> required_q; // smallest q making the window wide enough
    Rational lhs;                // (A(L))_{c(p,q)+n}
    Rational rhs;                // (L^p)_{c(p,q)} * (A_m)_n
    bool equal = false;
    bool nonzero = false;
};

/**
 * Checks (A(L))_{c(p,q)+n} = (L^m)_{c(p,q)} (A_m)_n != 0 for a degree-p
 * polynomial A, with n the least index where the top coefficient is
 * nonzero. The coefficient series of A are read as polynomials (complete
 * data, zero past their stored order). If the verified zero window does
 * not exceed d + n the check is inconclusive and the report suggests the
 * smallest sufficient q.
 */
inline PunchlineReport verify_gap_punchline(const SeriesPoly& a, unsigned p, unsigned q) {
    if (p < 1 || p > kGapMaxP || q <= p || q > kGapMaxQ)
        throw UsageError("verify_gap_punchline requires 1 <= p <= 4 and p < q <= 14");
    if (a.degree() != p)
        throw UsageError("verify_gap_punchline requires degree(A) = p");
    const auto n_opt = a[a.degree()].valuation();
    if (!n_opt)
        throw UsageError("verify_gap_punchline requires a nonzero top coefficient A_m");

    PunchlineReport report;
    report.p = p;
    report.q = q;
    report.n = *n_opt;
    report.d = 0;
    for (std::size_t j = 0; j <= a.degree(); ++j)
        if (const auto deg = a[j].top_degree())
            report.d = std::max(report.d, *deg);

    const GapClaimReport gap =
        verify_gap_claims(p, q, static_cast<std::uint64_t>(report.d + report.n + 1));
    report.window = gap.zero_window_radius_verified;
    report.conclusive = report.window > report.d + report.n;
    if (!report.conclusive) {
        // suggest the q whose verified radius 2^(q-p-1) clears d + n
        for (unsigned qq = p + 1; qq <= kGapMaxQ; ++qq) {
            if ((std::uint64_t{1} << (qq - p - 1)) > report.d + report.n) {
                report.required_q = qq;
                break;
            }
        }
        return report;
    }

    const std::size_t c = static_cast<std::size_t>(gap.c);
    const std::size_t target = c + report.n;
    const std::size_t order = target + 1;
    const Series l = liouville_series(order);
    std::vector<Series> lpow;
    lpow.push_back(Series::constant(Rational(1), order));
    for (unsigned j = 1; j <= p; ++j)
        lpow.push_back(mul(lpow.back(), l));

    Rational lhs(0);
    for (std::size_t j = 0; j <= a.degree(); ++j) {
        for (std::size_t k = 0; k <= std::min(a[j].order(), target); ++k) {
            if (a[j][k] == 0)
                continue;
            lhs += a[j][k] * lpow[j][target - k];
        }
    }
    report.lhs = lhs;
    report.rhs = lpow[p][c] * a[a.degree()][report.n];
    report.equal = report.lhs == report.rhs;
    report.nonzero = report.rhs != 0;
    return report;
}

} // namespace fps
