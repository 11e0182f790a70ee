#pragma once

/**
 * Growth laws, rigorous log2 margins for the transcendence criteria, the
 * division bound checker, and a growth classifier.
 *
 * A margin is log2(LHS) - log2(RHS) of one growth condition, enclosed in
 * exact rational bounds. Negative, shrinking margins over a tested range
 * are finite-range evidence for an o(.) hypothesis; the verdicts say
 * "empirically" because no finite computation can decide a limit.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fps/error.hpp"
#include "fps/logmag.hpp"
#include "fps/rational.hpp"
#include "fps/series.hpp"

namespace fps {

/// Declarative description of n -> log2|X_n|.
class GrowthSpec {
public:
    struct Table {
        std::vector<LogMagInterval> log2;
    };
    struct FactorialExponent { // log2|X_n| = a*n! + b*n + c, exactly
        Rational a, b, c;
    };
    struct Geometric { // log2|X_n| = n * log2_r, exactly
        Rational log2_r;
    };
    struct FromSeries {
        Series series;
        AbsValue abs;
    };

    static GrowthSpec table(std::vector<LogMagInterval> entries) {
        if (entries.empty())
            throw UsageError("growth table must be nonempty");
        return GrowthSpec(Table{std::move(entries)});
    }
    static GrowthSpec factorial_exponent(Rational a, Rational b, Rational c) {
        return GrowthSpec(FactorialExponent{std::move(a), std::move(b), std::move(c)});
    }
    static GrowthSpec geometric(Rational log2_r) {
        return GrowthSpec(Geometric{std::move(log2_r)});
    }
    static GrowthSpec from_series(Series series, AbsValue abs) {
        return GrowthSpec(FromSeries{std::move(series), abs});
    }

    /// Rigorous enclosure of log2|X_n|; exact for the closed-form variants.
    LogMagInterval eval_log_abs(std::size_t n) const {
        if (const auto* t = std::get_if<Table>(&v_)) {
            if (n >= t->log2.size())
                throw DomainError("growth table has no entry for n = " + std::to_string(n));
            return t->log2[n];
        }
        if (const auto* f = std::get_if<FactorialExponent>(&v_)) {
            Integer fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
            return LogMagInterval::exact(f->a * Rational(fact) +
                                         f->b * Rational(static_cast<unsigned long>(n)) + f->c);
        }
        if (const auto* g = std::get_if<Geometric>(&v_)) {
            return LogMagInterval::exact(Rational(static_cast<unsigned long>(n)) * g->log2_r);
        }
        const auto& fs = std::get<FromSeries>(v_);
        if (n > fs.series.order())
            throw DomainError("growth series has no coefficient for n = " + std::to_string(n));
        return log2_interval(fs.abs(fs.series[n]));
    }

    /// Largest valid n for bounded variants; nullopt when unbounded.
    std::optional<std::size_t> domain_max() const {
        if (const auto* t = std::get_if<Table>(&v_))
            return t->log2.size() - 1;
        if (const auto* fs = std::get_if<FromSeries>(&v_))
            return fs->series.order();
        return std::nullopt;
    }

    /// Whether the spec may be used with the nonarchimedean margin kinds.
    bool nonarchimedean_compatible() const {
        if (const auto* fs = std::get_if<FromSeries>(&v_))
            return fs->abs.is_nonarchimedean();
        return true; // closed-form and table specs carry no absolute value
    }

private:
    using Variant = std::variant<Table, FactorialExponent, Geometric, FromSeries>;
    explicit GrowthSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// The ring growth bound rho: monotone increasing, strictly positive.
class RhoSpec {
public:
    struct Factorial {};
    struct Geometric { // rho(n) = r^n
        Rational r;
    };
    struct Polynomial { // rho(n) = n^degree, defined for n >= 1
        unsigned degree;
    };
    struct Table {
        std::vector<Rational> values;
    };
    struct One {};

    static RhoSpec factorial() { return RhoSpec(Factorial{}); }
    static RhoSpec geometric(Rational r) {
        if (r <= 0)
            throw DomainError("geometric rho requires r > 0");
        return RhoSpec(Geometric{std::move(r)});
    }
    static RhoSpec polynomial(unsigned degree) { return RhoSpec(Polynomial{degree}); }
    static RhoSpec table(std::vector<Rational> values) {
        if (values.empty())
            throw UsageError("rho table must be nonempty");
        return RhoSpec(Table{std::move(values)});
    }
    static RhoSpec one() { return RhoSpec(One{}); }

    /// Exact rho(n).
    Rational value(std::size_t n) const {
        if (std::holds_alternative<Factorial>(v_)) {
            Integer fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
            return Rational(fact);
        }
        if (const auto* g = std::get_if<Geometric>(&v_)) {
            Rational acc(1);
            for (std::size_t i = 0; i < n; ++i)
                acc *= g->r;
            return acc;
        }
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            if (p->degree == 0)
                return Rational(1);
            if (n == 0)
                throw DomainError("polynomial rho is positive only for n >= 1");
            Integer base(static_cast<unsigned long>(n));
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), p->degree);
            return Rational(pw);
        }
        if (const auto* t = std::get_if<Table>(&v_)) {
            if (n >= t->values.size())
                throw DomainError("rho table has no entry for n = " + std::to_string(n));
            return t->values[n];
        }
        return Rational(1); // One
    }

    LogMagInterval log2(std::size_t n) const { return log2_interval(value(n)); }

    /// Monotone nondecreasing and strictly positive across [lo, hi].
    void validate_range(std::size_t lo, std::size_t hi) const {
        Rational prev = value(lo);
        if (prev <= 0)
            throw DomainError("rho must be strictly positive");
        for (std::size_t n = lo + 1; n <= hi; ++n) {
            Rational cur = value(n);
            if (cur <= 0)
                throw DomainError("rho must be strictly positive");
            if (cur < prev)
                throw DomainError("rho must be monotone increasing on the queried range");
            prev = std::move(cur);
        }
    }

private:
    using Variant = std::variant<Factorial, Geometric, Polynomial, Table, One>;
    explicit RhoSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/**
 * Enclosure of log2 sum_{l <= n/2} |X_l| (inclusive) or log2 sum_{l < n/2}
 * |X_l| (strict). Lower bound: the largest per-term lower bound. Upper
 * bound: largest per-term upper bound plus log2 of the term count, the
 * count rounded up through its bit length. An empty or all-zero range is
 * NEG_INFINITY.
 */
inline LogMagInterval sum_log_abs(const GrowthSpec& spec, std::size_t n, bool inclusive) {
    const std::size_t count = inclusive ? n / 2 + 1 : (n + 1) / 2;
    if (count == 0)
        return LogMagInterval::neg_infinity();
    std::optional<Rational> max_lo, max_hi;
    for (std::size_t l = 0; l < count; ++l) {
        const LogMagInterval term = spec.eval_log_abs(l);
        if (term.is_neg_infinity())
            continue;
        if (!max_lo || term.lo() > *max_lo)
            max_lo = term.lo();
        if (!max_hi || term.hi() > *max_hi)
            max_hi = term.hi();
    }
    if (!max_lo)
        return LogMagInterval::neg_infinity();
    return LogMagInterval(*max_lo,
                          *max_hi + Rational(log2_count_upper(static_cast<std::uint64_t>(count))));
}

enum class MarginKind { C1, C2, Combined, NA1, NA2 };

inline const char* margin_kind_name(MarginKind kind) {
    switch (kind) {
    case MarginKind::C1: return "C1";
    case MarginKind::C2: return "C2";
    case MarginKind::Combined: return "COMBINED";
    case MarginKind::NA1: return "NA1";
    case MarginKind::NA2: return "NA2";
    }
    return "?";
}

/// log2(LHS) - log2(RHS) of a growth condition; +infinity when the right
/// side vanishes, -infinity when only the left side does.
struct MarginInterval {
    enum class State { NegInfinite, Finite, PosInfinite };
    State state = State::Finite;
    Rational lo, hi;

    static MarginInterval pos_infinite() { return {State::PosInfinite, Rational(0), Rational(0)}; }
    static MarginInterval neg_infinite() { return {State::NegInfinite, Rational(0), Rational(0)}; }
    static MarginInterval finite(Rational lo, Rational hi) {
        return {State::Finite, std::move(lo), std::move(hi)};
    }
};

/**
 * The five condition margins, evaluated at one grid point. LHS per kind:
 *
 *   C1:       rho(n) * (sum_{l <= n/2} |X_l|)^m
 *   C2:       rho(n) * |X_{n-lambda-1}| * (sum_{l < n/2} |X_l|)^m
 *   COMBINED: rho(n) * |X_{n-lambda-1}| * (sum_{l <= n/2} |X_l|)^m
 *   NA1:      rho(n) * |X_{floor(n/2)}|^m
 *   NA2:      rho(n) * |X_{n-lambda-1}| * |X_{floor((n-1)/2)}|^m
 *
 * RHS is always |X_{n-lambda}|. Requires n > 2*lambda + 2 so that every
 * index involved stays in range and lambda < n/2; the NA kinds refuse a
 * from-series spec carrying an archimedean absolute value.
 */
inline MarginInterval margin(MarginKind kind, const GrowthSpec& spec, const RhoSpec& rho,
                             std::size_t n, std::size_t lambda, std::uint64_t m) {
    if (n <= 2 * lambda + 2)
        throw UsageError("margin requires n > 2*lambda + 2");
    if ((kind == MarginKind::NA1 || kind == MarginKind::NA2) && !spec.nonarchimedean_compatible())
        throw UsageError("nonarchimedean margin kinds require a nonarchimedean absolute value");

    LogMagInterval lhs = rho.log2(n);
    switch (kind) {
    case MarginKind::C1:
        lhs = add(lhs, scale(sum_log_abs(spec, n, /*inclusive=*/true), m));
        break;
    case MarginKind::C2:
        lhs = add(lhs, spec.eval_log_abs(n - lambda - 1));
        lhs = add(lhs, scale(sum_log_abs(spec, n, /*inclusive=*/false), m));
        break;
    case MarginKind::Combined:
        lhs = add(lhs, spec.eval_log_abs(n - lambda - 1));
        lhs = add(lhs, scale(sum_log_abs(spec, n, /*inclusive=*/true), m));
        break;
    case MarginKind::NA1:
        lhs = add(lhs, scale(spec.eval_log_abs(n / 2), m));
        break;
    case MarginKind::NA2:
        lhs = add(lhs, spec.eval_log_abs(n - lambda - 1));
        lhs = add(lhs, scale(spec.eval_log_abs((n - 1) / 2), m));
        break;
    }

    const LogMagInterval rhs = spec.eval_log_abs(n - lambda);
    if (rhs.is_neg_infinity())
        return MarginInterval::pos_infinite();
    if (lhs.is_neg_infinity())
        return MarginInterval::neg_infinite();
    return MarginInterval::finite(lhs.lo() - rhs.hi(), lhs.hi() - rhs.lo());
}

enum class Verdict { SatisfiedEmpirically, Inconclusive, Violated };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::SatisfiedEmpirically: return "SATISFIED_EMPIRICALLY";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Violated: return "VIOLATED";
    }
    return "?";
}

enum class AbsMode { Archimedean, NonArchimedean };

struct MarginSample {
    std::size_t n = 0;
    MarginInterval margin;
};

struct KindReport {
    MarginKind kind = MarginKind::C1;
    std::vector<MarginSample> margins;
    Verdict verdict = Verdict::Inconclusive;
};

struct CellReport {
    std::size_t lambda = 0;
    std::uint64_t m = 0;
    std::vector<KindReport> kinds;
    Verdict verdict = Verdict::Inconclusive;
};

struct CriteriaReport {
    AbsMode mode = AbsMode::Archimedean;
    bool precondition_x0 = false;
    bool precondition_indeterminate = false;
    std::size_t lambda_max = 0;
    std::uint64_t m_max = 0;
    std::size_t n_begin = 0, n_end = 0;
    std::vector<CellReport> cells;
    Verdict verdict = Verdict::Inconclusive;
};

namespace detail {

/**
 * Empirical verdict for one margin sequence. SATISFIED_EMPIRICALLY means
 * every upper bound is negative and the upper bounds are nonincreasing
 * over the last half of the range. VIOLATED means a provably infinite
 * margin occurred, or the lower bounds are positive and nondecreasing over
 * the last half. Everything else is INCONCLUSIVE.
 */
inline Verdict judge_margins(const std::vector<MarginSample>& samples) {
    using State = MarginInterval::State;
    for (const auto& s : samples)
        if (s.margin.state == State::PosInfinite)
            return Verdict::Violated;

    const std::size_t tail_begin = samples.size() / 2;

    bool all_upper_negative = true;
    for (const auto& s : samples)
        if (s.margin.state == State::Finite && !(s.margin.hi < 0))
            all_upper_negative = false;
    bool tail_nonincreasing = true;
    for (std::size_t i = tail_begin + 1; i < samples.size(); ++i) {
        const auto& prev = samples[i - 1].margin;
        const auto& cur = samples[i].margin;
        if (cur.state == State::NegInfinite)
            continue; // -infinity is below anything
        if (prev.state == State::NegInfinite || cur.hi > prev.hi) {
            tail_nonincreasing = false;
            break;
        }
    }
    if (all_upper_negative && tail_nonincreasing)
        return Verdict::SatisfiedEmpirically;

    bool tail_positive_growing = samples.size() > tail_begin;
    for (std::size_t i = tail_begin; i < samples.size() && tail_positive_growing; ++i) {
        const auto& cur = samples[i].margin;
        if (cur.state != State::Finite || !(cur.lo > 0))
            tail_positive_growing = false;
        else if (i > tail_begin && cur.lo < samples[i - 1].margin.lo)
            tail_positive_growing = false;
    }
    if (tail_positive_growing)
        return Verdict::Violated;

    return Verdict::Inconclusive;
}

} // namespace detail

/**
 * Evaluates the mode's margin kinds over the whole (lambda, m, n) grid and
 * assigns per-kind, per-cell, and overall verdicts. Also checks the
 * precondition |X_0| >= 1 up to interval slack. rho is validated as
 * monotone and positive on the queried range.
 */
inline CriteriaReport check_criteria(const GrowthSpec& spec, const RhoSpec& rho,
                                     std::size_t lambda_max, std::uint64_t m_max,
                                     std::size_t n_begin, std::size_t n_end, AbsMode mode) {
    if (n_begin <= 2 * lambda_max + 2)
        throw UsageError("criteria range must start above 2*lambda_max + 2");
    if (n_end < n_begin)
        throw UsageError("criteria range is empty");
    rho.validate_range(n_begin, n_end);

    CriteriaReport report;
    report.mode = mode;
    report.lambda_max = lambda_max;
    report.m_max = m_max;
    report.n_begin = n_begin;
    report.n_end = n_end;

    const LogMagInterval x0 = spec.eval_log_abs(0);
    if (x0.is_neg_infinity()) {
        report.precondition_x0 = false;
    } else if (x0.lo() >= 0) {
        report.precondition_x0 = true;
    } else if (x0.hi() < 0) {
        report.precondition_x0 = false;
    } else {
        report.precondition_x0 = false;
        report.precondition_indeterminate = true;
    }

    const std::vector<MarginKind> kinds =
        mode == AbsMode::Archimedean
            ? std::vector<MarginKind>{MarginKind::C1, MarginKind::C2, MarginKind::Combined}
            : std::vector<MarginKind>{MarginKind::NA1, MarginKind::NA2};

    bool any_violated = false;
    bool all_satisfied = true;
    for (std::size_t lambda = 0; lambda <= lambda_max; ++lambda) {
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            CellReport cell;
            cell.lambda = lambda;
            cell.m = m;
            bool cell_violated = false;
            bool cell_satisfied = true;
            for (MarginKind kind : kinds) {
                KindReport kr;
                kr.kind = kind;
                kr.margins.reserve(n_end - n_begin + 1);
                for (std::size_t n = n_begin; n <= n_end; ++n)
                    kr.margins.push_back({n, margin(kind, spec, rho, n, lambda, m)});
                kr.verdict = detail::judge_margins(kr.margins);
                cell_violated = cell_violated || kr.verdict == Verdict::Violated;
                cell_satisfied = cell_satisfied && kr.verdict == Verdict::SatisfiedEmpirically;
                cell.kinds.push_back(std::move(kr));
            }
            cell.verdict = cell_violated ? Verdict::Violated
                           : cell_satisfied ? Verdict::SatisfiedEmpirically
                                            : Verdict::Inconclusive;
            any_violated = any_violated || cell_violated;
            all_satisfied = all_satisfied && cell_satisfied;
            report.cells.push_back(std::move(cell));
        }
    }

    if (any_violated || (!report.precondition_x0 && !report.precondition_indeterminate))
        report.verdict = Verdict::Violated;
    else if (all_satisfied && report.precondition_x0)
        report.verdict = Verdict::SatisfiedEmpirically;
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

struct Prop1Report {
    struct Violation {
        char series = '?'; // 'C', 'D' for premises, 'X' for the bound
        std::size_t n = 0;
        Rational value; // |coefficient|
        Rational bound;
    };
    bool premises_ok = false;
    std::vector<Violation> premise_violations;
    bool bound_ok = false;
    std::optional<Violation> first_bound_violation;
    std::size_t order = 0;
};

/**
 * Checks the division bound: with C_0 = 1, |C_n| < c r^n and |D_n| < d r^n
 * through the truncation order, the quotient X = D / C must satisfy
 * |X_n| <= d (1+c)^n r^n for every n. The premises are verified exactly
 * first; any violation aborts the check. A bound violation would falsify
 * the implementation, not the theorem, but is reported rather than
 * asserted so the CLI can surface it.
 */
inline Prop1Report check_prop1_bound(const Series& c_series, const Series& d_series,
                                     const Rational& c, const Rational& d, const Rational& r) {
    if (c <= 0 || d <= 0 || r <= 0)
        throw UsageError("check_prop1_bound requires c, d, r > 0");
    if (c_series[0] != 1)
        throw UsageError("check_prop1_bound requires C_0 = 1");
    const std::size_t order = std::min(c_series.order(), d_series.order());
    const Series cs = truncated(c_series, order);
    const Series ds = truncated(d_series, order);

    Prop1Report report;
    report.order = order;

    Rational r_pow(1);
    for (std::size_t n = 0; n <= order; ++n) {
        const Rational cb = c * r_pow;
        const Rational db = d * r_pow;
        if (!(abs_archimedean(cs[n]) < cb))
            report.premise_violations.push_back({'C', n, abs_archimedean(cs[n]), cb});
        if (!(abs_archimedean(ds[n]) < db))
            report.premise_violations.push_back({'D', n, abs_archimedean(ds[n]), db});
        r_pow *= r;
    }
    report.premises_ok = report.premise_violations.empty();
    if (!report.premises_ok)
        return report;

    const Series x = divide(ds, cs);
    report.bound_ok = true;
    const Rational step = (1 + c) * r;
    Rational bound = d; // d (1+c)^n r^n at n = 0
    for (std::size_t n = 0; n <= order; ++n) {
        if (!(abs_archimedean(x[n]) <= bound)) {
            report.bound_ok = false;
            report.first_bound_violation = {'X', n, abs_archimedean(x[n]), bound};
            break;
        }
        bound *= step;
    }
    return report;
}

struct GrowthClass {
    enum class Kind { Exponential, Superexponential, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::optional<Rational> estimate_log2_r; // set for Exponential
};

inline const char* growth_class_name(GrowthClass::Kind kind) {
    switch (kind) {
    case GrowthClass::Kind::Exponential: return "exponential";
    case GrowthClass::Kind::Superexponential: return "superexponential";
    case GrowthClass::Kind::Inconclusive: return "inconclusive";
    }
    return "?";
}

/**
 * Heuristic growth classifier over the window n in [n_max/2, n_max]: with
 * u_n = upper(log2|X_n|) / n, a flat profile (spread <= tau) reads as
 * exponential growth with rate estimate mean(u_n); a monotone rise by more
 * than tau reads as superexponential. Zero coefficients are skipped; if
 * the whole window is zero the answer is inconclusive.
 */
inline GrowthClass classify_growth(const GrowthSpec& spec, std::size_t n_max,
                                   const Rational& tau = Rational(1, 2)) {
    if (n_max < 16)
        throw UsageError("classify_growth requires n_max >= 16");
    std::vector<Rational> u;
    for (std::size_t n = n_max / 2; n <= n_max; ++n) {
        const LogMagInterval iv = spec.eval_log_abs(n);
        if (iv.is_neg_infinity())
            continue;
        u.push_back(iv.hi() / Rational(static_cast<unsigned long>(n)));
    }
    GrowthClass result;
    if (u.empty())
        return result;
    const Rational min = *std::min_element(u.begin(), u.end());
    const Rational max = *std::max_element(u.begin(), u.end());
    if (max - min <= tau) {
        Rational mean(0);
        for (const auto& v : u)
            mean += v;
        mean /= Rational(static_cast<unsigned long>(u.size()));
        result.kind = GrowthClass::Kind::Exponential;
        result.estimate_log2_r = std::move(mean);
        return result;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] < u[i - 1])
            monotone = false;
    if (monotone && u.back() - u.front() > tau) {
        result.kind = GrowthClass::Kind::Superexponential;
        return result;
    }
    return result;
}

} // namespace fps
