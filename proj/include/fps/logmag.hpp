#pragma once

/**
 * Rigorous enclosures of log2 of a positive magnitude, with exact rational
 * endpoints. These intervals are the currency of every growth-criterion
 * computation: magnitudes like 2^(n!) overflow any float, but their log2
 * fits in a small exact rational.
 *
 * The distinguished NEG_INFINITY value encodes log2(0), i.e. magnitude
 * exactly zero.
 */

#include <cstdint>

#include "fps/error.hpp"
#include "fps/rational.hpp"

namespace fps {

/// Bit length of a nonzero integer's magnitude: floor(log2|z|) + 1.
inline long bit_length(const Integer& z) {
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

inline bool is_power_of_two(const Integer& z) {
    return z > 0 && mpz_popcount(z.get_mpz_t()) == 1;
}

class LogMagInterval {
public:
    static LogMagInterval neg_infinity() { return LogMagInterval(); }

    static LogMagInterval exact(Rational value) {
        LogMagInterval iv;
        iv.neg_inf_ = false;
        iv.lo_ = value;
        iv.hi_ = std::move(value);
        return iv;
    }

    LogMagInterval(Rational lo, Rational hi) : neg_inf_(false), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_)
            throw UsageError("LogMagInterval requires lo <= hi");
    }

    bool is_neg_infinity() const { return neg_inf_; }

    const Rational& lo() const {
        require_finite();
        return lo_;
    }

    const Rational& hi() const {
        require_finite();
        return hi_;
    }

    Rational width() const {
        require_finite();
        return hi_ - lo_;
    }

    bool operator==(const LogMagInterval& other) const = default;

private:
    LogMagInterval() : neg_inf_(true), lo_(0), hi_(0) {}

    void require_finite() const {
        if (neg_inf_)
            throw UsageError("NEG_INFINITY log-magnitude has no endpoints");
    }

    bool neg_inf_;
    Rational lo_, hi_;
};

/**
 * Encloses log2(mag) for mag >= 0 from integer bit lengths alone: for
 * mag = a/b the bounds are bits(a) - bits(b) -/+ 1, tightened to an exact
 * point when a and b are both powers of two. Width never exceeds 2.
 */
inline LogMagInterval log2_interval(const Rational& mag) {
    if (mag < 0)
        throw DomainError("log2_interval requires a nonnegative magnitude");
    if (mag == 0)
        return LogMagInterval::neg_infinity();
    const Integer& a = mag.get_num();
    const Integer& b = mag.get_den();
    const long ba = bit_length(a);
    const long bb = bit_length(b);
    if (is_power_of_two(a) && is_power_of_two(b))
        return LogMagInterval::exact(Rational(ba - bb));
    return LogMagInterval(Rational(ba - bb - 1), Rational(ba - bb + 1));
}

/// Interval sum; a zero factor (NEG_INFINITY) absorbs the product.
inline LogMagInterval add(const LogMagInterval& a, const LogMagInterval& b) {
    if (a.is_neg_infinity() || b.is_neg_infinity())
        return LogMagInterval::neg_infinity();
    return LogMagInterval(a.lo() + b.lo(), a.hi() + b.hi());
}

/// log2 of the m-th power. m = 0 is the empty product, exactly [0, 0].
inline LogMagInterval scale(const LogMagInterval& a, std::uint64_t m) {
    if (m == 0)
        return LogMagInterval::exact(Rational(0));
    if (a.is_neg_infinity())
        return LogMagInterval::neg_infinity();
    Rational factor(static_cast<unsigned long>(m));
    return LogMagInterval(factor * a.lo(), factor * a.hi());
}

/// Upper bound on log2(count) for count >= 1, exact for powers of two.
inline long log2_count_upper(std::uint64_t count) {
    if (count == 0)
        throw UsageError("log2_count_upper requires count >= 1");
    long bits = 0;
    std::uint64_t c = count;
    while (c > 1) {
        c >>= 1;
        ++bits;
    }
    // bits = floor(log2 count); round up unless count is a power of two
    return (count & (count - 1)) == 0 ? bits : bits + 1;
}

} // namespace fps
