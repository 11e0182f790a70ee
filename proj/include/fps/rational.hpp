#pragma once

/**
 * Exact rational scalars over GMP, plus the two absolute values used
 * throughout: the archimedean one and the p-adic ones |x|_p = p^(-v_p(x)).
 *
 * Rationals are kept canonical everywhere: denominator > 0, numerator and
 * denominator coprime, zero stored as 0/1. All arithmetic is exact; nothing
 * in this library ever rounds through floating point.
 */

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "fps/error.hpp"

namespace fps {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational from an integer pair. den = 0 is a DomainError.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw DomainError("rational denominator must be nonzero");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p", or "p/q" with q > 0. Input need not be in lowest terms.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> DomainError {
        return DomainError("invalid rational literal: \"" + text + "\"");
    };
    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '-')
        ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        ++pos;
        ++digits;
    }
    if (digits == 0)
        throw bad();
    std::string num = text.substr(0, pos);
    std::string den = "1";
    if (pos < text.size()) {
        if (text[pos] != '/')
            throw bad();
        den = text.substr(pos + 1);
        if (den.empty())
            throw bad();
        for (char ch : den)
            if (ch < '0' || ch > '9')
                throw bad();
    }
    Integer d(den);
    if (d == 0)
        throw bad();
    return make_rational(Integer(num), d);
}

/// Canonical "p" or "p/q" form; inverse of parse_rational.
inline std::string to_string(const Rational& value) {
    return value.get_str();
}

inline Rational abs_archimedean(const Rational& x) {
    return x < 0 ? Rational(-x) : x;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1)
            acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

} // namespace detail

/// Deterministic Miller-Rabin; the 12-prime base set decides every 64-bit n.
inline bool is_prime(std::uint64_t n) {
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2)
        return false;
    for (std::uint64_t p : bases)
        if (n % p == 0)
            return n == p;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : bases) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// v_p(x) by exact division; nullopt encodes v_p(0) = +infinity.
inline std::optional<long> padic_valuation(const Rational& x, std::uint64_t p) {
    if (p < 2)
        throw UsageError("padic_valuation requires p >= 2");
    if (x == 0)
        return std::nullopt;
    Integer pz(static_cast<unsigned long>(p));
    Integer stripped;
    const long v_num = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), x.get_num().get_mpz_t(), pz.get_mpz_t()));
    const long v_den = static_cast<long>(
        mpz_remove(stripped.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t()));
    return v_num - v_den;
}

/// |x|_p = p^(-v_p(x)); |0|_p = 0. p must be prime.
inline Rational abs_padic(const Rational& x, std::uint64_t p) {
    if (!is_prime(p))
        throw DomainError("abs_padic requires a prime p");
    const auto v = padic_valuation(x, p);
    if (!v)
        return Rational(0);
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(*v < 0 ? -*v : *v));
    return *v >= 0 ? make_rational(1, pk) : Rational(pk);
}

/**
 * An absolute value on the rationals: archimedean, or p-adic for a prime p.
 * Primality is checked once, at construction.
 */
class AbsValue {
public:
    static AbsValue archimedean() { return AbsValue(0); }

    static AbsValue padic(std::uint64_t p) {
        if (!is_prime(p))
            throw DomainError("p-adic absolute value requires a prime p, got " +
                              std::to_string(p));
        return AbsValue(p);
    }

    bool is_archimedean() const { return prime_ == 0; }
    bool is_nonarchimedean() const { return prime_ != 0; }

    std::uint64_t prime() const {
        if (is_archimedean())
            throw UsageError("archimedean absolute value has no prime");
        return prime_;
    }

    Rational operator()(const Rational& x) const {
        if (is_archimedean())
            return abs_archimedean(x);
        const auto v = padic_valuation(x, prime_);
        if (!v)
            return Rational(0);
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(prime_),
                      static_cast<unsigned long>(*v < 0 ? -*v : *v));
        return *v >= 0 ? make_rational(1, pk) : Rational(pk);
    }

    bool operator==(const AbsValue& other) const = default;

private:
    explicit AbsValue(std::uint64_t p) : prime_(p) {}

    std::uint64_t prime_; // 0 encodes the archimedean value
};

} // namespace fps
