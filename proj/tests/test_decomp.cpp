#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fps/decomp.hpp"
#include "fps/oracle.hpp"
#include "fps/series.hpp"

using namespace fps;

namespace {

Series from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Series(std::move(c));
}

Series random_series(std::mt19937& rng, std::size_t order) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    Series s(order);
    for (std::size_t n = 0; n <= order; ++n)
        s.at(n) = make_rational(num(rng), den(rng));
    return s;
}

SeriesPoly random_poly(std::mt19937& rng, std::size_t degree, std::size_t order) {
    std::vector<Series> coeffs;
    for (std::size_t j = 0; j <= degree; ++j)
        coeffs.push_back(random_series(rng, order));
    return SeriesPoly(std::move(coeffs));
}

// A(t) = t^deg with constant coefficient 1
SeriesPoly monomial_poly(std::size_t deg, std::size_t order) {
    std::vector<Series> coeffs(deg + 1, Series(order));
    coeffs[deg] = Series::constant(Rational(1), order);
    return SeriesPoly(std::move(coeffs));
}

// x_0..x_4 instantiated at distinct primes so monomials cannot collide
Series prime_series() {
    return from_ints({2, 3, 5, 7, 11});
}

} // namespace

TEST_CASE("core power low orders follow the definition") {
    const Series x = prime_series();

    const Series c0 = core_power(x, 0);
    CHECK(c0 == Series::constant(Rational(1), 4)); // X^[0] = 1

    const Series c1 = core_power(x, 1);
    CHECK(c1 == Series::constant(Rational(2), 4)); // X^[1] = x_0

    // X^[2]: low orders are irregular; the definition forces x_0^2 at n = 0
    const Series c2 = core_power(x, 2);
    CHECK(c2[0] == 4);  // x_0^2
    CHECK(c2[1] == 0);
    CHECK(c2[2] == 9);  // x_1^2
    CHECK(c2[3] == 0);
    CHECK(c2[4] == 25); // x_2^2

    // X^[3]: the definition forces x_0^3 and 0 at n = 0, 1
    const Series c3 = core_power(x, 3);
    CHECK(c3[0] == 8);          // x_0^3
    CHECK(c3[1] == 0);          // tuples summing to 1 with parts <= 0: none
    CHECK(c3[2] == 3 * 2 * 9);  // 3 x_0 x_1^2
    CHECK(c3[3] == 27);         // x_1^3
    CHECK(c3[4] == 285);        // 3 x_0 x_2^2 + 3 x_1^2 x_2 = 150 + 135
}

TEST_CASE("core power with integer substitution") {
    const Series x = from_ints({1, 1, 2, 0, 0});
    CHECK(core_power(x, 3)[4] == 18); // 3*1*4 + 3*1*2
}

TEST_CASE("tail power low orders") {
    const Series x = prime_series();
    const Series t3 = tail_power(x, 3);
    CHECK(t3[0] == 0);     // empty sum
    CHECK(t3[1] == 4 * 3); // x_0^2 x_1: forced by X^3_1 = X^[3]_1 + 3 X<3>_1
                           // with X^[3]_1 = 0
    CHECK(t3[2] == 4 * 5);            // x_0^2 x_2
    CHECK(t3[3] == 4 * 7 + 2 * 2 * 3 * 5);  // x_0^2 x_3 + 2 x_0 x_1 x_2
    CHECK(t3[4] == 4 * 11 + 2 * 2 * 3 * 7); // x_0^2 x_4 + 2 x_0 x_1 x_3

    CHECK_THROWS_AS(tail_power(x, 0), UsageError);
}

TEST_CASE("core/tail identity on random series") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        const Series x = random_series(rng, 20);
        const auto cores = core_power_family(x, 5);
        for (std::uint64_t m = 0; m <= 5; ++m) {
            const Series xm = power(x, m);
            const Series tail = m >= 1 ? tail_power(x, m) : Series(x.order());
            for (std::size_t n = 0; n <= x.order(); ++n)
                CHECK(xm[n] == cores[m][n] + Rational(static_cast<unsigned long>(m)) * tail[n]);
        }
    }
}

TEST_CASE("core/tail sums match the enumeration oracle") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        const Series x = random_series(rng, 12);
        const auto cores = core_power_family(x, 4);
        for (std::uint64_t m = 1; m <= 4; ++m) {
            const Series tail = tail_power(x, m);
            for (std::size_t n = 0; n <= 12; ++n) {
                const auto [oc, ot] = oracle::naive_core_tail_coeff(x, m, n);
                CHECK(oc == cores[m][n]);
                CHECK(ot == tail[n]);
            }
        }
    }
}

TEST_CASE("delta and epsilon at small indices") {
    // A(t) = t^2, X = 1 + z
    const SeriesPoly a = monomial_poly(2, 2);
    const Series x = from_ints({1, 1, 0});
    CHECK(delta(a, x, 2) == 1); // (X^[2])_2 = x_1^2
    CHECK(delta(a, x, 1) == 0);
    CHECK(epsilon(a, x, 2) == 0);
    CHECK(epsilon(a, x, 0) == 0); // q < p <= 0 impossible

    // degree-0 polynomial: delta_n is just (A_0)_n
    const Series a0 = from_ints({4, 9, 1});
    const SeriesPoly constant(std::vector<Series>{a0});
    for (std::size_t n = 0; n <= 2; ++n)
        CHECK(delta(constant, from_ints({1, 2, 3}), n) == a0[n]);
}

TEST_CASE("epsilon triple sum, nonzero case by hand") {
    // A(t) = z t^2 at the prime series: the only admissible triple at n = 4
    // is (k, p, q) = (1, 2, 1), giving 2 (A_2)_1 (X^1)_1 X_2 = 2 * 3 * 5
    Series a2(4);
    a2.at(1) = 1;
    std::vector<Series> coeffs{Series(4), Series(4), a2};
    const SeriesPoly a(std::move(coeffs));
    const Series x = prime_series();
    CHECK(epsilon(a, x, 4) == 30);

    // cross-check the full decomposition: A(X)_4 = (X^2)_3 = 58
    const DecompComponents c = decompose(a, x, 4, 1);
    CHECK(c.alpha_n == 58);
    CHECK(c.head == 0);
    CHECK(c.gamma == 28); // A'(X)_1 X_3 = 2 x_0 x_3
    CHECK(c.delta == 0);  // (X^[2])_3 = 0
    CHECK(c.epsilon == 30);
}

TEST_CASE("head and gamma") {
    const SeriesPoly a = monomial_poly(2, 5);

    // X = 1 + z + 2z^2: head at (n=5, lambda=1) is 2 x_0 x_5 = 0
    CHECK(head(a, from_ints({1, 1, 2, 0, 0, 0}), 5, 1) == 0);

    // X = 1 + z + 2z^2 + z^3 + z^4 + z^5: lambda=2 head = 2(x_0 x_5 + x_1 x_4) = 4
    const Series x = from_ints({1, 1, 2, 1, 1, 1});
    CHECK(head(a, x, 5, 2) == 4);
    CHECK(head(a, x, 5, 0) == 0); // empty sum

    // gamma at (n=5, lambda=1) is 2(x_1 x_4 + x_2 x_3)
    CHECK(gamma(a, x, 5, 1) == Rational(2 * (1 * 1 + 2 * 1)));

    // A(t) = t^2, X = 1 + z: gamma(2, 0) = 2 x_0 x_2 = 0 at this truncation
    CHECK(gamma(monomial_poly(2, 2), from_ints({1, 1, 0}), 2, 0) == 0);

    CHECK_THROWS_AS(gamma(a, x, 4, 2), UsageError); // lambda >= n/2
    CHECK_THROWS_AS(head(a, x, 4, 2), UsageError);
}

TEST_CASE("decompose on pinned examples") {
    const SeriesPoly a = monomial_poly(2, 2);
    const Series x = from_ints({1, 1, 0});

    const DecompComponents c2 = decompose(a, x, 2, 0);
    CHECK(c2.head == 0);
    CHECK(c2.gamma == 0);
    CHECK(c2.delta == 1);
    CHECK(c2.epsilon == 0);
    CHECK(c2.alpha_n == 1);

    const DecompComponents c1 = decompose(a, x, 1, 0);
    CHECK(c1.head == 0);
    CHECK(c1.gamma == 2);
    CHECK(c1.delta == 0);
    CHECK(c1.epsilon == 0);
    CHECK(c1.alpha_n == 2);
}

TEST_CASE("decompose with X = 0 leaves only the constant core") {
    std::mt19937 rng(47);
    std::vector<Series> coeffs{random_series(rng, 6), random_series(rng, 6),
                               random_series(rng, 6)};
    const Series a0 = coeffs[0];
    const SeriesPoly a(std::move(coeffs));
    const Series x(6);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t lambda = 0; 2 * lambda < n; ++lambda) {
            const DecompComponents c = decompose(a, x, n, lambda);
            CHECK(c.head == 0);
            CHECK(c.gamma == 0);
            CHECK(c.delta == a0[n]);
            CHECK(c.epsilon == 0);
        }
    }
}

TEST_CASE("decompose preconditions") {
    const SeriesPoly a = monomial_poly(2, 6);
    const Series x = from_ints({1, 1, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(decompose(a, x, 0, 0), UsageError);
    CHECK_THROWS_AS(decompose(a, x, 7, 0), UsageError);
    CHECK_THROWS_AS(decompose(a, x, 4, 2), UsageError);
    CHECK_THROWS_AS(decompose(a, x, 4, 3), UsageError);
    CHECK_NOTHROW(decompose(a, x, 5, 2));
}

TEST_CASE("decomposition identity on random inputs") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t degree = rng() % 4;
        const std::size_t order = 5 + rng() % 11;
        Decomposer dec(random_poly(rng, degree, order), random_series(rng, order));
        for (std::size_t n = 1; n <= order; ++n)
            for (std::size_t lambda = 0; 2 * lambda < n; ++lambda)
                CHECK_NOTHROW(dec.decompose(n, lambda)); // identity asserted inside
    }
}

TEST_CASE("lambda shift moves one term between head and gamma") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t order = 16;
        Decomposer dec(random_poly(rng, 3, order), random_series(rng, order));
        const Series& dax = dec.derivative_at_x();
        const Series& x = dec.series();
        for (std::size_t n = 1; n <= order; ++n) {
            for (std::size_t lambda = 0; 2 * (lambda + 1) < n; ++lambda) {
                const Rational step = dax[lambda] * x[n - lambda];
                CHECK(dec.head(n, lambda + 1) - dec.head(n, lambda) == step);
                CHECK(dec.gamma(n, lambda) - dec.gamma(n, lambda + 1) == step);
            }
        }
    }
}

TEST_CASE("identity holds for both parities of n") {
    std::mt19937 rng(61);
    Decomposer dec(random_poly(rng, 3, 21), random_series(rng, 21));
    for (std::size_t n : {20u, 21u})
        for (std::size_t lambda = 0; 2 * lambda < n; ++lambda)
            CHECK_NOTHROW(dec.decompose(n, lambda));
}

TEST_CASE("region tally of the cubic monomial") {
    // A(t) = t^3, n = 4, lambda = 1: 15 monomials, 6 core and 9 tail;
    // with the tail split as 0 epsilon (nothing fits below n/2), 6 gamma
    // (p = 3), 3 head (p = 4, l = 0 < lambda)
    const SeriesPoly a = monomial_poly(3, 4);
    const Series x = prime_series();
    const RegionTally t = region_tally(a, x, 4, 1);
    CHECK(t.core.count + t.epsilon.count + t.gamma.count + t.head.count == 15);
    CHECK(t.core.count == 6);
    CHECK(t.epsilon.count == 0);
    CHECK(t.gamma.count == 6);
    CHECK(t.head.count == 3);

    Decomposer dec(a, x);
    const DecompComponents c = dec.decompose(4, 1);
    CHECK(t.core.sum == c.delta);
    CHECK(t.epsilon.sum == c.epsilon);
    CHECK(t.gamma.sum == c.gamma);
    CHECK(t.head.sum == c.head);
    CHECK(t.total() == c.alpha_n);
}

TEST_CASE("region tally matches decompose on random inputs") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const SeriesPoly a = random_poly(rng, 2, 10);
        const Series x = random_series(rng, 10);
        Decomposer dec(a, x);
        for (std::size_t n = 1; n <= 10; ++n) {
            for (std::size_t lambda = 0; 2 * lambda < n; ++lambda) {
                const RegionTally t = region_tally(a, x, n, lambda);
                const DecompComponents c = dec.decompose(n, lambda);
                CHECK(t.core.sum == c.delta);
                CHECK(t.epsilon.sum == c.epsilon);
                CHECK(t.gamma.sum == c.gamma);
                CHECK(t.head.sum == c.head);
            }
        }
    }
}

TEST_CASE("region tally with X = 0") {
    // only the j = 0 term can contribute; put its mass at the queried index
    Series a0(6);
    a0.at(3) = 1;
    std::vector<Series> coeffs{a0, Series::constant(Rational(1), 6),
                               Series::constant(Rational(1), 6)};
    const SeriesPoly a(std::move(coeffs));
    const RegionTally t = region_tally(a, Series(6), 3, 1);
    CHECK(t.core.sum == 1);
    CHECK(t.epsilon.sum == 0);
    CHECK(t.gamma.sum == 0);
    CHECK(t.head.sum == 0);
}

TEST_CASE("region tally guardrails") {
    const SeriesPoly a = monomial_poly(2, 30);
    const Series x(30);
    CHECK_THROWS_AS(region_tally(a, x, 25, 1), UsageError);
    CHECK_THROWS_AS(region_tally(monomial_poly(7, 8), Series(8), 4, 1), UsageError);
    CHECK_THROWS_AS(region_tally(a, x, 4, 2), UsageError);
}
