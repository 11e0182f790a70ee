#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fps/rational.hpp"
#include "fps/series.hpp"

using namespace fps;

namespace {

Series from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return Series(std::move(c));
}

Series random_series(std::mt19937& rng, std::size_t order, int num_bound = 9,
                     int den_bound = 9) {
    std::uniform_int_distribution<int> num(-num_bound, num_bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    Series s(order);
    for (std::size_t n = 0; n <= order; ++n)
        s.at(n) = make_rational(num(rng), den(rng));
    return s;
}

} // namespace

TEST_CASE("series construction") {
    const Series zero(4);
    CHECK(zero.order() == 4);
    CHECK(zero.is_zero());
    CHECK_FALSE(zero.valuation().has_value());

    const Series s = from_ints({0, 0, 3, 0, 1});
    CHECK(s.valuation() == 2);
    CHECK(s.top_degree() == 4);
    CHECK(s.support() == std::vector<std::size_t>{2, 4});
    CHECK_THROWS_AS(Series(std::vector<Rational>{}), UsageError);
    CHECK_THROWS_AS(s[5], UsageError);
}

TEST_CASE("addition") {
    CHECK(add(from_ints({1, 1}), from_ints({1, -1})) == from_ints({2, 0}));
    const Series x = from_ints({3, 1, 4});
    CHECK(add(Series(2), x) == x);
    Series a(1);
    a.at(0) = parse_rational("1/2");
    a.at(1) = 1;
    Series b(1);
    b.at(0) = parse_rational("1/3");
    Series expect(1);
    expect.at(0) = parse_rational("5/6");
    expect.at(1) = 1;
    CHECK(add(a, b) == expect);

    CHECK_THROWS_AS(add(Series(2), Series(3)), UsageError);
    CHECK(add(truncated(Series(3), 2), Series(2)) == Series(2));
}

TEST_CASE("multiplication") {
    CHECK(mul(from_ints({1, 1, 0}), from_ints({1, 1, 0})) == from_ints({1, 2, 1}));
    CHECK(mul(from_ints({1, 2, 3, 0, 0}), from_ints({1, 2, 3, 0, 0})) ==
          from_ints({1, 4, 10, 12, 9}));
    // output order is the common truncation order, never more
    CHECK(mul(from_ints({1, 1}), from_ints({1, 1})) == from_ints({1, 2}));

    // Liouville square at index 6: 6 = 2 + 4 = 4 + 2
    Series l(6);
    l.at(1) = 1;
    l.at(2) = 1;
    l.at(4) = 1;
    CHECK(mul(l, l)[6] == 2);
}

TEST_CASE("sparse and dense convolutions agree") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t order = 40;
        Series sparse(order);
        sparse.at(3) = parse_rational("2/3");
        sparse.at(17) = -5;
        sparse.at(31) = parse_rational("7/2");
        const Series dense = random_series(rng, order);
        const Series out = mul(sparse, dense); // support path
        // reference convolution, no support logic
        Series ref(order);
        for (std::size_t n = 0; n <= order; ++n) {
            Rational acc(0);
            for (std::size_t k = 0; k <= n; ++k)
                acc += sparse[k] * dense[n - k];
            ref.at(n) = acc;
        }
        CHECK(out == ref);
        CHECK(mul(dense, sparse) == ref);
    }
}

TEST_CASE("power") {
    const Series x = from_ints({1, 1, 2});
    CHECK(power(x, 0) == Series::constant(Rational(1), 2));
    CHECK(power(x, 1) == x);
    const Series x4 = from_ints({1, 1, 2, 0, 0});
    CHECK(power(x4, 3)[4] == 18); // 3 x0 x2^2 + 3 x1^2 x2
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t order = 1 + rng() % 30;
        const Series a = random_series(rng, order);
        const Series b = random_series(rng, order);
        const Series c = random_series(rng, order);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(mul(a, b) == mul(b, a));
    }
}

TEST_CASE("polynomial evaluation") {
    // A(t) = t^2 at X = 1 + z
    {
        std::vector<Series> coeffs{Series(2), Series(2), Series::constant(Rational(1), 2)};
        const SeriesPoly a(std::move(coeffs));
        CHECK(eval_poly(a, from_ints({1, 1, 0})) == from_ints({1, 2, 1}));
    }
    // A = 0
    {
        const SeriesPoly a = SeriesPoly::zero(3);
        CHECK(eval_poly(a, from_ints({1, 2, 3, 4})).is_zero());
    }
    // A(t) = (1+z) t^2 + z t + 3 at X = 1 + z, order 3
    {
        std::vector<Series> coeffs{from_ints({3, 0, 0, 0}), from_ints({0, 1, 0, 0}),
                                   from_ints({1, 1, 0, 0})};
        const SeriesPoly a(std::move(coeffs));
        CHECK(eval_poly(a, from_ints({1, 1, 0, 0})) == from_ints({4, 4, 4, 1}));
    }
}

TEST_CASE("polynomial derivative") {
    // d/dt t^2 = 2t
    std::vector<Series> coeffs{Series(2), Series(2), Series::constant(Rational(1), 2)};
    const SeriesPoly a(std::move(coeffs));
    const SeriesPoly da = derivative_poly(a);
    CHECK(da.degree() == 1);
    CHECK(da[0].is_zero());
    CHECK(da[1] == Series::constant(Rational(2), 2));

    // constants differentiate to the zero polynomial
    const SeriesPoly c(std::vector<Series>{from_ints({5, 1})});
    const SeriesPoly dc = derivative_poly(c);
    CHECK(dc.degree() == 0);
    CHECK(dc[0].is_zero());

    // (1+z) t^2 + z t + 3  ->  2(1+z) t + z
    std::vector<Series> coeffs2{from_ints({3, 0}), from_ints({0, 1}), from_ints({1, 1})};
    const SeriesPoly a2(std::move(coeffs2));
    const SeriesPoly da2 = derivative_poly(a2);
    CHECK(da2.degree() == 1);
    CHECK(da2[0] == from_ints({0, 1}));
    CHECK(da2[1] == from_ints({2, 2}));
}

TEST_CASE("series polynomial invariants") {
    CHECK_THROWS_AS(SeriesPoly(std::vector<Series>{}), UsageError);
    // members normalized to the smallest order
    const SeriesPoly p(std::vector<Series>{Series(5), from_ints({1, 2, 3})});
    CHECK(p.order() == 2);
    CHECK(p[0].order() == 2);
    // trailing zero coefficient still counts toward the stored degree
    const SeriesPoly q(std::vector<Series>{from_ints({1}), Series(0)});
    CHECK(q.degree() == 1);
}

TEST_CASE("division") {
    std::mt19937 rng(23);

    // D = C gives 1
    Series c = random_series(rng, 12);
    c.at(0) = parse_rational("3/2");
    CHECK(divide(c, c) == Series::constant(Rational(1), 12));

    // geometric series: 1 / (1 - z)
    Series one = Series::constant(Rational(1), 8);
    const Series geo = divide(one, from_ints({1, -1, 0, 0, 0, 0, 0, 0, 0}));
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(geo[n] == 1);

    // (1 + z) / (1 + z + z^2) = 1 - z^2 + z^3 through order 3
    CHECK(divide(from_ints({1, 1, 0, 0}), from_ints({1, 1, 1, 0})) ==
          from_ints({1, 0, -1, 1}));

    CHECK_THROWS_AS(divide(from_ints({1, 1}), from_ints({0, 1})), DomainError);
}

TEST_CASE("divide is a right inverse of mul") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t order = 1 + rng() % 25;
        Series c = random_series(rng, order);
        if (c[0] == 0)
            c.at(0) = 1;
        const Series d = random_series(rng, order);
        CHECK(mul(divide(d, c), c) == d);
    }
}

TEST_CASE("division with leading-zero cancellation") {
    // C = z - z^2, D = z  ->  shift by 1, quotient is the geometric series
    const Series q = divide_with_cancellation(from_ints({0, 1, 0, 0, 0}),
                                              from_ints({0, 1, -1, 0, 0}));
    CHECK(q.order() == 3);
    for (std::size_t n = 0; n <= 3; ++n)
        CHECK(q[n] == 1);

    // valuation(C) > valuation(D): not a power series quotient
    CHECK_THROWS_AS(
        divide_with_cancellation(from_ints({0, 1, 0}), from_ints({0, 0, 1})), DomainError);
    // C = 0 is never invertible
    CHECK_THROWS_AS(divide_with_cancellation(from_ints({1, 0}), Series(1)), DomainError);
    // D = 0 divides cleanly to 0 at the shifted order
    const Series z = divide_with_cancellation(Series(4), from_ints({0, 0, 1, 0, 0}));
    CHECK(z.order() == 2);
    CHECK(z.is_zero());
}

TEST_CASE("shift and truncate guards") {
    CHECK_THROWS_AS(truncated(Series(3), 4), UsageError);
    CHECK_THROWS_AS(shift_down(from_ints({1, 2}), 1), UsageError);
    CHECK(shift_down(from_ints({0, 2, 3}), 1) == from_ints({2, 3}));
}
