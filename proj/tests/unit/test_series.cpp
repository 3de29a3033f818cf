#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ptorsion/quadrature.hpp"
#include "ptorsion/series.hpp"

using namespace ptorsion;
using namespace ptorsion::series;
using testing::agree;
namespace bmp = boost::multiprecision;

namespace {

LaurentSeries poly(std::initializer_list<Rational> c, int order, int min_degree = 0) {
    LaurentSeries s(min_degree, order);
    int d = min_degree;
    for (const auto& q : c) s.set(d++, q);
    return s;
}

LaurentSeries random_series(std::mt19937& rng, int min_degree, int order) {
    std::uniform_int_distribution<int> d(-6, 6);
    LaurentSeries s(min_degree, order);
    for (int k = min_degree; k <= order; ++k) {
        ConstExpr c(Rational(d(rng), 1 + std::abs(d(rng))));
        if (k % 3 == 0) c += ConstExpr::gamma() * Rational(d(rng));
        s.set(k, c);
    }
    return s;
}

// Products below need one factor rational in every term.
LaurentSeries random_rational_series(std::mt19937& rng, int min_degree, int order) {
    std::uniform_int_distribution<int> d(-6, 6);
    LaurentSeries s(min_degree, order);
    for (int k = min_degree; k <= order; ++k) s.set(k, Rational(d(rng), 1 + std::abs(d(rng))));
    return s;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("1/sin(t/2) coefficients") {
    LaurentSeries s = inv_sin_half(10);
    CHECK(s.min_degree() == -1);
    CHECK(s.coeff(-1) == ConstExpr(Rational(2)));
    CHECK(s.coeff(0).is_zero());
    CHECK(s.coeff(1) == ConstExpr(Rational(1, 12)));
    CHECK(s.coeff(3) == ConstExpr(Rational(7, 2880)));
    CHECK(s.has_parity(Parity::Odd));
}

TEST_CASE("1/sin(t/2) times sin(t/2) is one") {
    const int n = 30;
    LaurentSeries p = inv_sin_half(n) * sin_scaled(Rational(1, 2), n + 2);
    CHECK(p.order() >= n);
    CHECK(p.coeff(0) == ConstExpr(Rational(1)));
    for (int d = 1; d <= n; ++d) CHECK(p.coeff(d).is_zero());
}

TEST_CASE("Pythagorean identity") {
    for (Rational a : {Rational(0), Rational(1, 2), Rational(7, 3)}) {
        LaurentSeries c = cos_scaled(a, 24), s = sin_scaled(a, 24);
        LaurentSeries one = c * c + s * s;
        CHECK(one.coeff(0) == ConstExpr(Rational(1)));
        for (int d = 1; d <= one.order(); ++d) CHECK(one.coeff(d).is_zero());
    }
    LaurentSeries c0 = cos_scaled(Rational(0), 6);
    for (int d = 1; d <= 6; ++d) CHECK(c0.coeff(d).is_zero());
}

TEST_CASE("exp builder is multiplicative") {
    LaurentSeries a = exp_scaled(Rational(2, 3), 15), b = exp_scaled(Rational(-5, 4), 15);
    CHECK(a * b == exp_scaled(Rational(2, 3) + Rational(-5, 4), 15));
    CHECK(exp_scaled(Rational(1), 8).coeff(8) == ConstExpr(Rational(1, 40320)));
}

TEST_CASE("product truncation tracks the tightest valid order") {
    LaurentSeries a(-1, 10), b(-1, 14);
    a.set(-1, Rational(1));
    b.set(-1, Rational(1));
    LaurentSeries p = a * b;
    CHECK(p.order() == std::min(10 - 1, 14 - 1));
    CHECK(p.min_degree() == -2);
    CHECK(p.coeff(-2) == ConstExpr(Rational(1)));
}

TEST_CASE("pole order cap") {
    CHECK_THROWS_AS(LaurentSeries(-3, 4), ArgumentError);
    LaurentSeries a(-1, 5), b(-2, 5);
    a.set(-1, Rational(1));
    b.set(-2, Rational(1));
    CHECK_THROWS_AS(a * b, ArgumentError);
}

TEST_CASE("inverse of a series without a usable leading term") {
    CHECK_THROWS_AS(LaurentSeries(0, 5).inverse(), SingularityError);
    LaurentSeries g(0, 5);
    g.set(0, ConstExpr::gamma());
    CHECK_THROWS_AS(g.inverse(), SingularityError);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 20; ++i) {
        LaurentSeries a = random_rational_series(rng, 0, 20), b = random_rational_series(rng, -1, 20),
                      c = random_series(rng, 0, 20);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((c - c).is_zero());
    }
}

TEST_CASE("parity flags survive arithmetic") {
    LaurentSeries e = cos_scaled(Rational(3, 2), 10), o = sin_scaled(Rational(1, 3), 10);
    CHECK((e * e).parity() == Parity::Even);
    CHECK((o * o).parity() == Parity::Even);
    CHECK((e * o).parity() == Parity::Odd);
    CHECK((e + e).parity() == Parity::Even);
}

TEST_CASE("star weights") {
    LaurentSeries one = LaurentSeries::constant(ConstExpr(Rational(1)), 4);
    one.set_parity(Parity::Even);
    CHECK(star(one).coeff(0) == ConstExpr(Rational(2)));
    LaurentSeries pole = LaurentSeries::monomial(ConstExpr(Rational(1)), -2, 4);
    pole.set_parity(Parity::Even);
    CHECK(star(pole).is_zero());
    LaurentSeries t2 = LaurentSeries::monomial(ConstExpr(Rational(1)), 2, 4);
    t2.set_parity(Parity::Even);
    CHECK(star(t2).coeff(2) == ConstExpr(Rational(8, 3)));
    CHECK_THROWS_AS(star(sin_scaled(Rational(1), 5)), ParityError);
}

TEST_CASE("hash weights") {
    CHECK(hash(poly({0, 0, 1}, 4)) == ConstExpr(Rational(2)));
    CHECK(hash(poly({1}, 4)).is_zero());
    CHECK(hash(poly({0, 0, 0, 0, 1}, 4)) == ConstExpr(Rational(8, 3)));
    CHECK_THROWS_AS(hash(poly({0, 1}, 4)), ParityError);
}

TEST_CASE("hash weight equals its defining integral") {
    for (int m = 1; m <= 6; ++m) {
        CAPTURE(m);
        quadrature::IntegrandSpec f{[m](const BigReal& r) -> BigReal {
                                        BigReal r2 = r * r;
                                        return (1 - bmp::pow(r2, m)) / (1 - r2);
                                    },
                                    BigReal(-1), BigReal(1)};
        BigReal v = quadrature::integrate(f, BigReal("1e-20")).value;
        CHECK(testing::diff(v, to_big(hash_weight(m))) <= BigReal("1e-12"));
    }
}

TEST_CASE("star and hash bridge for even polynomials") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> g(7);  // coefficients of t^0, t^2, ..., t^12
        for (auto& q : g) q = Rational(d(rng), 1 + std::abs(d(rng)));
        LaurentSeries lhs(-2, 10, Parity::Even);
        for (int k = 0; k <= 6; ++k) lhs.set(2 * k - 2, g[k]);
        LaurentSeries s = star(lhs);
        for (int k = 0; k <= 6; ++k) {
            // coefficient of t^{2k-2} in g(t r)/t^2, as a series in r
            LaurentSeries in_r(0, 12, Parity::Even);
            in_r.set(2 * k, g[k]);
            CHECK(s.coeff(2 * k - 2) == hash(in_r));
        }
    }
}

TEST_CASE("evaluation") {
    CHECK(evaluate(LaurentSeries::constant(ConstExpr(Rational(5)), 4), BigReal(2)) == 5);
    // truncation after t^N costs about 2 (2 pi)^{-N-1} at t = 1
    BigReal v = evaluate(inv_sin_half(40), BigReal(1));
    BigReal bound = 4 * bmp::pow(2 * pi_big(), -41);
    CHECK(testing::diff(v, 1 / bmp::sin(BigReal("0.5"))) <= bound);
    BigReal w = evaluate(inv_sin_half(40), BigReal("0.1"));
    CHECK(testing::diff(w, 1 / bmp::sin(BigReal("0.05"))) <= epsilon_digits(45));
    CHECK_THROWS_AS(evaluate(inv_sin_half(8), BigReal(0)), EvaluationError);
    LaurentSeries l = LaurentSeries::constant(ConstExpr::log_t(), 2);
    CHECK(evaluate(l, BigReal(3), BigReal("1.5")) == BigReal("1.5"));
}

TEST_CASE("shift and re-basing") {
    LaurentSeries s = cos_scaled(Rational(1), 6);
    CHECK(s.shifted(-2).coeff(-2) == ConstExpr(Rational(1)));
    CHECK(s.shifted(-2).order() == 4);
    CHECK_THROWS_AS(inv_sin_half(6).with_min_degree(0), ArgumentError);
    CHECK_THROWS_AS(s.coeff(7), ArgumentError);
}

TEST_CASE("JSON output") {
    auto j = to_json(inv_sin_half(4), std::nullopt, 20);
    CHECK(j["min_degree"] == -1);
    CHECK(j.dump().find("\"parity\"") != std::string::npos);
}

}  // TEST_SUITE
