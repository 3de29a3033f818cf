#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ptorsion/numerics.hpp"

using namespace ptorsion;
using testing::big;

TEST_SUITE("numerics") {

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0);
    CHECK(harmonic(1) == 1);
    CHECK(harmonic(3) == Rational(11, 6));
    CHECK_THROWS_AS(harmonic(-1), ArgumentError);
    Rational h = 0;
    for (long m = 0; m < 10000; ++m) {
        Rational next = h + Rational(1, m + 1);
        if (m % 997 == 0) REQUIRE(harmonic(m + 1) - harmonic(m) == Rational(1, m + 1));
        h = next;
    }
    CHECK(harmonic(10000) == h);
}

TEST_CASE("factorial and binomial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("rational text round trip") {
    CHECK(rational_string(Rational(-3, 6)) == "-1/2");
    CHECK(rational_string(Rational(4)) == "4");
    CHECK(parse_rational("-10/4") == Rational(-5, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), ArgumentError);
    CHECK_THROWS_AS(parse_rational("abc"), ArgumentError);
}

TEST_CASE("symbols have canonical tags and a total order") {
    CHECK(ConstSymbol::zeta_prime(3).tag() == "ZETA_PRIME(-3)");
    CHECK(ConstSymbol::log_prime(2).tag() == "LOG(2)");
    CHECK(ConstSymbol::log_t().tag() == "LOG_T");
    CHECK(ConstSymbol::gamma().pretty() == "gamma");
    CHECK_THROWS_AS(ConstSymbol::zeta_prime(2), ArgumentError);
    CHECK_THROWS_AS(ConstSymbol::log_prime(4), ArgumentError);
    CHECK(ConstSymbol::one() < ConstSymbol::gamma());
}

TEST_CASE("logs of composites expand over primes") {
    ConstExpr l12 = ConstExpr::log(std::uint64_t{12});
    CHECK(l12.coefficient(ConstSymbol::log_prime(2)) == 2);
    CHECK(l12.coefficient(ConstSymbol::log_prime(3)) == 1);
    CHECK(ConstExpr::log(std::uint64_t{1}).is_zero());
    CHECK(ConstExpr::log(Rational(3, 4)) == ConstExpr::log(std::uint64_t{3}) - ConstExpr::log(std::uint64_t{4}));
    CHECK(ConstExpr::from_tag("LOG(6)") == ConstExpr::log(std::uint64_t{6}));
}

TEST_CASE("ConstExpr is a rational vector space") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    auto random_expr = [&] {
        return ConstExpr(Rational(d(rng), 1 + std::abs(d(rng)))) + ConstExpr::gamma() * Rational(d(rng)) +
               ConstExpr::zeta_prime(1) * Rational(d(rng), 7) + ConstExpr::log(std::uint64_t(2 + std::abs(d(rng)))) +
               ConstExpr::log_t() * Rational(d(rng));
    };
    for (int i = 0; i < 50; ++i) {
        ConstExpr a = random_expr(), b = random_expr(), c = random_expr();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        CHECK((a + b) * Rational(3, 5) == a * Rational(3, 5) + b * Rational(3, 5));
    }
}

TEST_CASE("zero coefficients are never stored") {
    ConstExpr e = ConstExpr::gamma() - ConstExpr::gamma();
    CHECK(e.is_zero());
    CHECK(e.terms().empty());
    CHECK(e.to_string() == "0");
}

TEST_CASE("products of two symbolic expressions are rejected") {
    ConstExpr g = ConstExpr::gamma();
    CHECK_THROWS_AS(g * ConstExpr::log_t(), NonlinearProductError);
    CHECK(g * ConstExpr(Rational(2)) == g * Rational(2));
    CHECK(ConstExpr(Rational(3)) * g == g * Rational(3));
}

TEST_CASE("printing") {
    ConstExpr e = ConstExpr::zeta_prime(1) * Rational(4) - ConstExpr(Rational(1, 2));
    CHECK(e.to_string() == "-1/2 + 4*zeta'(-1)");
    CHECK(ConstExpr::zeta_prime(1).to_string() == "zeta'(-1)");
}

TEST_CASE("log t substitution") {
    ConstExpr e = ConstExpr::log_t() * Rational(2) + ConstExpr::gamma();
    ConstExpr s = e.substitute_log_t(ConstExpr::log_t() + ConstExpr::log(std::uint64_t{2}));
    CHECK(s == e + ConstExpr::log(std::uint64_t{2}) * Rational(2));
}

TEST_CASE("eval_const") {
    CHECK(eval_const(ConstExpr(Rational(1, 2))) == big("0.5"));

    // gamma = lim H_n - log n, accelerated with the Euler-Maclaurin tail -1/(2n) + sum B_2k/(2k n^2k).
    const long n = 100;
    const Rational b2k[] = {Rational(1, 6), Rational(-1, 30), Rational(1, 42), Rational(-1, 30), Rational(5, 66),
                            Rational(-691, 2730), Rational(7, 6), Rational(-3617, 510), Rational(43867, 798),
                            Rational(-174611, 330), Rational(854513, 138), Rational(-236364091, 2730)};
    BigReal gamma = to_big(harmonic(n)) - boost::multiprecision::log(BigReal(n)) - BigReal(1) / (2 * n);
    BigReal np = BigReal(n) * n;
    for (int k = 1; k <= 12; ++k, np *= BigReal(n) * n) gamma += to_big(b2k[k - 1]) / (2 * k) / np;
    CHECK(testing::agree(eval_const(ConstExpr::gamma()), gamma, 45));

    CHECK(testing::close(eval_const(ConstExpr::zeta_prime(1)), big("-0.1654211437004509292139196602427806427640"), "1e-40"));
    CHECK(testing::close(eval_const(ConstExpr::log(std::uint64_t{6})), boost::multiprecision::log(BigReal(6)), "1e-48"));
    CHECK_THROWS_AS(eval_const(ConstExpr::log_t()), EvaluationError);
    CHECK(eval_const(ConstExpr::log_t() * Rational(3), BigReal(2)) == 6);
}

TEST_CASE("eval_const is linear") {
    ConstExpr a = ConstExpr::gamma() + ConstExpr::zeta_prime(3) * Rational(5);
    ConstExpr b = ConstExpr::log(std::uint64_t{10}) - ConstExpr(Rational(2, 3));
    Rational al(3, 7), be(-11, 5);
    BigReal lhs = eval_const(a * al + b * be);
    BigReal rhs = to_big(al) * eval_const(a) + to_big(be) * eval_const(b);
    CHECK(testing::agree(lhs, rhs, 49));
}

TEST_CASE("eval_const at an explicit precision") {
    BigReal v = eval_const(ConstExpr::gamma(), 80, std::nullopt);
    CHECK(working_digits() == kDefaultDigits);
    CHECK(testing::agree(v, eval_const(ConstExpr::gamma()), 49));
}

TEST_CASE("precision guard nests") {
    {
        WorkingPrecision outer(30);
        CHECK(working_digits() == 30);
        {
            WorkingPrecision inner(70);
            CHECK(working_digits() == 70);
        }
        CHECK(working_digits() == 30);
    }
    CHECK(working_digits() == kDefaultDigits);
}

TEST_CASE("JSON round trip") {
    ConstExpr e = ConstExpr::zeta_prime(1) * Rational(-2) + ConstExpr(Rational(1, 12)) + ConstExpr::log(std::uint64_t{2});
    auto j = to_json(e);
    CHECK(j["terms"][0]["symbol"] == "ONE");
    CHECK(j["terms"][0]["num"] == "1");
    CHECK(j["terms"][0]["den"] == "12");
    CHECK(const_expr_from_json(j) == e);
    CHECK(j.dump().find("\"symbol\":\"ONE\",\"num\"") != std::string::npos);
}

}  // TEST_SUITE
