#include "doctest.h"
#include "helpers.hpp"
#include "ptorsion/scurrent.hpp"

using namespace ptorsion;
using namespace ptorsion::scurrent;
using testing::agree;
namespace bmp = boost::multiprecision;

namespace {

const BigReal& tol() {
    static const BigReal t("1e-25");
    return t;
}

// (log t^2 + 2 gamma) 2c/t^2
BigReal constant_pairing(const BigReal& c, const BigReal& t) {
    return (bmp::log(t * t) + 2 * euler_gamma_big()) * 2 * c / (t * t);
}

}  // namespace

TEST_SUITE("scurrent") {

TEST_CASE("geometry") {
    BigReal u("0.4");
    CHECK(agree(P1Geometry::norm_x_squared(u), bmp::cos(u) * bmp::cos(u) / 2, 45));
    CHECK(agree(P1Geometry::moment_l(u), bmp::sin(u) / 2, 45));
    CHECK(P1Geometry::ctop_inv_prime(BigReal(2)) == BigReal("0.25"));
    CHECK(P1Geometry::fixed_point_angle(true) == 1);
    CHECK(P1Geometry::fixed_point_angle(false) == -1);
}

TEST_CASE("profiles are mirror symmetric") {
    TestProfile p = TestProfile::polynomial({Rational(1), Rational(5), Rational(2)});
    BigReal r("0.3");
    CHECK(p(r) == p(-r));
    CHECK(agree(p(r), 1 + 2 * r * r, 45));
    TestProfile c = TestProfile::callable([](const BigReal& x) -> BigReal { return BigReal(bmp::exp(x)); });
    CHECK(agree(c(r), bmp::cosh(r), 45));
    CHECK_FALSE(c.analytic());
    TestProfile parsed = TestProfile::parse("-1/4*r^2 + 3 + r");
    CHECK(parsed.rational_at_one() == Rational(11, 4));
    CHECK_THROWS_AS(TestProfile::parse("r^"), ArgumentError);
}

TEST_CASE("zero profile pairs to zero on every path") {
    TestProfile z = TestProfile::polynomial({Rational(0)});
    CHECK(s_pairing_integral(z, BigReal(1), tol()) == 0);
    CHECK(s_pairing_series(z, BigReal(2)) == 0);
    CHECK(s_pairing_star_variant_symbolic(z, 6).is_zero());
    CHECK(fixed_point_functional(z, BigReal(3), Convention::EtaT) == 0);
}

TEST_CASE("r^2 at t = 1 is -4 + 4 gamma") {
    TestProfile g = TestProfile::polynomial({Rational(0), Rational(0), Rational(1)});
    BigReal expected = -4 + 4 * euler_gamma_big();
    CHECK(agree(s_pairing_integral(g, BigReal(1), tol()), expected, 24));
    CHECK(agree(s_pairing_series(g, BigReal(1)), expected, 45));
    CHECK(testing::close(expected, BigReal("-1.69114"), "1e-5"));
    LaurentSeries s = s_pairing_series_symbolic(g);
    CHECK(s.coeff(-2) == ConstExpr(Rational(-4)) + (ConstExpr::log_t() * Rational(2) + ConstExpr::gamma() * Rational(2)) * Rational(2));
}

TEST_CASE("constant profiles only see the boundary term") {
    TestProfile g = TestProfile::polynomial({Rational(3, 2)});
    for (const char* ts : {"0.2", "0.5", "1", "3", "11"}) {
        BigReal t(ts);
        CAPTURE(ts);
        CHECK(agree(s_pairing_integral(g, t, tol()), constant_pairing(BigReal("1.5"), t), 40));
        CHECK(agree(s_pairing_series(g, t), constant_pairing(BigReal("1.5"), t), 45));
    }
    CHECK_THROWS_AS(s_pairing_integral(g, BigReal(0), tol()), ArgumentError);
}

TEST_CASE("integral and series paths agree") {
    std::vector<std::vector<Rational>> profiles = {{Rational(1)},
                                                   {Rational(0), Rational(0), Rational(1)},
                                                   {Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)},
                                                   {Rational(0), Rational(0), Rational(1), Rational(0), Rational(1)}};
    for (const auto& c : profiles) {
        TestProfile g = TestProfile::polynomial(c);
        for (const char* ts : {"0.5", "1", "3"}) {
            BigReal t(ts);
            CHECK(testing::diff(s_pairing_integral(g, t, tol()), s_pairing_series(g, t)) <= BigReal("1e-10"));
        }
    }
}

TEST_CASE("analytic callable profiles use their Taylor data") {
    // g(r) = 1/(1 - r^2/4) = sum (r/2)^{2k}, radius 2
    std::vector<Rational> taylor;
    for (int k = 0; k <= 60; ++k) taylor.push_back(k % 2 == 0 ? Rational(1) / Rational(Integer(1) << k) : Rational(0));
    RealFunction f = [](const BigReal& r) -> BigReal { return 1 / (1 - r * r / 4); };
    TestProfile g = TestProfile::callable(f, taylor);
    CHECK(testing::diff(s_pairing_integral(g, BigReal(2), tol()), s_pairing_series(g, BigReal(2))) <= BigReal("1e-10"));
    TestProfile unlicensed = TestProfile::callable(f);
    CHECK_THROWS_AS(s_pairing_series(unlicensed, BigReal(1)), LicensingError);
}

TEST_CASE("star variant for g(t) = -t^2/4") {
    TestProfile g = TestProfile::polynomial({Rational(0), Rational(0), Rational(-1, 4)});
    LaurentSeries s = s_pairing_star_variant_symbolic(g, 4);
    // 1 - (1/2) log t^2 + Gamma'(1) = 1 - LOG_T - GAMMA
    CHECK(s.coeff(0) == ConstExpr(Rational(1)) - ConstExpr::log_t() - ConstExpr::gamma());
    for (int d = s.min_degree(); d <= s.order(); ++d)
        if (d != 0) CHECK(s.coeff(d).is_zero());
    BigReal t("1.7");
    CHECK(agree(s_pairing_star_variant(g, t), 1 - bmp::log(t) - euler_gamma_big(), 40));
}

TEST_CASE("star variant matches the series path after g(r) -> g(t r)") {
    for (const char* ts : {"0.6", "1", "2.5"}) {
        BigReal t(ts);
        CAPTURE(ts);
        TestProfile g = TestProfile::polynomial({Rational(2), Rational(0), Rational(1), Rational(0), Rational(-3, 5)});
        TestProfile scaled = eta_t_profile([&](const BigReal& x) -> BigReal { return g(x); }, t);
        BigReal via_integral = s_pairing_integral(scaled, t, tol());
        CHECK(agree(s_pairing_star_variant(g, t), via_integral, 22));
    }
    TestProfile t2 = TestProfile::polynomial({Rational(0), Rational(0), Rational(1)});
    CHECK(agree(s_pairing_star_variant(t2, BigReal(1)), -4 + 4 * euler_gamma_big(), 45));
}

TEST_CASE("fixed point functional") {
    TestProfile one = TestProfile::polynomial({Rational(1)});
    CHECK(fixed_point_functional(one, BigReal(2), Convention::Plain) == BigReal("0.5"));
    CHECK(fixed_point_functional(one, BigReal(2), Convention::EtaT) == BigReal("0.5"));
    TestProfile g = TestProfile::polynomial({Rational(0), Rational(0), Rational(-1, 4)});
    CHECK(agree(fixed_point_functional(g, BigReal("1.3"), Convention::EtaT), BigReal("-0.5"), 45));
    CHECK(agree(fixed_point_functional(g, BigReal(2), Convention::Plain), BigReal(-1) / 8, 45));
    CHECK_THROWS_AS(fixed_point_functional(g, BigReal(0), Convention::Plain), ArgumentError);
}

TEST_CASE("defining property") {
    auto sin_u = [](const BigReal& u) -> BigReal { return BigReal(bmp::sin(u)); };
    auto cos_u = [](const BigReal& u) -> BigReal { return BigReal(bmp::cos(u)); };
    auto one = [](const BigReal&) -> BigReal { return BigReal(1); };
    DefiningPropertyResidual a = check_defining_property({sin_u, RealFunction(cos_u)}, one, BigReal("1e-20"));
    CHECK(a.residual1 <= BigReal("1e-15"));
    CHECK(a.residual2 <= BigReal("1e-15"));
    DefiningPropertyResidual b = check_defining_property({one, std::nullopt}, one, BigReal("1e-20"));
    CHECK(b.residual2 <= BigReal("1e-12"));
    // without an analytic derivative the central difference still passes at 1e-8
    DefiningPropertyResidual c = check_defining_property({sin_u, std::nullopt}, cos_u, BigReal("1e-20"));
    CHECK(c.residual2 <= BigReal("1e-8"));
    CHECK(c.residual1 <= BigReal("1e-15"));
}

TEST_CASE("scaling identity") {
    TestProfile r2 = TestProfile::polynomial({Rational(0), Rational(0), Rational(1)});
    CHECK(check_scaling(r2, BigReal(1), BigReal(1), tol()) <= BigReal("1e-30"));
    for (const char* ts : {"0.5", "1", "2"})
        for (const char* cs : {"0.5", "2", "3"}) {
            CAPTURE(ts);
            CAPTURE(cs);
            CHECK(check_scaling(r2, BigReal(ts), BigReal(cs), tol()) <= BigReal("1e-10"));
        }
    TestProfile mixed = TestProfile::polynomial({Rational(1), Rational(0), Rational(2), Rational(0), Rational(-1)});
    for (Rational c : {Rational(1, 2), Rational(2), Rational(3)}) CHECK(check_scaling_symbolic(mixed, c).is_zero());
}

}  // TEST_SUITE
