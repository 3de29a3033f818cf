#include "doctest.h"
#include "helpers.hpp"
#include "ptorsion/specfun.hpp"
#include "ptorsion/torsion.hpp"

using namespace ptorsion;
using namespace ptorsion::torsion;
using testing::agree;
namespace bmp = boost::multiprecision;

namespace {

const BigReal& qtol() {
    static const BigReal t("1e-22");
    return t;
}

// group - tdchs + I-class, all evaluated without the assembled series
BigReal chain(int ell, const BigReal& t) {
    return torsion_group(ell, t) - tdchs_value(ell, t, qtol()) + i_class_value(ell, t);
}

ConstExpr log_k_sum(int n, auto weight) {
    ConstExpr s;
    for (int k = 1; k <= n; ++k) s += ConstExpr::log(std::uint64_t(k)) * weight(k);
    return s;
}

// 4 zeta'(-1) - n^2/2 - sum_{k=1}^{n} (n - 2k) log k, n = |l+1|
ConstExpr constant_term(int ell) {
    int n = twist(ell);
    return ConstExpr::zeta_prime(1) * Rational(4) - ConstExpr(Rational(n * n, 2)) -
           log_k_sum(n, [n](int k) { return Rational(n - 2 * k); });
}

}  // namespace

TEST_SUITE("torsion") {

TEST_CASE("twist") {
    CHECK(twist(0) == 1);
    CHECK(twist(-1) == 0);
    CHECK(twist(-4) == 3);
}

TEST_CASE("group torsion for l = 0 and l = -1") {
    for (const char* ts : {"0.3", "1", "4"}) {
        BigReal t(ts);
        CAPTURE(ts);
        BigReal rr = specfun::r_rot_value(t), sh = bmp::sin(t / 2);
        CHECK(log_sum_value(0, t) == 0);
        CHECK(agree(torsion_group(0, t), 2 * rr * bmp::cos(t / 2) / sh, 40));
        CHECK(agree(torsion_group(-1, t), 2 * rr / sh, 40));
    }
    CHECK_THROWS_AS(torsion_group(0, BigReal(0)), ArgumentError);
    CHECK_THROWS_AS(torsion_group(0, 2 * pi_big()), ArgumentError);
}

TEST_CASE("log-sum value matches its series") {
    BigReal t("0.4");
    for (int ell : {-4, 2, 5}) {
        CAPTURE(ell);
        CHECK(agree(log_sum_value(ell, t), series::evaluate(log_sum_series(ell, 60), t), 35));
    }
}

TEST_CASE("group torsion is the t = 0 case of the two-parameter torsion") {
    TwoParamResult r = torsion_two_param(2, BigReal(1), BigReal(0), BigReal("1e-12"));
    CHECK(testing::diff(r.value, torsion_group(2, BigReal(1))) <= BigReal("1e-12"));
}

TEST_CASE("I-class series") {
    LaurentSeries i = i_class_series(-1, 10);
    CHECK(i.coeff(0) == ConstExpr(Rational(-1, 6)));
    CHECK(i.has_parity(series::Parity::Even));
    // only odd zeta(-m) enter the kernel: H_1 zeta(-1) x = -x/12 leads
    BigReal x("1e-8");
    CHECK(testing::diff(i_class_kernel_series(x), -x / 12) <= BigReal("1e-26"));
}

TEST_CASE("I-class kernel: series against the bilateral sum") {
    for (const char* xs : {"1", "0.3", "-2"}) {
        BigReal x(xs);
        CAPTURE(xs);
        CHECK(testing::diff(i_class_kernel_series(x), i_class_kernel_direct(x)) <= BigReal("1e-10"));
    }
}

TEST_CASE("I-class value against its series") {
    BigReal t("0.7");
    CHECK(agree(i_class_value(3, t), series::evaluate(i_class_series(3, 80), t), 30));
}

TEST_CASE("fixed point input to star") {
    for (int ell : {-1, 0, 4}) {
        LaurentSeries f = fixed_point_series(ell, 8);
        CHECK(f.min_degree() == -2);
        CHECK(f.coeff(-2) == ConstExpr(Rational(2)));
        CHECK(agree(fixed_point_value(ell, BigReal("0.9")), series::evaluate(fixed_point_series(ell, 70), BigReal("0.9")), 30));
    }
}

TEST_CASE("TdchS: series and integral modes agree") {
    for (auto [ell, ts] : {std::pair{0, "1"}, std::pair{3, "2.5"}, std::pair{-1, "0.7"}}) {
        BigReal t(ts);
        CAPTURE(ell);
        BigReal v = tdchs_term(ell, TdchsMode::Value, 0, t, qtol()).value();
        BigReal s = series::evaluate(tdchs_term(ell, TdchsMode::Series, 60, t, qtol()).series(), t, bmp::log(t));
        CHECK(testing::diff(v, s) <= BigReal("1e-9"));
    }
}

TEST_CASE("TdchS value at l = -1 is even in t") {
    BigReal t("0.8");
    CHECK(agree(tdchs_value(-1, t, qtol()), tdchs_value(-1, -t, qtol()), 20));
}

TEST_CASE("assembled torsion has no poles, odd terms or log t") {
    for (int ell = -3; ell <= 5; ++ell) {
        CAPTURE(ell);
        TorsionResult r = torsion_infinitesimal(ell, 12);
        const LaurentSeries& s = r.series();
        CHECK(s.min_degree() >= 0);
        CHECK(s.has_parity(series::Parity::Even));
        CHECK_FALSE(s.mentions(ConstSymbol::log_t()));
        CHECK(s.coeff(0) == constant_term(ell));
    }
    CHECK(torsion_infinitesimal(-1, 4).series().coeff(0) == ConstExpr::zeta_prime(1) * Rational(4));
    CHECK_THROWS_AS(torsion_infinitesimal(0, 3), ArgumentError);
}

TEST_CASE("l and -2-l give the same series") {
    for (int ell : {0, 1, 2}) CHECK(torsion_infinitesimal(ell, 10).series() == torsion_infinitesimal(-2 - ell, 10).series());
}

TEST_CASE("consistency chain: group - tdchs + I equals the assembled series") {
    for (int ell : {-2, 0, 3}) {
        LaurentSeries s = torsion_infinitesimal(ell, 60).series();
        for (const char* ts : {"0.5", "1"}) {
            BigReal t(ts);
            CAPTURE(ell);
            CAPTURE(ts);
            CHECK(testing::diff(chain(ell, t), series::evaluate(s, t)) <= BigReal("1e-9"));
        }
    }
}

TEST_CASE("t^2 coefficient against a Richardson estimate from the chain") {
    for (int ell : {0, 1, 2}) {
        CAPTURE(ell);
        LaurentSeries s = torsion_infinitesimal(ell, 8).series();
        BigReal c0 = eval_const(s.coeff(0)), c2 = eval_const(s.coeff(2));
        BigReal h("0.04");
        auto e = [&](const BigReal& t) -> BigReal { return (chain(ell, t) - c0) / (t * t); };
        BigReal est = (4 * e(h / 2) - e(h)) / 3;
        CHECK(testing::diff(est, c2) <= BigReal("1e-6"));

        // pieces of the coefficient, n = |l+1|
        int n = twist(ell);
        const ConstExpr& c = s.coeff(2);
        CHECK(c.rational_part() == Rational(10 * n * n * n * n - 5 * n * n - 4, 720));
        CHECK(c.coefficient(ConstSymbol::zeta_prime(3)) == Rational(-4, 6));
        CHECK(c.coefficient(ConstSymbol::zeta_prime(1)) == Rational(-(3 * n * n - 1), 6));
        ConstExpr logs = log_k_sum(n, [n](int m) {
            int a = n - 2 * m;
            return Rational(a * a * a - a, 24);
        });
        ConstExpr rest = c - ConstExpr(c.rational_part()) - ConstExpr::zeta_prime(3) * c.coefficient(ConstSymbol::zeta_prime(3)) -
                         ConstExpr::zeta_prime(1) * c.coefficient(ConstSymbol::zeta_prime(1));
        CHECK(rest == logs);
    }
}

TEST_CASE("oscillatory part: Si/Ci closed form against quadrature") {
    BigReal t(1);
    BigReal a = oscillatory_part_si_ci(10, t), b = oscillatory_part_quadrature(10, t, qtol());
    CHECK(testing::diff(a, b) <= BigReal("1e-9"));
    CHECK(testing::close(a, BigReal("-6.85278675749148068684"), "1e-18"));
    CHECK(testing::diff(oscillatory_part_si_ci(-12, t), b) <= BigReal("1e-9"));
}

TEST_CASE("asymptotic form approaches the integral") {
    BigReal t(1);
    BigReal e100 = bmp::abs(torsion_asymptotic(100, t) - tdchs_value(100, t, qtol()));
    CHECK(e100 < BigReal("0.5"));
}

TEST_CASE("two-parameter torsion") {
    TwoParamResult r = torsion_two_param(1, BigReal("0.7"), BigReal("0.2"), BigReal("1e-8"));
    CHECK(r.cross_checked);
    CHECK(r.discrepancy <= BigReal("1e-8"));
    CHECK(testing::diff(r.value, r.bilateral) <= BigReal("1e-8"));

    // swapping s and t keeps s + t, so only the k-sum term changes
    auto ksum = [](const BigReal& s, const BigReal& t) -> BigReal {
        BigReal tp = 2 * pi_big(), sum = 0;
        const long n = 20000;
        for (long k = -n; k <= n; ++k) sum += bmp::log(1 + t / (tp * k + s)) / (tp * k + s + t);
        return sum + t / (2 * pi_big() * pi_big()) / n;  // sum_{k>n} 2t/(2 pi k)^2
    };
    BigReal s1("0.5"), t1("0.3");
    BigReal u = s1 + t1, cs = bmp::cos(3 * u / 2) / bmp::sin(u / 2);
    BigReal a = torsion_two_param(2, s1, t1, BigReal("1e-8")).value;
    BigReal b = torsion_two_param(2, t1, s1, BigReal("1e-8")).value;
    CHECK(testing::diff(a - b, -cs * (ksum(s1, t1) - ksum(t1, s1))) <= BigReal("1e-8"));

    // (0.3, 0.5) lies outside the Lerch disc; the direct sum still applies
    CHECK_FALSE(torsion_two_param(2, BigReal("0.3"), BigReal("0.5"), BigReal("1e-8")).cross_checked);

    CHECK_THROWS_AS(torsion_two_param(0, BigReal("0.3"), BigReal("-0.3"), BigReal("1e-8")), ArgumentError);
    CHECK_THROWS_AS(torsion_two_param(0, BigReal("0.3"), BigReal("-0.4"), BigReal("1e-8")), ArgumentError);
    CHECK_THROWS_AS(torsion_two_param(0, BigReal(0), BigReal("0.4"), BigReal("1e-8")), ArgumentError);
}

}  // TEST_SUITE
