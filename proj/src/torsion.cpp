#include "ptorsion/torsion.hpp"

#include <cstdlib>

#include "ptorsion/quadrature.hpp"
#include "ptorsion/specfun.hpp"

namespace ptorsion::torsion {

namespace bmp = boost::multiprecision;
using series::Parity;

namespace {

BigReal two_pi() { return 2 * pi_big(); }

void require_rotation_angle(const BigReal& t) {
    if (t <= 0 || t >= two_pi()) throw ArgumentError("rotation angle must lie in (0, 2 pi)");
}

ConstExpr metric_constant() { return ConstExpr::log_t() * Rational(2) + ConstExpr::gamma() * Rational(2); }

// Odd series sum_{m odd <= order} coeff(m) t^m.
template <class Coeff>
LaurentSeries odd_series(int order, Coeff coeff) {
    LaurentSeries s(0, order, Parity::Odd);
    for (int m = 1; m <= order; m += 2) s.set(m, coeff(m));
    return s;
}

Rational sign_pow(int m) {  // (-1)^{(m+1)/2} for odd m
    return ((m + 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);
}

Rational inv_factorial(int m) { return Rational(1) / Rational(factorial(static_cast<unsigned>(m))); }

// cos((l+1)t/2)/sin(t/2) * odd, valid through `order`.
LaurentSeries cos_over_sin_times(int ell, const LaurentSeries& odd, int order) {
    LaurentSeries c = series::cos_scaled(Rational(ell + 1, 2), order + 1);
    LaurentSeries p = c * odd * series::inv_sin_half(order + 1);
    return p.truncated(order).with_min_degree(0);
}

BigReal cos_over_sin(int ell, const BigReal& t) { return bmp::cos(BigReal(ell + 1) * t / 2) / bmp::sin(t / 2); }

int oscillation_panels(int ell) { return std::max(1, twist(ell) / 4); }

}  // namespace

const char* path_name(Path p) {
    switch (p) {
        case Path::Series: return "series";
        case Path::Quadrature: return "quadrature";
        case Path::BilateralSum: return "bilateral-sum";
        case Path::Lerch: return "lerch";
    }
    return "";
}

int twist(int ell) { return std::abs(ell + 1); }

LaurentSeries log_sum_series(int ell, int order) {
    const int n = twist(ell);
    LaurentSeries inv = series::inv_sin_half(order + 1);
    LaurentSeries out(0, order, Parity::Even);
    for (int m = 2; m <= n; ++m) {
        LaurentSeries ratio = series::sin_scaled(Rational(2 * m - n, 2), order + 1) * inv;
        out += (ratio * ConstExpr::log(static_cast<std::uint64_t>(m))).truncated(order).with_min_degree(0);
    }
    return out;
}

BigReal log_sum_value(int ell, const BigReal& t) {
    const int n = twist(ell);
    BigReal s = bmp::sin(t / 2);
    BigReal sum = 0;
    for (int m = 2; m <= n; ++m) sum += bmp::sin(BigReal(2 * m - n) * t / 2) / s * bmp::log(BigReal(m));
    return sum;
}

LaurentSeries fixed_point_series(int ell, int order) {
    LaurentSeries c = series::cos_scaled(Rational(ell + 1, 2), order + 2);
    LaurentSeries f = (c * series::inv_sin_half(order + 2)).shifted(-1);
    f.set_parity(Parity::Even);
    return f.truncated(order);
}

BigReal fixed_point_value(int ell, const BigReal& t) { return cos_over_sin(ell, t) / t; }

BigReal torsion_group(int ell, const BigReal& t) {
    require_rotation_angle(t);
    return 2 * specfun::r_rot_value(t) * cos_over_sin(ell, t) + log_sum_value(ell, t);
}

BigReal i_class_kernel_series(const BigReal& x) {
    if (bmp::abs(x) >= two_pi()) throw ArgumentError("I-class series needs |x| < 2 pi");
    BigReal eps = working_epsilon();
    BigReal sum = 0, xp = x, x2 = x * x, h = 1;
    int small = 0;
    for (long m = 1; m < 40000; m += 2) {
        BigReal term = h * specfun::zeta_neg_over_factorial(m) * xp;
        if (((m - 1) / 2) % 2 != 0) term = -term;
        sum += term;
        if (bmp::abs(term) <= eps * (bmp::abs(sum) + eps)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
        xp *= x2;
        h += BigReal(1) / (m + 1) + BigReal(1) / (m + 2);
    }
    throw AccuracyError("I-class series did not converge", to_decimal(sum, 20), "");
}

BigReal i_class_kernel_direct(const BigReal& x) {
    BigReal tp = two_pi();
    quadrature::BilateralOptions opt;
    opt.include_zero = false;
    opt.tail_coefficient = x / (2 * pi_big() * pi_big());
    auto term = [&](long k) -> BigReal {
        BigReal a = tp * k;
        return bmp::log(1 + x / a) / (x + a);
    };
    return -quadrature::bilateral_sum(term, 2, opt).value;
}

LaurentSeries i_class_series(int ell, int order) {
    LaurentSeries kernel = odd_series(order + 1, [](int m) {
        Rational c = harmonic(m) * specfun::zeta_neg(m) * inv_factorial(m);
        return ConstExpr(((m - 1) / 2) % 2 == 0 ? c : Rational(-c));
    });
    return cos_over_sin_times(ell, kernel, order);
}

BigReal i_class_value(int ell, const BigReal& t) { return cos_over_sin(ell, t) * i_class_kernel_series(t); }

LaurentSeries tdchs_series(int ell, int order) {
    LaurentSeries f = fixed_point_series(ell, order);
    return -series::star(f) + f * metric_constant();
}

BigReal tdchs_value(int ell, const BigReal& t, const BigReal& tol) {
    if (t == 0 || bmp::abs(t) >= two_pi()) throw ArgumentError("TdchS value needs 0 < |t| < 2 pi");
    const BigReal nu = BigReal(ell + 1) / 2;
    // h(tau) = tau cos((l+1)tau/2) / (2 sin(tau/2)), h(0) = 1
    auto h = [&](const BigReal& tau) -> BigReal {
        if (tau == 0) return BigReal(1);
        return tau * bmp::cos(nu * tau) / (2 * bmp::sin(tau / 2));
    };
    BigReal ht = h(t);
    BigReal t2 = t * t;
    quadrature::IntegrandSpec spec{
        [&](const BigReal& r) -> BigReal { return 2 * (h(t * r) - ht) / ((1 - r) * (1 + r)); }, BigReal(0), BigReal(1),
        quadrature::EndpointHint::Removable, oscillation_panels(ell)};
    // The integrand is even in r.
    BigReal integral = 2 * quadrature::integrate(spec, tol * t2 / 4).value;
    return integral / t2 + (2 * bmp::log(bmp::abs(t)) + 2 * euler_gamma_big()) * 2 * ht / t2;
}

TorsionResult tdchs_term(int ell, TdchsMode mode, int order, const BigReal& t, const BigReal& tol) {
    TorsionResult r;
    r.ell = ell;
    r.precision = working_digits();
    r.order = order;
    if (mode == TdchsMode::Series) {
        r.payload = tdchs_series(ell, order);
        r.path = Path::Series;
    } else {
        r.payload = tdchs_value(ell, t, tol);
        r.path = Path::Quadrature;
    }
    return r;
}

BigReal oscillatory_part_quadrature(int ell, const BigReal& t, const BigReal& tol) {
    const BigReal nu = BigReal(ell + 1) / 2;
    BigReal ct = bmp::cos(nu * t);
    BigReal denom = t * bmp::sin(t / 2);
    quadrature::IntegrandSpec spec{
        [&](const BigReal& r) -> BigReal { return (bmp::cos(nu * t * r) - ct) / ((1 - r) * (1 + r)); }, BigReal(0), BigReal(1),
        quadrature::EndpointHint::Removable, oscillation_panels(ell)};
    return 2 * quadrature::integrate(spec, tol * bmp::abs(denom) / 4).value / denom;
}

BigReal oscillatory_part_si_ci(int ell, const BigReal& t) {
    const int n = twist(ell);
    if (n == 0) return BigReal(0);
    BigReal x = BigReal(n) * t;
    auto sc = specfun::sine_cosine_integral(x);
    BigReal num = bmp::sin(x / 2) * sc.si - bmp::cos(x / 2) * (euler_gamma_big() - sc.ci + bmp::log(x));
    return num / (t * bmp::sin(t / 2));
}

BigReal torsion_asymptotic(int ell, const BigReal& t) {
    require_rotation_angle(t);
    const int n = twist(ell);
    if (n == 0) throw ArgumentError("asymptotic form needs l != -1");
    BigReal x = BigReal(n) * t / 2;
    BigReal num = bmp::sin(x) * pi_big() / 2 - bmp::cos(x) * bmp::log(BigReal(n)) +
                  bmp::cos(x) * (bmp::log(t) + euler_gamma_big());
    return num / (t * bmp::sin(t / 2));
}

TorsionResult torsion_infinitesimal(int ell, int order) {
    if (order < 4) throw ArgumentError("torsion_infinitesimal: order >= 4");
    const int n = order;
    LaurentSeries rot = specfun::r_rot_series(n + 2) * ConstExpr(2);
    LaurentSeries group = rot * series::cos_scaled(Rational(ell + 1, 2), n + 2) * series::inv_sin_half(n + 2);
    LaurentSeries f = fixed_point_series(ell, n);
    LaurentSeries total = group.truncated(n) + log_sum_series(ell, n) - f * metric_constant() + series::star(f) +
                          i_class_series(ell, n);

    for (int d = total.min_degree(); d <= n; ++d) {
        const ConstExpr& c = total.coeff(d);
        if (c.is_zero()) continue;
        if (d < 0) throw ConsistencyError("torsion series keeps a pole at t^" + std::to_string(d));
        if (d % 2 != 0) throw ConsistencyError("torsion series has an odd term at t^" + std::to_string(d));
        if (c.coefficient(ConstSymbol::log_t()) != 0)
            throw ConsistencyError("torsion series keeps log t at t^" + std::to_string(d));
    }
    LaurentSeries even = total.with_min_degree(0);
    even.set_parity(Parity::Even);

    TorsionResult r;
    r.payload = std::move(even);
    r.ell = ell;
    r.path = Path::Series;
    r.precision = working_digits();
    r.order = n;
    return r;
}

LaurentSeries gs_summand_series(int ell, int order) {
    LaurentSeries g = odd_series(order + 1, [](int m) {
        ConstExpr c = ConstExpr::zeta_prime(m) * Rational(2) + ConstExpr(harmonic(m) * specfun::zeta_neg(m));
        return c * (sign_pow(m) * inv_factorial(m));
    });
    return -cos_over_sin_times(ell, g, order);
}

TwoParamResult torsion_two_param(int ell, const BigReal& s, const BigReal& t, const BigReal& tol) {
    BigReal u = s + t;
    BigReal tp = two_pi();
    if (u == 0 || bmp::abs(u) >= tp) throw ArgumentError("two-parameter torsion needs 0 < |s+t| < 2 pi");
    BigReal sr = specfun::reduce_angle(s);
    BigReal dist = bmp::min(sr, tp - sr);
    if (dist == 0) throw ArgumentError("two-parameter torsion needs s != 0 mod 2 pi");
    // log(1 + t/(2 pi k + s)) is real for every k iff s and s+t lie in the same period cell.
    if (bmp::floor(s / tp) != bmp::floor(u / tp) || bmp::floor(u / tp) == u / tp)
        throw ArgumentError("two-parameter torsion needs s and s+t in the same interval ]2 pi k, 2 pi (k+1)[");

    BigReal cs = cos_over_sin(ell, u);
    BigReal logs = log_sum_value(ell, u);

    quadrature::BilateralOptions opt;
    opt.tail_coefficient = t / (2 * pi_big() * pi_big());
    auto term = [&](long k) -> BigReal {
        BigReal a = tp * k;
        return bmp::log(1 + t / (a + s)) / (a + u);
    };
    BigReal ksum = quadrature::bilateral_sum(term, 2, opt).value;
    BigReal rot = u > 0 ? specfun::r_rot_value(u) : -specfun::r_rot_value(-u);
    BigReal bilateral = 2 * rot * cs + logs - cs * ksum;

    // The Lerch series for R(s, it) converges only for |t| < dist(s, 2 pi Z).
    if (bmp::abs(t) >= dist) return {bilateral, bilateral, BigReal(0), false};

    BigComplex r = specfun::r_function(s, BigComplex(BigReal(0), t));
    // cos/(i sin) * R; the real part is the torsion, the imaginary part must vanish.
    BigReal lerch = logs + cs * r.im;

    TwoParamResult out{lerch, bilateral, bmp::abs(lerch - bilateral), true};
    if (out.discrepancy > tol || bmp::abs(cs * r.re) > tol)
        throw ConsistencyError("two-parameter torsion: Lerch and direct-sum paths disagree by " +
                               to_decimal(out.discrepancy, 5));
    return out;
}

}  // namespace ptorsion::torsion
