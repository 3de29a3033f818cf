#include "ptorsion/specfun.hpp"

#include <mpfr.h>

#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <mutex>

namespace ptorsion {

BigComplex i_power(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {BigReal(1), BigReal(0)};
        case 1: return {BigReal(0), BigReal(1)};
        case 2: return {BigReal(-1), BigReal(0)};
        default: return {BigReal(0), BigReal(-1)};
    }
}

BigComplex exp_i(const BigReal& phi) { return {boost::multiprecision::cos(phi), boost::multiprecision::sin(phi)}; }

}  // namespace ptorsion

namespace ptorsion::specfun {

namespace bmp = boost::multiprecision;

namespace {

BigReal two_pi() { return 2 * pi_big(); }

BigReal harmonic_big(long m) {
    BigReal h = 0;
    for (long j = 1; j <= m; ++j) h += BigReal(1) / j;
    return h;
}

unsigned digits_for(double loss) { return working_digits() + 10 + static_cast<unsigned>(std::max(0.0, std::ceil(loss))); }

}  // namespace

Rational bernoulli(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex m;
    std::lock_guard lock(m);
    while (cache.size() <= n) {
        unsigned k = static_cast<unsigned>(cache.size());
        Rational acc = 0;
        for (unsigned j = 0; j < k; ++j) acc += Rational(binomial(k + 1, j)) * cache[j];
        cache.push_back(-acc / (k + 1));
    }
    return cache[n];
}

namespace {

// B_{2k}/(2k)!
Rational em_coefficient(unsigned k) {
    static std::vector<Rational> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        if (k < cache.size()) return cache[k];
    }
    std::lock_guard lock(mu);
    for (unsigned j = static_cast<unsigned>(cache.size()); j <= k; ++j)
        cache.push_back(bernoulli(2 * j) / Rational(factorial(2 * j)));
    return cache[k];
}

}  // namespace

Rational zeta_neg(long m) {
    if (m < 0) throw ArgumentError("zeta_neg: negative index");
    if (m == 0) return Rational(-1, 2);
    return -bernoulli(static_cast<unsigned>(m + 1)) / (m + 1);
}

ValueAndDerivative hurwitz_zeta(const BigReal& s_in, const BigReal& a_in, bool regularize_pole) {
    if (a_in <= 0) throw ArgumentError("hurwitz_zeta: a must be positive");
    bool at_pole = s_in == 1;
    if (at_pole && !regularize_pole) throw PoleError("hurwitz_zeta: pole at s = 1");

    const unsigned P = working_digits();
    const double sd = s_in.convert_to<double>();
    const double ad = a_in.convert_to<double>();
    long n_em = static_cast<long>(P) + 10 + static_cast<long>(std::ceil(std::fabs(sd)));
    long n_terms = n_em;
    if (sd > 2) {
        // Direct region: (a/(n+a))^s already below the target.
        double w = ad * std::pow(10.0, (P + 10.0) / sd);
        if (w - ad < static_cast<double>(n_em)) n_terms = std::max(1L, static_cast<long>(std::ceil(w - ad)));
    }
    double loss = sd < 1 ? (1 - sd) * std::log10(n_terms + ad + 1) : 0.0;
    const unsigned work = digits_for(loss);

    ValueAndDerivative out;
    {
        WorkingPrecision guard(work);
        BigReal s = s_in;
        s.precision(work);
        BigReal a = a_in;
        a.precision(work);
        BigReal value = 0, deriv = 0;
        for (long n = n_terms - 1; n >= 0; --n) {
            BigReal base = a + n;
            BigReal lg = bmp::log(base);
            BigReal p = bmp::exp(-s * lg);
            value += p;
            deriv -= lg * p;
        }
        BigReal w = a + n_terms;
        BigReal L = bmp::log(w);
        BigReal wms = bmp::exp(-s * L);  // w^{-s}
        if (at_pole) {
            value -= L;
            deriv += L * L / 2;
        } else {
            BigReal sm1 = s - 1;
            BigReal w1 = w * wms;
            value += w1 / sm1;
            deriv += -L * w1 / sm1 - w1 / (sm1 * sm1);
            if (regularize_pole) {
                value -= 1 / sm1;
                deriv += 1 / (sm1 * sm1);
            }
        }
        value += wms / 2;
        deriv -= L * wms / 2;

        BigReal eps = epsilon_digits(static_cast<long>(work) - 3);
        BigReal poch = s, dpoch = 1;
        BigReal wpow = wms / w;
        BigReal w2 = w * w;
        BigReal prev_mag = -1;
        bool converged = false;
        for (unsigned k = 1; k <= 4 * work + 50; ++k) {
            BigReal c = to_big(em_coefficient(k));
            BigReal term = c * poch * wpow;
            BigReal dterm = c * (dpoch - poch * L) * wpow;
            value += term;
            deriv += dterm;
            BigReal mag = bmp::abs(term) + bmp::abs(dterm);
            BigReal scale = bmp::abs(value) + bmp::abs(deriv);
            if (mag <= eps * scale) {
                converged = true;
                break;
            }
            if (prev_mag >= 0 && mag > prev_mag && k > 3) break;
            prev_mag = mag;
            for (unsigned j = 2 * k - 1; j <= 2 * k; ++j) {
                dpoch = dpoch * (s + j) + poch;
                poch *= s + j;
            }
            wpow /= w2;
        }
        if (!converged)
            throw AccuracyError("hurwitz_zeta: Euler-Maclaurin tail did not converge", to_decimal(value, 20),
                                to_decimal(prev_mag, 5));
        out.value = value;
        out.derivative = deriv;
    }
    return out;
}

BigReal zeta_neg_over_factorial(long m) {
    if (m < 0) throw ArgumentError("zeta_neg_over_factorial: negative index");
    if (m == 0) return BigReal(-1) / 2;
    if (m % 2 == 0) return BigReal(0);
    auto z = hurwitz_zeta(BigReal(m + 1), BigReal(1));
    BigReal sign = ((m + 1) / 2) % 2 == 0 ? 1 : -1;
    return 2 * sign * z.value / bmp::pow(two_pi(), m + 1);
}

BigReal zeta_prime_neg_over_factorial(long m) {
    if (m < 1 || m % 2 == 0) throw ArgumentError("zeta_prime_neg: m must be odd and >= 1");
    BigReal sign = ((m + 1) / 2) % 2 == 0 ? 1 : -1;
    auto z = hurwitz_zeta(BigReal(m + 1), BigReal(1));
    BigReal psi = -euler_gamma_big() + harmonic_big(m);
    BigReal bracket = z.value * (bmp::log(two_pi()) - psi) - z.derivative;
    return 2 * sign * bracket / bmp::pow(two_pi(), m + 1);
}

BigReal zeta_prime_neg(long m) {
    if (m < 1 || m % 2 == 0) throw ArgumentError("zeta_prime_neg: m must be odd and >= 1");
    static std::map<std::pair<long, unsigned>, BigReal> cache;
    static std::mutex mu;
    const unsigned P = working_digits();
    {
        std::lock_guard lock(mu);
        auto it = cache.find({m, P});
        if (it != cache.end()) return it->second;
    }
    BigReal v = zeta_prime_neg_over_factorial(m);
    v *= BigReal(factorial(static_cast<unsigned>(m)));
    std::lock_guard lock(mu);
    cache.emplace(std::pair{m, P}, v);
    return v;
}

BigReal zeta_prime_neg_euler_maclaurin(long m) {
    if (m < 0) throw ArgumentError("zeta_prime_neg_euler_maclaurin: negative index");
    return hurwitz_zeta(BigReal(-m), BigReal(1)).derivative;
}

const std::vector<Integer>& polylog_numerator(unsigned k) {
    static std::deque<std::vector<Integer>> cache{{Integer(0), Integer(1)}};
    static std::mutex mu;
    std::lock_guard lock(mu);
    while (cache.size() <= k) {
        const auto& p = cache.back();
        unsigned kk = static_cast<unsigned>(cache.size()) - 1;  // p = P_kk
        // q = P' (1 - z) + (kk+1) P, then multiply by z.
        std::vector<Integer> q(p.size() + 1, Integer(0));
        for (std::size_t j = 1; j < p.size(); ++j) {
            Integer d = p[j] * static_cast<unsigned>(j);
            q[j - 1] += d;
            q[j] -= d;
        }
        for (std::size_t j = 0; j < p.size(); ++j) q[j] += p[j] * (kk + 1);
        std::vector<Integer> next(q.size() + 1, Integer(0));
        for (std::size_t j = 0; j < q.size(); ++j) next[j + 1] = q[j];
        while (next.size() > 1 && next.back() == 0) next.pop_back();
        cache.push_back(std::move(next));
    }
    return cache[k];
}

BigReal reduce_angle(const BigReal& phi) {
    BigReal tp = two_pi();
    BigReal r = phi - tp * bmp::floor(phi / tp);
    if (r >= tp) r -= tp;
    return r;
}

namespace {

BigReal check_lerch_angle(const BigReal& phi) {
    BigReal r = reduce_angle(phi);
    BigReal tiny = epsilon_digits(static_cast<long>(working_digits()) / 2);
    if (r < tiny || two_pi() - r < tiny) throw PoleError("Lerch zeta: e^{i phi} = 1");
    return r;
}

}  // namespace

BigComplex lerch_neg(unsigned k, const BigReal& phi_in) {
    BigReal phi = check_lerch_angle(phi_in);
    double pd = phi.convert_to<double>();
    double d = std::min(pd, 2 * M_PI - pd);
    double loss = -(k + 1.0) * std::log10(2 * std::sin(d / 2) / d);
    WorkingPrecision guard(digits_for(loss));
    BigComplex z = exp_i(phi);
    const auto& coeffs = polylog_numerator(k);
    BigComplex acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc *= z;
        acc.re += BigReal(*it);
    }
    BigComplex one_minus_z = BigComplex(BigReal(1)) - z;
    BigComplex den(BigReal(1));
    for (unsigned j = 0; j <= k; ++j) den *= one_minus_z;
    return acc / den;
}

LerchPoint lerch_point(unsigned k, const BigReal& phi_in) {
    LerchPoint out;
    out.k = k;
    out.phi = check_lerch_angle(phi_in);
    WorkingPrecision guard(working_digits() + 10);
    BigReal pi = pi_big();
    BigReal x = out.phi / (2 * pi);
    BigReal sigma(k + 1);
    bool reg = k == 0;
    auto zp = hurwitz_zeta(sigma, x, reg);
    auto zm = hurwitz_zeta(sigma, 1 - x, reg);
    BigComplex ep = i_power(static_cast<long>(k) + 1);
    BigComplex em = i_power(-static_cast<long>(k) - 1);
    BigComplex half_pi_i(BigReal(0), pi / 2);

    BigComplex c = ep * zp.value + em * zm.value;
    if (reg) c.re -= pi;
    BigComplex dc = -(half_pi_i * ep * zp.value) - ep * zp.derivative + half_pi_i * em * zm.value -
                    em * zm.derivative;
    BigReal a = BigReal(factorial(k)) / bmp::pow(2 * pi, static_cast<long>(k) + 1);
    BigReal dlog_a = euler_gamma_big() - harmonic_big(k) + bmp::log(2 * pi);
    out.value = a * c;
    out.derivative = a * (dlog_a * c + dc);
    return out;
}

BigComplex lerch_prime_neg(unsigned k, const BigReal& phi) { return lerch_point(k, phi).derivative; }

BigComplex lerch_zeta(const BigReal& s, const BigReal& phi_in) {
    BigReal phi = check_lerch_angle(phi_in);
    WorkingPrecision guard(working_digits() + 10);
    BigReal pi = pi_big();
    BigReal x = phi / (2 * pi);
    BigReal tp = 2 * pi;
    if (s == 0) return lerch_point(0, phi).value;
    bool positive_integer = s >= 1 && s == bmp::floor(s);
    if (positive_integer) {
        // Gamma(1-s) has a pole that cancels against a zero of the bracket.
        long n = s.convert_to<long>();
        BigReal sigma(1 - n);
        auto zp = hurwitz_zeta(sigma, x);
        auto zm = hurwitz_zeta(sigma, 1 - x);
        BigComplex ep = i_power(1 - n);
        BigComplex em = i_power(n - 1);
        BigComplex half_pi_i(BigReal(0), pi / 2);
        BigComplex db = -(half_pi_i * ep * zp.value) - ep * zp.derivative + half_pi_i * em * zm.value -
                        em * zm.derivative;
        BigReal pref = bmp::pow(tp, n - 1) / BigReal(factorial(static_cast<unsigned>(n - 1)));
        if (n % 2 != 0) pref = -pref;
        return pref * db;
    }
    BigReal sigma = 1 - s;
    auto zp = hurwitz_zeta(sigma, x);
    auto zm = hurwitz_zeta(sigma, 1 - x);
    BigReal g;
    mpfr_gamma(g.backend().data(), sigma.backend().data(), MPFR_RNDN);
    BigComplex ep = exp_i(pi * sigma / 2);
    BigComplex em = ep.conj();
    BigComplex bracket = ep * zp.value + em * zm.value;
    return g * bmp::pow(tp, s - 1) * bracket;
}

SiCi sine_cosine_integral_series(const BigReal& x_in) {
    if (x_in <= 0) throw ArgumentError("Si/Ci need x > 0");
    double loss = x_in.convert_to<double>() / std::log(10.0);
    SiCi out;
    {
        WorkingPrecision guard(digits_for(loss));
        BigReal x = x_in;
        BigReal eps = epsilon_digits(static_cast<long>(working_digits()));
        BigReal u = x;  // x^n/n!
        BigReal si = 0, ci = 0;
        for (long n = 1; n < 100000; ++n) {
            long k = n / 2;
            BigReal term = u / n;
            if (k % 2 != 0) term = -term;
            if (n % 2 != 0)
                si += term;
            else
                ci += term;
            if (n > x && u < eps) break;
            u *= x / (n + 1);
        }
        out.si = si;
        out.ci = euler_gamma_big() + bmp::log(x) + ci;
    }
    return out;
}

SiCi sine_cosine_integral_continued_fraction(const BigReal& x) {
    if (x <= 0) throw ArgumentError("Si/Ci need x > 0");
    WorkingPrecision guard(working_digits() + 10);
    BigReal eps = epsilon_digits(static_cast<long>(working_digits()));
    BigReal huge = epsilon_digits(-static_cast<long>(working_digits()) * 2);
    // Modified Lentz for E1(ix) = e^{-ix} / (1 + ix - 1/(3 + ix - 4/(5 + ix - ...))).
    BigComplex b(BigReal(1), x);
    BigComplex c(huge);
    BigComplex d = BigComplex(BigReal(1)) / b;
    BigComplex h = d;
    bool done = false;
    for (long i = 1; i < 200000; ++i) {
        BigReal a = -BigReal(i) * i;
        b.re += 2;
        d = BigComplex(BigReal(1)) / (a * d + b);
        c = b + BigComplex(a) / c;
        BigComplex del = c * d;
        h *= del;
        if (bmp::abs(del.re - 1) + bmp::abs(del.im) < eps) {
            done = true;
            break;
        }
    }
    if (!done) throw AccuracyError("Si/Ci continued fraction did not converge", "", "");
    h *= BigComplex(bmp::cos(x), -bmp::sin(x));
    return {pi_big() / 2 + h.im, -h.re};
}

SiCi sine_cosine_integral(const BigReal& x) {
    if (x <= 0) throw ArgumentError("Si/Ci need x > 0");
    if (x < kSiCiCrossover) return sine_cosine_integral_series(x);
    return sine_cosine_integral_continued_fraction(x);
}

BigReal exponential_integral_ei(const BigReal& x) {
    if (x >= 0) throw ArgumentError("Ei is provided for x < 0");
    BigReal y = -x;
    if (y < kSiCiCrossover) {
        double loss = y.convert_to<double>() / std::log(10.0);
        WorkingPrecision guard(digits_for(loss));
        BigReal eps = epsilon_digits(static_cast<long>(working_digits()));
        BigReal u = 1, sum = 0;  // u = (-y)^k/k!
        for (long k = 1; k < 100000; ++k) {
            u *= -y / k;
            sum += u / k;
            if (k > y && bmp::abs(u) < eps) break;
        }
        BigReal e1 = -euler_gamma_big() - bmp::log(y) - sum;
        return -e1;
    }
    WorkingPrecision guard(working_digits() + 10);
    BigReal eps = epsilon_digits(static_cast<long>(working_digits()));
    BigReal huge = epsilon_digits(-static_cast<long>(working_digits()) * 2);
    BigReal b = y + 1, c = huge, d = 1 / b, h = d;
    for (long i = 1; i < 200000; ++i) {
        BigReal a = -BigReal(i) * i;
        b += 2;
        d = 1 / (a * d + b);
        c = b + a / c;
        BigReal del = c * d;
        h *= del;
        if (bmp::abs(del - 1) < eps) return -(h * bmp::exp(-y));
    }
    throw AccuracyError("Ei continued fraction did not converge", "", "");
}

LaurentSeries r_rot_series(int order) {
    if (order < 1) throw ArgumentError("r_rot_series: order >= 1");
    LaurentSeries r(-1, order, series::Parity::Odd);
    r.set(-1, ConstExpr::gamma() + ConstExpr::log_t());
    for (long m = 1; m <= order; m += 2) {
        Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(m)));
        if (((m + 1) / 2) % 2 == 0) c = -c;  // -(-1)^{(m+1)/2}/m!
        r.set(static_cast<int>(m), ConstExpr::zeta_prime(m) * c);
    }
    return r;
}

BigReal r_rot_value(const BigReal& t) {
    if (t <= 0 || t >= two_pi()) throw ArgumentError("r_rot_value needs 0 < t < 2 pi");
    WorkingPrecision guard(working_digits() + 5);
    BigReal eps = epsilon_digits(static_cast<long>(working_digits()));
    BigReal sum = (euler_gamma_big() + bmp::log(t)) / t;
    BigReal t2 = t * t, tp = t;
    int small = 0;
    for (long m = 1; m < 40000; m += 2) {
        BigReal term = zeta_prime_neg_over_factorial(m) * tp;
        if (((m + 1) / 2) % 2 == 0)
            sum -= term;
        else
            sum += term;
        if (bmp::abs(term) < eps * (bmp::abs(sum) + 1)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
        tp *= t2;
    }
    throw AccuracyError("r_rot_value: series did not converge", to_decimal(sum, 20), "");
}

LaurentSeries gs_r_series(int order) {
    if (order < 1) throw ArgumentError("gs_r_series: order >= 1");
    LaurentSeries r(0, order, series::Parity::Odd);
    for (long m = 1; m <= order; m += 2) {
        Rational inv_fact = Rational(1) / Rational(factorial(static_cast<unsigned>(m)));
        ConstExpr c = ConstExpr::zeta_prime(m) * Rational(2) + ConstExpr(harmonic(m) * zeta_neg(m));
        r.set(static_cast<int>(m), c * inv_fact);
    }
    return r;
}

BigComplex r_tilde0(const BigReal& theta_in, const BigComplex& x) {
    BigReal theta = check_lerch_angle(theta_in);
    BigReal dist = bmp::min(theta, two_pi() - theta);
    if (x.abs() >= dist) throw ArgumentError("R0(theta, x) needs |x| < dist(theta, 2 pi Z)");
    WorkingPrecision guard(working_digits() + 10);
    BigReal eps = epsilon_digits(static_cast<long>(working_digits()) - 5);
    BigComplex sum;
    BigComplex xk(BigReal(1));  // x^k/k!
    BigReal hk = 0;
    int small = 0;
    for (unsigned k = 0; k < 6000; ++k) {
        if (k > 0) {
            hk += BigReal(1) / k;
            xk *= x;
            xk /= BigReal(k);
        }
        BigComplex ak = lerch_point(k, theta).derivative + lerch_neg(k, theta) * (hk / 2);
        BigComplex term = ak * xk;
        sum += term;
        if (term.abs() <= eps * (sum.abs() + eps)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw AccuracyError("R0 series did not converge", to_decimal(sum.re, 20), "");
}

BigComplex r_function(const BigReal& theta, const BigComplex& x) { return r_tilde0(theta, x) - r_tilde0(-theta, -x); }

}  // namespace ptorsion::specfun
