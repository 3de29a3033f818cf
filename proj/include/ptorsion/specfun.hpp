#pragma once

#include <vector>

#include "ptorsion/numerics.hpp"
#include "ptorsion/series.hpp"

namespace ptorsion {

struct BigComplex {
    BigReal re = 0;
    BigReal im = 0;

    BigComplex() = default;
    BigComplex(BigReal r, BigReal i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BigComplex& operator*=(const BigComplex& o) {
        BigReal r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator*=(const BigReal& x) {
        re *= x;
        im *= x;
        return *this;
    }
    BigComplex& operator/=(const BigComplex& o) {
        BigReal d = o.re * o.re + o.im * o.im;
        BigReal r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    BigComplex& operator/=(const BigReal& x) {
        re /= x;
        im /= x;
        return *this;
    }
    BigComplex operator-() const { return {-re, -im}; }
    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator*(BigComplex a, const BigReal& x) { return a *= x; }
    friend BigComplex operator*(const BigReal& x, BigComplex a) { return a *= x; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator/(BigComplex a, const BigReal& x) { return a /= x; }

    BigComplex conj() const { return {re, -im}; }
    BigReal abs() const { return boost::multiprecision::hypot(re, im); }
};

// i^n for any integer n.
BigComplex i_power(long n);
BigComplex exp_i(const BigReal& phi);

}  // namespace ptorsion

namespace ptorsion::specfun {

using series::LaurentSeries;

// B_n with B_1 = -1/2.
Rational bernoulli(unsigned n);

// zeta(-m) for m >= 0.
Rational zeta_neg(long m);

struct ValueAndDerivative {
    BigReal value;
    BigReal derivative;  // d/ds
};

// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^{-s} and its s-derivative by Euler-Maclaurin,
// valid for all real s != 1. With regularize_pole, 1/(s-1) is removed, which also allows s = 1.
ValueAndDerivative hurwitz_zeta(const BigReal& s, const BigReal& a, bool regularize_pole = false);

// zeta'(-m), m odd >= 1, from the functional equation. Cached per (m, precision).
BigReal zeta_prime_neg(long m);
// zeta'(-m)/m! and zeta(-m)/m! without forming m! or B_{m+1}.
BigReal zeta_prime_neg_over_factorial(long m);
BigReal zeta_neg_over_factorial(long m);
// zeta'(-m) as the s-derivative of the Euler-Maclaurin continuation at s = -m (any m >= 0).
BigReal zeta_prime_neg_euler_maclaurin(long m);

// Numerator of Li_{-k}(z) = P_k(z) / (1-z)^{k+1}; coefficient j multiplies z^j.
const std::vector<Integer>& polylog_numerator(unsigned k);

// Li_{-k}(e^{i phi}) in closed form.
BigComplex lerch_neg(unsigned k, const BigReal& phi);

struct LerchPoint {
    unsigned k = 0;
    BigReal phi;             // reduced to (0, 2 pi)
    BigComplex value;        // zeta_L(-k, phi), from the Hurwitz relation
    BigComplex derivative;   // d/ds zeta_L(s, phi) at s = -k
};

LerchPoint lerch_point(unsigned k, const BigReal& phi);
BigComplex lerch_prime_neg(unsigned k, const BigReal& phi);

// zeta_L(s, phi) for real s via the Hurwitz relation (continuation for s <= 1,
// the convergent series for s > 1, positive integers through the limit formula).
BigComplex lerch_zeta(const BigReal& s, const BigReal& phi);

struct SiCi {
    BigReal si;
    BigReal ci;
};

SiCi sine_cosine_integral(const BigReal& x);
// The two evaluation routes; sine_cosine_integral switches at x = 6.
SiCi sine_cosine_integral_series(const BigReal& x);
SiCi sine_cosine_integral_continued_fraction(const BigReal& x);
inline constexpr int kSiCiCrossover = 6;

// Ei(x) for x < 0.
BigReal exponential_integral_ei(const BigReal& x);

// R^rot(t) = (gamma + log t)/t - sum_{m odd} zeta'(-m) (-1)^{(m+1)/2} t^m/m!
LaurentSeries r_rot_series(int order);
BigReal r_rot_value(const BigReal& t);

// sum_{m odd} (2 zeta'(-m) + H_m zeta(-m)) x^m/m!
LaurentSeries gs_r_series(int order);

// R0(theta, x) = sum_k (zeta_L'(-k, theta) + zeta_L(-k, theta) H_k/2) x^k/k!
// and R(theta, x) = R0(theta, x) - R0(-theta, -x). Needs |x| < dist(theta, 2 pi Z).
BigComplex r_tilde0(const BigReal& theta, const BigComplex& x);
BigComplex r_function(const BigReal& theta, const BigComplex& x);

// Angle reduced to [0, 2 pi).
BigReal reduce_angle(const BigReal& phi);

}  // namespace ptorsion::specfun
