#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ptorsion/numerics.hpp"
#include "ptorsion/series.hpp"

namespace ptorsion::scurrent {

using series::LaurentSeries;
using RealFunction = std::function<BigReal(const BigReal&)>;

// P^1 with the Fubini-Study form normalised to total volume 2 pi and the
// rotation X = d/dv in latitude/longitude coordinates (u, v), u in [-pi/2, pi/2].
struct P1Geometry {
    static Rational volume() { return 1; }  // (1/2 pi) * integral of omega
    // Imaginary part of the moment map of O(1); the moment map is (i/2) sin u.
    static BigReal moment_l(const BigReal& u);
    static BigReal norm_x_squared(const BigReal& u);
    // Rotation angle of X on the tangent space at the north (+1) and south (-1) pole.
    static int fixed_point_angle(bool north) { return north ? 1 : -1; }
    // b-derivative of the inverse equivariant top Chern class at either pole under tX.
    static BigReal ctop_inv_prime(const BigReal& t) { return 1 / (t * t); }
};

// Mirror-symmetric fibre profile g(r) = (g(r) + g(-r))/2.
class TestProfile {
public:
    // coeffs[d] multiplies r^d; odd degrees are removed by the symmetrisation.
    static TestProfile polynomial(std::vector<Rational> coeffs);
    // Analytic profiles carry Taylor coefficients (in r) to license the series path.
    static TestProfile callable(RealFunction g, std::optional<std::vector<Rational>> taylor = std::nullopt);
    // Accepts sums of terms like "r^2", "-1/4*r^2", "3", "r".
    static TestProfile parse(std::string_view text);

    BigReal operator()(const BigReal& r) const;
    BigReal at_one() const { return (*this)(BigReal(1)); }
    bool analytic() const { return taylor_.has_value(); }
    bool is_polynomial() const { return !callable_; }
    // Even Taylor coefficients in r; requires analytic().
    const std::vector<Rational>& coefficients() const;
    // Exact value at 1 for polynomial/analytic profiles.
    Rational rational_at_one() const;
    // The profile as an even series in r (exact through its degree).
    LaurentSeries as_series() const;

private:
    RealFunction callable_;
    std::optional<std::vector<Rational>> taylor_;
};

// g(t r) as a profile in r, for the eta_t substitution.
TestProfile eta_t_profile(const RealFunction& h, const BigReal& t);

// int_{-1}^{1} (2g(r) - 2g(1))/t^2 dr/(1-r^2) + (log t^2 + 2 gamma) 2g(1)/t^2
BigReal s_pairing_integral(const TestProfile& g, const BigReal& t, const BigReal& tol);

// -(2g/t^2)^# + (2 LOG_T + 2 GAMMA) 2g(1)/t^2 as a series in t (a single t^-2 term).
LaurentSeries s_pairing_series_symbolic(const TestProfile& g);
BigReal s_pairing_series(const TestProfile& g, const BigReal& t);

// -(2g(t)/t^2)^* + (2 LOG_T + 2 GAMMA) 2g(t)/t^2 for a polynomial/analytic g.
LaurentSeries s_pairing_star_variant_symbolic(const TestProfile& g, int order);
BigReal s_pairing_star_variant(const TestProfile& g, const BigReal& t);

enum class Convention { EtaT, Plain };
// 2g(t)/t^2 (EtaT) or 2g(1)/t^2 (Plain).
BigReal fixed_point_functional(const TestProfile& g, const BigReal& t, Convention convention);

struct DefiningPropertyResidual {
    BigReal residual1;
    BigReal residual2;
};

struct FiberFunction {
    RealFunction value;
    std::optional<RealFunction> derivative;  // central differences when absent
};

// residual1 compares int 2 g1(r) dr/(1-r^2), g1(sin u) = (pi/2) f1(u) cos^2 u, with int_M f1 omega.
// residual2 compares the pairing of -X^{1,0}.f0 with f0(N) - f0(S).
DefiningPropertyResidual check_defining_property(const FiberFunction& f0, const RealFunction& f1, const BigReal& tol);

// |c^2 s(g, c t) - s(g, t) - log(c^2) 2 g(1)/t^2|
BigReal check_scaling(const TestProfile& g, const BigReal& t, const BigReal& c, const BigReal& tol);
// Exact residual of the same identity for the symbolic pairing, c a positive rational.
ConstExpr check_scaling_symbolic(const TestProfile& g, const Rational& c);

}  // namespace ptorsion::scurrent
