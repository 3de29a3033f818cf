#include "ptorsion/torsionform.hpp"

#include "ptorsion/scurrent.hpp"
#include "ptorsion/torsion.hpp"

namespace ptorsion::torsionform {

namespace bmp = boost::multiprecision;

LaurentSeries t_ell_series_direct(int ell, int order) {
    if (order < 4) throw ArgumentError("t_ell_series: order >= 4");
    LaurentSeries f = torsion::fixed_point_series(ell, order);
    LaurentSeries out = torsion::log_sum_series(ell, order) + series::star(f).with_min_degree(0) +
                        torsion::gs_summand_series(ell, order);
    out.set_parity(series::Parity::Even);
    return out;
}

LaurentSeries t_ell_series(int ell, int order) {
    LaurentSeries direct = t_ell_series_direct(ell, order);
    LaurentSeries assembled = torsion::torsion_infinitesimal(ell, order).series();
    for (int d = 0; d <= order; ++d)
        if (!(direct.coeff(d) == assembled.coeff(d)))
            throw ConsistencyError("T_ell disagrees with the assembled torsion at t^" + std::to_string(d) + ": " +
                                   direct.coeff(d).to_string() + " vs " + assembled.coeff(d).to_string());
    return direct;
}

TorsionFormClass torsion_form(int ell, int degree) {
    if (degree < 0 || degree % 2 != 0) throw ArgumentError("torsion_form: degree must be even and nonnegative");
    const int order = std::max(4, degree / 2);
    LaurentSeries t = t_ell_series(ell, order);
    chowring::GradingPtr g = chowring::base_grading(degree);
    BaseClass value = chowring::exp_c1(g, Rational(-ell, 2)) * chowring::even_series_in_discriminant(t, g);
    return {std::move(value), ell, order, degree};
}

ConstExpr r_class_fixed_point(const Rational& phi_over_t, int j) {
    if (phi_over_t == 0) throw PoleError("r-class needs a nonzero rotation angle");
    if (j < 0) throw ArgumentError("r-class index must be nonnegative");
    if (j > 0) return ConstExpr(0);  // (-c1)^j with c1 = 0
    Rational q = phi_over_t < 0 ? Rational(-phi_over_t) : phi_over_t;
    // -2 Gamma'(1) + 2 log|phi| = 2 GAMMA + 2 LOG_T + 2 log|q|
    ConstExpr bracket = ConstExpr::gamma() * Rational(2) + ConstExpr::log_t() * Rational(2) +
                        ConstExpr::log(q) * Rational(2) - ConstExpr(harmonic(j));
    return -bracket;
}

namespace {

// O(1) rotates by +-t/2 and the normal bundle by +-t at the two poles.
struct Pole {
    Rational phi;
    Rational theta;
};
constexpr int kPoles = 2;
const Pole kPoleAngles[kPoles] = {{Rational(1, 2), Rational(1)}, {Rational(-1, 2), Rational(-1)}};

// -1/2 sum_p (i phi)^2 / (i theta) * r(N)|_p with r(N)|_p = coef / (i theta).
ConstExpr r_class_term() {
    ConstExpr sum;
    for (const auto& p : kPoleAngles) {
        Rational w = p.phi * p.phi / (p.theta * p.theta);
        sum += r_class_fixed_point(p.theta, 0) * Rational(-w / 2);
    }
    return sum;
}

BigReal eta_profile(const BigReal& tau) { return -tau * tau / 4; }

}  // namespace

HeightResult height_p1z() {
    HeightResult out;
    out.r_class_term = r_class_term();
    // g(t) = -t^2/4 as a profile in r.
    scurrent::TestProfile g = scurrent::TestProfile::polynomial({Rational(0), Rational(0), Rational(-1, 4)});
    LaurentSeries s = scurrent::s_pairing_star_variant_symbolic(g, 0);
    for (int d = s.min_degree(); d <= s.order(); ++d)
        if (d != 0 && !s.coeff(d).is_zero()) throw ConsistencyError("S-term depends on t");
    out.s_term = s.coeff(0) * Rational(1, 2);
    out.value = out.r_class_term + out.s_term;
    out.log_t_residue = out.value.coefficient(ConstSymbol::log_t());
    out.gamma_residue = out.value.coefficient(ConstSymbol::gamma());
    if (out.log_t_residue != 0 || out.gamma_residue != 0)
        throw ConsistencyError("height: log t or gamma does not cancel: " + out.value.to_string());
    return out;
}

BigReal height_p1z_numeric(const BigReal& t, const BigReal& tol) {
    if (t <= 0) throw ArgumentError("height: t must be positive");
    BigReal r = eval_const(r_class_term(), bmp::log(t));
    BigReal s = scurrent::s_pairing_integral(scurrent::eta_t_profile(eta_profile, t), t, tol) / 2;
    return r + s;
}

}  // namespace ptorsion::torsionform
