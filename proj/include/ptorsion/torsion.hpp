#pragma once

#include <variant>

#include "ptorsion/numerics.hpp"
#include "ptorsion/series.hpp"

namespace ptorsion::torsion {

using series::LaurentSeries;

enum class Path { Series, Quadrature, BilateralSum, Lerch };
const char* path_name(Path p);

struct TorsionResult {
    std::variant<BigReal, LaurentSeries> payload;
    int ell = 0;
    Path path = Path::Series;
    unsigned precision = 0;
    int order = 0;

    const LaurentSeries& series() const { return std::get<LaurentSeries>(payload); }
    const BigReal& value() const { return std::get<BigReal>(payload); }
};

// |l + 1|
int twist(int ell);

// sum_{m=1}^{|l+1|} sin((2m - |l+1|) t/2)/sin(t/2) log m
LaurentSeries log_sum_series(int ell, int order);
BigReal log_sum_value(int ell, const BigReal& t);

// cos((l+1)t/2) / (t sin(t/2)), min_degree -2.
LaurentSeries fixed_point_series(int ell, int order);
BigReal fixed_point_value(int ell, const BigReal& t);

// Equivariant torsion of the rotation e^{tX}, 0 < t < 2 pi.
BigReal torsion_group(int ell, const BigReal& t);

// I-class contribution cos((l+1)t/2)/(i sin(t/2)) sum_{m odd} H_m zeta(-m) (it)^m/m!.
LaurentSeries i_class_series(int ell, int order);
BigReal i_class_value(int ell, const BigReal& t);

// sum_{m odd} H_m zeta(-m) (-1)^{(m-1)/2} x^m/m!, i.e. the I-class sum with (ix)^m divided by i,
// and the same quantity as -sum_{k != 0} log(1 + x/(2 pi k))/(x + 2 pi k).
BigReal i_class_kernel_series(const BigReal& x);
BigReal i_class_kernel_direct(const BigReal& x);

enum class TdchsMode { Series, Value };
// Series mode: -F^* + (2 LOG_T + 2 GAMMA) F with F = fixed_point_series.
LaurentSeries tdchs_series(int ell, int order);
// Value mode: the pairing integral with the eta_t-substituted profile.
BigReal tdchs_value(int ell, const BigReal& t, const BigReal& tol);
TorsionResult tdchs_term(int ell, TdchsMode mode, int order, const BigReal& t, const BigReal& tol);

// The oscillatory part int_{-1}^{1} (cos((l+1)tr/2) - cos((l+1)t/2)) / ((1-r^2) t sin(t/2)) dr
// by quadrature and in closed form through Si and Ci.
BigReal oscillatory_part_quadrature(int ell, const BigReal& t, const BigReal& tol);
BigReal oscillatory_part_si_ci(int ell, const BigReal& t);

// Large-l form of tdchs_value at fixed t.
BigReal torsion_asymptotic(int ell, const BigReal& t);

// The infinitesimal torsion T_{id,tX} as an even power series, assembled from the
// rotation-torsion, log-sum, metric, star and I-class pieces; asserts that the
// poles, odd powers and log t cancel.
TorsionResult torsion_infinitesimal(int ell, int order);

// The piece shared with the Grothendieck-Riemann-Roch comparison:
// -cos((l+1)t/2)/sin(t/2) sum_{m odd} (2 zeta'(-m) + H_m zeta(-m)) (-1)^{(m+1)/2} t^m/m!
LaurentSeries gs_summand_series(int ell, int order);

struct TwoParamResult {
    BigReal value;        // Lerch path
    BigReal bilateral;    // direct-sum path
    BigReal discrepancy;
    bool cross_checked = true;  // false: only the direct sum applies, value = bilateral
};

// Torsion for the pair (e^{sX}, tX). Needs 0 < |s+t| < 2 pi, s != 0 mod 2 pi, and s, s+t in
// one period cell. Both paths run when |t| < dist(s, 2 pi Z); otherwise only the direct sum.
TwoParamResult torsion_two_param(int ell, const BigReal& s, const BigReal& t, const BigReal& tol);

}  // namespace ptorsion::torsion
