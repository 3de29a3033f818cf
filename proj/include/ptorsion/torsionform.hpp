#pragma once

#include "ptorsion/chowring.hpp"
#include "ptorsion/numerics.hpp"
#include "ptorsion/series.hpp"

namespace ptorsion::torsionform {

using chowring::BaseClass;
using series::LaurentSeries;

// T_ell(t) = log-sum + F^* + R-summand, F = cos((l+1)t/2)/(t sin(t/2)). Checked
// coefficientwise against torsion::torsion_infinitesimal; throws ConsistencyError on mismatch.
LaurentSeries t_ell_series(int ell, int order);

// Same assembly without the cross-check.
LaurentSeries t_ell_series_direct(int ell, int order);

struct TorsionFormClass {
    BaseClass value;
    int ell = 0;
    int order = 0;
    int degree = 0;
};

// e^{-ell c1/2} T_ell evaluated at -t^2 = c1^2 - 4c2, truncated at total degree D.
TorsionFormClass torsion_form(int ell, int degree = chowring::kDefaultDegree);

// Coefficient of (-c1)^j / (i phi)^{j+1} in r_X(L) at an isolated fixed point (c1 = 0),
// with phi = q t: -(2 GAMMA + 2 log|phi| - H_j) for j = 0 and 0 for j >= 1.
ConstExpr r_class_fixed_point(const Rational& phi_over_t, int j);

struct HeightResult {
    ConstExpr value;
    ConstExpr r_class_term;
    ConstExpr s_term;
    Rational log_t_residue;
    Rational gamma_residue;
};

// Height of P^1 over Z for O(1), assembled at formal LOG_T; throws ConsistencyError unless
// the log t and gamma parts cancel.
HeightResult height_p1z();

// Same assembly with the S-term from the pairing integral at a numeric t.
BigReal height_p1z_numeric(const BigReal& t, const BigReal& tol);

}  // namespace ptorsion::torsionform
