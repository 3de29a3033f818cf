#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "ptorsion/numerics.hpp"

namespace ptorsion::quadrature {

enum class EndpointHint { None, Removable, Log };

struct IntegrandSpec {
    std::function<BigReal(const BigReal&)> f;
    BigReal a;
    BigReal b;
    EndpointHint hint = EndpointHint::None;
    // Equal panels to start from; useful for oscillatory integrands.
    int panels = 1;
};

struct QuadratureResult {
    BigReal value;
    BigReal error_estimate;
    std::size_t evaluations = 0;
    int max_level = 0;
};

// Double-exponential (tanh-sinh) rule with level doubling and bisection fallback.
// Requires tol >= 10^{2-P}.
QuadratureResult integrate(const IntegrandSpec& spec, const BigReal& tol);

// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(const BigReal& x);
    BigReal value() const { return sum_ + comp_; }

private:
    BigReal sum_ = 0;
    BigReal comp_ = 0;
};

struct BilateralOptions {
    long K = 10000;
    // c in term(k) + term(-k) ~ c / k^p; estimated from the last pair when absent.
    std::optional<BigReal> tail_coefficient;
    std::optional<BigReal> tol;
    bool include_zero = true;
};

struct SumResult {
    BigReal value;
    BigReal error_estimate;
    long K = 0;
};

// sum_{k in Z} term(k) with +k and -k paired, tail c * zeta(p, K+1) added,
// and the error estimated by repeating at 2K.
SumResult bilateral_sum(const std::function<BigReal(long)>& term, int tail_exponent = 2,
                        const BilateralOptions& options = {});

}  // namespace ptorsion::quadrature
