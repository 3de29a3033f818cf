#include "ptorsion/scurrent.hpp"

#include <cctype>

#include "ptorsion/quadrature.hpp"

namespace ptorsion::scurrent {

namespace bmp = boost::multiprecision;

namespace {

std::vector<Rational> symmetrized(std::vector<Rational> c) {
    for (std::size_t d = 1; d < c.size(); d += 2) c[d] = 0;
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

ConstExpr log_t_squared_minus_two_gamma_prime() {
    // log t^2 - 2 Gamma'(1) = 2 LOG_T + 2 GAMMA
    return ConstExpr::log_t() * Rational(2) + ConstExpr::gamma() * Rational(2);
}

BigReal log_abs(const BigReal& t) { return bmp::log(bmp::abs(t)); }

void require_nonzero(const BigReal& t) {
    if (t == 0) throw ArgumentError("S-current pairing needs t != 0");
}

}  // namespace

BigReal P1Geometry::moment_l(const BigReal& u) { return bmp::sin(u) / 2; }

BigReal P1Geometry::norm_x_squared(const BigReal& u) {
    BigReal c = bmp::cos(u);
    return c * c / 2;
}

TestProfile TestProfile::polynomial(std::vector<Rational> coeffs) {
    TestProfile p;
    p.taylor_ = symmetrized(std::move(coeffs));
    return p;
}

TestProfile TestProfile::callable(RealFunction g, std::optional<std::vector<Rational>> taylor) {
    if (!g) throw ArgumentError("empty profile callable");
    TestProfile p;
    p.callable_ = std::move(g);
    if (taylor) p.taylor_ = symmetrized(std::move(*taylor));
    return p;
}

TestProfile TestProfile::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ArgumentError("empty profile");
    std::vector<Rational> coeffs;
    std::size_t i = 0;
    while (i < s.size()) {
        Rational sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        Rational c = start == i ? Rational(1) : parse_rational(s.substr(start, i - start));
        std::size_t degree = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && s[i] == 'r') {
            ++i;
            degree = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t ds = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (ds == i) throw ArgumentError("profile exponent missing in '" + s + "'");
                degree = std::stoul(s.substr(ds, i - ds));
            }
        } else if (start == i) {
            throw ArgumentError("cannot parse profile '" + s + "'");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw ArgumentError("cannot parse profile '" + s + "'");
        if (coeffs.size() <= degree) coeffs.resize(degree + 1, Rational(0));
        coeffs[degree] += sign * c;
    }
    return polynomial(std::move(coeffs));
}

BigReal TestProfile::operator()(const BigReal& r) const {
    if (callable_) return (callable_(r) + callable_(-r)) / 2;
    BigReal acc = 0;
    const auto& c = *taylor_;
    for (std::size_t d = c.size(); d-- > 0;) acc = acc * r + to_big(c[d]);
    return acc;
}

const std::vector<Rational>& TestProfile::coefficients() const {
    if (!taylor_) throw LicensingError("profile has no Taylor coefficients; the series path is not licensed");
    return *taylor_;
}

Rational TestProfile::rational_at_one() const {
    Rational s = 0;
    for (const auto& c : coefficients()) s += c;
    return s;
}

LaurentSeries TestProfile::as_series() const {
    const auto& c = coefficients();
    int order = std::max(0, static_cast<int>(c.size()) - 1);
    LaurentSeries s(0, order, series::Parity::Even);
    for (std::size_t d = 0; d < c.size(); ++d) s.set(static_cast<int>(d), c[d]);
    return s;
}

TestProfile eta_t_profile(const RealFunction& h, const BigReal& t) {
    return TestProfile::callable([h, t](const BigReal& r) -> BigReal { return h(t * r); });
}

BigReal s_pairing_integral(const TestProfile& g, const BigReal& t, const BigReal& tol) {
    require_nonzero(t);
    BigReal g1 = g.at_one();
    quadrature::IntegrandSpec spec{
        [&](const BigReal& r) -> BigReal { return 2 * (g(r) - g1) / ((1 - r) * (1 + r)); }, BigReal(-1), BigReal(1),
        quadrature::EndpointHint::Removable};
    BigReal t2 = t * t;
    BigReal integral = quadrature::integrate(spec, tol * t2 / 4).value;
    return integral / t2 + (2 * log_abs(t) + 2 * euler_gamma_big()) * 2 * g1 / t2;
}

LaurentSeries s_pairing_series_symbolic(const TestProfile& g) {
    if (!g.analytic()) throw LicensingError("series path needs an analytic profile");
    ConstExpr hash_part = series::hash(g.as_series()) * Rational(2);
    ConstExpr a = -hash_part + log_t_squared_minus_two_gamma_prime() * (2 * g.rational_at_one());
    return LaurentSeries::monomial(a, -2, 0);
}

BigReal s_pairing_series(const TestProfile& g, const BigReal& t) {
    require_nonzero(t);
    return series::evaluate(s_pairing_series_symbolic(g), t, log_abs(t));
}

LaurentSeries s_pairing_star_variant_symbolic(const TestProfile& g, int order) {
    if (!g.analytic()) throw LicensingError("star variant needs an analytic profile");
    const auto& c = g.coefficients();
    int exact = static_cast<int>(c.size()) - 3;  // last degree of 2g(t)/t^2
    int top = std::max(order, 0);
    if (!g.is_polynomial()) top = std::min(top, exact);
    LaurentSeries two_g(-2, top, series::Parity::Even);
    for (std::size_t d = 0; d < c.size(); ++d) {
        int deg = static_cast<int>(d) - 2;
        if (deg <= top) two_g.set(deg, Rational(c[d] * 2));
    }
    return -series::star(two_g) + two_g * log_t_squared_minus_two_gamma_prime();
}

BigReal s_pairing_star_variant(const TestProfile& g, const BigReal& t) {
    require_nonzero(t);
    int order = std::max(0, static_cast<int>(g.coefficients().size()) - 3);
    return series::evaluate(s_pairing_star_variant_symbolic(g, order), t, log_abs(t));
}

BigReal fixed_point_functional(const TestProfile& g, const BigReal& t, Convention convention) {
    require_nonzero(t);
    BigReal v = convention == Convention::EtaT ? g(t) : g.at_one();
    return 2 * v / (t * t);
}

DefiningPropertyResidual check_defining_property(const FiberFunction& f0, const RealFunction& f1, const BigReal& tol) {
    if (!f0.value || !f1) throw ArgumentError("defining-property check needs both functions");
    BigReal pi = pi_big();
    BigReal half_pi = pi / 2;

    // The profile of f1 carries cos^2 u = 1 - r^2, so g1(+-1) = 0.
    auto g1 = [&](const BigReal& r) -> BigReal {
        BigReal u = bmp::asin(r);
        BigReal sym = (f1(u) + f1(-u)) / 2;
        return half_pi * sym * (1 - r) * (1 + r);
    };
    quadrature::IntegrandSpec lhs1{[&](const BigReal& r) -> BigReal { return 2 * g1(r) / ((1 - r) * (1 + r)); }, BigReal(-1),
                                   BigReal(1)};
    quadrature::IntegrandSpec rhs1{[&](const BigReal& u) -> BigReal { return pi * f1(u) * bmp::cos(u); }, -half_pi, half_pi};
    BigReal residual1 = bmp::abs(quadrature::integrate(lhs1, tol / 4).value - quadrature::integrate(rhs1, tol / 4).value);

    RealFunction df0;
    if (f0.derivative) {
        df0 = *f0.derivative;
    } else {
        BigReal h = epsilon_digits(static_cast<long>(working_digits()) / 3);
        df0 = [f = f0.value, h](const BigReal& u) -> BigReal { return (f(u + h) - f(u - h)) / (2 * h); };
    }
    // Imaginary part of the profile of -X^{1,0}.f0: -(cos u / 2) f0'(u), then mirror-symmetrised.
    auto g0 = [&](const BigReal& r) -> BigReal {
        BigReal u = bmp::asin(r);
        BigReal c = bmp::sqrt((1 - r) * (1 + r));
        return -(c / 4) * (df0(u) + df0(-u));
    };
    quadrature::IntegrandSpec pair0{[&](const BigReal& r) -> BigReal { return 2 * g0(r) / ((1 - r) * (1 + r)); }, BigReal(-1),
                                    BigReal(1)};
    BigReal pairing = quadrature::integrate(pair0, tol / 4).value;
    BigReal boundary = f0.value(half_pi) - f0.value(-half_pi);
    BigReal residual2 = bmp::abs(-pairing - boundary);
    return {residual1, residual2};
}

BigReal check_scaling(const TestProfile& g, const BigReal& t, const BigReal& c, const BigReal& tol) {
    require_nonzero(t);
    if (c <= 0) throw ArgumentError("scaling factor must be positive");
    BigReal lhs = c * c * s_pairing_integral(g, c * t, tol / 4) - s_pairing_integral(g, t, tol / 4);
    BigReal rhs = bmp::log(c * c) * 2 * g.at_one() / (t * t);
    return bmp::abs(lhs - rhs);
}

ConstExpr check_scaling_symbolic(const TestProfile& g, const Rational& c) {
    if (c <= 0) throw ArgumentError("scaling factor must be positive");
    // Both sides carry the common factor 1/t^2; c^2 (c t)^-2 = t^-2.
    ConstExpr a = s_pairing_series_symbolic(g).coeff(-2);
    ConstExpr log_c = ConstExpr::log(c);
    ConstExpr scaled = a.substitute_log_t(ConstExpr::log_t() + log_c);
    return scaled - a - log_c * (Rational(2) * 2 * g.rational_at_one());
}

}  // namespace ptorsion::scurrent
