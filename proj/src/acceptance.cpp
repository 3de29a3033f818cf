#include "ptorsion/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ptorsion/chowring.hpp"
#include "ptorsion/scurrent.hpp"
#include "ptorsion/specfun.hpp"
#include "ptorsion/torsion.hpp"
#include "ptorsion/torsionform.hpp"

namespace ptorsion::acceptance {

namespace bmp = boost::multiprecision;
using series::LaurentSeries;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail.str("");
        if (!pass) detail << "; ";
        pass = false;
        detail << why;
    }
};

std::string sci(const BigReal& x) { return to_decimal(x, 3); }

ConstExpr log_sum(int n, const std::function<Rational(int)>& weight) {
    ConstExpr s;
    for (int m = 2; m <= n; ++m) s += ConstExpr::log(static_cast<std::uint64_t>(m)) * weight(m);
    return s;
}

// 1. Height of P^1 over Z.
void height(Outcome& o) {
    auto start = std::chrono::steady_clock::now();
    torsionform::HeightResult h = torsionform::height_p1z();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!(h.value == ConstExpr(Rational(1, 2)))) o.fail("value " + h.value.to_string());
    if (h.log_t_residue != 0) o.fail("log t residue " + rational_string(h.log_t_residue));
    if (h.gamma_residue != 0) o.fail("gamma residue " + rational_string(h.gamma_residue));
    if (secs >= 1) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail << "value " << h.value.to_string() << ", log t and gamma cancel";
}

// 2. Constant term against 4 zeta'(-1) - (l+1)^2/2 - sum_k (|l+1| - 2k) log k.
void degree_zero(Outcome& o) {
    for (int ell = -3; ell <= 5; ++ell) {
        const int n = std::abs(ell + 1);
        ConstExpr expected = ConstExpr::zeta_prime(1) * Rational(4) - ConstExpr(Rational(n * n, 2)) -
                             log_sum(n, [n](int k) { return Rational(n - 2 * k); });
        ConstExpr got = torsion::torsion_infinitesimal(ell, 8).series().coeff(0);
        if (!(got == expected)) o.fail("l=" + std::to_string(ell) + ": " + got.to_string() + " vs " + expected.to_string());
    }
    if (o.pass) o.detail << "exact for l in -3..5";
}

// 3. t^2 coefficient against the reference bracket, whose zeta'(-1) part is -(n^2-1)/6.
void t_squared(Outcome& o) {
    for (int ell = 0; ell <= 3; ++ell) {
        const int n = std::abs(ell + 1);
        ConstExpr bracket = ConstExpr(Rational(10 * n * n * n * n - 5 * n * n - 4, 720)) +
                            (ConstExpr::zeta_prime(3) * Rational(-4) - ConstExpr::zeta_prime(1) * Rational(n * n - 1)) /
                                Rational(6) +
                            log_sum(n, [n](int m) {
                                int d = n - 2 * m;
                                return Rational(d * d * d - d, 24);
                            });
        ConstExpr got = torsion::torsion_infinitesimal(ell, 8).series().coeff(2);
        if (!(got == bracket)) o.fail("l=" + std::to_string(ell) + " residual " + (got - bracket).to_string());
    }
    if (o.pass) o.detail << "exact for l in 0..3";
}

// 4. Poles, odd powers and log t cancel in the raw five-piece sum.
void cancellation(Outcome& o) {
    const int order = 16;
    for (int ell = -3; ell <= 5; ++ell) {
        LaurentSeries group = specfun::r_rot_series(order + 2) * ConstExpr(2) *
                              series::cos_scaled(Rational(ell + 1, 2), order + 2) * series::inv_sin_half(order + 2);
        LaurentSeries f = torsion::fixed_point_series(ell, order);
        ConstExpr metric = ConstExpr::log_t() * Rational(2) + ConstExpr::gamma() * Rational(2);
        LaurentSeries raw = group.truncated(order) + torsion::log_sum_series(ell, order) - f * metric +
                            series::star(f) + torsion::i_class_series(ell, order);
        for (int d = raw.min_degree(); d <= order; ++d) {
            const ConstExpr& c = raw.coeff(d);
            bool bad = (d < 0 || d % 2 != 0) ? !c.is_zero() : c.coefficient(ConstSymbol::log_t()) != 0;
            if (bad) o.fail("l=" + std::to_string(ell) + " t^" + std::to_string(d) + ": " + c.to_string());
        }
    }
    if (o.pass) o.detail << "t^-2, t^-1, odd and log t parts vanish through t^16 for l in -3..5";
}

// 5. Pairing integral against the # series.
void scurrent_paths(Outcome& o) {
    auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::vector<Rational>>> profiles = {
        {"1", {1}}, {"r^2", {0, 0, 1}}, {"r^4", {0, 0, 0, 0, 1}}, {"r^2+r^4", {0, 0, 1, 0, 1}}};
    BigReal worst = 0;
    for (const auto& [name, coeffs] : profiles) {
        auto g = scurrent::TestProfile::polynomial(coeffs);
        for (const char* ts : {"0.5", "1", "3"}) {
            BigReal t(ts);
            BigReal diff = bmp::abs(scurrent::s_pairing_integral(g, t, BigReal("1e-30")) - scurrent::s_pairing_series(g, t));
            worst = bmp::max(worst, diff);
            if (diff > BigReal("1e-10")) o.fail("g=" + name + " t=" + ts + ": " + sci(diff));
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 30) o.fail("runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail << "max deviation " << sci(worst);
}

// 6. Series and pairing-integral forms of the TdchS term.
void tdchs(Outcome& o) {
    const std::vector<std::pair<int, const char*>> points = {{0, "1"}, {3, "2.5"}, {-1, "0.7"}};
    BigReal worst = 0;
    for (const auto& [ell, ts] : points) {
        BigReal t(ts);
        BigReal value = torsion::tdchs_value(ell, t, BigReal("1e-25"));
        BigReal ser = series::evaluate(torsion::tdchs_series(ell, series::kDefaultOrder), t, bmp::log(t));
        BigReal diff = bmp::abs(value - ser);
        worst = bmp::max(worst, diff);
        if (diff > BigReal("1e-9")) o.fail("(" + std::to_string(ell) + "," + ts + "): " + sci(diff));
    }
    if (o.pass) o.detail << "max deviation " << sci(worst);
}

// 7. Decay of the large-l error at t = 1.
void asymptotics(Outcome& o) {
    auto start = std::chrono::steady_clock::now();
    const int ells[] = {100, 200, 400, 800};
    std::vector<BigReal> err;
    BigReal t(1);
    for (int ell : ells)
        err.push_back(bmp::abs(torsion::tdchs_value(ell, t, BigReal("1e-15")) - torsion::torsion_asymptotic(ell, t)));
    std::ostringstream d;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
        BigReal ratio = err[i + 1] / err[i];
        d << "err(" << 2 * ells[i] << ")/err(" << ells[i] << ")=" << to_decimal(ratio, 3) << " ";
        if (ratio > BigReal("0.7")) o.fail("ratio above 0.7 at l=" + std::to_string(ells[i]));
    }
    BigReal scaled = 0;
    for (std::size_t i = 0; i < err.size(); ++i) scaled = bmp::max(scaled, err[i] * (ells[i] + 1));
    d << "max (l+1)*err=" << to_decimal(scaled, 3);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 120) o.fail("runtime " + std::to_string(secs) + " s");
    o.detail << (o.pass ? "" : "; ") << d.str();
}

// 8. Defining property of the current.
void defining_property(Outcome& o) {
    using scurrent::RealFunction;
    const std::vector<std::pair<std::string, RealFunction>> f1s = {
        {"1", [](const BigReal&) -> BigReal { return BigReal(1); }},
        {"cos^2 u", [](const BigReal& u) -> BigReal { BigReal c = bmp::cos(u); return c * c; }}};
    const std::vector<std::pair<std::string, scurrent::FiberFunction>> f0s = {
        {"sin u", {[](const BigReal& u) -> BigReal { return bmp::sin(u); },
                   RealFunction([](const BigReal& u) -> BigReal { return bmp::cos(u); })}},
        {"sin^3 u", {[](const BigReal& u) -> BigReal { BigReal s = bmp::sin(u); return s * s * s; },
                     RealFunction([](const BigReal& u) -> BigReal { BigReal s = bmp::sin(u); return 3 * s * s * bmp::cos(u); })}}};
    BigReal worst = 0;
    for (const auto& [n1, f1] : f1s)
        for (const auto& [n0, f0] : f0s) {
            auto r = scurrent::check_defining_property(f0, f1, BigReal("1e-20"));
            worst = bmp::max(worst, bmp::max(r.residual1, r.residual2));
            if (r.residual1 > BigReal("1e-8") || r.residual2 > BigReal("1e-8"))
                o.fail("f1=" + n1 + " f0=" + n0 + ": " + sci(r.residual1) + ", " + sci(r.residual2));
        }
    if (o.pass) o.detail << "max residual " << sci(worst);
}

// 9. Scaling identity, numeric grid and exact symbolic form.
void scaling(Outcome& o) {
    auto g = scurrent::TestProfile::polynomial({1, 0, 2, 0, -1});
    BigReal worst = 0;
    for (const char* ts : {"0.5", "1", "2"})
        for (const char* cs : {"0.5", "2", "3"}) {
            BigReal r = scurrent::check_scaling(g, BigReal(ts), BigReal(cs), BigReal("1e-30"));
            worst = bmp::max(worst, r);
            if (r > BigReal("1e-10")) o.fail(std::string("t=") + ts + " c=" + cs + ": " + sci(r));
        }
    for (const Rational& c : {Rational(1, 2), Rational(2), Rational(3)}) {
        ConstExpr r = scurrent::check_scaling_symbolic(g, c);
        if (!r.is_zero()) o.fail("symbolic c=" + rational_string(c) + ": " + r.to_string());
    }
    if (o.pass) o.detail << "max numeric residual " << sci(worst) << ", symbolic residual 0";
}

// 10. GRR R-term cancellation.
void grr(Outcome& o) {
    for (int ell = -2; ell <= 4; ++ell) {
        auto r = chowring::check_grr_cancellation(ell, 12);
        if (r.offending_degree >= 0)
            o.fail("l=" + std::to_string(ell) + " degree " + std::to_string(r.offending_degree) + ": " +
                   r.residual.part(r.offending_degree).to_string());
    }
    if (o.pass) o.detail << "residual 0 through degree 12 for l in -2..4";
}

// 11. Two-parameter torsion.
void two_param(Outcome& o) {
    BigReal worst = 0, worst_red = 0;
    for (int ell = 0; ell <= 2; ++ell) {
        for (const char* ss : {"0.3", "0.7"}) {
            for (const char* ts : {"0.1", "0.2"}) {
                try {
                    auto r = torsion::torsion_two_param(ell, BigReal(ss), BigReal(ts), BigReal("1e-8"));
                    if (!r.cross_checked) o.fail(std::string("no Lerch path at s=") + ss + " t=" + ts);
                    worst = bmp::max(worst, r.discrepancy);
                } catch (const ConsistencyError& e) {
                    o.fail(std::string("l=") + std::to_string(ell) + " s=" + ss + " t=" + ts + ": " + e.what());
                }
            }
            BigReal s(ss);
            BigReal red = bmp::abs(torsion::torsion_two_param(ell, s, BigReal(0), BigReal("1e-8")).value -
                                   torsion::torsion_group(ell, s));
            worst_red = bmp::max(worst_red, red);
            if (red > BigReal("1e-10")) o.fail("t=0 reduction l=" + std::to_string(ell) + " s=" + ss + ": " + sci(red));
        }
    }
    if (o.pass) o.detail << "max path discrepancy " << sci(worst) << ", t=0 reduction " << sci(worst_red);
}

// 12. Fiber-integration identities and the sign control.
void fiber_identities(Outcome& o) {
    auto standard = chowring::check_fiber_identities(3, chowring::RelationSign::Standard);
    for (std::size_t m = 0; m < standard.even.size(); ++m) {
        if (!standard.even[m].is_zero()) o.fail("pi_*(c^" + std::to_string(2 * m) + ") = " + standard.even[m].to_string());
        if (!standard.odd[m].is_zero()) o.fail("pi_*(c^" + std::to_string(2 * m + 1) + ") off by " + standard.odd[m].to_string());
    }
    auto opposite = chowring::check_fiber_identities(3, chowring::RelationSign::Opposite);
    if (opposite.holds()) o.fail("opposite relation sign also satisfies both identities");
    if (o.pass) o.detail << "both identities exact for m <= 3; opposite sign violates them";
}

struct Entry {
    const char* title;
    void (*run)(Outcome&);
};

const Entry kEntries[kCriteria] = {
    {"height of P^1_Z is 1/2", height},
    {"degree-0 torsion", degree_zero},
    {"t^2 coefficient", t_squared},
    {"structural cancellation", cancellation},
    {"S-current path agreement", scurrent_paths},
    {"TdchS series vs integral", tdchs},
    {"large-l asymptotics", asymptotics},
    {"defining property", defining_property},
    {"scaling identity", scaling},
    {"GRR cancellation", grr},
    {"two-parameter torsion", two_param},
    {"fiber-integration identities", fiber_identities},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriteria) throw ArgumentError("no acceptance criterion " + std::to_string(id));
    const Entry& e = kEntries[id - 1];
    CriterionResult out;
    out.id = id;
    out.title = e.title;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
        e.run(o);
    } catch (const std::exception& ex) {
        o.fail(std::string("exception: ") + ex.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.pass = o.pass;
    out.detail = o.detail.str();
    return out;
}

std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_line(const CriterionResult& r, bool with_time) {
    std::ostringstream s;
    s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail;
    if (with_time) {
        s.precision(2);
        s << std::fixed << " (" << r.seconds << " s)";
    }
    return s.str();
}

}  // namespace ptorsion::acceptance
