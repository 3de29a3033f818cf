#include "ptorsion/chowring.hpp"

#include <algorithm>
#include <numeric>

#include "ptorsion/specfun.hpp"
#include "ptorsion/torsion.hpp"

namespace ptorsion::chowring {

namespace {

const ConstExpr kZero;

std::size_t index_of(const Grading& g, const std::string& name) {
    auto it = std::find(g.names.begin(), g.names.end(), name);
    if (it == g.names.end()) throw ArgumentError("grading has no generator '" + name + "'");
    return static_cast<std::size_t>(it - g.names.begin());
}

Rational inv_factorial(unsigned k) { return Rational(1) / Rational(factorial(k)); }

}  // namespace

GradingPtr make_grading(std::vector<std::string> names, std::vector<int> degrees, int cap,
                        std::vector<int> nilpotency) {
    if (names.size() != degrees.size()) throw ArgumentError("grading: names and degrees differ in length");
    if (nilpotency.empty()) nilpotency.assign(names.size(), 0);
    if (nilpotency.size() != names.size()) throw ArgumentError("grading: nilpotency length mismatch");
    for (int d : degrees)
        if (d <= 0) throw ArgumentError("grading: generator degrees must be positive");
    if (cap < 0) throw ArgumentError("grading: negative cap");
    return std::make_shared<const Grading>(Grading{std::move(names), std::move(degrees), std::move(nilpotency), cap});
}

GradingPtr base_grading(int cap) { return make_grading({"c1", "c2"}, {2, 4}, cap); }

BaseClass::BaseClass(GradingPtr g) : g_(std::move(g)) {
    if (!g_) throw ArgumentError("BaseClass without a grading");
}

BaseClass BaseClass::constant(GradingPtr g, const ConstExpr& c) {
    BaseClass out(std::move(g));
    out.add_term(Monomial(out.g_->names.size(), 0), c);
    return out;
}

BaseClass BaseClass::generator(GradingPtr g, const std::string& name) {
    BaseClass out(std::move(g));
    Monomial m(out.g_->names.size(), 0);
    m[index_of(*out.g_, name)] = 1;
    out.add_term(m, ConstExpr(1));
    return out;
}

int BaseClass::degree_of(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * g_->degrees[i];
    return d;
}

const ConstExpr& BaseClass::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? kZero : it->second;
}

void BaseClass::add_term(const Monomial& m, const ConstExpr& c) {
    if (m.size() != g_->names.size()) throw ArgumentError("monomial length does not match the grading");
    if (c.is_zero() || degree_of(m) > g_->cap) return;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (g_->nilpotency[i] > 0 && m[i] >= g_->nilpotency[i]) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BaseClass BaseClass::part(int degree) const {
    BaseClass out(g_);
    for (const auto& [m, c] : terms_)
        if (degree_of(m) == degree) out.terms_.emplace(m, c);
    return out;
}

BaseClass BaseClass::dropped_above(int degree) const {
    BaseClass out(g_);
    for (const auto& [m, c] : terms_)
        if (degree_of(m) <= degree) out.terms_.emplace(m, c);
    return out;
}

BaseClass BaseClass::truncated(int cap) const {
    if (cap > g_->cap) throw ArgumentError("truncation cannot raise the cap");
    Grading g = *g_;
    g.cap = cap;
    BaseClass out(std::make_shared<const Grading>(std::move(g)));
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
}

BaseClass BaseClass::pow(unsigned k) const {
    BaseClass out = constant(g_, 1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
}

BaseClass BaseClass::substitute(const GradingPtr& target, const std::vector<BaseClass>& images) const {
    if (images.size() != g_->names.size()) throw ArgumentError("substitute: one image per generator");
    for (const auto& im : images)
        if (!(*im.grading() == *target)) throw ArgumentError("substitute: image in the wrong grading");
    BaseClass out(target);
    for (const auto& [m, c] : terms_) {
        BaseClass term = constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i) term = term * images[i].pow(static_cast<unsigned>(m[i]));
        out += term;
    }
    return out;
}

void BaseClass::require_same(const BaseClass& o) const {
    if (g_ != o.g_ && !(*g_ == *o.g_)) throw ArgumentError("classes live in different gradings");
}

BaseClass& BaseClass::operator+=(const BaseClass& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

BaseClass& BaseClass::operator-=(const BaseClass& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

BaseClass& BaseClass::operator*=(const ConstExpr& c) {
    BaseClass out(g_);
    for (const auto& [m, v] : terms_) out.add_term(m, v * c);
    return *this = std::move(out);
}

BaseClass BaseClass::operator-() const { return *this * ConstExpr(-1); }

BaseClass operator*(const BaseClass& a, const BaseClass& b) {
    a.require_same(b);
    BaseClass out(a.g_);
    Monomial m(a.g_->names.size());
    for (const auto& [ma, ca] : a.terms_) {
        int da = a.degree_of(ma);
        for (const auto& [mb, cb] : b.terms_) {
            if (da + a.degree_of(mb) > a.g_->cap) continue;
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

bool BaseClass::operator==(const BaseClass& o) const { return *g_ == *o.g_ && terms_ == o.terms_; }

int BaseClass::lowest_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int d = degree_of(m);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::string BaseClass::key(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ' ';
        s += g_->names[i] + "^" + std::to_string(m[i]);
    }
    return s;
}

std::string BaseClass::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, ConstExpr>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto* x, auto* y) { return degree_of(x->first) < degree_of(y->first); });
    std::string out;
    for (const auto* t : order) {
        std::string mono;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            int e = t->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += g_->names[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        const ConstExpr& c = t->second;
        bool negative = c.is_rational() && c.as_rational() < 0;
        std::string coeff = (negative ? -c : c).to_string();
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (mono.empty())
            out += coeff;
        else if (coeff == "1")
            out += mono;
        else if (c.is_rational())
            out += coeff + "*" + mono;
        else
            out += "(" + coeff + ")*" + mono;
    }
    return out;
}

BundleRingPtr make_bundle_ring(int degree, RelationSign sign) {
    if (degree < 0 || degree % 2 != 0) throw ArgumentError("ring degree must be even and nonnegative");
    return std::make_shared<const BundleRing>(BundleRing{degree, sign, base_grading(degree + 2)});
}

BundleClass::BundleClass(BundleRingPtr ring) : ring_(std::move(ring)), a_(ring_->grading), b_(ring_->grading) {}

BundleClass::BundleClass(BundleRingPtr ring, BaseClass a, BaseClass b)
    : ring_(std::move(ring)), a_(std::move(a)), b_(std::move(b)) {
    if (!(*a_.grading() == *ring_->grading) || !(*b_.grading() == *ring_->grading))
        throw ArgumentError("bundle class parts must live in the bundle grading");
    normalize();
}

BundleClass BundleClass::x(BundleRingPtr ring) {
    GradingPtr g = ring->grading;
    return BundleClass(std::move(ring), BaseClass(g), BaseClass::constant(g, 1));
}

BundleClass BundleClass::pullback(BundleRingPtr ring, const BaseClass& alpha) {
    GradingPtr g = ring->grading;
    BaseClass a(g);
    for (const auto& [m, c] : alpha.terms()) a.add_term(m, c);
    if (alpha.grading()->names != g->names) throw ArgumentError("pullback: base class is not in c1, c2");
    return BundleClass(std::move(ring), std::move(a), BaseClass(g));
}

BundleClass BundleClass::constant(BundleRingPtr ring, const ConstExpr& c) {
    GradingPtr g = ring->grading;
    return BundleClass(std::move(ring), BaseClass::constant(g, c), BaseClass(g));
}

BundleClass BundleClass::relative_tangent(BundleRingPtr ring) {
    GradingPtr g = ring->grading;
    BundleClass c1(ring, BaseClass::generator(g, "c1"), BaseClass(g));
    return x(ring) * ConstExpr(2) + c1;
}

void BundleClass::normalize() { b_ = b_.dropped_above(ring_->grading->cap - 2); }

BundleClass BundleClass::pow(unsigned k) const {
    BundleClass out = constant(ring_, 1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
}

BundleClass& BundleClass::operator+=(const BundleClass& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

BundleClass& BundleClass::operator-=(const BundleClass& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

BundleClass& BundleClass::operator*=(const ConstExpr& c) {
    a_ *= c;
    b_ *= c;
    return *this;
}

BundleClass operator*(const BundleClass& p, const BundleClass& q) {
    if (p.ring_ != q.ring_ && !(p.ring_->degree == q.ring_->degree && p.ring_->sign == q.ring_->sign))
        throw ArgumentError("bundle classes from different rings");
    const GradingPtr& g = p.ring_->grading;
    BaseClass c1 = BaseClass::generator(g, "c1");
    BaseClass c2 = BaseClass::generator(g, "c2");
    // x^2 = s c1 x - c2
    ConstExpr s = p.ring_->sign == RelationSign::Standard ? ConstExpr(-1) : ConstExpr(1);
    BaseClass bb = p.b_ * q.b_;
    BaseClass a = p.a_ * q.a_ - bb * c2;
    BaseClass b = p.a_ * q.b_ + p.b_ * q.a_ + bb * c1 * s;
    return BundleClass(p.ring_, std::move(a), std::move(b));
}

std::string BundleClass::to_string() const {
    std::string b = b_.to_string();
    if (b_.is_zero()) return a_.to_string();
    std::string xs = "(" + b + ")*x";
    return a_.is_zero() ? xs : a_.to_string() + " + " + xs;
}

BundleClass reduce(const BundleRingPtr& ring, const std::vector<BaseClass>& coeffs) {
    BundleClass out(ring);
    BundleClass x = BundleClass::x(ring);
    for (std::size_t k = coeffs.size(); k-- > 0;) out = out * x + BundleClass::pullback(ring, coeffs[k]);
    return out;
}

BaseClass fiber_integrate(const BundleClass& q) { return q.b().truncated(q.ring()->degree); }

BundleClass compose(const std::vector<ConstExpr>& coeffs, const BundleClass& c) {
    if (!c.a().part(0).is_zero()) throw ArgumentError("compose: class must have no degree-0 part");
    BundleClass out(c.ring());
    BundleClass power = BundleClass::constant(c.ring(), 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (power.a().is_zero() && power.b().is_zero()) break;
        out += power * coeffs[k];
        power = power * c;
    }
    return out;
}

BaseClass compose(const std::vector<ConstExpr>& coeffs, const BaseClass& c) {
    if (!c.part(0).is_zero()) throw ArgumentError("compose: class must have no degree-0 part");
    BaseClass out(c.grading());
    BaseClass power = BaseClass::constant(c.grading(), 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (power.is_zero()) break;
        out += power * coeffs[k];
        power = power * c;
    }
    return out;
}

BundleClass char_series(CharKind kind, const BundleClass& c, const Rational& ell) {
    const auto& ring = c.ring();
    const unsigned top = static_cast<unsigned>(ring->grading->cap / 2);
    std::vector<ConstExpr> coeffs(top + 1);
    if (kind == CharKind::ChLine) {
        Rational p = 1;
        for (unsigned k = 0; k <= top; ++k, p *= ell) coeffs[k] = p * inv_factorial(k);
        return compose(coeffs, BundleClass::x(ring));
    }
    BundleClass rest = c - BundleClass(ring, c.a().part(2), c.b().part(0));
    if (!(rest.a().is_zero() && rest.b().is_zero()))
        throw ArgumentError("characteristic series need a homogeneous degree-2 class");
    if (kind == CharKind::ToddLine) {
        for (unsigned k = 0; k <= top; ++k) {
            Rational bk = specfun::bernoulli(k) * inv_factorial(k);
            coeffs[k] = k % 2 == 0 ? bk : Rational(-bk);
        }
    } else {
        series::LaurentSeries r = specfun::gs_r_series(static_cast<int>(top) + 1);
        for (unsigned k = 0; k <= top; ++k) coeffs[k] = r.coeff(static_cast<int>(k));
    }
    return compose(coeffs, c);
}

BaseClass discriminant(const GradingPtr& g) {
    BaseClass c1 = BaseClass::generator(g, "c1");
    return c1 * c1 - BaseClass::generator(g, "c2") * ConstExpr(4);
}

BaseClass even_series_in_discriminant(const series::LaurentSeries& phi, const GradingPtr& g) {
    const int top_m = g->cap / 4;
    if (phi.order() < 2 * top_m)
        throw ArgumentError("series order " + std::to_string(phi.order()) + " is too low for degree " +
                            std::to_string(g->cap));
    for (int d = phi.min_degree(); d <= phi.order(); ++d) {
        if (phi.coeff(d).is_zero()) continue;
        if (d < 0) throw ArgumentError("series has a pole at t^" + std::to_string(d));
        if (d % 2 != 0) throw ParityError("series has a nonzero odd coefficient at t^" + std::to_string(d));
    }
    std::vector<ConstExpr> coeffs(static_cast<std::size_t>(top_m) + 1);
    for (int m = 0; m <= top_m; ++m) coeffs[m] = phi.coeff(2 * m) * Rational(m % 2 == 0 ? 1 : -1);
    return compose(coeffs, discriminant(g));
}

BaseClass exp_c1(const GradingPtr& g, const Rational& q) {
    const unsigned top = static_cast<unsigned>(g->cap / 2);
    std::vector<ConstExpr> coeffs(top + 1);
    Rational p = 1;
    for (unsigned k = 0; k <= top; ++k, p *= q) coeffs[k] = p * inv_factorial(k);
    return compose(coeffs, BaseClass::generator(g, "c1"));
}

BaseClass grr_r_term(int ell, int degree) {
    BundleRingPtr ring = make_bundle_ring(degree);
    BundleClass c = BundleClass::relative_tangent(ring);
    BundleClass integrand = char_series(CharKind::ChLine, c, Rational(ell)) * char_series(CharKind::ToddLine, c) *
                            char_series(CharKind::GsRLine, c);
    return fiber_integrate(integrand);
}

GrrResidual check_grr_cancellation(int ell, int degree) {
    BaseClass lhs = grr_r_term(ell, degree);
    GradingPtr g = lhs.grading();
    series::LaurentSeries summand = torsion::gs_summand_series(ell, std::max(4, degree / 2 + 2));
    BaseClass rhs = exp_c1(g, Rational(-ell, 2)) * even_series_in_discriminant(summand, g);
    GrrResidual out{lhs - rhs, -1};
    out.offending_degree = out.residual.lowest_degree();
    return out;
}

bool FiberIdentityReport::holds() const {
    auto zero = [](const BaseClass& b) { return b.is_zero(); };
    return std::all_of(even.begin(), even.end(), zero) && std::all_of(odd.begin(), odd.end(), zero);
}

FiberIdentityReport check_fiber_identities(int max_m, RelationSign sign, int degree) {
    if (4 * max_m + 2 > degree + 2) throw ArgumentError("fiber identities: degree too small for m");
    BundleRingPtr ring = make_bundle_ring(degree, sign);
    BundleClass c = BundleClass::relative_tangent(ring);
    BaseClass disc = discriminant(base_grading(degree));
    FiberIdentityReport out;
    BundleClass power = BundleClass::constant(ring, 1);
    for (int m = 0; m <= max_m; ++m) {
        out.even.push_back(fiber_integrate(power));
        power = power * c;
        out.odd.push_back(fiber_integrate(power) - disc.pow(static_cast<unsigned>(m)) * ConstExpr(2));
        power = power * c;
    }
    return out;
}

nlohmann::ordered_json to_json(const BaseClass& c) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [m, v] : c.terms()) j[c.key(m)] = v.to_string();
    return j;
}

nlohmann::ordered_json to_json(const BundleClass& c) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [m, v] : c.a().terms()) j[c.a().key(m) + " x^0"] = v.to_string();
    for (const auto& [m, v] : c.b().terms()) j[c.b().key(m) + " x^1"] = v.to_string();
    return j;
}

}  // namespace ptorsion::chowring
