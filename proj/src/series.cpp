#include "ptorsion/series.hpp"

#include <algorithm>

namespace ptorsion::series {

namespace {

const ConstExpr kZero{};

Parity product_parity(Parity a, Parity b) {
    if (a == Parity::Unknown || b == Parity::Unknown) return Parity::Unknown;
    return a == b ? Parity::Even : Parity::Odd;
}

}  // namespace

LaurentSeries::LaurentSeries(int min_degree, int order, Parity parity)
    : min_degree_(min_degree), order_(order), parity_(parity) {
    if (min_degree < kMinDegreeCap) throw ArgumentError("series pole order exceeds t^-2");
    if (order < min_degree - 1) throw ArgumentError("series order below min_degree");
    coeffs_.resize(static_cast<std::size_t>(order - min_degree + 1));
}

LaurentSeries LaurentSeries::monomial(const ConstExpr& c, int degree, int order) {
    Parity p = degree % 2 == 0 ? Parity::Even : Parity::Odd;
    LaurentSeries s(std::min(degree, 0), order, p);
    if (degree <= order) s.set(degree, c);
    return s;
}

const ConstExpr& LaurentSeries::coeff(int degree) const {
    if (degree > order_) throw ArgumentError("coefficient beyond truncation order requested");
    if (degree < min_degree_) return kZero;
    return coeffs_[static_cast<std::size_t>(degree - min_degree_)];
}

void LaurentSeries::set(int degree, ConstExpr c) {
    if (degree < min_degree_ || degree > order_) throw ArgumentError("series degree out of range");
    coeffs_[static_cast<std::size_t>(degree - min_degree_)] = std::move(c);
}

void LaurentSeries::add(int degree, const ConstExpr& c) {
    if (c.is_zero()) return;
    if (degree < min_degree_ || degree > order_) throw ArgumentError("series degree out of range");
    coeffs_[static_cast<std::size_t>(degree - min_degree_)] += c;
}

int LaurentSeries::valuation() const {
    for (int d = min_degree_; d <= order_; ++d)
        if (!coeff(d).is_zero()) return d;
    return order_ + 1;
}

bool LaurentSeries::has_parity(Parity p) const {
    if (p == Parity::Unknown) return true;
    int bad = p == Parity::Even ? 1 : 0;
    for (int d = min_degree_; d <= order_; ++d)
        if (((d % 2) + 2) % 2 == bad && !coeff(d).is_zero()) return false;
    return true;
}

bool LaurentSeries::mentions(const ConstSymbol& s) const {
    return std::any_of(coeffs_.begin(), coeffs_.end(), [&](const ConstExpr& c) { return c.coefficient(s) != 0; });
}

LaurentSeries LaurentSeries::truncated(int order) const {
    if (order > order_) throw ArgumentError("cannot extend a truncated series");
    LaurentSeries r(min_degree_, order, parity_);
    for (int d = min_degree_; d <= order; ++d) r.set(d, coeff(d));
    return r;
}

LaurentSeries LaurentSeries::with_min_degree(int min_degree) const {
    LaurentSeries r(min_degree, order_, parity_);
    for (int d = min_degree_; d <= order_; ++d) {
        if (d < min_degree) {
            if (!coeff(d).is_zero()) throw ArgumentError("dropping a nonzero coefficient");
            continue;
        }
        r.set(d, coeff(d));
    }
    return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
    Parity p = parity_;
    if (k % 2 != 0 && p != Parity::Unknown) p = p == Parity::Even ? Parity::Odd : Parity::Even;
    LaurentSeries r(min_degree_ + k, order_ + k, p);
    for (int d = min_degree_; d <= order_; ++d) r.set(d + k, coeff(d));
    return r;
}

LaurentSeries LaurentSeries::inverse() const {
    int v = valuation();
    if (v > order_) throw SingularityError("inverse of the zero series");
    const ConstExpr& lead = coeff(v);
    if (!lead.is_rational()) throw SingularityError("inverse needs a rational leading coefficient");
    Rational inv_lead = 1 / lead.rational_part();
    int n = order_ - v;  // g = f / t^v known through degree n
    std::vector<ConstExpr> b(static_cast<std::size_t>(n + 1));
    b[0] = ConstExpr(inv_lead);
    for (int k = 1; k <= n; ++k) {
        ConstExpr acc;
        for (int j = 1; j <= k; ++j) acc += coeff(v + j) * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = -(acc * inv_lead);
    }
    LaurentSeries r(-v, order_ - 2 * v, parity_);
    for (int k = 0; k <= order_ - v - v; ++k) r.set(k - v, b[static_cast<std::size_t>(k)]);
    return r;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    int lo = std::min(min_degree_, o.min_degree_);
    int hi = std::min(order_, o.order_);
    LaurentSeries r(lo, hi, parity_ == o.parity_ ? parity_ : Parity::Unknown);
    for (int d = lo; d <= hi; ++d) {
        ConstExpr c = d >= min_degree_ ? coeff(d) : ConstExpr{};
        if (d >= o.min_degree_) c += o.coeff(d);
        r.set(d, std::move(c));
    }
    return *this = std::move(r);
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries& LaurentSeries::operator*=(const ConstExpr& c) {
    for (auto& x : coeffs_) x = x * c;
    return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    int lo = a.min_degree_ + b.min_degree_;
    int hi = std::min(a.order_ + b.min_degree_, b.order_ + a.min_degree_);
    LaurentSeries r(lo, hi, product_parity(a.parity_, b.parity_));
    for (int i = a.min_degree_; i <= a.order_; ++i) {
        const ConstExpr& x = a.coeff(i);
        if (x.is_zero()) continue;
        for (int j = b.min_degree_; j <= b.order_ && i + j <= hi; ++j) {
            const ConstExpr& y = b.coeff(j);
            if (!y.is_zero()) r.add(i + j, x * y);
        }
    }
    return r;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    if (order_ != o.order_) return false;
    int lo = std::min(min_degree_, o.min_degree_);
    for (int d = lo; d <= order_; ++d)
        if (!(coeff(d) == o.coeff(d))) return false;
    return true;
}

LaurentSeries cos_scaled(const Rational& a, int order) {
    LaurentSeries s(0, order, Parity::Even);
    Rational term = 1;  // (-1)^k a^{2k} / (2k)!
    for (int d = 0; d <= order; d += 2) {
        s.set(d, term);
        term *= -a * a / Rational((d + 1) * (d + 2));
    }
    return s;
}

LaurentSeries sin_scaled(const Rational& a, int order) {
    LaurentSeries s(0, order, Parity::Odd);
    Rational term = a;
    for (int d = 1; d <= order; d += 2) {
        s.set(d, term);
        term *= -a * a / Rational((d + 1) * (d + 2));
    }
    return s;
}

LaurentSeries exp_scaled(const Rational& a, int order) {
    LaurentSeries s(0, order, a == 0 ? Parity::Even : Parity::Unknown);
    Rational term = 1;
    for (int d = 0; d <= order; ++d) {
        s.set(d, term);
        term *= a / Rational(d + 1);
    }
    return s;
}

LaurentSeries inv_sin_half(int order) { return sin_scaled(Rational(1, 2), order + 2).inverse(); }

Rational star_weight(int m) { return 2 * harmonic(2 * m + 1) - harmonic(m); }

Rational hash_weight(int m) {
    if (m < 1) return 0;
    return 2 * harmonic(2 * m - 1) - harmonic(m - 1);
}

LaurentSeries star(const LaurentSeries& phi) {
    if (!phi.has_parity(Parity::Even)) throw ParityError("star needs an even series");
    LaurentSeries r(std::max(phi.min_degree(), 0), phi.order(), Parity::Even);
    for (int d = std::max(phi.min_degree(), 0); d <= phi.order(); d += 1) {
        if (d % 2 != 0) continue;
        r.set(d, phi.coeff(d) * star_weight(d / 2));
    }
    return r;
}

ConstExpr hash(const LaurentSeries& phi) {
    if (phi.min_degree() < 0 && phi.valuation() < 0) throw ArgumentError("hash needs a power series");
    if (!phi.has_parity(Parity::Even)) throw ParityError("hash needs an even series");
    ConstExpr out;
    for (int d = 2; d <= phi.order(); d += 2) out += phi.coeff(d) * hash_weight(d / 2);
    return out;
}

BigReal evaluate(const LaurentSeries& phi, const BigReal& t, const std::optional<BigReal>& logt) {
    if (t == 0 && phi.valuation() < 0) throw EvaluationError("series with a pole evaluated at t = 0");
    // Group by symbol so each transcendental constant is evaluated once.
    std::map<ConstSymbol, BigReal> per_symbol;
    BigReal tp = 1;
    if (phi.min_degree() < 0) tp = boost::multiprecision::pow(t, phi.min_degree());
    for (int d = phi.min_degree(); d <= phi.order(); ++d) {
        for (const auto& [s, q] : phi.coeff(d).terms()) {
            auto [it, fresh] = per_symbol.try_emplace(s, BigReal(0));
            it->second += to_big(q) * tp;
        }
        tp *= t;
    }
    BigReal sum = 0;
    for (const auto& [s, v] : per_symbol) sum += v * eval_symbol(s, logt);
    return sum;
}

nlohmann::ordered_json to_json(const LaurentSeries& phi, const std::optional<BigReal>& logt, unsigned digits) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (int d = phi.min_degree(); d <= phi.order(); ++d) {
        const ConstExpr& c = phi.coeff(d);
        nlohmann::ordered_json entry;
        entry["deg"] = d;
        entry["expr"] = ptorsion::to_json(c);
        entry["pretty"] = c.to_string();
        if (c.coefficient(ConstSymbol::log_t()) != 0 && !logt)
            entry["numeric"] = nullptr;
        else
            entry["numeric"] = to_decimal(eval_const(c, logt), digits);
        coeffs.push_back(std::move(entry));
    }
    const char* parity = phi.parity() == Parity::Even ? "even" : phi.parity() == Parity::Odd ? "odd" : "unknown";
    nlohmann::ordered_json j;
    j["var"] = "t";
    j["min_degree"] = phi.min_degree();
    j["order"] = phi.order();
    j["parity"] = parity;
    j["coeffs"] = std::move(coeffs);
    return j;
}

}  // namespace ptorsion::series
