#include "ptorsion/numerics.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

#include "ptorsion/specfun.hpp"

namespace ptorsion {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = prime_factors(n);
    return f.size() == 1;
}

}  // namespace

unsigned working_digits() { return BigReal::default_precision(); }

WorkingPrecision::WorkingPrecision(unsigned digits) : saved_(BigReal::default_precision()) {
    if (digits < 10) throw ArgumentError("working precision below 10 digits");
    BigReal::default_precision(digits);
}

WorkingPrecision::~WorkingPrecision() { BigReal::default_precision(saved_); }

BigReal epsilon_digits(long digits) {
    BigReal ten(10);
    return boost::multiprecision::pow(ten, -digits);
}

BigReal working_epsilon() { return epsilon_digits(static_cast<long>(working_digits())); }

BigReal to_big(const Rational& q) {
    BigReal r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

BigReal to_big(long n) { return BigReal(n); }

BigReal parse_big(std::string_view text) {
    try {
        return BigReal(std::string(text));
    } catch (const std::exception&) {
        throw ArgumentError("not a real number: '" + std::string(text) + "'");
    }
}

std::string to_decimal(const BigReal& x, unsigned digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

BigReal pi_big() {
    BigReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

BigReal euler_gamma_big() {
    BigReal r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

BigReal log_big(const BigReal& x) { return boost::multiprecision::log(x); }

Rational harmonic(long m) {
    if (m < 0) throw ArgumentError("harmonic: negative index");
    Rational h = 0;
    for (long j = 1; j <= m; ++j) h += Rational(1, j);
    return h;
}

Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned j = 2; j <= n; ++j) f *= j;
    return f;
}

Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b = 1;
    for (unsigned j = 1; j <= k; ++j) {
        b *= n - k + j;
        b /= j;
    }
    return b;
}

std::string rational_string(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw ArgumentError("zero denominator in '" + s + "'");
        return Rational(n, d);
    } catch (const ArgumentError&) {
        throw;
    } catch (const std::exception&) {
        throw ArgumentError("not a rational number: '" + s + "'");
    }
}

ConstSymbol ConstSymbol::zeta_prime(long m) {
    if (m < 1 || m % 2 == 0) throw ArgumentError("ZETA_PRIME(-m) needs odd m >= 1");
    return ConstSymbol(Kind::ZetaPrime, m);
}

ConstSymbol ConstSymbol::log_prime(std::uint64_t p) {
    if (!is_prime(p)) throw ArgumentError("LOG symbol stored only for primes");
    return ConstSymbol(Kind::Log, static_cast<long>(p));
}

std::string ConstSymbol::tag() const {
    switch (kind_) {
        case Kind::One: return "ONE";
        case Kind::Gamma: return "GAMMA";
        case Kind::ZetaPrime: return "ZETA_PRIME(-" + std::to_string(arg_) + ")";
        case Kind::Log: return "LOG(" + std::to_string(arg_) + ")";
        case Kind::LogT: return "LOG_T";
    }
    return {};
}

std::string ConstSymbol::pretty() const {
    switch (kind_) {
        case Kind::One: return "";
        case Kind::Gamma: return "gamma";
        case Kind::ZetaPrime: return "zeta'(-" + std::to_string(arg_) + ")";
        case Kind::Log: return "log(" + std::to_string(arg_) + ")";
        case Kind::LogT: return "log(t)";
    }
    return {};
}

ConstExpr::ConstExpr(const Rational& q) {
    if (q != 0) terms_.emplace(ConstSymbol::one(), q);
}

ConstExpr ConstExpr::symbol(ConstSymbol s, const Rational& coeff) {
    ConstExpr e;
    e.add_term(s, coeff);
    return e;
}

ConstExpr ConstExpr::log(std::uint64_t n) {
    if (n == 0) throw ArgumentError("log(0)");
    ConstExpr e;
    for (auto p : prime_factors(n)) e.add_term(ConstSymbol::log_prime(p), 1);
    return e;
}

ConstExpr ConstExpr::log(const Rational& q) {
    if (q <= 0) throw ArgumentError("log of a non-positive rational");
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    if (num > std::numeric_limits<std::uint64_t>::max() / 2 ||
        den > std::numeric_limits<std::uint64_t>::max() / 2)
        throw ArgumentError("log argument too large to factor");
    return log(num.convert_to<std::uint64_t>()) - log(den.convert_to<std::uint64_t>());
}

ConstExpr ConstExpr::from_tag(std::string_view tag, const Rational& coeff) {
    std::string t(tag);
    auto inner = [&](std::string_view prefix) -> std::string {
        if (t.size() <= prefix.size() + 1 || t.back() != ')') throw ArgumentError("bad symbol '" + t + "'");
        return t.substr(prefix.size(), t.size() - prefix.size() - 1);
    };
    try {
        if (t == "ONE") return ConstExpr(coeff);
        if (t == "GAMMA") return symbol(ConstSymbol::gamma(), coeff);
        if (t == "LOG_T") return symbol(ConstSymbol::log_t(), coeff);
        if (t.rfind("ZETA_PRIME(-", 0) == 0) {
            long m = std::stol(inner("ZETA_PRIME(-"));
            return symbol(ConstSymbol::zeta_prime(m), coeff);
        }
        if (t.rfind("LOG(", 0) == 0) {
            long n = std::stol(inner("LOG("));
            if (n < 2) throw ArgumentError("LOG(n) needs n >= 2");
            return log(static_cast<std::uint64_t>(n)) * coeff;
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ArgumentError("unknown symbol '" + t + "'");
}

void ConstExpr::add_term(const ConstSymbol& s, const Rational& q) {
    if (q == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0) terms_.erase(it);
    }
}

bool ConstExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.kind() == ConstSymbol::Kind::One);
}

Rational ConstExpr::coefficient(const ConstSymbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational ConstExpr::as_rational() const {
    if (!is_rational()) throw ArgumentError("expression is not rational: " + to_string());
    return rational_part();
}

ConstExpr& ConstExpr::operator+=(const ConstExpr& o) {
    for (const auto& [s, q] : o.terms_) add_term(s, q);
    return *this;
}

ConstExpr& ConstExpr::operator-=(const ConstExpr& o) {
    for (const auto& [s, q] : o.terms_) add_term(s, -q);
    return *this;
}

ConstExpr& ConstExpr::operator*=(const Rational& q) {
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, c] : terms_) c *= q;
    return *this;
}

ConstExpr& ConstExpr::operator/=(const Rational& q) {
    if (q == 0) throw ArgumentError("ConstExpr division by zero");
    for (auto& [s, c] : terms_) c /= q;
    return *this;
}

ConstExpr ConstExpr::operator-() const {
    ConstExpr r = *this;
    for (auto& [s, c] : r.terms_) c = -c;
    return r;
}

ConstExpr operator*(const ConstExpr& a, const ConstExpr& b) {
    if (a.is_rational()) return b * a.rational_part();
    if (b.is_rational()) return a * b.rational_part();
    throw NonlinearProductError("product of two transcendental expressions: (" + a.to_string() + ")*(" +
                                b.to_string() + ")");
}

ConstExpr ConstExpr::substitute_log_t(const ConstExpr& replacement) const {
    ConstExpr out;
    for (const auto& [s, q] : terms_) {
        if (s.kind() == ConstSymbol::Kind::LogT)
            out += replacement * q;
        else
            out.add_term(s, q);
    }
    return out;
}

std::string ConstExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, q] : terms_) {
        Rational mag = q < 0 ? Rational(-q) : q;
        if (first)
            out += q < 0 ? "-" : "";
        else
            out += q < 0 ? " - " : " + ";
        first = false;
        std::string name = s.pretty();
        if (name.empty())
            out += rational_string(mag);
        else if (mag == 1)
            out += name;
        else
            out += rational_string(mag) + "*" + name;
    }
    return out;
}

BigReal eval_symbol(const ConstSymbol& s, const std::optional<BigReal>& logt) {
    switch (s.kind()) {
        case ConstSymbol::Kind::One: return BigReal(1);
        case ConstSymbol::Kind::Gamma: return euler_gamma_big();
        case ConstSymbol::Kind::ZetaPrime: return specfun::zeta_prime_neg(s.arg());
        case ConstSymbol::Kind::Log: return log_big(BigReal(s.arg()));
        case ConstSymbol::Kind::LogT:
            if (!logt) throw EvaluationError("LOG_T present but no value for log t supplied");
            return *logt;
    }
    return BigReal(0);
}

BigReal eval_const(const ConstExpr& e, const std::optional<BigReal>& logt) {
    BigReal sum = 0;
    for (const auto& [s, q] : e.terms()) sum += to_big(q) * eval_symbol(s, logt);
    return sum;
}

BigReal eval_const(const ConstExpr& e, unsigned digits, const std::optional<BigReal>& logt) {
    WorkingPrecision guard(digits);
    return eval_const(e, logt);
}

nlohmann::ordered_json to_json(const ConstExpr& e) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [s, q] : e.terms()) {
        nlohmann::ordered_json t;
        t["symbol"] = s.tag();
        t["num"] = boost::multiprecision::numerator(q).str();
        t["den"] = boost::multiprecision::denominator(q).str();
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json out;
    out["terms"] = std::move(terms);
    return out;
}

ConstExpr const_expr_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ArgumentError("ConstExpr JSON needs a 'terms' array");
    ConstExpr e;
    for (const auto& t : j["terms"]) {
        if (!t.contains("symbol") || !t.contains("num") || !t.contains("den"))
            throw ArgumentError("ConstExpr term needs symbol, num, den");
        Integer num(t["num"].get<std::string>());
        Integer den(t["den"].get<std::string>());
        if (den <= 0) throw ArgumentError("ConstExpr term with non-positive denominator");
        e += ConstExpr::from_tag(t["symbol"].get<std::string>(), Rational(num, den));
    }
    return e;
}

}  // namespace ptorsion
