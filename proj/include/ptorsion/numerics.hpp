#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include "json.hpp"

#include "ptorsion/errors.hpp"

namespace ptorsion {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigReal = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

// Decimal digits used for newly created BigReal values.
unsigned working_digits();

// Scoped change of the working precision. MPFR's default precision is
// process-wide, so guards must nest and must not be shared across threads.
class WorkingPrecision {
public:
    explicit WorkingPrecision(unsigned digits);
    ~WorkingPrecision();
    WorkingPrecision(const WorkingPrecision&) = delete;
    WorkingPrecision& operator=(const WorkingPrecision&) = delete;

private:
    unsigned saved_;
};

// 10^(-digits) at the current working precision.
BigReal epsilon_digits(long digits);
BigReal working_epsilon();

BigReal to_big(const Rational& q);
BigReal to_big(long n);
BigReal parse_big(std::string_view text);
std::string to_decimal(const BigReal& x, unsigned digits);

BigReal pi_big();
BigReal euler_gamma_big();
BigReal log_big(const BigReal& x);

Rational harmonic(long m);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
std::string rational_string(const Rational& q);
Rational parse_rational(std::string_view text);

class ConstSymbol {
public:
    enum class Kind : std::uint8_t { One, Gamma, ZetaPrime, Log, LogT };

    static ConstSymbol one() { return ConstSymbol(Kind::One, 0); }
    static ConstSymbol gamma() { return ConstSymbol(Kind::Gamma, 0); }
    // zeta'(-m), m odd and positive.
    static ConstSymbol zeta_prime(long m);
    // log p for a prime p; composite arguments go through ConstExpr::log.
    static ConstSymbol log_prime(std::uint64_t p);
    static ConstSymbol log_t() { return ConstSymbol(Kind::LogT, 0); }

    Kind kind() const { return kind_; }
    long arg() const { return arg_; }

    // Canonical tag, e.g. "ZETA_PRIME(-3)", "LOG(2)", "LOG_T".
    std::string tag() const;
    // Human form, e.g. "zeta'(-3)", "log(2)", "log(t)"; empty for ONE.
    std::string pretty() const;

    auto operator<=>(const ConstSymbol&) const = default;

private:
    ConstSymbol(Kind k, long a) : kind_(k), arg_(a) {}
    Kind kind_;
    long arg_;
};

class ConstExpr {
public:
    ConstExpr() = default;
    ConstExpr(const Rational& q);  // NOLINT: rationals embed as multiples of ONE
    ConstExpr(long n) : ConstExpr(Rational(n)) {}  // NOLINT
    ConstExpr(int n) : ConstExpr(Rational(n)) {}   // NOLINT

    static ConstExpr symbol(ConstSymbol s, const Rational& coeff = 1);
    static ConstExpr gamma() { return symbol(ConstSymbol::gamma()); }
    static ConstExpr zeta_prime(long m) { return symbol(ConstSymbol::zeta_prime(m)); }
    static ConstExpr log_t() { return symbol(ConstSymbol::log_t()); }
    // log n for any integer n >= 1, expanded over prime logs.
    static ConstExpr log(std::uint64_t n);
    // log of a positive rational.
    static ConstExpr log(const Rational& q);
    // Parses a canonical tag, including composite LOG(n).
    static ConstExpr from_tag(std::string_view tag, const Rational& coeff = 1);

    const std::map<ConstSymbol, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_part() const { return coefficient(ConstSymbol::one()); }
    Rational coefficient(const ConstSymbol& s) const;
    // Rational coefficient of the expression if rational, otherwise throws.
    Rational as_rational() const;

    ConstExpr& operator+=(const ConstExpr& o);
    ConstExpr& operator-=(const ConstExpr& o);
    ConstExpr& operator*=(const Rational& q);
    ConstExpr& operator/=(const Rational& q);
    ConstExpr operator-() const;

    friend ConstExpr operator+(ConstExpr a, const ConstExpr& b) { return a += b; }
    friend ConstExpr operator-(ConstExpr a, const ConstExpr& b) { return a -= b; }
    friend ConstExpr operator*(ConstExpr a, const Rational& q) { return a *= q; }
    friend ConstExpr operator*(const Rational& q, ConstExpr a) { return a *= q; }
    friend ConstExpr operator/(ConstExpr a, const Rational& q) { return a /= q; }
    // At least one factor must be rational.
    friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b);

    bool operator==(const ConstExpr& o) const { return terms_ == o.terms_; }

    // Replaces LOG_T by a rational-linear expression.
    ConstExpr substitute_log_t(const ConstExpr& replacement) const;

    std::string to_string() const;

private:
    void add_term(const ConstSymbol& s, const Rational& q);
    std::map<ConstSymbol, Rational> terms_;
};

// Numeric value at the current working precision.
BigReal eval_symbol(const ConstSymbol& s, const std::optional<BigReal>& logt = std::nullopt);
BigReal eval_const(const ConstExpr& e, const std::optional<BigReal>& logt = std::nullopt);
BigReal eval_const(const ConstExpr& e, unsigned digits, const std::optional<BigReal>& logt);

nlohmann::ordered_json to_json(const ConstExpr& e);
ConstExpr const_expr_from_json(const nlohmann::ordered_json& j);

}  // namespace ptorsion
