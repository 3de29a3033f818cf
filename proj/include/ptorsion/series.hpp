#pragma once

#include <optional>
#include <vector>

#include "json.hpp"

#include "ptorsion/numerics.hpp"

namespace ptorsion::series {

enum class Parity { Unknown, Even, Odd };

inline constexpr int kDefaultOrder = 40;
inline constexpr int kMinDegreeCap = -2;

// Truncated Laurent series sum_{m0 <= m <= N} a_m t^m with exact coefficients.
// Coefficients above `order` are unknown, not zero.
class LaurentSeries {
public:
    LaurentSeries(int min_degree, int order, Parity parity = Parity::Unknown);

    static LaurentSeries monomial(const ConstExpr& c, int degree, int order);
    static LaurentSeries constant(const ConstExpr& c, int order) { return monomial(c, 0, order); }

    int min_degree() const { return min_degree_; }
    int order() const { return order_; }
    Parity parity() const { return parity_; }
    void set_parity(Parity p) { parity_ = p; }

    // Zero below min_degree; throws above order.
    const ConstExpr& coeff(int degree) const;
    void set(int degree, ConstExpr c);
    void add(int degree, const ConstExpr& c);

    // Lowest degree with a nonzero coefficient, or order()+1 for the zero series.
    int valuation() const;
    bool is_zero() const { return valuation() > order_; }
    // True iff every coefficient of the wrong parity vanishes.
    bool has_parity(Parity p) const;
    bool mentions(const ConstSymbol& s) const;

    LaurentSeries truncated(int order) const;
    // Re-bases to a higher min_degree; dropped coefficients must be zero.
    LaurentSeries with_min_degree(int min_degree) const;
    // Multiplication by t^k.
    LaurentSeries shifted(int k) const;
    // 1/f for a series whose leading coefficient is a nonzero rational.
    LaurentSeries inverse() const;

    LaurentSeries operator-() const;
    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    LaurentSeries& operator*=(const ConstExpr& c);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(LaurentSeries a, const ConstExpr& c) { return a *= c; }
    friend LaurentSeries operator*(const ConstExpr& c, LaurentSeries a) { return a *= c; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

    // Same truncation window and coefficients.
    bool operator==(const LaurentSeries& o) const;

private:
    int min_degree_;
    int order_;
    Parity parity_;
    std::vector<ConstExpr> coeffs_;
};

LaurentSeries cos_scaled(const Rational& a, int order);
LaurentSeries sin_scaled(const Rational& a, int order);
LaurentSeries exp_scaled(const Rational& a, int order);
// 1/sin(t/2), min_degree -1.
LaurentSeries inv_sin_half(int order);

// t^{2m} -> (2 H_{2m+1} - H_m) t^{2m} for m >= 0, t^{-2} -> 0.
LaurentSeries star(const LaurentSeries& phi);
// sum_{m >= 1} a_{2m} (2 H_{2m-1} - H_{m-1}) for an even series in r.
ConstExpr hash(const LaurentSeries& phi);

// Weights used by star and hash.
Rational star_weight(int m);
Rational hash_weight(int m);

BigReal evaluate(const LaurentSeries& phi, const BigReal& t, const std::optional<BigReal>& logt = std::nullopt);

nlohmann::ordered_json to_json(const LaurentSeries& phi, const std::optional<BigReal>& logt, unsigned digits);

}  // namespace ptorsion::series
