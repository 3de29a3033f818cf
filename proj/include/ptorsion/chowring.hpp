#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "ptorsion/numerics.hpp"
#include "ptorsion/series.hpp"

namespace ptorsion::chowring {

inline constexpr int kDefaultDegree = 12;

// Generators with real degrees, optional nilpotency (g^k = 0 for k >= bound, 0 = free),
// truncated at total degree `cap`.
struct Grading {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<int> nilpotency;
    int cap = kDefaultDegree;

    bool operator==(const Grading&) const = default;
};
using GradingPtr = std::shared_ptr<const Grading>;

// Free truncated ring on c1 (degree 2) and c2 (degree 4).
GradingPtr base_grading(int cap);
GradingPtr make_grading(std::vector<std::string> names, std::vector<int> degrees, int cap,
                        std::vector<int> nilpotency = {});

using Monomial = std::vector<int>;

// Polynomial in the generators of a grading with ConstExpr coefficients.
class BaseClass {
public:
    explicit BaseClass(GradingPtr g);
    static BaseClass constant(GradingPtr g, const ConstExpr& c);
    static BaseClass generator(GradingPtr g, const std::string& name);

    const GradingPtr& grading() const { return g_; }
    const std::map<Monomial, ConstExpr>& terms() const { return terms_; }
    int degree_of(const Monomial& m) const;
    const ConstExpr& coefficient(const Monomial& m) const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const ConstExpr& c);
    // Homogeneous part of the given real degree.
    BaseClass part(int degree) const;
    // Drops terms above `degree`.
    BaseClass dropped_above(int degree) const;
    // Same terms in a grading with a lower cap.
    BaseClass truncated(int cap) const;
    BaseClass pow(unsigned k) const;
    // Ring homomorphism sending generator i to images[i].
    BaseClass substitute(const GradingPtr& target, const std::vector<BaseClass>& images) const;

    BaseClass& operator+=(const BaseClass& o);
    BaseClass& operator-=(const BaseClass& o);
    BaseClass& operator*=(const ConstExpr& c);
    BaseClass operator-() const;
    friend BaseClass operator+(BaseClass a, const BaseClass& b) { return a += b; }
    friend BaseClass operator-(BaseClass a, const BaseClass& b) { return a -= b; }
    friend BaseClass operator*(BaseClass a, const ConstExpr& c) { return a *= c; }
    friend BaseClass operator*(const ConstExpr& c, BaseClass a) { return a *= c; }
    friend BaseClass operator*(const BaseClass& a, const BaseClass& b);
    bool operator==(const BaseClass& o) const;

    // Lowest degree with a nonzero coefficient, or -1 for zero.
    int lowest_degree() const;
    std::string key(const Monomial& m) const;  // "c1^a c2^b"
    std::string to_string() const;

private:
    void require_same(const BaseClass& o) const;
    GradingPtr g_;
    std::map<Monomial, ConstExpr> terms_;
};

enum class RelationSign { Standard, Opposite };

// H*(P(E)) over the base: x = c1(O(1)) with x^2 = -c1 x - c2 (Standard) or x^2 = c1 x - c2
// (Opposite). Bundle classes are carried to degree D + 2 so that push-forwards are valid to D.
struct BundleRing {
    int degree = kDefaultDegree;  // D
    RelationSign sign = RelationSign::Standard;
    GradingPtr grading;           // base grading with cap D + 2
};
using BundleRingPtr = std::shared_ptr<const BundleRing>;
BundleRingPtr make_bundle_ring(int degree, RelationSign sign = RelationSign::Standard);

// a + b x in normal form.
class BundleClass {
public:
    explicit BundleClass(BundleRingPtr ring);
    BundleClass(BundleRingPtr ring, BaseClass a, BaseClass b);
    static BundleClass x(BundleRingPtr ring);
    // Pull-back of a base class.
    static BundleClass pullback(BundleRingPtr ring, const BaseClass& alpha);
    static BundleClass constant(BundleRingPtr ring, const ConstExpr& c);
    // c1(T_pi) = 2x + c1.
    static BundleClass relative_tangent(BundleRingPtr ring);

    const BundleRingPtr& ring() const { return ring_; }
    const BaseClass& a() const { return a_; }
    const BaseClass& b() const { return b_; }

    BundleClass pow(unsigned k) const;
    BundleClass& operator+=(const BundleClass& o);
    BundleClass& operator-=(const BundleClass& o);
    BundleClass& operator*=(const ConstExpr& c);
    friend BundleClass operator+(BundleClass p, const BundleClass& q) { return p += q; }
    friend BundleClass operator-(BundleClass p, const BundleClass& q) { return p -= q; }
    friend BundleClass operator*(BundleClass p, const ConstExpr& c) { return p *= c; }
    friend BundleClass operator*(const BundleClass& p, const BundleClass& q);
    bool operator==(const BundleClass& o) const { return a_ == o.a_ && b_ == o.b_; }

    std::string to_string() const;

private:
    void normalize();
    BundleRingPtr ring_;
    BaseClass a_;
    BaseClass b_;
};

// sum_k coeffs[k] x^k in normal form.
BundleClass reduce(const BundleRingPtr& ring, const std::vector<BaseClass>& coeffs);

// pi_*(a + b x) = b, as a class of degree <= D.
BaseClass fiber_integrate(const BundleClass& q);

enum class CharKind { ChLine, ToddLine, GsRLine };
// ch = exp(ell x); Todd = c/(1 - e^{-c}); gs_R = sum_{m odd} (2 zeta'(-m) + H_m zeta(-m)) c^m/m!.
// `c` must be homogeneous of degree 2; ChLine ignores it and uses ell x.
BundleClass char_series(CharKind kind, const BundleClass& c, const Rational& ell = 0);

// sum_k a_k c^k for a nilpotent class c of positive degree.
BundleClass compose(const std::vector<ConstExpr>& coeffs, const BundleClass& c);
BaseClass compose(const std::vector<ConstExpr>& coeffs, const BaseClass& c);

// c1^2 - 4 c2 in the given grading (which must name c1 and c2).
BaseClass discriminant(const GradingPtr& g);
// sum_m a_{2m} (-1)^m (c1^2 - 4c2)^m for an even series; odd coefficients must vanish.
BaseClass even_series_in_discriminant(const series::LaurentSeries& phi, const GradingPtr& g);
// exp(q c1) in the base.
BaseClass exp_c1(const GradingPtr& g, const Rational& q);

// pi_*(ch(O(ell)) Td(T_pi) R(T_pi)).
BaseClass grr_r_term(int ell, int degree = kDefaultDegree);

struct GrrResidual {
    BaseClass residual;
    int offending_degree = -1;  // lowest degree with a nonzero residual, -1 if none
};
// grr_r_term - e^{-ell c1/2} times the R-summand of T_ell evaluated at c1^2 - 4c2.
GrrResidual check_grr_cancellation(int ell, int degree = kDefaultDegree);

struct FiberIdentityReport {
    // pi_*(c^{2m}) for m = 0..max_m, expected 0.
    std::vector<BaseClass> even;
    // pi_*(c^{2m+1}) - 2 (c1^2 - 4c2)^m, expected 0.
    std::vector<BaseClass> odd;
    bool holds() const;
};
FiberIdentityReport check_fiber_identities(int max_m, RelationSign sign, int degree = kDefaultDegree);

nlohmann::ordered_json to_json(const BaseClass& c);
nlohmann::ordered_json to_json(const BundleClass& c);

}  // namespace ptorsion::chowring
