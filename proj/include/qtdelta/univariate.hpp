#pragma once

// Dense univariate polynomials over Q, enough for characteristic polynomials
// and exact rational root extraction.

#include "qtdelta/arith.hpp"

#include <optional>
#include <vector>

namespace qtdelta {

/// Coefficients from the constant term upward; no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const;
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

struct DivMod {
    UPoly quotient;
    UPoly remainder;
};
DivMod divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Characteristic polynomial det(xI - M), by Faddeev-LeVerrier.
UPoly charpoly(const RatMatrix& m);

/// Distinct rational roots, ascending. Real roots are isolated by Sturm
/// sequences and bisection; each isolated root is tested against the simplest
/// rational in an interval short enough to hold at most one candidate.
std::vector<Rational> rational_roots(const UPoly& p);

/// Simplest rational in the closed interval [lo, hi]: smallest denominator,
/// then smallest absolute value.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Inverse over Q, or nullopt for a singular matrix.
std::optional<RatMatrix> inverse(const RatMatrix& m);

}  // namespace qtdelta
