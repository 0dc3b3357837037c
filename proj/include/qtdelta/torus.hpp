#pragma once

// Quantum torus F A over F = Q(q_1, ..., q_s): monomials x^a, a in Z^n, with
// x^a x^b = (prod_k q_k^{a^T B_k b}) x^{a+b}.

#include "qtdelta/arith.hpp"
#include "qtdelta/lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qtdelta {

/// Lattice or parameter exponent. Arithmetic on exponents is overflow-checked.
using Exponent = std::vector<std::int64_t>;

/// Laurent polynomial in q_1..q_s with rational coefficients, keyed by the
/// q-exponent. Never stores a zero coefficient.
using Coefficient = std::map<Exponent, Rational>;

class QTorusElement {
public:
    QTorusElement(std::size_t rank = 0, std::size_t params = 0) : rank_(rank), params_(params) {}

    static QTorusElement one(std::size_t rank, std::size_t params);
    static QTorusElement monomial(std::size_t rank, std::size_t params, Exponent a, Rational c = 1,
                                  Exponent qexp = {});

    std::size_t rank() const { return rank_; }
    std::size_t params() const { return params_; }
    const std::map<Exponent, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c * q^qexp * x^a.
    void add_term(const Exponent& a, const Exponent& qexp, const Rational& c);
    void add_term(const Exponent& a, const Coefficient& coeff);

    /// Sorted support.
    std::vector<Exponent> support() const;

    friend QTorusElement operator+(const QTorusElement& a, const QTorusElement& b);
    friend bool operator==(const QTorusElement&, const QTorusElement&) = default;

private:
    std::size_t rank_;
    std::size_t params_;
    std::map<Exponent, Coefficient> terms_;
};

/// 2-cocycle given by bilinear forms B_1..B_s on Z^n.
struct CocycleForm {
    std::size_t rank = 0;
    std::size_t params = 0;
    std::vector<IntMatrix> B;

    CocycleForm() = default;
    CocycleForm(std::size_t rank, std::size_t params, std::vector<IntMatrix> forms);
    static CocycleForm trivial(std::size_t rank, std::size_t params);

    /// (a^T B_k b)_k
    Exponent twist(const Exponent& a, const Exponent& b) const;
    /// Pullback along the rows of `basis`: B'_k = P B_k P^T.
    CocycleForm restrict_to(const IntMatrix& basis) const;

    friend bool operator==(const CocycleForm&, const CocycleForm&) = default;
};

/// Alternating integer forms Phi_1..Phi_s on Z^n.
struct AlternatingFormZ {
    std::size_t rank = 0;
    std::size_t params = 0;
    std::vector<IntMatrix> phi;

    AlternatingFormZ() = default;
    /// Throws std::invalid_argument unless every matrix is antisymmetric.
    AlternatingFormZ(std::size_t rank, std::size_t params, std::vector<IntMatrix> forms);

    IntVector value(const IntVector& a, const IntVector& b) const;
    AlternatingFormZ restrict_to(const IntMatrix& basis) const;

    friend bool operator==(const AlternatingFormZ&, const AlternatingFormZ&) = default;
};

QTorusElement multiply(const QTorusElement& a, const QTorusElement& b, const CocycleForm& c);

/// Two-sided inverse of the unit x^a: q^{a^T B a} x^{-a}.
QTorusElement inverse_monomial(const Exponent& a, const CocycleForm& c);

AlternatingFormZ commutator_form(const CocycleForm& c);

/// min over Supp(alpha) of chi(a). Throws on the zero element.
Rational chi_min(const QTorusElement& alpha, const RatVector& chi);

/// {a : Phi_k a = 0 for all k}; F·ζ(A) is the centre of FA.
Sublattice center_lattice(const AlternatingFormZ& form);

bool is_commutative(const AlternatingFormZ& form, const Sublattice& b);

/// Subgroup of Z^s generated by phi(b_i, b_j) over basis pairs of B.
Sublattice cocycle_image(const AlternatingFormZ& form, const Sublattice& b);

struct Theorem42Report {
    bool commuting_parts = false;      // (1) phi(A_i, A_j) = 0 for i != j
    bool trivial_centres = false;      // (2) centre of F A_i is F
    bool cyclic_images = false;        // (3) each image has rank 1
    bool noncommensurable = false;     // (4) saturated images pairwise distinct
    bool finite_index = false;         // sum of A_i has finite index in Z^n
    std::vector<Sublattice> images;

    bool passed() const { return commuting_parts && trivial_centres && cyclic_images && noncommensurable; }
};

/// Audits a decomposition A_1 + ... + A_t against the structure conditions.
/// Throws std::invalid_argument if the parts are not independent.
Theorem42Report verify_theorem42(const AlternatingFormZ& form, const std::vector<Sublattice>& parts);

}  // namespace qtdelta
