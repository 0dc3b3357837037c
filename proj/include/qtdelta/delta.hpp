#pragma once

// Δ-sets of cyclic one-relator modules M = FA / r·FA, initial forms and the
// local-cone identities relating them.

#include "qtdelta/polyhedral.hpp"
#include "qtdelta/torus.hpp"

#include <cstdint>
#include <optional>

namespace qtdelta {

/// A character of Z^n with rational values.
using Character = RatVector;

struct OneRelatorModule {
    QTorusElement relator;
    CocycleForm cocycle;

    /// Throws std::invalid_argument on a zero relator or mismatched ranks.
    OneRelatorModule(QTorusElement r, CocycleForm c);
    explicit OneRelatorModule(QTorusElement r);

    std::size_t rank() const { return relator.rank(); }
};

/// rank of χ(A): 0 for the zero character, 1 otherwise.
std::size_t character_rank(const Character& chi);

/// Union over pairs a != b of the support of
/// {χ : χ(a) = χ(b) <= χ(c) for all c in the support}.
Fan delta_set(const QTorusElement& relator);
Fan delta_set(const OneRelatorModule& m);

struct InitialForm {
    /// r_χ rewritten in coordinates of the kernel basis.
    QTorusElement relator;
    /// B = ker χ, saturated, HNF basis.
    Sublattice kernel;
    /// Cocycle restricted to B.
    CocycleForm cocycle;
    /// Support point of r whose inverse was multiplied on the left.
    Exponent shift;
};

InitialForm initial_form(const OneRelatorModule& m, const Character& chi);

/// Trailing coefficient module TC_χ(M) as a one-relator module over B.
OneRelatorModule trailing_module(const OneRelatorModule& m, const Character& chi);

/// Δ(TC_χ(M)) in B*, coordinates w.r.t. the kernel basis.
Fan tc_delta(const OneRelatorModule& m, const Character& chi);

/// Matrix of the restriction A* -> B* for the given basis (rows of the basis).
RatMatrix restriction_matrix(const Sublattice& b);

struct FanComparison {
    Fan lhs;
    Fan rhs;
    bool equal = false;
    /// Point in exactly one of the two sides when they differ.
    std::optional<RatVector> witness;
};

/// LC_χ(Δ*(M)) against π_B^{-1}(Δ*(TC_χ(M))).
FanComparison check_lemma31(const OneRelatorModule& m, const Character& chi);

struct DimIdentityReport {
    std::size_t character_rank = 0;
    int tc_dim = -1;
    int delta_dim = -1;
    bool holds = false;
};

/// rank(χ) + dim Δ(TC_χ(M)) = dim Δ(M). Throws if χ is not in Δ*(M).
DimIdentityReport check_dim_identity(const OneRelatorModule& m, const Character& chi);

/// Induced module law: the relator has support in the saturated sublattice
/// `a1`; compares Δ(TC_χ) of the induced module with the pullback of
/// Δ(TC_{χ|A1}) along the restriction B* -> (B ∩ A1)*.
/// Throws if the support is outside `a1` or `a1` is not saturated.
FanComparison check_induced(const OneRelatorModule& m, const Sublattice& a1, const Character& chi);

/// True iff every cone of LC_χ(Δ*(M)) spans a subspace of V. Throws if χ ∉ V.
bool generic_for(const OneRelatorModule& m, const Character& chi, const Subspace& v);

/// Deterministic rational point in the relative interior of cone `index` of
/// delta_set(m). Throws std::out_of_range for a bad index.
Character sample_delta_point(const OneRelatorModule& m, std::size_t index, std::uint64_t seed);

}  // namespace qtdelta
