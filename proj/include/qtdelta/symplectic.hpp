#pragma once

// Alternating bilinear maps φ: V x V -> W over Q with V = Q^n, W = Q^s, and
// their symplectic bases V = V_0 ⊕ V_1 ⊕ ... ⊕ V_t.

#include "qtdelta/lattice.hpp"
#include "qtdelta/torus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qtdelta {

struct AlternatingMapQ {
    std::size_t n = 0;
    std::size_t s = 0;
    std::vector<RatMatrix> phi;

    AlternatingMapQ() = default;
    /// Throws std::invalid_argument unless every matrix is antisymmetric.
    AlternatingMapQ(std::size_t n, std::size_t s, std::vector<RatMatrix> forms);
    static AlternatingMapQ from_integral(const AlternatingFormZ& form);

    RatVector value(const RatVector& u, const RatVector& v) const;
    /// Σ t_k Φ_k
    RatMatrix pencil(const RatVector& t) const;
};

Subspace center(const AlternatingMapQ& phi);
Subspace centralizer(const AlternatingMapQ& phi, const Subspace& s);
bool is_abelian(const AlternatingMapQ& phi, const Subspace& u);
/// Codimension of the centraliser of v, i.e. the rank of u -> φ(v, u).
std::size_t centralizer_codim(const AlternatingMapQ& phi, const RatVector& v);
/// Span of φ(U, U) in W.
Subspace image_span(const AlternatingMapQ& phi, const Subspace& u);
/// ζ(X) = X ∩ C(X).
Subspace relative_center(const AlternatingMapQ& phi, const Subspace& x);

struct SymplecticBase {
    Subspace v0;
    std::vector<Subspace> blocks;
    /// lines[i] spans φ(V_i, V_i).
    std::vector<RatVector> lines;
};

struct BaseReport {
    bool direct_sum = false;       // V = V_0 ⊕ ... ⊕ V_t
    bool center_ok = false;        // (1) V_0 is the centre
    bool orthogonal = false;       // (2) φ(V_i, V_j) = 0 for i != j
    bool blocks_ok = false;        // (3) dim φ(V_i, V_i) = 1 and V_i has trivial centre
    bool distinct_lines = false;   // (4) φ(V_i, V_i) pairwise distinct
    bool lines_match = false;      // declared lines span φ(V_i, V_i)
    std::vector<std::string> failures;

    bool passed() const {
        return direct_sum && center_ok && orthogonal && blocks_ok && distinct_lines && lines_match;
    }
};

BaseReport verify_symplectic_base(const AlternatingMapQ& phi, const SymplecticBase& candidate);

struct NoBaseFound {
    std::size_t attempts = 0;
    std::string reason;
    std::optional<BaseReport> last_report;
};

using BaseResult = std::variant<SymplecticBase, NoBaseFound>;

/// Pencil-eigenspace construction. For random t, t' the operator
/// Φ(t)^{-1} Φ(t') restricted to a complement of the centre acts on block V_i
/// as the scalar <t', w_i> / <t, w_i>, so its rational eigenspaces are the
/// blocks. Each draw is certified by verify_symplectic_base; after `retries`
/// failed draws the result is NoBaseFound.
BaseResult compute_symplectic_base(const AlternatingMapQ& phi, std::uint64_t seed, std::size_t retries = 8);

/// [U ∩ V_1, ..., U ∩ V_t] for an abelian U of dimension >= dim V / 2.
/// Throws std::invalid_argument if the base has a nontrivial centre or fails
/// verification, if U is not abelian, or if U is too small.
std::vector<Subspace> decompose_abelian(const AlternatingMapQ& phi, const SymplecticBase& base, const Subspace& u);

struct AmpleReport {
    std::size_t m = 0;
    std::size_t dim_x = 0;
    std::size_t dim_center = 0;
    bool dim_condition = false;     // dim X + dim ζ(X) = 2m
    bool cond1_applicable = false;  // dim X / ζ(X) > 2
    bool cond1 = false;
    bool cond2 = false;
    std::vector<Subspace> probes;
    std::vector<std::string> failures;

    bool passed() const { return dim_condition && cond1 && cond2; }
};

/// Checks the ample-abelian-subspace conditions for one subspace X and family
/// Ω. Condition (2) quantifies over all abelian subspaces and is tested only
/// on `probes` (or a seeded family when none are given); the report lists the
/// probes used. Throws std::invalid_argument on a malformed Ω or probe.
AmpleReport check_ample(const AlternatingMapQ& phi, const Subspace& x, const std::vector<Subspace>& omega,
                        const std::optional<std::vector<Subspace>>& probes = std::nullopt,
                        std::uint64_t seed = 0);

}  // namespace qtdelta
