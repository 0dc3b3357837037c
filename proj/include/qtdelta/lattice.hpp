#pragma once

// Exact integer and rational linear algebra: Hermite normal form, sublattices
// of Z^n, subspaces of Q^n.

#include "qtdelta/arith.hpp"

#include <compare>
#include <optional>

namespace qtdelta {

struct HermiteResult {
    IntMatrix H;  // row Hermite normal form of the input, same shape
    IntMatrix U;  // unimodular, H = U * M
};

/// Row-style Hermite normal form. Pivots are positive, entries above a pivot
/// lie in [0, pivot), zero rows are moved to the bottom.
HermiteResult hnf(const IntMatrix& m);

/// Reduced row echelon form; zero rows dropped.
RatMatrix rref(const RatMatrix& m);

/// Basis (as rows, RREF) of {x : m x = 0}.
RatMatrix nullspace(const RatMatrix& m);

/// A subgroup of Z^n, stored by the nonzero rows of its Hermite normal form.
class Sublattice {
public:
    explicit Sublattice(std::size_t ambient_rank = 0);
    Sublattice(std::size_t ambient_rank, const IntMatrix& generators);

    static Sublattice full(std::size_t n);

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }

    bool contains(const IntVector& v) const;
    // Integer coordinates of v in the stored basis, if v lies in the lattice.
    std::optional<IntVector> coordinates(const IntVector& v) const;

    friend bool operator==(const Sublattice&, const Sublattice&) = default;

private:
    std::size_t ambient_;
    IntMatrix basis_;
};

/// A subspace of Q^n stored by its RREF basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0);
    Subspace(std::size_t ambient_dim, const RatMatrix& spanning_rows);

    static Subspace full(std::size_t n);
    static Subspace span(std::size_t n, const std::vector<RatVector>& vectors);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const RatMatrix& basis() const { return basis_; }
    std::vector<RatVector> vectors() const { return basis_.to_rows(); }

    bool contains(const RatVector& v) const;
    bool contains(const Subspace& other) const;

    // Coordinates of v in the stored basis, if v lies in the subspace.
    std::optional<RatVector> coordinates(const RatVector& v) const;

    // Pivot columns of the RREF basis.
    std::vector<std::size_t> pivots() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_;
    RatMatrix basis_;
};

bool operator<(const Subspace& a, const Subspace& b);

/// Isolated closure {a : k a in L for some k >= 1}.
Sublattice saturate(const Sublattice& l);
bool is_saturated(const Sublattice& l);
bool commensurable(const Sublattice& a, const Sublattice& b);

/// Saturated lattice {x in Z^n : m x = 0}; n = m.cols().
Sublattice kernel_lattice(const IntMatrix& m);
Sublattice kernel_lattice(const RatMatrix& m);
/// Kernel of a single rational functional (a character).
Sublattice kernel_lattice(const RatVector& functional);

Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b);
Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);

/// Rational span of a lattice.
Subspace span_of(const Sublattice& l);
/// Saturated lattice V ∩ Z^n.
Sublattice integer_points(const Subspace& v);

/// {x : m x = 0}
Subspace subspace_kernel(const RatMatrix& m);
/// Column space {m x}.
Subspace subspace_image(const RatMatrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);
/// {y : <y, v> = 0 for all v in s}
Subspace orthogonal_complement(const Subspace& s);

}  // namespace qtdelta
