#include "qtdelta/lattice.hpp"

#include <algorithm>

namespace qtdelta {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= k * m(source, j);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

IntMatrix clear_denominators(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = primitive_integer(m.row(i));
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = row[j];
    }
    return out;
}

IntMatrix nonzero_rows(const IntMatrix& m) {
    IntMatrix out(0, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = m.row(i);
        if (!is_zero(r)) out.append_row(r);
    }
    return out;
}

}  // namespace

HermiteResult hnf(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < h.cols() && pivot_row < h.rows(); ++col) {
        // Euclid on the column until a single nonzero entry remains at pivot_row.
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = pivot_row; i < h.rows(); ++i) {
                if (h(i, col) == 0) continue;
                if (best == h.rows() || abs(h(i, col)) < abs(h(best, col))) best = i;
            }
            if (best == h.rows()) break;
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            bool done = true;
            for (std::size_t i = pivot_row + 1; i < h.rows(); ++i) {
                if (h(i, col) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivot_row, col).get_mpz_t());
                add_row_multiple(h, i, pivot_row, q);
                add_row_multiple(u, i, pivot_row, q);
                if (h(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h(pivot_row, col) == 0) continue;
        if (h(pivot_row, col) < 0) {
            negate_row(h, pivot_row);
            negate_row(u, pivot_row);
        }
        for (std::size_t i = 0; i < pivot_row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivot_row, col).get_mpz_t());
            add_row_multiple(h, i, pivot_row, q);
            add_row_multiple(u, i, pivot_row, q);
        }
        ++pivot_row;
    }
    return {std::move(h), std::move(u)};
}

RatMatrix rref(const RatMatrix& m) {
    RatMatrix a = m;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t p = r;
        while (p < a.rows() && a(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        Rational inv = 1 / a(r, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, col) == 0) continue;
            Rational k = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= k * a(r, j);
        }
        ++r;
    }
    RatMatrix out(0, a.cols());
    for (std::size_t i = 0; i < r; ++i) out.append_row(a.row(i));
    return out;
}

RatMatrix nullspace(const RatMatrix& m) {
    const std::size_t n = m.cols();
    RatMatrix e = rref(m);
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < e.rows(); ++i) {
        std::size_t j = 0;
        while (e(i, j) == 0) ++j;
        pivot_of_row.push_back(j);
        is_pivot[j] = true;
    }
    RatMatrix basis(0, n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows(); ++i) v[pivot_of_row[i]] = -e(i, f);
        basis.append_row(v);
    }
    return rref(basis);
}

// ---------------------------------------------------------------------------

Sublattice::Sublattice(std::size_t ambient_rank) : ambient_(ambient_rank), basis_(0, ambient_rank) {}

Sublattice::Sublattice(std::size_t ambient_rank, const IntMatrix& generators) : ambient_(ambient_rank) {
    if (generators.rows() > 0 && generators.cols() != ambient_rank)
        throw DimensionError("sublattice generators do not match ambient rank");
    if (generators.rows() == 0) {
        basis_ = IntMatrix(0, ambient_rank);
        return;
    }
    basis_ = nonzero_rows(hnf(generators).H);
}

Sublattice Sublattice::full(std::size_t n) { return Sublattice(n, IntMatrix::identity(n)); }

std::optional<IntVector> Sublattice::coordinates(const IntVector& v) const {
    if (v.size() != ambient_) throw DimensionError("vector does not match ambient rank");
    IntVector rest = v;
    IntVector c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        std::size_t p = 0;
        while (basis_(i, p) == 0) ++p;
        // entries left of the pivot must already be cleared
        for (std::size_t j = 0; j < p; ++j)
            if (rest[j] != 0) return std::nullopt;
        if (!mpz_divisible_p(rest[p].get_mpz_t(), basis_(i, p).get_mpz_t())) return std::nullopt;
        c[i] = rest[p] / basis_(i, p);
        for (std::size_t j = p; j < ambient_; ++j) rest[j] -= c[i] * basis_(i, j);
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
}

bool Sublattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

// ---------------------------------------------------------------------------

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace::Subspace(std::size_t ambient_dim, const RatMatrix& spanning_rows) : ambient_(ambient_dim) {
    if (spanning_rows.rows() > 0 && spanning_rows.cols() != ambient_dim)
        throw DimensionError("subspace generators do not match ambient dimension");
    basis_ = spanning_rows.rows() == 0 ? RatMatrix(0, ambient_dim) : rref(spanning_rows);
}

Subspace Subspace::full(std::size_t n) { return Subspace(n, RatMatrix::identity(n)); }

Subspace Subspace::span(std::size_t n, const std::vector<RatVector>& vectors) {
    return Subspace(n, RatMatrix::from_rows(vectors, n));
}

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        std::size_t j = 0;
        while (basis_(i, j) == 0) ++j;
        p.push_back(j);
    }
    return p;
}

std::optional<RatVector> Subspace::coordinates(const RatVector& v) const {
    if (v.size() != ambient_) throw DimensionError("vector does not match ambient dimension");
    auto piv = pivots();
    RatVector c(piv.size());
    RatVector rest = v;
    for (std::size_t i = 0; i < piv.size(); ++i) {
        c[i] = v[piv[i]];
        for (std::size_t j = 0; j < ambient_; ++j) rest[j] -= c[i] * basis_(i, j);
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
}

bool Subspace::contains(const RatVector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("subspaces in different ambient spaces");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim(); ++j)
            if (a.basis()(i, j) != b.basis()(i, j)) return a.basis()(i, j) < b.basis()(i, j);
    return false;
}

// ---------------------------------------------------------------------------

Sublattice kernel_lattice(const IntMatrix& m) {
    const std::size_t n = m.cols();
    auto [h, u] = hnf(m.transpose());
    IntMatrix gens(0, n);
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (is_zero(h.row(i))) gens.append_row(u.row(i));
    return Sublattice(n, gens);
}

Sublattice kernel_lattice(const RatMatrix& m) { return kernel_lattice(clear_denominators(m)); }

Sublattice kernel_lattice(const RatVector& functional) {
    return kernel_lattice(RatMatrix::from_rows({functional}));
}

Sublattice saturate(const Sublattice& l) {
    if (l.rank() == 0) return l;
    RatMatrix complement = nullspace(to_rational(l.basis()));
    return kernel_lattice(IntMatrix(clear_denominators(complement)));
}

bool is_saturated(const Sublattice& l) { return saturate(l) == l; }

bool commensurable(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw DimensionError("commensurable: ambient mismatch");
    return saturate(a) == saturate(b);
}

Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw DimensionError("lattice_intersection: ambient mismatch");
    const std::size_t n = a.ambient_rank();
    IntMatrix stacked(0, n);
    for (std::size_t i = 0; i < a.rank(); ++i) stacked.append_row(a.basis().row(i));
    for (std::size_t i = 0; i < b.rank(); ++i) stacked.append_row(b.basis().row(i));
    if (stacked.rows() == 0) return Sublattice(n);
    // (x, y) with x·A = -y·B  <=>  (x, y)·[A; B] = 0
    Sublattice rel = kernel_lattice(stacked.transpose());
    IntMatrix gens(0, n);
    for (std::size_t k = 0; k < rel.rank(); ++k) {
        IntVector v(n);
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] += rel.basis()(k, i) * a.basis()(i, j);
        gens.append_row(v);
    }
    return Sublattice(n, gens);
}

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw DimensionError("lattice_sum: ambient mismatch");
    IntMatrix stacked(0, a.ambient_rank());
    for (std::size_t i = 0; i < a.rank(); ++i) stacked.append_row(a.basis().row(i));
    for (std::size_t i = 0; i < b.rank(); ++i) stacked.append_row(b.basis().row(i));
    return Sublattice(a.ambient_rank(), stacked);
}

Subspace span_of(const Sublattice& l) { return Subspace(l.ambient_rank(), to_rational(l.basis())); }

Sublattice integer_points(const Subspace& v) {
    if (v.dim() == 0) return Sublattice(v.ambient_dim());
    return kernel_lattice(nullspace(v.basis()));
}

Subspace subspace_kernel(const RatMatrix& m) { return Subspace(m.cols(), nullspace(m)); }

Subspace subspace_image(const RatMatrix& m) { return Subspace(m.rows(), m.transpose()); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("subspace_sum: ambient mismatch");
    RatMatrix stacked = a.basis();
    for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.basis().row(i));
    return Subspace(a.ambient_dim(), stacked);
}

Subspace orthogonal_complement(const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(s.ambient_dim());
    return Subspace(s.ambient_dim(), nullspace(s.basis()));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("subspace_intersection: ambient mismatch");
    return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)));
}

}  // namespace qtdelta
