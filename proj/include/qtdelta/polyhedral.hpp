#pragma once

// Rational polyhedral cones (double description) and fans with union
// semantics.

#include "qtdelta/arith.hpp"
#include "qtdelta/lattice.hpp"

#include <optional>
#include <vector>

namespace qtdelta {

/// Closed rational cone {x : <e,x> = 0 for e in eq, <a,x> >= 0 for a in ineq}.
///
/// Both representations are kept in canonical form: equalities are the
/// primitive integer rows of the RREF basis of span(C)^perp, facet normals are
/// reduced modulo the equalities, made primitive and sorted; lineality is the
/// RREF basis of the lineality space and rays are reduced modulo it. Two cones
/// are equal as point sets iff they compare equal.
class Cone {
public:
    Cone(std::size_t ambient_dim, const std::vector<RatVector>& equalities,
         const std::vector<RatVector>& inequalities);

    static Cone full(std::size_t n);
    static Cone origin(std::size_t n);
    /// Cone generated by rays (nonnegative combinations) plus a linear span.
    static Cone from_generators(std::size_t n, const std::vector<RatVector>& rays,
                                const std::vector<RatVector>& lineality);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return dim_; }

    const std::vector<IntVector>& equalities() const { return equalities_; }
    const std::vector<IntVector>& inequalities() const { return inequalities_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }

    bool contains(const RatVector& p) const;
    bool contains(const Cone& other) const;
    Subspace span() const;
    /// Sum of the extreme rays; lies in the relative interior.
    RatVector interior_point() const;
    /// Constraints active at x kept, inactive ones dropped. Requires contains(x).
    Cone tangent_cone(const RatVector& x) const;
    /// {y : P y in C}; P has ambient_dim() rows.
    Cone preimage(const RatMatrix& p) const;
    Cone intersect_halfspace(const RatVector& normal) const;

    friend bool operator==(const Cone&, const Cone&) = default;
    friend bool operator<(const Cone& a, const Cone& b);

private:
    Cone() = default;
    void build(const std::vector<RatVector>& equalities, const std::vector<RatVector>& inequalities);

    std::size_t ambient_ = 0;
    std::size_t dim_ = 0;
    std::vector<IntVector> equalities_;
    std::vector<IntVector> inequalities_;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
};

/// Finite union of cones. Only maximal cones are stored, in sorted order.
class Fan {
public:
    explicit Fan(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}
    Fan(std::size_t ambient_dim, std::vector<Cone> cones);

    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<Cone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }

    friend bool operator==(const Fan&, const Fan&) = default;

private:
    std::size_t ambient_;
    std::vector<Cone> cones_;
};

int cone_dim(const Cone& c);
/// -1 for the empty fan.
int fan_dim(const Fan& f);

bool member(const Cone& c, const RatVector& p);
bool member(const Fan& f, const RatVector& p);

/// {y : x + εy in f for all small ε >= 0}; empty when x is not in f.
Fan local_cone(const Fan& f, const RatVector& x);

/// {y : P y in f}. P maps the new ambient space onto the fan's ambient space.
Fan preimage(const Fan& f, const RatMatrix& p);

/// A point of `a` outside `b`, if one exists.
std::optional<RatVector> fan_difference_witness(const Fan& a, const Fan& b);
bool fan_subset(const Fan& a, const Fan& b);
/// Point-set equality of the two unions.
bool fan_equal(const Fan& a, const Fan& b);

std::vector<Subspace> carrier_spaces(const Fan& f);
/// Union of the cones of top dimension.
Fan delta_star(const Fan& f);

}  // namespace qtdelta
