#include "qtdelta/delta.hpp"

#include "qtdelta/rng.hpp"

#include <stdexcept>

namespace qtdelta {

namespace {

IntVector to_integers(const Exponent& a) {
    IntVector v;
    v.reserve(a.size());
    for (auto x : a) v.emplace_back(static_cast<long>(x));
    return v;
}

Exponent to_exponent(const IntVector& v) {
    Exponent e;
    e.reserve(v.size());
    for (const auto& x : v) {
        if (!x.fits_slong_p()) throw std::overflow_error("exponent overflow");
        e.push_back(x.get_si());
    }
    return e;
}

// Rewrites an element whose support lies in `lattice` in the lattice basis.
QTorusElement to_lattice_coordinates(const QTorusElement& e, const Sublattice& lattice) {
    QTorusElement out(lattice.rank(), e.params());
    for (const auto& [a, coeff] : e.terms()) {
        auto c = lattice.coordinates(to_integers(a));
        if (!c) throw std::invalid_argument("support point outside the sublattice");
        out.add_term(to_exponent(*c), coeff);
    }
    return out;
}

FanComparison compare(Fan lhs, Fan rhs) {
    FanComparison r{std::move(lhs), std::move(rhs), false, std::nullopt};
    r.witness = fan_difference_witness(r.lhs, r.rhs);
    if (!r.witness) r.witness = fan_difference_witness(r.rhs, r.lhs);
    r.equal = !r.witness.has_value();
    return r;
}

}  // namespace

OneRelatorModule::OneRelatorModule(QTorusElement r, CocycleForm c) : relator(std::move(r)), cocycle(std::move(c)) {
    if (relator.is_zero()) throw std::invalid_argument("relator must be nonzero");
    if (relator.rank() != cocycle.rank || relator.params() != cocycle.params)
        throw DimensionError("relator and cocycle disagree on rank or parameters");
}

OneRelatorModule::OneRelatorModule(QTorusElement r)
    : OneRelatorModule(r, CocycleForm::trivial(r.rank(), r.params())) {}

std::size_t character_rank(const Character& chi) {
    return chi.size() - kernel_lattice(chi).rank();
}

Fan delta_set(const QTorusElement& relator) {
    const std::size_t n = relator.rank();
    std::vector<RatVector> pts;
    for (const auto& a : relator.support()) pts.push_back(to_rational(to_integers(a)));

    std::vector<Cone> cones;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            RatVector tie(n);
            for (std::size_t k = 0; k < n; ++k) tie[k] = pts[i][k] - pts[j][k];
            std::vector<RatVector> below;
            for (std::size_t c = 0; c < pts.size(); ++c) {
                if (c == i || c == j) continue;
                RatVector d(n);
                for (std::size_t k = 0; k < n; ++k) d[k] = pts[c][k] - pts[i][k];
                below.push_back(std::move(d));
            }
            cones.emplace_back(n, std::vector<RatVector>{tie}, below);
        }
    }
    return Fan(n, std::move(cones));
}

Fan delta_set(const OneRelatorModule& m) { return delta_set(m.relator); }

InitialForm initial_form(const OneRelatorModule& m, const Character& chi) {
    if (chi.size() != m.rank()) throw DimensionError("character has wrong length");
    const Rational lowest = chi_min(m.relator, chi);

    QTorusElement leading(m.rank(), m.relator.params());
    std::optional<Exponent> shift;
    for (const auto& [a, coeff] : m.relator.terms()) {
        if (dot(chi, to_rational(to_integers(a))) != lowest) continue;
        if (!shift) shift = a;  // map order is lexicographic
        leading.add_term(a, coeff);
    }
    QTorusElement normalized = multiply(inverse_monomial(*shift, m.cocycle), leading, m.cocycle);

    Sublattice kernel = kernel_lattice(chi);
    return InitialForm{to_lattice_coordinates(normalized, kernel), kernel, m.cocycle.restrict_to(kernel.basis()),
                       *shift};
}

OneRelatorModule trailing_module(const OneRelatorModule& m, const Character& chi) {
    InitialForm f = initial_form(m, chi);
    return OneRelatorModule(std::move(f.relator), std::move(f.cocycle));
}

Fan tc_delta(const OneRelatorModule& m, const Character& chi) { return delta_set(initial_form(m, chi).relator); }

RatMatrix restriction_matrix(const Sublattice& b) { return to_rational(b.basis()); }

FanComparison check_lemma31(const OneRelatorModule& m, const Character& chi) {
    Fan lhs = local_cone(delta_star(delta_set(m)), chi);
    Fan rhs = preimage(delta_star(tc_delta(m, chi)), restriction_matrix(kernel_lattice(chi)));
    return compare(std::move(lhs), std::move(rhs));
}

DimIdentityReport check_dim_identity(const OneRelatorModule& m, const Character& chi) {
    Fan delta = delta_set(m);
    if (!member(delta_star(delta), chi)) throw std::invalid_argument("character is not in Δ*(M)");
    DimIdentityReport r;
    r.character_rank = character_rank(chi);
    r.tc_dim = fan_dim(tc_delta(m, chi));
    r.delta_dim = fan_dim(delta);
    r.holds = static_cast<int>(r.character_rank) + r.tc_dim == r.delta_dim;
    return r;
}

FanComparison check_induced(const OneRelatorModule& m, const Sublattice& a1, const Character& chi) {
    if (a1.ambient_rank() != m.rank()) throw DimensionError("sublattice has wrong ambient rank");
    if (!is_saturated(a1)) throw std::invalid_argument("sublattice must be isolated");
    if (chi.size() != m.rank()) throw DimensionError("character has wrong length");

    const RatMatrix embed = to_rational(a1.basis());
    OneRelatorModule inner(to_lattice_coordinates(m.relator, a1), m.cocycle.restrict_to(a1.basis()));
    Character chi1 = times_col(embed, chi);

    Sublattice kernel = kernel_lattice(chi);
    Sublattice kernel1 = kernel_lattice(chi1);
    // Basis of B ∩ A1 written in the basis of B.
    IntMatrix meet = kernel1.basis() * a1.basis();
    RatMatrix restrict_b(meet.rows(), kernel.rank());
    for (std::size_t i = 0; i < meet.rows(); ++i) {
        auto c = kernel.coordinates(meet.row(i));
        if (!c) throw std::logic_error("B ∩ A1 not contained in B");
        for (std::size_t j = 0; j < kernel.rank(); ++j) restrict_b(i, j) = (*c)[j];
    }

    Fan lhs = tc_delta(m, chi);
    Fan rhs = preimage(tc_delta(inner, chi1), restrict_b);
    return compare(std::move(lhs), std::move(rhs));
}

bool generic_for(const OneRelatorModule& m, const Character& chi, const Subspace& v) {
    if (!v.contains(chi)) throw std::invalid_argument("character does not lie in V");
    Fan lc = local_cone(delta_star(delta_set(m)), chi);
    for (const auto& c : lc.cones())
        if (!v.contains(c.span())) return false;
    return true;
}

Character sample_delta_point(const OneRelatorModule& m, std::size_t index, std::uint64_t seed) {
    Fan f = delta_set(m);
    if (index >= f.cones().size()) throw std::out_of_range("cone index out of range");
    const Cone& c = f.cones()[index];
    Rng rng = Rng(seed).split("sample_delta_point").split(index);

    Character p(m.rank());
    if (!c.rays().empty()) {
        p = c.interior_point();
        Rational count(static_cast<long>(c.rays().size()));
        for (auto& x : p) x /= count;
    }
    for (const auto& l : c.lineality()) {
        const long sign = rng.coin() ? 1 : -1;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += sign * l[i];
    }
    return p;
}

}  // namespace qtdelta
