#pragma once

// Class-2 nilpotent commutator data and the decomposition of its commutator
// form into Heisenberg and cyclic factors.

#include "qtdelta/symplectic.hpp"
#include "qtdelta/torus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtdelta {

/// Generators g_1..g_n, central generators z_1..z_s and
/// [g_a, g_b] = prod_k z_k^{c_k(a, b)}.
class Class2Presentation {
public:
    Class2Presentation(std::vector<std::string> generators, std::vector<std::string> central);

    std::size_t size() const { return generators_.size(); }
    std::size_t central_size() const { return central_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<std::string>& central() const { return central_; }

    /// Sets [g_a, g_b] and, implicitly, [g_b, g_a] = its inverse.
    /// Throws std::invalid_argument for a == b with a nonzero value.
    void set_commutator(std::size_t a, std::size_t b, const IntVector& exps);
    const IntVector& commutator(std::size_t a, std::size_t b) const;

    std::size_t generator_index(const std::string& name) const;

private:
    std::vector<std::string> generators_;
    std::vector<std::string> central_;
    std::vector<std::vector<IntVector>> table_;
};

/// <x_1..x_m, y_1..y_m, z : [x_i, y_i] = z, all other commutators trivial>.
/// Throws std::invalid_argument for m < 1.
Class2Presentation heisenberg(std::size_t m);

/// Direct product with `count` infinite cyclic factors.
Class2Presentation with_cyclic(const Class2Presentation& p, std::size_t count = 1);

/// Central product of the factors. With `shared_center` all factors must have
/// the same number of central generators and these are identified; otherwise
/// central generators are kept apart.
Class2Presentation central_product(const std::vector<Class2Presentation>& factors, bool shared_center = false);

AlternatingFormZ commutator_form(const Class2Presentation& p);

struct HeisenbergFactor {
    std::size_t rank = 0;      // m_i; the block has dimension 2 m_i
    Subspace span;             // V_i
    Sublattice lattice;        // saturate(V_i ∩ Z^n)
    IntVector line;            // primitive generator of φ(A_i, A_i) ⊗ Q
};

struct StructureReport {
    std::vector<HeisenbergFactor> heisenberg_blocks;
    std::size_t cyclic_rank = 0;
    Sublattice cyclic_lattice;
    bool decomposed = false;
    /// A_1 + ... + A_t + ζ(A) has finite index in Z^n.
    bool finite_index = false;
    std::optional<Theorem42Report> theorem42;
    std::vector<std::string> diagnostics;
};

StructureReport structure_report(const Class2Presentation& p, std::uint64_t seed, std::size_t retries = 8);

}  // namespace qtdelta
