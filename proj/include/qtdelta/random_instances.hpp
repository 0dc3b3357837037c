#pragma once

// Seeded generators for the randomized property checks shared by the CLI and
// the test suites.

#include "qtdelta/delta.hpp"
#include "qtdelta/rng.hpp"

namespace qtdelta {

struct RelatorShape {
    std::size_t rank = 2;
    std::size_t params = 1;
    std::size_t max_support = 8;
    std::int64_t exponent_bound = 2;
};

/// Nonzero element with 1..max_support terms, small exponents and random
/// nonzero rational coefficients carrying random q-powers.
QTorusElement random_relator(Rng& rng, const RelatorShape& shape);
CocycleForm random_cocycle(Rng& rng, std::size_t rank, std::size_t params, std::int64_t bound = 2);
OneRelatorModule random_module(Rng& rng, const RelatorShape& shape);

/// Character with coordinates in {-2, ..., 2} / {1, 2}.
Character random_grid_character(Rng& rng, std::size_t rank);

/// Product of random elementary integer row operations.
IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps = 0);

/// Saturated sublattice of the given rank, in general position.
Sublattice random_saturated_sublattice(Rng& rng, std::size_t n, std::size_t rank);

/// Relator with support inside the given lattice.
QTorusElement random_relator_in(Rng& rng, const Sublattice& lattice, std::size_t params, std::size_t max_support);

}  // namespace qtdelta
