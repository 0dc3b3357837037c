#include "qtdelta/random_instances.hpp"

#include <algorithm>

namespace qtdelta {

namespace {

Rational random_coefficient(Rng& rng) { return make_rational(rng.nonzero(9), rng.uniform(1, 5)); }

Exponent random_qexp(Rng& rng, std::size_t params) {
    Exponent e(params);
    for (auto& x : e) x = rng.uniform(-2, 2);
    return e;
}

}  // namespace

QTorusElement random_relator(Rng& rng, const RelatorShape& shape) {
    QTorusElement r(shape.rank, shape.params);
    std::size_t room = 1;
    for (std::size_t i = 0; i < shape.rank && room < shape.max_support; ++i)
        room *= static_cast<std::size_t>(2 * shape.exponent_bound + 1);
    const auto cap = static_cast<std::int64_t>(std::min(room, shape.max_support));
    const auto terms = static_cast<std::size_t>(rng.uniform(1, cap));
    while (r.size() < terms) {
        Exponent a(shape.rank);
        for (auto& x : a) x = rng.uniform(-shape.exponent_bound, shape.exponent_bound);
        if (r.terms().count(a)) continue;
        r.add_term(a, random_qexp(rng, shape.params), random_coefficient(rng));
    }
    return r;
}

CocycleForm random_cocycle(Rng& rng, std::size_t rank, std::size_t params, std::int64_t bound) {
    std::vector<IntMatrix> forms;
    for (std::size_t k = 0; k < params; ++k) {
        IntMatrix b(rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) b(i, j) = static_cast<long>(rng.uniform(-bound, bound));
        forms.push_back(std::move(b));
    }
    return CocycleForm(rank, params, std::move(forms));
}

OneRelatorModule random_module(Rng& rng, const RelatorShape& shape) {
    QTorusElement r = random_relator(rng, shape);
    return OneRelatorModule(std::move(r), random_cocycle(rng, shape.rank, shape.params));
}

Character random_grid_character(Rng& rng, std::size_t rank) {
    Character chi(rank);
    for (auto& x : chi) x = make_rational(rng.uniform(-2, 2), rng.uniform(1, 2));
    return chi;
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    if (steps == 0) steps = 3 * n;
    for (std::size_t s = 0; s < steps; ++s) {
        auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
        if (j >= i) ++j;
        long k = rng.nonzero(2);
        for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    }
    return u;
}

Sublattice random_saturated_sublattice(Rng& rng, std::size_t n, std::size_t rank) {
    IntMatrix u = random_unimodular(rng, n);
    IntMatrix rows(0, n);
    for (std::size_t i = 0; i < rank; ++i) rows.append_row(u.row(i));
    return Sublattice(n, rows);
}

QTorusElement random_relator_in(Rng& rng, const Sublattice& lattice, std::size_t params, std::size_t max_support) {
    const std::size_t n = lattice.ambient_rank();
    QTorusElement r(n, params);
    const auto terms = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_support)));
    for (std::size_t attempt = 0; r.size() < terms && attempt < 64 * max_support; ++attempt) {
        IntVector v(n);
        for (std::size_t i = 0; i < lattice.rank(); ++i) {
            long c = rng.uniform(-2, 2);
            for (std::size_t j = 0; j < n; ++j) v[j] += c * lattice.basis()(i, j);
        }
        Exponent a;
        for (const auto& x : v) a.push_back(x.get_si());
        if (r.terms().count(a)) continue;
        r.add_term(a, random_qexp(rng, params), random_coefficient(rng));
    }
    if (r.is_zero()) r.add_term(Exponent(n, 0), Exponent(params, 0), 1);
    return r;
}

}  // namespace qtdelta
