#include "doctest.h"
#include "oracles.hpp"

#include "qtdelta/delta.hpp"

using namespace qtdelta;
using namespace qtdelta::testing;

namespace {

Fan line_fan() {
    return fan_of(2, {{{rv({1, 0})}, {rv({0, 1})}}, {{rv({0, 1})}, {rv({1, 0})}}, {{rv({1, -1})}, {rv({-1, 0})}}});
}

OneRelatorModule random_instance(Rng& rng, std::size_t n) {
    RelatorShape shape;
    shape.rank = n;
    shape.params = static_cast<std::size_t>(rng.uniform(1, 2));
    shape.max_support = 8;
    return random_module(rng, shape);
}

bool affinely_spanning(const QTorusElement& r) {
    auto pts = r.support();
    RatMatrix diffs(0, r.rank());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVector d(r.rank());
        for (std::size_t k = 0; k < r.rank(); ++k) d[k] = pts[i][k] - pts[0][k];
        diffs.append_row(d);
    }
    return !diffs.empty() && rank(diffs) == r.rank();
}

}  // namespace

TEST_CASE("Δ-sets of small relators") {
    CHECK(delta_set(poly(2, 0, {ex({0, 0})})).cones().empty());
    CHECK(fan_equal(delta_set(poly(2, 0, {ex({0, 0}), ex({1, 0})})), fan_of(2, {{{rv({1, 0})}, {}}})));
    Fan line = delta_set(tropical_line());
    CHECK(line.cones().size() == 3);
    CHECK(fan_equal(line, line_fan()));
    CHECK(line == line_fan());
}

TEST_CASE("Δ membership agrees with the minimum-attained-twice oracle") {
    Rng rng(83);
    int points = 0;
    for (int t = 0; t < 100; ++t) {
        OneRelatorModule m = random_instance(rng, static_cast<std::size_t>(rng.uniform(2, 4)));
        Fan d = delta_set(m);
        for (int k = 0; k < 100; ++k) {
            RatVector chi;
            if (k % 2 == 0 && !d.cones().empty())
                chi = sample_delta_point(m, static_cast<std::size_t>(k / 2) % d.cones().size(), static_cast<std::uint64_t>(k));
            else
                chi = random_grid_character(rng, m.rank());
            CHECK(member(d, chi) == in_delta_oracle(m.relator, chi));
            ++points;
        }
    }
    CHECK(points == 10000);
}

TEST_CASE("initial forms") {
    OneRelatorModule line = tropical_line();
    InitialForm f = initial_form(line, rv({0, 1}));
    CHECK(f.kernel == Sublattice(2, imat({{1, 0}})));
    CHECK(f.relator == poly(1, 0, {ex({0}), ex({1})}));
    CHECK(f.shift == ex({0, 0}));

    InitialForm g = initial_form(line, rv({1, 1}));
    CHECK(g.kernel == Sublattice(2, imat({{1, -1}})));
    CHECK(g.relator == poly(1, 0, {ex({0})}));

    // χ = 0: every term survives, translated so the least support point is 0.
    OneRelatorModule shifted(poly(2, 0, {ex({1, 1}), ex({2, 1}), ex({1, 3})}));
    InitialForm h = initial_form(shifted, rv({0, 0}));
    CHECK(h.kernel == Sublattice::full(2));
    CHECK(h.shift == ex({1, 1}));
    CHECK(h.relator == poly(2, 0, {ex({0, 0}), ex({1, 0}), ex({0, 2})}));
}

TEST_CASE("initial forms carry the cocycle twist of the shift") {
    // r = x^{(1,0)} + x^{(1,1)} with B = [[0,1],[0,0]] and χ = (0,0): shifting by
    // x^{-(1,0)} twists the second term by q^{-1}.
    CocycleForm c(2, 1, {imat({{0, 1}, {0, 0}})});
    QTorusElement r = poly(2, 1, {ex({1, 0}), ex({1, 1})});
    InitialForm f = initial_form(OneRelatorModule(r, c), rv({0, 0}));
    QTorusElement want(2, 1);
    want.add_term(ex({0, 0}), ex({0}), 1);
    want.add_term(ex({0, 1}), ex({-1}), 1);
    CHECK(f.relator == want);
    CHECK(f.cocycle == c);
}

TEST_CASE("Δ of the trailing coefficient module") {
    OneRelatorModule line = tropical_line();
    CHECK(fan_equal(tc_delta(line, rv({0, 1})), Fan(1, {Cone::origin(1)})));
    CHECK(tc_delta(line, rv({1, 1})).cones().empty());
    CHECK(fan_equal(tc_delta(line, rv({0, 0})), delta_set(line)));
}

TEST_CASE("local cone identity examples") {
    OneRelatorModule line = tropical_line();
    FanComparison c = check_lemma31(line, rv({0, 1}));
    CHECK(c.equal);
    CHECK(fan_equal(c.lhs, fan_of(2, {{{rv({1, 0})}, {}}})));
    CHECK(fan_equal(c.rhs, c.lhs));
    FanComparison off = check_lemma31(line, rv({1, 1}));
    CHECK(off.equal);
    CHECK(off.lhs.cones().empty());
    CHECK(off.rhs.cones().empty());
    FanComparison apex = check_lemma31(line, rv({0, 0}));
    CHECK(apex.equal);
    CHECK(fan_equal(apex.lhs, delta_set(line)));
}

TEST_CASE("local cone identity on random instances") {
    Rng rng(89);
    for (int t = 0; t < 150; ++t) {
        OneRelatorModule m = random_instance(rng, 2 + static_cast<std::size_t>(t % 3));
        Fan d = delta_set(m);
        RatVector chi = (t % 2 == 0 && !d.cones().empty())
                            ? sample_delta_point(m, static_cast<std::size_t>(t) % d.cones().size(), 1)
                            : random_grid_character(rng, m.rank());
        FanComparison c = check_lemma31(m, chi);
        CHECK(c.equal);
        CHECK_FALSE(c.witness.has_value());
    }
}

TEST_CASE("χ in Δ iff the initial form has two terms iff Δ(TC) is nonempty") {
    Rng rng(97);
    for (int t = 0; t < 200; ++t) {
        OneRelatorModule m = random_instance(rng, static_cast<std::size_t>(rng.uniform(2, 4)));
        Fan d = delta_set(m);
        RatVector chi = (t % 2 == 0 && !d.cones().empty())
                            ? sample_delta_point(m, static_cast<std::size_t>(t) % d.cones().size(), 2)
                            : random_grid_character(rng, m.rank());
        const bool in = member(d, chi);
        CHECK(in == (initial_form(m, chi).relator.size() >= 2));
        CHECK(in == !tc_delta(m, chi).cones().empty());
    }
}

TEST_CASE("dimension identity") {
    OneRelatorModule line = tropical_line();
    auto r = check_dim_identity(line, rv({0, 1}));
    CHECK(r.character_rank == 1);
    CHECK(r.tc_dim == 0);
    CHECK(r.delta_dim == 1);
    CHECK(r.holds);
    auto z = check_dim_identity(line, rv({0, 0}));
    CHECK(z.character_rank == 0);
    CHECK(z.tc_dim == 1);
    CHECK(z.holds);
    CHECK_THROWS_AS(check_dim_identity(line, rv({1, 1})), std::invalid_argument);

    Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        OneRelatorModule m = random_instance(rng, 2 + static_cast<std::size_t>(t % 3));
        Fan d = delta_set(m);
        if (d.cones().empty()) continue;
        CHECK(check_dim_identity(m, sample_delta_point(m, static_cast<std::size_t>(t) % d.cones().size(), 3)).holds);
    }
}

TEST_CASE("Δ has dimension n - 1 when the support affinely spans") {
    Rng rng(103);
    int seen = 0;
    for (int t = 0; t < 100; ++t) {
        OneRelatorModule m = random_instance(rng, static_cast<std::size_t>(rng.uniform(2, 4)));
        if (!affinely_spanning(m.relator)) continue;
        ++seen;
        CHECK(fan_dim(delta_set(m)) == static_cast<int>(m.rank()) - 1);
    }
    CHECK(seen > 20);
}

TEST_CASE("Δ is translation invariant and transforms under unimodular changes of basis") {
    Rng rng(107);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(2, 3));
        OneRelatorModule m = random_instance(rng, n);
        Exponent a(n);
        for (auto& x : a) x = rng.uniform(-3, 3);
        QTorusElement moved = multiply(QTorusElement::monomial(n, m.relator.params(), a), m.relator, m.cocycle);
        CHECK(fan_equal(delta_set(moved), delta_set(m)));

        // Exponents a ↦ a P for unimodular P; then Δ' = {χ : P χ ∈ Δ}.
        IntMatrix p = random_unimodular(rng, n);
        QTorusElement image(n, m.relator.params());
        for (const auto& [e, coeff] : m.relator.terms()) {
            Exponent f(n, 0);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) f[j] += e[i] * p(i, j).get_si();
            image.add_term(f, coeff);
        }
        CHECK(fan_equal(delta_set(image), preimage(delta_set(m), to_rational(p))));
    }
}

TEST_CASE("induced modules") {
    // A1 = Z x {0} in Z^2, r = 1 + x.
    OneRelatorModule m(poly(2, 0, {ex({0, 0}), ex({1, 0})}));
    Sublattice a1(2, imat({{1, 0}}));
    CHECK(fan_equal(delta_set(m), fan_of(2, {{{rv({1, 0})}, {}}})));
    FanComparison c = check_induced(m, a1, rv({0, 0}));
    CHECK(c.equal);
    CHECK(fan_equal(c.lhs, fan_of(2, {{{rv({1, 0})}, {}}})));

    // χ restricted to A1 off Δ: both sides empty.
    FanComparison off = check_induced(m, a1, rv({1, 0}));
    CHECK(off.equal);
    CHECK(off.lhs.cones().empty());

    // A1 = Z^2.
    OneRelatorModule line = tropical_line();
    CHECK(check_induced(line, Sublattice::full(2), rv({0, 1})).equal);

    CHECK_THROWS_AS(check_induced(m, Sublattice(2, imat({{2, 0}})), rv({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(check_induced(line, a1, rv({0, 0})), std::invalid_argument);
}

TEST_CASE("induced module law on random embeddings") {
    Rng rng(109);
    for (int t = 0; t < 80; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
        const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(std::min<std::size_t>(3, n))));
        Sublattice a1 = random_saturated_sublattice(rng, n, k);
        OneRelatorModule m(random_relator_in(rng, a1, 1, 6), random_cocycle(rng, n, 1));
        Fan d = delta_set(m);
        RatVector chi = (t % 2 == 0 && !d.cones().empty())
                            ? sample_delta_point(m, static_cast<std::size_t>(t) % d.cones().size(), 4)
                            : random_grid_character(rng, n);
        CHECK(check_induced(m, a1, chi).equal);
    }
}

TEST_CASE("genericness") {
    OneRelatorModule line = tropical_line();
    Subspace axis = Subspace::span(2, {rv({0, 1})});
    CHECK(generic_for(line, rv({0, 1}), axis));
    CHECK_FALSE(generic_for(line, rv({0, 0}), axis));
    CHECK(generic_for(line, rv({0, 0}), Subspace::full(2)));
    CHECK_THROWS_AS(generic_for(line, rv({1, 0}), axis), std::invalid_argument);
}

TEST_CASE("sample points") {
    OneRelatorModule ray(poly(2, 0, {ex({0, 0}), ex({1, 0}), ex({0, 1})}));
    Fan d = delta_set(ray);
    for (std::size_t i = 0; i < d.cones().size(); ++i) {
        RatVector p = sample_delta_point(ray, i, 0);
        CHECK(member(d.cones()[i], p));
        CHECK(in_delta_oracle(ray.relator, p));
    }
    // A line {χ1 = 0}: the sample is (0, 1) or (0, -1) depending on the seed.
    OneRelatorModule two(poly(2, 0, {ex({0, 0}), ex({1, 0})}));
    bool up = false, down = false;
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        RatVector p = sample_delta_point(two, 0, seed);
        up = up || p == rv({0, 1});
        down = down || p == rv({0, -1});
        CHECK((p == rv({0, 1}) || p == rv({0, -1})));
        CHECK(sample_delta_point(two, 0, seed) == p);
    }
    CHECK(up);
    CHECK(down);
    CHECK_THROWS_AS(sample_delta_point(two, 1, 0), std::out_of_range);

    // Relative interior: strict inequalities on every facet.
    Rng rng(113);
    for (int t = 0; t < 50; ++t) {
        OneRelatorModule m = random_instance(rng, static_cast<std::size_t>(rng.uniform(2, 4)));
        Fan f = delta_set(m);
        for (std::size_t i = 0; i < f.cones().size(); ++i) {
            RatVector p = sample_delta_point(m, i, 5);
            for (const auto& a : f.cones()[i].inequalities()) CHECK(dot(to_rational(a), p) > 0);
            for (const auto& e : f.cones()[i].equalities()) CHECK(dot(to_rational(e), p) == 0);
        }
    }
}

TEST_CASE("module validation") {
    CHECK_THROWS_AS(OneRelatorModule(QTorusElement(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(OneRelatorModule(poly(2, 1, {ex({0, 0})}), CocycleForm::trivial(3, 1)), std::invalid_argument);
    CHECK(character_rank(rv({0, 0})) == 0);
    CHECK(character_rank(rv({1, 2})) == 1);
}
