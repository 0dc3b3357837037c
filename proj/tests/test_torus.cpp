#include "doctest.h"
#include "oracles.hpp"

#include "qtdelta/torus.hpp"

#include <map>

using namespace qtdelta;
using namespace qtdelta::testing;

namespace {

// Product by direct exponent bookkeeping: each pair of terms contributes
// c c' q^{e + e' + (a^T B_k b)_k} x^{a + b}, with the twist evaluated entry
// by entry in plain 64-bit arithmetic.
QTorusElement naive_product(const QTorusElement& x, const QTorusElement& y, const CocycleForm& c) {
    std::map<Exponent, std::map<Exponent, Rational>> acc;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) {
            Exponent sum(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
            Exponent twist(c.params, 0);
            for (std::size_t k = 0; k < c.params; ++k)
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = 0; j < b.size(); ++j) twist[k] += a[i] * c.B[k](i, j).get_si() * b[j];
            for (const auto& [qa, va] : ca)
                for (const auto& [qb, vb] : cb) {
                    Exponent qe(c.params);
                    for (std::size_t k = 0; k < c.params; ++k) qe[k] = qa[k] + qb[k] + twist[k];
                    acc[sum][qe] += va * vb;
                }
        }
    QTorusElement out(x.rank(), x.params());
    for (const auto& [a, coeff] : acc)
        for (const auto& [qe, v] : coeff)
            if (v != 0) out.add_term(a, qe, v);
    return out;
}

QTorusElement random_element(Rng& rng, std::size_t n, std::size_t s, std::size_t max_terms) {
    QTorusElement e(n, s);
    for (std::size_t t = 0, k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_terms))); t < k; ++t) {
        Exponent a(n), qe(s);
        for (auto& x : a) x = rng.uniform(-2, 2);
        for (auto& x : qe) x = rng.uniform(-2, 2);
        e.add_term(a, qe, make_rational(rng.nonzero(5), rng.uniform(1, 3)));
    }
    return e;
}

IntMatrix nilpotent_b() { return imat({{0, 1}, {0, 0}}); }

}  // namespace

TEST_CASE("monomial products with a nilpotent cocycle") {
    CocycleForm c(2, 1, {nilpotent_b()});
    auto x = QTorusElement::monomial(2, 1, ex({1, 0}));
    auto y = QTorusElement::monomial(2, 1, ex({0, 1}));
    CHECK(multiply(x, y, c) == QTorusElement::monomial(2, 1, ex({1, 1}), 1, ex({1})));
    CHECK(multiply(y, x, c) == QTorusElement::monomial(2, 1, ex({1, 1})));
    auto alpha = x + y;
    CHECK(multiply(alpha, QTorusElement::one(2, 1), c) == alpha);
}

TEST_CASE("multiply agrees with exponent bookkeeping; associativity and distributivity") {
    Rng rng(61);
    for (int t = 0; t < 300; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
        const auto s = static_cast<std::size_t>(rng.uniform(1, 2));
        CocycleForm c = random_cocycle(rng, n, s, 2);
        auto a = random_element(rng, n, s, 4), b = random_element(rng, n, s, 4), d = random_element(rng, n, s, 4);
        CHECK(multiply(a, b, c) == naive_product(a, b, c));
        CHECK(multiply(multiply(a, b, c), d, c) == multiply(a, multiply(b, d, c), c));
        CHECK(multiply(a, b + d, c) == multiply(a, b, c) + multiply(a, d, c));
        CHECK(multiply(a + b, d, c) == multiply(a, d, c) + multiply(b, d, c));
        auto one = QTorusElement::one(n, s);
        CHECK(multiply(one, a, c) == a);
        CHECK(multiply(a, one, c) == a);
    }
}

TEST_CASE("inverse monomials are two-sided inverses") {
    Rng rng(67);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto s = static_cast<std::size_t>(rng.uniform(1, 3));
        CocycleForm c = random_cocycle(rng, n, s, 3);
        Exponent a(n);
        for (auto& x : a) x = rng.uniform(-3, 3);
        auto xa = QTorusElement::monomial(n, s, a);
        auto inv = inverse_monomial(a, c);
        CHECK(multiply(xa, inv, c) == QTorusElement::one(n, s));
        CHECK(multiply(inv, xa, c) == QTorusElement::one(n, s));
    }
}

TEST_CASE("zero coefficients are never stored") {
    QTorusElement e(2, 1);
    e.add_term(ex({1, 0}), ex({0}), 1);
    e.add_term(ex({1, 0}), ex({0}), -1);
    CHECK(e.is_zero());
    e.add_term(ex({1, 0}), ex({1}), 2);
    e.add_term(ex({1, 0}), ex({0}), 3);
    CHECK(e.size() == 1);
    CHECK(e.terms().begin()->second.size() == 2);
}

TEST_CASE("commutator forms") {
    CocycleForm sym(2, 1, {imat({{1, 2}, {2, 5}})});
    CHECK(commutator_form(sym).phi[0] == IntMatrix(2, 2));
    CHECK(commutator_form(CocycleForm(2, 1, {nilpotent_b()})).phi[0] == imat({{0, 1}, {-1, 0}}));
    CHECK_THROWS_AS(AlternatingFormZ(2, 1, {imat({{1, 0}, {0, 0}})}), std::invalid_argument);
}

TEST_CASE("commutator consistency on random monomials") {
    Rng rng(71);
    for (int t = 0; t < 500; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto s = static_cast<std::size_t>(rng.uniform(1, 3));
        CocycleForm c = random_cocycle(rng, n, s, 3);
        Exponent a(n), b(n);
        for (auto& x : a) x = rng.uniform(-3, 3);
        for (auto& x : b) x = rng.uniform(-3, 3);
        auto ab = multiply(QTorusElement::monomial(n, s, a), QTorusElement::monomial(n, s, b), c);
        auto ba = multiply(QTorusElement::monomial(n, s, b), QTorusElement::monomial(n, s, a), c);
        const Exponent qab = ab.terms().begin()->second.begin()->first;
        const Exponent qba = ba.terms().begin()->second.begin()->first;
        IntVector phi = commutator_form(c).value(IntVector(a.begin(), a.end()), IntVector(b.begin(), b.end()));
        for (std::size_t k = 0; k < s; ++k) CHECK(qab[k] - qba[k] == phi[k].get_si());
    }
}

TEST_CASE("chi_min") {
    CHECK(chi_min(QTorusElement::monomial(2, 0, ex({2, -1})), rv({3, 1})) == 5);
    CHECK(chi_min(poly(2, 0, {ex({0, 0}), ex({1, 0})}), rv({2, 0})) == 0);
    CHECK(chi_min(poly(2, 0, {ex({0, 0}), ex({1, 0}), ex({0, 1})}), rv({-1, 3})) == -1);
    CHECK_THROWS_AS(chi_min(QTorusElement(2, 0), rv({1, 1})), std::invalid_argument);
}

TEST_CASE("centre lattices") {
    AlternatingFormZ j(2, 1, {imat({{0, 1}, {-1, 0}})});
    CHECK(center_lattice(j).rank() == 0);
    CHECK(center_lattice(AlternatingFormZ(3, 1, {IntMatrix(3, 3)})) == Sublattice::full(3));
    AlternatingFormZ j0(3, 1, {imat({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}})});
    CHECK(center_lattice(j0) == Sublattice(3, imat({{0, 0, 1}})));

    // Largest sublattice with φ(B, Z^n) = 0, against point enumeration.
    Rng rng(73);
    for (int t = 0; t < 30; ++t) {
        AlternatingFormZ f = commutator_form(random_cocycle(rng, 3, static_cast<std::size_t>(rng.uniform(1, 2)), 1));
        Sublattice z = center_lattice(f);
        for (const auto& p : box(3, 2)) {
            bool central = true;
            for (std::size_t i = 0; i < 3 && central; ++i) {
                IntVector e(3);
                e[i] = 1;
                central = is_zero(f.value(p, e));
            }
            CHECK(central == z.contains(p));
        }
    }
}

TEST_CASE("commutativity and cocycle images") {
    AlternatingFormZ j(2, 1, {imat({{0, 1}, {-1, 0}})});
    CHECK(is_commutative(j, center_lattice(j)));
    CHECK(is_commutative(j, Sublattice(2, imat({{1, 0}}))));
    CHECK_FALSE(is_commutative(j, Sublattice::full(2)));
    CHECK(cocycle_image(j, Sublattice::full(2)) == Sublattice::full(1));
    CHECK(cocycle_image(j, Sublattice(2, imat({{1, 0}}))).rank() == 0);

    AlternatingFormZ two(4, 2, {imat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}),
                                imat({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}})});
    CHECK(cocycle_image(two, Sublattice(4, imat({{1, 0, 0, 0}, {0, 1, 0, 0}}))) == Sublattice(2, imat({{1, 0}})));

    Rng rng(79);
    for (int t = 0; t < 100; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
        AlternatingFormZ f = commutator_form(random_cocycle(rng, n, static_cast<std::size_t>(rng.uniform(1, 3)), 2));
        Sublattice b(n, random_int_matrix(rng, static_cast<std::size_t>(rng.uniform(1, 3)), n, 2));
        CHECK(is_commutative(f, b) == (cocycle_image(f, b).rank() == 0));
    }
}

TEST_CASE("structure audit of lattice decompositions") {
    IntMatrix j2 = imat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    IntMatrix j2b = imat({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
    Sublattice a1(4, imat({{1, 0, 0, 0}, {0, 1, 0, 0}})), a2(4, imat({{0, 0, 1, 0}, {0, 0, 0, 1}}));

    AlternatingFormZ distinct(4, 2, {j2, j2b});
    auto r = verify_theorem42(distinct, {a1, a2});
    CHECK(r.commuting_parts);
    CHECK(r.trivial_centres);
    CHECK(r.cyclic_images);
    CHECK(r.noncommensurable);
    CHECK(r.finite_index);
    CHECK(r.passed());

    IntMatrix both = imat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
    AlternatingFormZ same(4, 2, {both, IntMatrix(4, 4)});
    auto r2 = verify_theorem42(same, {a1, a2});
    CHECK(r2.commuting_parts);
    CHECK(r2.trivial_centres);
    CHECK(r2.cyclic_images);
    CHECK_FALSE(r2.noncommensurable);
    CHECK_FALSE(r2.passed());

    AlternatingFormZ j(2, 1, {imat({{0, 1}, {-1, 0}})});
    CHECK(verify_theorem42(j, {Sublattice::full(2)}).passed());

    CHECK_THROWS_AS(verify_theorem42(distinct, {a1, a1}), std::invalid_argument);
}

TEST_CASE("cocycle restriction") {
    CocycleForm c(2, 1, {imat({{1, 2}, {3, 4}})});
    CocycleForm r = c.restrict_to(imat({{1, 1}}));
    CHECK(r.B[0] == imat({{10}}));
    CHECK_THROWS(CocycleForm(2, 2, {imat({{1, 2}, {3, 4}})}));
}

TEST_CASE("exponent overflow is detected") {
    CocycleForm c(1, 1, {imat({{1}})});
    auto big = QTorusElement::monomial(1, 1, Exponent{std::int64_t{1} << 40});
    CHECK_THROWS(multiply(big, big, c));
}
