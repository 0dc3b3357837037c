#pragma once

// Instance generators and brute-force oracles shared by the unit tests and the
// acceptance runner. Oracles here deliberately avoid the library routine they
// are used to check.

#include "qtdelta/delta.hpp"
#include "qtdelta/groups.hpp"
#include "qtdelta/random_instances.hpp"
#include "qtdelta/symplectic.hpp"
#include "qtdelta/univariate.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace qtdelta::testing {

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline RatVector rv(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Exponent ex(std::initializer_list<std::int64_t> xs) { return Exponent(xs); }

/// Element with coefficients 1 on the given exponents (no q-powers).
inline QTorusElement poly(std::size_t rank, std::size_t params, const std::vector<Exponent>& support) {
    QTorusElement r(rank, params);
    for (const auto& a : support) r.add_term(a, Exponent(params, 0), 1);
    return r;
}

/// 1 + x + y over a commutative torus.
inline OneRelatorModule tropical_line() { return OneRelatorModule(poly(2, 0, {ex({0, 0}), ex({1, 0}), ex({0, 1})})); }

inline Fan fan_of(std::size_t n, const std::vector<std::pair<std::vector<RatVector>, std::vector<RatVector>>>& cones) {
    std::vector<Cone> cs;
    for (const auto& [eq, ineq] : cones) cs.emplace_back(n, eq, ineq);
    return Fan(n, std::move(cs));
}

// ---------------------------------------------------------------------------
// Δ-set oracle: χ is in Δ iff the minimum of χ over the support is attained
// at least twice.

inline bool in_delta_oracle(const QTorusElement& r, const RatVector& chi) {
    std::optional<Rational> best;
    int count = 0;
    for (const auto& a : r.support()) {
        Rational v = 0;
        for (std::size_t i = 0; i < a.size(); ++i) v += chi[i] * Rational(static_cast<long>(a[i]));
        if (!best || v < *best) {
            best = v;
            count = 1;
        } else if (v == *best) {
            ++count;
        }
    }
    return count >= 2;
}

/// Local-cone oracle: y in LC_x(f) iff x + εy in f for ε = 1/N with a large N.
/// Valid for polyhedral fans once N exceeds the reciprocal of the distance to
/// every inactive facet along y, which the callers ensure with small inputs.
inline bool local_cone_oracle(const Fan& f, const RatVector& x, const RatVector& y, long big = 1000003) {
    RatVector p = x;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += y[i] / Rational(big);
    return member(f, p);
}

// ---------------------------------------------------------------------------
// Block-form instances for the symplectic base round trip.

struct BlockInstance {
    AlternatingMapQ phi;
    std::vector<Subspace> blocks;
    Subspace center;
    std::vector<RatVector> lines;
    std::vector<std::size_t> ranks;  // half dimensions
};

inline bool proportional(const RatVector& a, const RatVector& b) {
    RatMatrix m(0, a.size());
    m.append_row(a);
    m.append_row(b);
    return rank(m) < 2;
}

/// t <= 3 blocks of dimension 2 or 4 with pairwise distinct lines in Q^s,
/// s <= 3, an optional centre of dimension <= 2, all conjugated by a random
/// unimodular change of basis.
inline BlockInstance random_block_form(Rng rng, bool with_center = true, std::size_t max_blocks = 3) {
    const auto s = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t tmax = s == 1 ? 1 : max_blocks;
    const auto t = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(tmax)));
    std::vector<RatVector> lines;
    while (lines.size() < t) {
        RatVector w(s);
        for (auto& x : w) x = rng.uniform(-2, 2);
        if (is_zero(w)) continue;
        bool fresh = true;
        for (const auto& l : lines) fresh = fresh && !proportional(l, w);
        if (fresh) lines.push_back(w);
    }
    std::vector<std::size_t> ranks;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t; ++i) {
        ranks.push_back(static_cast<std::size_t>(rng.uniform(1, 2)));
        n += 2 * ranks.back();
    }
    const std::size_t c = with_center ? static_cast<std::size_t>(rng.uniform(0, 2)) : 0;
    n += c;

    std::vector<RatMatrix> std_forms(s, RatMatrix(n, n));
    std::size_t offset = 0;
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < ranks[i]; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                std_forms[k](offset + j, offset + ranks[i] + j) = lines[i][k];
                std_forms[k](offset + ranks[i] + j, offset + j) = -lines[i][k];
            }
        offset += 2 * ranks[i];
    }

    // Rows b_j of R form the new basis: phi'(b_j, b_l) = phi_std(e_j, e_l).
    RatMatrix r = to_rational(random_unimodular(rng, n));
    RatMatrix r_inv = *inverse(r);
    std::vector<RatMatrix> forms;
    for (const auto& f : std_forms) forms.push_back(r_inv * f * r_inv.transpose());

    BlockInstance inst{AlternatingMapQ(n, s, std::move(forms)), {}, Subspace(n), lines, ranks};
    offset = 0;
    for (std::size_t i = 0; i < t; ++i) {
        RatMatrix rows(0, n);
        for (std::size_t j = 0; j < 2 * ranks[i]; ++j) rows.append_row(r.row(offset + j));
        inst.blocks.emplace_back(n, rows);
        offset += 2 * ranks[i];
    }
    RatMatrix centre_rows(0, n);
    for (std::size_t j = offset; j < n; ++j) centre_rows.append_row(r.row(j));
    inst.center = Subspace(n, centre_rows);
    return inst;
}

/// Same blocks modulo the centre, order-independent. Blocks are only
/// determined up to adding centre vectors.
inline bool same_blocks(std::vector<Subspace> a, std::vector<Subspace> b, const Subspace& centre) {
    for (auto& x : a) x = subspace_sum(x, centre);
    for (auto& x : b) x = subspace_sum(x, centre);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

/// Greedy random abelian subspace of the given dimension, or nullopt if the
/// walk gets stuck first.
inline std::optional<Subspace> random_abelian(const AlternatingMapQ& phi, Rng& rng, std::size_t target) {
    Subspace u(phi.n);
    for (int tries = 0; u.dim() < target && tries < 200; ++tries) {
        Subspace c = centralizer(phi, u);
        RatVector v(phi.n);
        for (const auto& b : c.vectors()) {
            Rational k = rng.uniform(-3, 3);
            for (std::size_t i = 0; i < phi.n; ++i) v[i] += k * b[i];
        }
        if (is_zero(v) || u.contains(v)) continue;
        auto rows = u.vectors();
        rows.push_back(v);
        u = Subspace::span(phi.n, rows);
    }
    if (u.dim() != target) return std::nullopt;
    return u;
}

/// Random subspace of the given dimension that is not abelian. Needs
/// dim >= 2 and a form that is not identically zero.
inline Subspace random_nonabelian(const AlternatingMapQ& phi, Rng& rng, std::size_t dim) {
    if (dim < 2) throw std::invalid_argument("lines are always abelian");
    for (;;) {
        std::vector<RatVector> rows;
        for (std::size_t i = 0; i < dim; ++i) {
            RatVector v(phi.n);
            for (auto& x : v) x = rng.uniform(-3, 3);
            rows.push_back(v);
        }
        Subspace u = Subspace::span(phi.n, rows);
        if (u.dim() == dim && !is_abelian(phi, u)) return u;
    }
}

// ---------------------------------------------------------------------------
// Exhaustive symplectic-base oracle for n = 4, s = 2 and trivial centre.
//
// With two blocks the block V_i is the kernel of Φ(ℓ) for ℓ ⊥ w_i, and such ℓ
// are exactly the rational projective zeros of the Pfaffian of Φ(ℓ), a binary
// quadratic form. With one block the block is V. Every candidate is checked
// with verify_symplectic_base.

inline std::vector<RatVector> projective_rational_zeros(const Rational& a, const Rational& b, const Rational& c) {
    // a x^2 + b x y + c y^2
    std::vector<RatVector> out;
    if (a == 0) {
        out.push_back({Rational(1), Rational(0)});
        if (b != 0) out.push_back({-c / b, Rational(1)});
        return out;
    }
    Rational disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    Integer num = disc.get_num(), den = disc.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return out;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational root(sn, sd);
    root.canonicalize();
    out.push_back({(-b + root) / (2 * a), Rational(1)});
    if (root != 0) out.push_back({(-b - root) / (2 * a), Rational(1)});
    return out;
}

inline Rational pfaffian4(const RatMatrix& m) { return m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2); }

inline std::optional<SymplecticBase> exhaustive_base_n4s2(const AlternatingMapQ& phi) {
    auto try_blocks = [&](const std::vector<Subspace>& blocks) -> std::optional<SymplecticBase> {
        SymplecticBase b{Subspace(4), blocks, {}};
        for (const auto& v : blocks) {
            Subspace img = image_span(phi, v);
            if (img.dim() != 1) return std::nullopt;
            b.lines.push_back(img.vectors().front());
        }
        if (verify_symplectic_base(phi, b).passed()) return b;
        return std::nullopt;
    };
    if (auto b = try_blocks({Subspace::full(4)})) return b;

    // Pf(Φ(x, y)) = a x^2 + b x y + c y^2, recovered from three evaluations.
    auto pf = [&](long x, long y) { return pfaffian4(phi.pencil({Rational(x), Rational(y)})); };
    Rational a = pf(1, 0), c = pf(0, 1);
    Rational b = pf(1, 1) - a - c;
    std::vector<Subspace> kernels;
    for (const auto& l : projective_rational_zeros(a, b, c)) {
        Subspace k = subspace_kernel(phi.pencil(l));
        if (k.dim() == 2) kernels.push_back(k);
    }
    for (std::size_t i = 0; i < kernels.size(); ++i)
        for (std::size_t j = i + 1; j < kernels.size(); ++j)
            if (auto base = try_blocks({kernels[i], kernels[j]})) return base;
    return std::nullopt;
}

/// Q^4, s = 2: Φ_1 = J on (1,2) and on (3,4), Φ_2 pairs e_1 with e_3.
inline AlternatingMapQ no_base_fixture() {
    RatMatrix p1(4, 4), p2(4, 4);
    p1(0, 1) = 1;
    p1(1, 0) = -1;
    p1(2, 3) = 1;
    p1(3, 2) = -1;
    p2(0, 2) = 1;
    p2(2, 0) = -1;
    return AlternatingMapQ(4, 2, {p1, p2});
}

/// Q^4, s = 1: two standard blocks sharing the line e_1.
inline AlternatingMapQ merged_line_fixture() {
    RatMatrix p(4, 4);
    p(0, 1) = 1;
    p(1, 0) = -1;
    p(2, 3) = 1;
    p(3, 2) = -1;
    return AlternatingMapQ(4, 1, {p});
}

// ---------------------------------------------------------------------------
// CLI input documents, one per subcommand.

inline std::string cli_fixture(const std::string& command) {
    const std::string line =
        R"({"rank":2,"terms":[{"exp":[0,0],"coeff":"1"},{"exp":[1,0],"coeff":"1"},{"exp":[0,1],"coeff":"1"}]})";
    const std::string two_blocks =
        R"({"n":4,"s":2,"phi":[[[0,1,0,0],[-1,0,0,0],[0,0,0,0],[0,0,0,0]],)"
        R"([[0,0,0,0],[0,0,0,0],[0,0,0,1],[0,0,-1,0]]]})";
    if (command == "delta") return line;
    if (command == "initform" || command == "tc" || command == "check-lemma31" || command == "check-dim")
        return R"({"module":)" + line + R"(,"chi":[0,1]})";
    if (command == "lc")
        return R"({"fan":{"dim":2,"cones":[{"dim":2,"eq":[[0,1]],"ineq":[[1,0]]},)"
               R"({"dim":2,"eq":[[1,0]],"ineq":[[0,1]]},{"dim":2,"eq":[[1,-1]],"ineq":[[-1,0]]}]},"point":[0,1]})";
    if (command == "check-induced")
        return R"({"module":{"relator":{"rank":3,"params":1,"terms":[)"
               R"({"exp":[0,0,0],"coeff":[{"qexp":[0],"c":"1"}]},{"exp":[1,0,0],"coeff":[{"qexp":[1],"c":"-2/3"}]},)"
               R"({"exp":[1,1,0],"coeff":[{"qexp":[0],"c":"5"}]}]},)"
               R"("cocycle":{"rank":3,"s":1,"B":[[[0,1,0],[0,0,1],[1,0,0]]]}},)"
               R"("a1":[[1,0,0],[0,1,0]],"chi":[0,1,"1/2"]})";
    if (command == "torus-mul")
        return R"({"a":{"rank":2,"params":1,"terms":[{"exp":[1,0],"coeff":[{"qexp":[0],"c":"1"}]}]},)"
               R"("b":{"rank":2,"params":1,"terms":[{"exp":[0,1],"coeff":[{"qexp":[0],"c":"1"}]},)"
               R"({"exp":[0,0],"coeff":[{"qexp":[2],"c":"3/2"}]}]},)"
               R"("cocycle":{"rank":2,"s":1,"B":[[[0,1],[0,0]]]}})";
    if (command == "center") return R"({"n":3,"s":1,"phi":[[[0,1,0],[-1,0,0],[0,0,0]]]})";
    if (command == "symbase") return two_blocks;
    if (command == "verify-base")
        return R"({"form":)" + two_blocks +
               R"(,"base":{"V0":[],"blocks":[[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[0,0,0,1]]],"lines":[[1,0],[0,1]]}})";
    if (command == "abelian-split") return R"({"form":)" + two_blocks + R"(,"U":[[1,0,0,0],[0,0,1,0]]})";
    if (command == "check-ample")
        return R"({"form":)" + two_blocks + R"(,"X":[[1,0,0,0],[0,1,0,0],[0,0,1,0]],"omega":[[[1,0,0,0],[0,0,1,0]],[[0,1,0,0],[0,0,1,0]]]})";
    if (command == "group-structure")
        return R"({"generators":["x1","x2","y1","y2"],"central":["z"],)"
               R"("commutators":[{"a":"x1","b":"y1","exps":[1]},{"a":"x2","b":"y2","exps":[1]}]})";
    if (command == "verify-thm42")
        return R"({"form":)" + two_blocks + R"(,"parts":[[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[0,0,0,1]]]})";
    return "{}";
}

}  // namespace qtdelta::testing
