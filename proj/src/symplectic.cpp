#include "qtdelta/symplectic.hpp"

#include "qtdelta/rng.hpp"
#include "qtdelta/univariate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qtdelta {

AlternatingMapQ::AlternatingMapQ(std::size_t n_, std::size_t s_, std::vector<RatMatrix> forms)
    : n(n_), s(s_), phi(std::move(forms)) {
    if (phi.size() != s) throw DimensionError("alternating map needs one matrix per target coordinate");
    for (const auto& m : phi) {
        if (m.rows() != n || m.cols() != n) throw DimensionError("form matrix must be n x n");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m(i, j) != -m(j, i)) throw std::invalid_argument("form matrix is not antisymmetric");
    }
}

AlternatingMapQ AlternatingMapQ::from_integral(const AlternatingFormZ& form) {
    std::vector<RatMatrix> forms;
    for (const auto& m : form.phi) forms.push_back(to_rational(m));
    return AlternatingMapQ(form.rank, form.params, std::move(forms));
}

RatVector AlternatingMapQ::value(const RatVector& u, const RatVector& v) const {
    if (u.size() != n || v.size() != n) throw DimensionError("vector does not match dim V");
    RatVector out(s);
    for (std::size_t k = 0; k < s; ++k) out[k] = dot(u, times_col(phi[k], v));
    return out;
}

RatMatrix AlternatingMapQ::pencil(const RatVector& t) const {
    if (t.size() != s) throw DimensionError("pencil weights do not match dim W");
    RatMatrix out(n, n);
    for (std::size_t k = 0; k < s; ++k) {
        if (t[k] == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) += t[k] * phi[k](i, j);
    }
    return out;
}

Subspace center(const AlternatingMapQ& phi) {
    RatMatrix stacked(0, phi.n);
    for (const auto& m : phi.phi)
        for (std::size_t i = 0; i < phi.n; ++i) stacked.append_row(m.row(i));
    return subspace_kernel(stacked);
}

Subspace centralizer(const AlternatingMapQ& phi, const Subspace& s) {
    if (s.ambient_dim() != phi.n) throw DimensionError("subspace does not live in V");
    RatMatrix rows(0, phi.n);
    for (const auto& v : s.vectors())
        for (const auto& m : phi.phi) rows.append_row(times_col(m, v));
    return subspace_kernel(rows);
}

bool is_abelian(const AlternatingMapQ& phi, const Subspace& u) {
    auto vs = u.vectors();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!is_zero(phi.value(vs[i], vs[j]))) return false;
    return true;
}

std::size_t centralizer_codim(const AlternatingMapQ& phi, const RatVector& v) {
    RatMatrix rows(0, phi.n);
    for (const auto& m : phi.phi) rows.append_row(row_times(v, m));
    return rank(rows);
}

Subspace image_span(const AlternatingMapQ& phi, const Subspace& u) {
    auto vs = u.vectors();
    std::vector<RatVector> values;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) values.push_back(phi.value(vs[i], vs[j]));
    return Subspace::span(phi.s, values);
}

Subspace relative_center(const AlternatingMapQ& phi, const Subspace& x) {
    return subspace_intersection(x, centralizer(phi, x));
}

BaseReport verify_symplectic_base(const AlternatingMapQ& phi, const SymplecticBase& cand) {
    BaseReport r;
    const auto& blocks = cand.blocks;

    std::size_t total = cand.v0.dim();
    Subspace sum = cand.v0;
    for (const auto& b : blocks) {
        total += b.dim();
        sum = subspace_sum(sum, b);
    }
    r.direct_sum = total == phi.n && sum.dim() == phi.n;
    if (!r.direct_sum) r.failures.push_back("blocks do not form a direct sum decomposition of V");

    r.center_ok = cand.v0 == center(phi);
    if (!r.center_ok) r.failures.push_back("(1) V0 is not the centre");

    r.orthogonal = true;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            for (const auto& u : blocks[i].vectors())
                for (const auto& v : blocks[j].vectors())
                    if (!is_zero(phi.value(u, v))) r.orthogonal = false;
    if (!r.orthogonal) r.failures.push_back("(2) distinct blocks do not centralise each other");

    std::vector<Subspace> images;
    r.blocks_ok = true;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        images.push_back(image_span(phi, blocks[i]));
        if (blocks[i].dim() == 0 || images.back().dim() != 1 || relative_center(phi, blocks[i]).dim() != 0) {
            r.blocks_ok = false;
            r.failures.push_back("(3) block " + std::to_string(i) + " is degenerate or has a non-cyclic image");
        }
    }

    r.distinct_lines = true;
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (images[i] == images[j]) r.distinct_lines = false;
    if (!r.distinct_lines) r.failures.push_back("(4) two blocks share the same image line");

    r.lines_match = cand.lines.size() == blocks.size();
    for (std::size_t i = 0; r.lines_match && i < blocks.size(); ++i)
        r.lines_match = cand.lines[i].size() == phi.s && !is_zero(cand.lines[i]) &&
                        Subspace::span(phi.s, {cand.lines[i]}) == images[i];
    if (!r.lines_match) r.failures.push_back("declared lines do not span the block images");
    return r;
}

BaseResult compute_symplectic_base(const AlternatingMapQ& phi, std::uint64_t seed, std::size_t retries) {
    Subspace v0 = center(phi);
    auto piv = v0.pivots();
    RatMatrix complement(0, phi.n);
    for (std::size_t j = 0; j < phi.n; ++j) {
        if (std::find(piv.begin(), piv.end(), j) != piv.end()) continue;
        RatVector e(phi.n);
        e[j] = 1;
        complement.append_row(e);
    }
    const std::size_t k = complement.rows();
    if (k == 0) return SymplecticBase{v0, {}, {}};

    Rng rng = Rng(seed).split("symbase");
    auto draw = [&] {
        RatVector t(phi.s);
        while (is_zero(t))
            for (auto& x : t) x = rng.uniform(-9, 9);
        return t;
    };

    NoBaseFound failure{retries, "no attempt made", std::nullopt};
    for (std::size_t attempt = 0; attempt < retries; ++attempt) {
        RatVector t = draw(), t2 = draw();
        RatMatrix g = complement * phi.pencil(t) * complement.transpose();
        RatMatrix g2 = complement * phi.pencil(t2) * complement.transpose();
        auto g_inv = inverse(g);
        if (!g_inv) {
            failure.reason = "pencil is singular on a complement of the centre";
            continue;
        }
        std::vector<Rational> eigenvalues = rational_roots(charpoly(*g_inv * g2));

        std::vector<Subspace> blocks;
        std::size_t found = 0;
        for (const auto& lambda : eigenvalues) {
            RatMatrix shifted(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) shifted(i, j) = g2(i, j) - lambda * g(i, j);
            RatMatrix coords = nullspace(shifted);
            found += coords.rows();
            blocks.emplace_back(phi.n, coords * complement);
        }
        if (found != k) {
            failure.reason = "pencil operator has irrational or defective spectrum";
            continue;
        }

        // Blocks with the same image line belong together.
        std::vector<Subspace> merged;
        std::vector<Subspace> merged_images;
        for (const auto& b : blocks) {
            Subspace img = image_span(phi, b);
            auto it = std::find(merged_images.begin(), merged_images.end(), img);
            if (img.dim() == 1 && it != merged_images.end()) {
                auto idx = static_cast<std::size_t>(it - merged_images.begin());
                merged[idx] = subspace_sum(merged[idx], b);
            } else {
                merged.push_back(b);
                merged_images.push_back(img);
            }
        }

        std::vector<std::size_t> order(merged.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return merged[a] < merged[b]; });
        SymplecticBase base{v0, {}, {}};
        for (auto i : order) {
            base.blocks.push_back(merged[i]);
            base.lines.push_back(merged_images[i].dim() > 0 ? merged_images[i].vectors().front()
                                                             : RatVector(phi.s));
        }
        BaseReport report = verify_symplectic_base(phi, base);
        if (report.passed()) return base;
        failure.reason = "candidate from eigenspaces failed verification";
        failure.last_report = std::move(report);
    }
    return failure;
}

std::vector<Subspace> decompose_abelian(const AlternatingMapQ& phi, const SymplecticBase& base, const Subspace& u) {
    if (u.ambient_dim() != phi.n) throw DimensionError("subspace does not live in V");
    if (base.v0.dim() != 0) throw std::invalid_argument("symplectic base has a nontrivial centre; pass to V/V0 first");
    if (!verify_symplectic_base(phi, base).passed()) throw std::invalid_argument("not a symplectic base");
    if (!is_abelian(phi, u)) throw std::invalid_argument("subspace is not abelian");
    if (2 * u.dim() < phi.n) throw std::invalid_argument("abelian subspace has dimension below dim V / 2");
    std::vector<Subspace> parts;
    for (const auto& b : base.blocks) parts.push_back(subspace_intersection(u, b));
    return parts;
}

AmpleReport check_ample(const AlternatingMapQ& phi, const Subspace& x, const std::vector<Subspace>& omega,
                        const std::optional<std::vector<Subspace>>& probes, std::uint64_t seed) {
    if (x.ambient_dim() != phi.n) throw DimensionError("X does not live in V");
    if (omega.empty()) throw std::invalid_argument("Ω must be nonempty");
    AmpleReport r;
    r.m = omega.front().dim();
    for (const auto& u : omega) {
        if (u.ambient_dim() != phi.n || !x.contains(u)) throw std::invalid_argument("member of Ω is not inside X");
        if (!is_abelian(phi, u)) throw std::invalid_argument("member of Ω is not abelian");
        if (u.dim() != r.m) throw std::invalid_argument("members of Ω have different dimensions");
    }

    const Subspace zeta = relative_center(phi, x);
    r.dim_x = x.dim();
    r.dim_center = zeta.dim();
    r.dim_condition = r.dim_x + r.dim_center == 2 * r.m;
    if (!r.dim_condition) r.failures.push_back("dim X + dim ζ(X) != 2m");

    r.cond1_applicable = r.dim_x - r.dim_center > 2;
    r.cond1 = true;
    if (r.cond1_applicable) {
        for (std::size_t i = 0; i < omega.size(); ++i) {
            bool partner = false;
            for (std::size_t j = 0; j < omega.size() && !partner; ++j) {
                if (i == j || omega[i] == omega[j]) continue;
                Subspace meet = subspace_intersection(omega[i], omega[j]);
                partner = meet.contains(zeta) && meet.dim() > zeta.dim();
            }
            if (!partner) {
                r.cond1 = false;
                r.failures.push_back("(1) member " + std::to_string(i) + " of Ω has no partner meeting it beyond ζ(X)");
            }
        }
    }

    if (probes) {
        for (const auto& p : *probes) {
            if (p.ambient_dim() != phi.n || !x.contains(p)) throw std::invalid_argument("probe is not inside X");
            if (!is_abelian(phi, p)) throw std::invalid_argument("probe is not abelian");
        }
        r.probes = *probes;
    } else {
        Rng rng = Rng(seed).split("check_ample");
        const auto xs = x.vectors();
        auto random_vector = [&](const std::vector<RatVector>& basis) {
            RatVector v(phi.n);
            for (const auto& b : basis) {
                long c = rng.uniform(-3, 3);
                for (std::size_t i = 0; i < phi.n; ++i) v[i] += c * b[i];
            }
            return v;
        };
        r.probes = omega;
        for (const auto& v : xs) r.probes.push_back(Subspace::span(phi.n, {v}));
        for (int i = 0; i < 4 && !xs.empty(); ++i) {
            RatVector v = random_vector(xs);
            if (!is_zero(v)) r.probes.push_back(Subspace::span(phi.n, {v}));
        }
        for (int i = 0; i < 4 && r.m > 0; ++i) {
            const auto target = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(r.m)));
            Subspace u(phi.n);
            for (int tries = 0; u.dim() < target && tries < 16; ++tries) {
                Subspace room = subspace_intersection(x, centralizer(phi, u));
                RatVector v = random_vector(room.vectors());
                if (!u.contains(v)) u = subspace_sum(u, Subspace::span(phi.n, {v}));
            }
            if (u.dim() > 0) r.probes.push_back(u);
        }
        std::sort(r.probes.begin(), r.probes.end());
        r.probes.erase(std::unique(r.probes.begin(), r.probes.end()), r.probes.end());
    }

    r.cond2 = true;
    for (std::size_t i = 0; i < r.probes.size(); ++i) {
        bool escapes = std::any_of(omega.begin(), omega.end(), [&](const Subspace& u1) {
            return zeta.contains(subspace_intersection(r.probes[i], u1));
        });
        if (!escapes) {
            r.cond2 = false;
            r.failures.push_back("(2) probe " + std::to_string(i) + " meets every member of Ω beyond ζ(X)");
        }
    }
    return r;
}

}  // namespace qtdelta
