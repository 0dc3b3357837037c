#include "qtdelta/polyhedral.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qtdelta {

namespace {

struct Generators {
    std::vector<RatVector> lineality;
    std::vector<RatVector> rays;
};

RatVector scaled_primitive(const RatVector& v) { return to_rational(primitive_integer(v)); }

void axpy(RatVector& y, const Rational& k, const RatVector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += k * x[i];
}

// Incremental double description (Motzkin). Lineality is kept as an explicit
// basis; a constraint that is not identically zero on the lineality space
// consumes one lineality direction instead of splitting rays.
Generators double_description(std::size_t d, const std::vector<RatVector>& equalities,
                              const std::vector<RatVector>& inequalities) {
    Generators g;
    for (std::size_t i = 0; i < d; ++i) {
        RatVector e(d);
        e[i] = 1;
        g.lineality.push_back(std::move(e));
    }
    std::vector<RatVector> processed;

    auto apply = [&](const RatVector& a, bool is_equality) {
        if (a.size() != d) throw DimensionError("constraint length does not match ambient dimension");
        auto lead = std::find_if(g.lineality.begin(), g.lineality.end(),
                                 [&](const RatVector& l) { return dot(a, l) != 0; });
        if (lead != g.lineality.end()) {
            RatVector l0 = *lead;
            g.lineality.erase(lead);
            Rational a0 = dot(a, l0);
            if (a0 < 0) {
                for (auto& x : l0) x = -x;
                a0 = -a0;
            }
            for (auto& l : g.lineality) axpy(l, -dot(a, l) / a0, l0);
            for (auto& r : g.rays) {
                axpy(r, -dot(a, r) / a0, l0);
                r = scaled_primitive(r);
            }
            if (!is_equality) g.rays.push_back(scaled_primitive(l0));
            processed.push_back(a);
            return;
        }

        std::vector<RatVector> pos, neg, zero;
        std::vector<Rational> pos_val, neg_val;
        for (auto& r : g.rays) {
            Rational v = dot(a, r);
            if (v > 0) {
                pos.push_back(r);
                pos_val.push_back(v);
            } else if (v < 0) {
                neg.push_back(r);
                neg_val.push_back(v);
            } else {
                zero.push_back(r);
            }
        }
        const long target_rank = static_cast<long>(d) - static_cast<long>(g.lineality.size()) - 2;
        std::vector<RatVector> next = zero;
        if (!is_equality) next.insert(next.end(), pos.begin(), pos.end());
        std::set<RatVector> seen(next.begin(), next.end());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = 0; j < neg.size(); ++j) {
                RatMatrix common(0, d);
                for (const auto& c : processed)
                    if (dot(c, pos[i]) == 0 && dot(c, neg[j]) == 0) common.append_row(c);
                if (static_cast<long>(rank(common)) != target_rank) continue;
                RatVector r(d);
                axpy(r, pos_val[i], neg[j]);
                axpy(r, -neg_val[j], pos[i]);
                r = scaled_primitive(r);
                if (seen.insert(r).second) next.push_back(std::move(r));
            }
        }
        g.rays = std::move(next);
        processed.push_back(a);
    };

    for (const auto& e : equalities) apply(e, true);
    for (const auto& a : inequalities) apply(a, false);
    return g;
}

RatVector reduce_modulo(const RatVector& v, const RatMatrix& rref_rows) {
    RatVector out = v;
    for (std::size_t i = 0; i < rref_rows.rows(); ++i) {
        std::size_t p = 0;
        while (rref_rows(i, p) == 0) ++p;
        if (out[p] == 0) continue;
        Rational k = out[p];
        for (std::size_t j = 0; j < out.size(); ++j) out[j] -= k * rref_rows(i, j);
    }
    return out;
}

IntVector sign_normalized(IntVector v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

Rational eval(const IntVector& a, const RatVector& x) {
    if (a.size() != x.size()) throw DimensionError("point does not match ambient dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

std::vector<RatVector> as_rational(const std::vector<IntVector>& rows) {
    std::vector<RatVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(to_rational(r));
    return out;
}

}  // namespace

Cone::Cone(std::size_t ambient_dim, const std::vector<RatVector>& equalities,
           const std::vector<RatVector>& inequalities)
    : ambient_(ambient_dim) {
    build(equalities, inequalities);
}

Cone Cone::full(std::size_t n) { return Cone(n, {}, {}); }

Cone Cone::origin(std::size_t n) {
    std::vector<RatVector> eqs;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n);
        e[i] = 1;
        eqs.push_back(std::move(e));
    }
    return Cone(n, eqs, {});
}

Cone Cone::from_generators(std::size_t n, const std::vector<RatVector>& rays,
                           const std::vector<RatVector>& lineality) {
    // The dual cone's generators are the constraints of the primal.
    Generators dual = double_description(n, lineality, rays);
    return Cone(n, dual.lineality, dual.rays);
}

void Cone::build(const std::vector<RatVector>& equalities, const std::vector<RatVector>& inequalities) {
    Generators g = double_description(ambient_, equalities, inequalities);

    Subspace lin = Subspace::span(ambient_, g.lineality);
    for (const auto& row : lin.vectors()) lineality_.push_back(primitive_integer(row));

    std::set<IntVector> ray_set;
    for (const auto& r : g.rays) {
        RatVector reduced = reduce_modulo(r, lin.basis());
        if (!is_zero(reduced)) ray_set.insert(primitive_integer(reduced));
    }
    rays_.assign(ray_set.begin(), ray_set.end());

    std::vector<RatVector> spanning = g.lineality;
    spanning.insert(spanning.end(), g.rays.begin(), g.rays.end());
    Subspace sp = Subspace::span(ambient_, spanning);
    dim_ = sp.dim();
    Subspace perp = orthogonal_complement(sp);
    for (const auto& row : perp.vectors()) equalities_.push_back(primitive_integer(row));

    std::set<IntVector> facets;
    for (const auto& a : inequalities) {
        RatMatrix tight = RatMatrix::from_rows(g.lineality, ambient_);
        bool implicit_equality = true;
        for (const auto& r : g.rays) {
            if (dot(a, r) == 0)
                tight.append_row(r);
            else
                implicit_equality = false;
        }
        if (implicit_equality || rank(tight) + 1 != dim_) continue;
        facets.insert(primitive_integer(reduce_modulo(a, perp.basis())));
    }
    inequalities_.assign(facets.begin(), facets.end());

    // H- and V-representation must agree on the generators.
    for (const auto& r : rays_) {
        RatVector rq = to_rational(r);
        for (const auto& e : equalities)
            if (dot(e, rq) != 0) throw std::logic_error("double description: ray violates an equality");
        for (const auto& a : inequalities)
            if (dot(a, rq) < 0) throw std::logic_error("double description: ray violates an inequality");
    }
}

bool Cone::contains(const RatVector& p) const {
    for (const auto& e : equalities_)
        if (eval(e, p) != 0) return false;
    for (const auto& a : inequalities_)
        if (eval(a, p) < 0) return false;
    return true;
}

bool Cone::contains(const Cone& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("cones in different ambient spaces");
    for (const auto& r : other.rays_)
        if (!contains(to_rational(r))) return false;
    for (const auto& l : other.lineality_) {
        RatVector lq = to_rational(l);
        if (!contains(lq)) return false;
        for (auto& x : lq) x = -x;
        if (!contains(lq)) return false;
    }
    return true;
}

Subspace Cone::span() const {
    std::vector<RatVector> gens = as_rational(lineality_);
    for (const auto& r : rays_) gens.push_back(to_rational(r));
    return Subspace::span(ambient_, gens);
}

RatVector Cone::interior_point() const {
    RatVector p(ambient_);
    for (const auto& r : rays_)
        for (std::size_t i = 0; i < ambient_; ++i) p[i] += r[i];
    return p;
}

Cone Cone::tangent_cone(const RatVector& x) const {
    if (!contains(x)) throw std::invalid_argument("tangent_cone: point not in cone");
    std::vector<RatVector> active;
    for (const auto& a : inequalities_)
        if (eval(a, x) == 0) active.push_back(to_rational(a));
    return Cone(ambient_, as_rational(equalities_), active);
}

Cone Cone::preimage(const RatMatrix& p) const {
    if (p.rows() != ambient_) throw DimensionError("preimage: matrix rows must match cone dimension");
    std::vector<RatVector> eqs, ineqs;
    for (const auto& e : equalities_) eqs.push_back(row_times(to_rational(e), p));
    for (const auto& a : inequalities_) ineqs.push_back(row_times(to_rational(a), p));
    return Cone(p.cols(), eqs, ineqs);
}

Cone Cone::intersect_halfspace(const RatVector& normal) const {
    std::vector<RatVector> ineqs = as_rational(inequalities_);
    ineqs.push_back(normal);
    return Cone(ambient_, as_rational(equalities_), ineqs);
}

bool operator<(const Cone& a, const Cone& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.dim_ != b.dim_) return a.dim_ > b.dim_;
    if (a.equalities_ != b.equalities_) return a.equalities_ < b.equalities_;
    return a.inequalities_ < b.inequalities_;
}

// ---------------------------------------------------------------------------

Fan::Fan(std::size_t ambient_dim, std::vector<Cone> cones) : ambient_(ambient_dim) {
    for (const auto& c : cones)
        if (c.ambient_dim() != ambient_dim) throw DimensionError("fan cone has wrong ambient dimension");
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    for (std::size_t i = 0; i < cones.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < cones.size() && !redundant; ++j)
            redundant = j != i && cones[j].dim() >= cones[i].dim() && cones[j].contains(cones[i]);
        if (!redundant) cones_.push_back(cones[i]);
    }
}

int cone_dim(const Cone& c) { return static_cast<int>(c.dim()); }

int fan_dim(const Fan& f) {
    int d = -1;
    for (const auto& c : f.cones()) d = std::max(d, cone_dim(c));
    return d;
}

bool member(const Cone& c, const RatVector& p) { return c.contains(p); }

bool member(const Fan& f, const RatVector& p) {
    return std::any_of(f.cones().begin(), f.cones().end(), [&](const Cone& c) { return c.contains(p); });
}

Fan local_cone(const Fan& f, const RatVector& x) {
    if (x.size() != f.ambient_dim()) throw DimensionError("local_cone: point dimension mismatch");
    std::vector<Cone> parts;
    for (const auto& c : f.cones())
        if (c.contains(x)) parts.push_back(c.tangent_cone(x));
    return Fan(f.ambient_dim(), std::move(parts));
}

Fan preimage(const Fan& f, const RatMatrix& p) {
    if (p.rows() != f.ambient_dim()) throw DimensionError("preimage: matrix rows must match fan dimension");
    std::vector<Cone> parts;
    for (const auto& c : f.cones()) parts.push_back(c.preimage(p));
    return Fan(p.cols(), std::move(parts));
}

std::optional<RatVector> fan_difference_witness(const Fan& a, const Fan& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("fans in different ambient spaces");
    if (a.empty()) return std::nullopt;
    if (b.empty()) return a.cones().front().interior_point();

    std::set<IntVector> hyperplanes;
    for (const auto& c : b.cones()) {
        for (const auto& e : c.equalities()) hyperplanes.insert(sign_normalized(e));
        for (const auto& h : c.inequalities()) hyperplanes.insert(sign_normalized(h));
    }

    for (const auto& cone : a.cones()) {
        if (std::any_of(b.cones().begin(), b.cones().end(), [&](const Cone& d) { return d.contains(cone); }))
            continue;
        // Refine the cone by every hyperplane of b. Each top-dimensional cell
        // then has a constant sign vector, so one relative-interior point
        // decides whether the whole closed cell is covered.
        std::vector<Cone> cells{cone};
        for (const auto& h : hyperplanes) {
            std::vector<Cone> next;
            for (auto& cell : cells) {
                bool pos = false, neg = false;
                for (const auto& l : cell.lineality())
                    if (dot(h, l) != 0) pos = neg = true;
                for (const auto& r : cell.rays()) {
                    Integer v = dot(h, r);
                    if (v > 0) pos = true;
                    if (v < 0) neg = true;
                }
                if (pos && neg) {
                    RatVector hq = to_rational(h);
                    next.push_back(cell.intersect_halfspace(hq));
                    for (auto& x : hq) x = -x;
                    next.push_back(cell.intersect_halfspace(hq));
                } else {
                    next.push_back(std::move(cell));
                }
            }
            cells = std::move(next);
        }
        for (const auto& cell : cells) {
            RatVector p = cell.interior_point();
            if (!member(b, p)) return p;
        }
    }
    return std::nullopt;
}

bool fan_subset(const Fan& a, const Fan& b) { return !fan_difference_witness(a, b).has_value(); }

bool fan_equal(const Fan& a, const Fan& b) { return fan_subset(a, b) && fan_subset(b, a); }

std::vector<Subspace> carrier_spaces(const Fan& f) {
    const int top = fan_dim(f);
    std::vector<Subspace> spaces;
    for (const auto& c : f.cones())
        if (cone_dim(c) == top) spaces.push_back(c.span());
    std::sort(spaces.begin(), spaces.end());
    spaces.erase(std::unique(spaces.begin(), spaces.end()), spaces.end());
    return spaces;
}

Fan delta_star(const Fan& f) {
    const int top = fan_dim(f);
    std::vector<Cone> parts;
    for (const auto& c : f.cones())
        if (cone_dim(c) == top) parts.push_back(c);
    return Fan(f.ambient_dim(), std::move(parts));
}

}  // namespace qtdelta
