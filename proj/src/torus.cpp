#include "qtdelta/torus.hpp"

#include <limits>
#include <stdexcept>

namespace qtdelta {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("exponent overflow");
    return z.get_si();
}

Exponent add(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

IntVector to_integers(const Exponent& a) {
    IntVector v;
    v.reserve(a.size());
    for (auto x : a) v.emplace_back(static_cast<long>(x));
    return v;
}

void check_square(const IntMatrix& m, std::size_t n) {
    if (m.rows() != n || m.cols() != n) throw DimensionError("form matrix must be n x n");
}

}  // namespace

QTorusElement QTorusElement::one(std::size_t rank, std::size_t params) {
    return monomial(rank, params, Exponent(rank, 0));
}

QTorusElement QTorusElement::monomial(std::size_t rank, std::size_t params, Exponent a, Rational c,
                                      Exponent qexp) {
    QTorusElement e(rank, params);
    if (qexp.empty()) qexp.assign(params, 0);
    e.add_term(a, qexp, c);
    return e;
}

void QTorusElement::add_term(const Exponent& a, const Exponent& qexp, const Rational& c) {
    if (a.size() != rank_) throw DimensionError("monomial exponent has wrong rank");
    if (qexp.size() != params_) throw DimensionError("parameter exponent has wrong length");
    if (c == 0) return;
    auto& coeff = terms_[a];
    auto [it, inserted] = coeff.try_emplace(qexp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeff.erase(it);
    }
    if (coeff.empty()) terms_.erase(a);
}

void QTorusElement::add_term(const Exponent& a, const Coefficient& coeff) {
    for (const auto& [qexp, c] : coeff) add_term(a, qexp, c);
}

std::vector<Exponent> QTorusElement::support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& [a, _] : terms_) s.push_back(a);
    return s;
}

QTorusElement operator+(const QTorusElement& a, const QTorusElement& b) {
    if (a.rank_ != b.rank_ || a.params_ != b.params_) throw DimensionError("adding elements of different tori");
    QTorusElement r = a;
    for (const auto& [e, coeff] : b.terms_) r.add_term(e, coeff);
    return r;
}

// ---------------------------------------------------------------------------

CocycleForm::CocycleForm(std::size_t rank_, std::size_t params_, std::vector<IntMatrix> forms)
    : rank(rank_), params(params_), B(std::move(forms)) {
    if (B.size() != params) throw DimensionError("cocycle needs one matrix per parameter");
    for (const auto& m : B) check_square(m, rank);
}

CocycleForm CocycleForm::trivial(std::size_t rank, std::size_t params) {
    return CocycleForm(rank, params, std::vector<IntMatrix>(params, IntMatrix(rank, rank)));
}

Exponent CocycleForm::twist(const Exponent& a, const Exponent& b) const {
    Exponent out(params);
    for (std::size_t k = 0; k < params; ++k) {
        Integer s = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < rank; ++j)
                if (b[j] != 0) s += B[k](i, j) * static_cast<long>(a[i]) * static_cast<long>(b[j]);
        }
        out[k] = to_int64(s);
    }
    return out;
}

CocycleForm CocycleForm::restrict_to(const IntMatrix& basis) const {
    if (basis.cols() != rank) throw DimensionError("restriction basis has wrong ambient rank");
    std::vector<IntMatrix> forms;
    for (const auto& m : B) forms.push_back(basis * m * basis.transpose());
    return CocycleForm(basis.rows(), params, std::move(forms));
}

AlternatingFormZ::AlternatingFormZ(std::size_t rank_, std::size_t params_, std::vector<IntMatrix> forms)
    : rank(rank_), params(params_), phi(std::move(forms)) {
    if (phi.size() != params) throw DimensionError("alternating form needs one matrix per parameter");
    for (const auto& m : phi) {
        check_square(m, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                if (m(i, j) != -m(j, i)) throw std::invalid_argument("form matrix is not antisymmetric");
    }
}

IntVector AlternatingFormZ::value(const IntVector& a, const IntVector& b) const {
    if (a.size() != rank || b.size() != rank) throw DimensionError("vector has wrong rank");
    IntVector out(params);
    for (std::size_t k = 0; k < params; ++k)
        for (std::size_t i = 0; i < rank; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < rank; ++j) out[k] += a[i] * phi[k](i, j) * b[j];
        }
    return out;
}

AlternatingFormZ AlternatingFormZ::restrict_to(const IntMatrix& basis) const {
    if (basis.cols() != rank) throw DimensionError("restriction basis has wrong ambient rank");
    std::vector<IntMatrix> forms;
    for (const auto& m : phi) forms.push_back(basis * m * basis.transpose());
    return AlternatingFormZ(basis.rows(), params, std::move(forms));
}

// ---------------------------------------------------------------------------

QTorusElement multiply(const QTorusElement& a, const QTorusElement& b, const CocycleForm& c) {
    if (a.rank() != b.rank() || a.rank() != c.rank) throw DimensionError("multiply: rank mismatch");
    if (a.params() != b.params() || a.params() != c.params) throw DimensionError("multiply: parameter mismatch");
    QTorusElement out(a.rank(), a.params());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponent shift = c.twist(ea, eb);
            Exponent e = add(ea, eb);
            for (const auto& [qa, ra] : ca)
                for (const auto& [qb, rb] : cb) out.add_term(e, add(add(qa, qb), shift), ra * rb);
        }
    }
    return out;
}

QTorusElement inverse_monomial(const Exponent& a, const CocycleForm& c) {
    Exponent neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("exponent overflow");
        neg[i] = -a[i];
    }
    return QTorusElement::monomial(c.rank, c.params, neg, 1, c.twist(a, a));
}

AlternatingFormZ commutator_form(const CocycleForm& c) {
    std::vector<IntMatrix> forms;
    for (const auto& b : c.B) {
        IntMatrix bt = b.transpose();
        IntMatrix phi(c.rank, c.rank);
        for (std::size_t i = 0; i < c.rank; ++i)
            for (std::size_t j = 0; j < c.rank; ++j) phi(i, j) = b(i, j) - bt(i, j);
        forms.push_back(std::move(phi));
    }
    return AlternatingFormZ(c.rank, c.params, std::move(forms));
}

Rational chi_min(const QTorusElement& alpha, const RatVector& chi) {
    if (alpha.is_zero()) throw std::invalid_argument("chi_min of the zero element");
    if (chi.size() != alpha.rank()) throw DimensionError("character has wrong length");
    std::optional<Rational> best;
    for (const auto& [a, _] : alpha.terms()) {
        Rational v = dot(chi, to_rational(to_integers(a)));
        if (!best || v < *best) best = v;
    }
    return *best;
}

Sublattice center_lattice(const AlternatingFormZ& form) {
    IntMatrix stacked(0, form.rank);
    for (const auto& m : form.phi)
        for (std::size_t i = 0; i < m.rows(); ++i) stacked.append_row(m.row(i));
    return kernel_lattice(stacked);
}

bool is_commutative(const AlternatingFormZ& form, const Sublattice& b) {
    return cocycle_image(form, b).rank() == 0;
}

Sublattice cocycle_image(const AlternatingFormZ& form, const Sublattice& b) {
    if (b.ambient_rank() != form.rank) throw DimensionError("cocycle_image: ambient mismatch");
    IntMatrix gens(0, form.params);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = i + 1; j < b.rank(); ++j) {
            IntVector v = form.value(b.basis().row(i), b.basis().row(j));
            if (!is_zero(v)) gens.append_row(v);
        }
    return Sublattice(form.params, gens);
}

Theorem42Report verify_theorem42(const AlternatingFormZ& form, const std::vector<Sublattice>& parts) {
    std::size_t rank_sum = 0;
    IntMatrix all(0, form.rank);
    for (const auto& p : parts) {
        if (p.ambient_rank() != form.rank) throw DimensionError("verify_theorem42: part has wrong ambient rank");
        rank_sum += p.rank();
        for (std::size_t i = 0; i < p.rank(); ++i) all.append_row(p.basis().row(i));
    }
    if (rank(to_rational(all)) != rank_sum) throw std::invalid_argument("verify_theorem42: parts are not independent");

    Theorem42Report r;
    r.finite_index = rank_sum == form.rank;

    r.commuting_parts = true;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            for (std::size_t a = 0; a < parts[i].rank(); ++a)
                for (std::size_t b = 0; b < parts[j].rank(); ++b)
                    if (!is_zero(form.value(parts[i].basis().row(a), parts[j].basis().row(b))))
                        r.commuting_parts = false;

    r.trivial_centres = true;
    r.cyclic_images = true;
    for (const auto& p : parts) {
        if (center_lattice(form.restrict_to(p.basis())).rank() != 0) r.trivial_centres = false;
        r.images.push_back(cocycle_image(form, p));
        if (r.images.back().rank() != 1) r.cyclic_images = false;
    }

    r.noncommensurable = true;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (commensurable(r.images[i], r.images[j])) r.noncommensurable = false;
    return r;
}

}  // namespace qtdelta
