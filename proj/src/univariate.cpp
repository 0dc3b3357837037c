#include "qtdelta/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtdelta {

namespace {

int sign(const Rational& x) { return sgn(x); }

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        UPoly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
        if (r.is_zero()) break;
        seq.push_back(UPoly() - r);
    }
    return seq;
}

int variations(const std::vector<UPoly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
        int v = sign(s(x));
        if (v == 0) continue;
        if (last != 0 && v != last) ++count;
        last = v;
    }
    return count;
}

Rational floor_of(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

}  // namespace

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> d = c_;
    Rational lead = c_.back();
    for (auto& x : d) x /= lead;
    return UPoly(std::move(d));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return UPoly(std::move(r));
}

DivMod divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> quo(std::max(0, a.degree() - db + 1));
    for (int d = a.degree(); d >= db; --d) {
        Rational k = rem[d] / b.leading();
        quo[d - db] = k;
        if (k == 0) continue;
        for (int i = 0; i <= db; ++i) rem[d - db + i] -= k * b.coeffs()[i];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UPoly charpoly(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw DimensionError("charpoly of a non-square matrix");
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix acc(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = m * acc;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        acc = std::move(next);
        RatMatrix prod = m * acc;
        Rational trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += prod(i, i);
        c[n - k] = -trace / static_cast<long>(k);
    }
    return UPoly(std::move(c));
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_between(-hi, -lo);
    Rational fl = floor_of(lo);
    if (fl == lo) return lo;
    if (fl + 1 <= hi) return fl + 1;
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

std::vector<Rational> rational_roots(const UPoly& p) {
    if (p.degree() <= 0) return {};
    UPoly sf = divmod(p, gcd(p, p.derivative())).quotient.monic();

    std::vector<Rational> roots;
    if (sf(0) == 0) {
        roots.push_back(0);
        sf = divmod(sf, UPoly({0, 1})).quotient;
    }
    if (sf.degree() <= 0) return roots;

    // Leading coefficient of the primitive integer multiple bounds every
    // rational root's denominator.
    Integer den = 1;
    for (const auto& x : sf.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Integer content = 0;
    for (const auto& x : sf.coeffs()) {
        Integer v = x.get_num() * (den / x.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    Integer lead = abs(sf.leading().get_num() * (den / sf.leading().get_den()) / content);
    const Rational resolution(Integer(1), lead * lead);

    Rational bound = 0;
    for (const auto& x : sf.coeffs()) bound = std::max(bound, Rational(abs(x)));
    bound += 1;

    const auto seq = sturm_sequence(sf);
    auto split_point = [&](const Rational& lo, const Rational& hi) {
        // any interior point that is not a root
        for (long k = 2;; ++k) {
            Rational mid = lo + (hi - lo) / k;
            if (sf(mid) != 0) return mid;
            roots.push_back(mid);
            // the root is exact; keep looking for a non-root splitter
        }
    };

    struct Interval {
        Rational lo, hi;
    };
    std::vector<Interval> work{{-bound, bound}};
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        const int count = variations(seq, iv.lo) - variations(seq, iv.hi);
        if (count == 0) continue;
        if (count > 1) {
            Rational mid = split_point(iv.lo, iv.hi);
            work.push_back({iv.lo, mid});
            work.push_back({mid, iv.hi});
            continue;
        }
        Rational lo = iv.lo, hi = iv.hi;
        int sign_lo = sign(sf(lo));
        bool exact = false;
        while (hi - lo >= resolution) {
            Rational mid = (lo + hi) / 2;
            int s = sign(sf(mid));
            if (s == 0) {
                roots.push_back(mid);
                exact = true;
                break;
            }
            if (s == sign_lo)
                lo = mid;
            else
                hi = mid;
        }
        if (exact) continue;
        Rational candidate = simplest_between(lo, hi);
        if (sf(candidate) == 0) roots.push_back(candidate);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw DimensionError("inverse of a non-square matrix");
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a(p, col) == 0) ++p;
        if (p == n) return std::nullopt;
        a.swap_rows(col, p);
        inv.swap_rows(col, p);
        Rational k = 1 / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= k;
            inv(col, j) *= k;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace qtdelta
