#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goppa/errors.hpp"
#include "goppa/linalg.hpp"

namespace goppa {

using Exponent = std::vector<unsigned>;

/// Monomials of fixed total degree in n_vars variables, graded-lex with
/// x0 > x1 > ... (exponent vectors in lexicographic descending order).
struct MonomialBasis {
    unsigned degree = 0;
    unsigned n_vars = 0;
    std::vector<Exponent> exps;
    std::map<Exponent, std::size_t> index;

    MonomialBasis() = default;
    MonomialBasis(unsigned d, unsigned n) : degree(d), n_vars(n) {
        Exponent cur(n, 0);
        emit(cur, 0, d);
        for (std::size_t i = 0; i < exps.size(); ++i) index[exps[i]] = i;
    }

    std::size_t size() const { return exps.size(); }

    std::size_t index_of(const Exponent& e) const {
        auto it = index.find(e);
        if (it == index.end()) fail(errc::dimension_mismatch, "exponent not in basis");
        return it->second;
    }

  private:
    void emit(Exponent& cur, unsigned var, unsigned left) {
        if (var + 1 == n_vars) {
            cur[var] = left;
            exps.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            cur[var] = e;
            emit(cur, var + 1, left - e);
        }
        cur[var] = 0;
    }
};

inline std::size_t monomial_count(unsigned degree, unsigned n_vars) {
    // C(degree + n_vars - 1, n_vars - 1)
    std::size_t num = 1, den = 1;
    for (unsigned i = 1; i < n_vars; ++i) {
        num *= degree + i;
        den *= i;
    }
    return num / den;
}

/// Scale a coordinate/coefficient vector so its first nonzero entry is 1.
/// Canonical representative for projective points and curves-up-to-scale.
template <class K>
std::vector<K> normalize_scale(std::vector<K> v) {
    for (const K& x : v) {
        if (!x.is_zero()) {
            K inv = x.inv();
            for (K& y : v) y = y * inv;
            return v;
        }
    }
    return v;  // zero vector stays zero
}

template <class K>
bool lex_less(const std::vector<K>& a, const std::vector<K>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

/// Homogeneous polynomial, dense in the graded-lex monomial basis.
template <class K>
class HomogPoly {
  public:
    using field_type = typename K::field_type;

    HomogPoly(field_type fld, unsigned degree, unsigned n_vars)
        : fld_(fld),
          basis_(degree, n_vars),
          coeffs_(basis_.size(), fld.zero()) {}

    HomogPoly(field_type fld, unsigned degree, unsigned n_vars, std::vector<K> coeffs)
        : fld_(fld), basis_(degree, n_vars), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != basis_.size())
            fail(errc::dimension_mismatch, "coefficient count does not match basis");
    }

    field_type field() const { return fld_; }
    unsigned degree() const { return basis_.degree; }
    unsigned n_vars() const { return basis_.n_vars; }
    const MonomialBasis& basis() const { return basis_; }
    const std::vector<K>& coeffs() const { return coeffs_; }

    K& operator[](std::size_t i) { return coeffs_[i]; }
    const K& operator[](std::size_t i) const { return coeffs_[i]; }

    K& coeff(const Exponent& e) { return coeffs_[basis_.index_of(e)]; }
    const K& coeff(const Exponent& e) const { return coeffs_[basis_.index_of(e)]; }

    bool is_zero() const {
        for (const K& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    K evaluate(const std::vector<K>& pt) const {
        if (pt.size() != basis_.n_vars)
            fail(errc::dimension_mismatch, "point arity does not match variable count");
        K acc = fld_.zero();
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            K term = coeffs_[i];
            for (unsigned v = 0; v < basis_.n_vars; ++v)
                for (unsigned k = 0; k < basis_.exps[i][v]; ++k) term = term * pt[v];
            acc += term;
        }
        return acc;
    }

    /// Formal partial derivative; in char p terms can die, as they should.
    HomogPoly partial(unsigned var) const {
        if (degree() == 0) return HomogPoly(fld_, 0, n_vars());
        HomogPoly out(fld_, degree() - 1, n_vars());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const Exponent& e = basis_.exps[i];
            if (e[var] == 0 || coeffs_[i].is_zero()) continue;
            Exponent d = e;
            d[var] -= 1;
            out.coeff(d) += coeffs_[i] * fld_.from_int(e[var]);
        }
        return out;
    }

    HomogPoly operator+(const HomogPoly& o) const {
        HomogPoly r = *this;
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
        return r;
    }
    HomogPoly operator-(const HomogPoly& o) const {
        HomogPoly r = *this;
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
        return r;
    }
    HomogPoly operator*(const K& s) const {
        HomogPoly r = *this;
        for (K& c : r.coeffs_) c = c * s;
        return r;
    }

    HomogPoly operator*(const HomogPoly& o) const {
        if (n_vars() != o.n_vars())
            fail(errc::dimension_mismatch, "variable count mismatch in product");
        HomogPoly out(fld_, degree() + o.degree(), n_vars());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                Exponent e = basis_.exps[i];
                for (unsigned v = 0; v < e.size(); ++v) e[v] += o.basis_.exps[j][v];
                out.coeff(e) += coeffs_[i] * o.coeffs_[j];
            }
        }
        return out;
    }

    bool operator==(const HomogPoly& o) const {
        return degree() == o.degree() && n_vars() == o.n_vars() && coeffs_ == o.coeffs_;
    }

    /// Same curve up to nonzero scale.
    bool proportional(const HomogPoly& o) const {
        if (degree() != o.degree() || n_vars() != o.n_vars()) return false;
        return normalize_scale(coeffs_) == normalize_scale(o.coeffs_);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += coeffs_[i].to_string();
            for (unsigned v = 0; v < basis_.n_vars; ++v) {
                if (basis_.exps[i][v] == 0) continue;
                s += "*x" + std::to_string(v);
                if (basis_.exps[i][v] > 1) s += "^" + std::to_string(basis_.exps[i][v]);
            }
        }
        return s.empty() ? "0" : s;
    }

  private:
    void check(const HomogPoly& o) const {
        if (degree() != o.degree() || n_vars() != o.n_vars())
            fail(errc::dimension_mismatch, "degree/arity mismatch");
    }

    field_type fld_;
    MonomialBasis basis_;
    std::vector<K> coeffs_;
};

/// Substitute x_i -> sum_j M(i,j) y_j; zeros of the result are M^{-1} times
/// zeros of f.
template <class K>
HomogPoly<K> transform(const HomogPoly<K>& f, const Matrix<K>& m) {
    if (m.rows() != f.n_vars() || m.cols() != f.n_vars())
        fail(errc::dimension_mismatch, "substitution matrix shape");
    auto fld = f.field();
    std::vector<HomogPoly<K>> linear;
    for (unsigned i = 0; i < f.n_vars(); ++i) {
        HomogPoly<K> l(fld, 1, f.n_vars());
        for (unsigned j = 0; j < f.n_vars(); ++j) {
            Exponent e(f.n_vars(), 0);
            e[j] = 1;
            l.coeff(e) = m(i, j);
        }
        linear.push_back(l);
    }
    HomogPoly<K> out(fld, f.degree(), f.n_vars());
    const MonomialBasis& b = f.basis();
    for (std::size_t t = 0; t < b.size(); ++t) {
        if (f[t].is_zero()) continue;
        HomogPoly<K> term(fld, 0, f.n_vars());
        term[0] = f[t];
        for (unsigned v = 0; v < f.n_vars(); ++v)
            for (unsigned k = 0; k < b.exps[t][v]; ++k) term = term * linear[v];
        out = out + term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// evaluation and vanishing systems
// ---------------------------------------------------------------------------

/// gamma x dim matrix whose (i, j) entry is monomial_j(point_i).
template <class F>
Matrix<typename F::element> evaluation_matrix(const F& fld, unsigned degree,
                                              const std::vector<std::vector<typename F::element>>& pts,
                                              unsigned n_vars) {
    using K = typename F::element;
    MonomialBasis b(degree, n_vars);
    Matrix<K> m(fld, pts.size(), b.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != n_vars)
            fail(errc::dimension_mismatch, "point arity does not match variable count");
        for (std::size_t j = 0; j < b.size(); ++j) {
            K v = fld.one();
            for (unsigned var = 0; var < n_vars; ++var)
                for (unsigned k = 0; k < b.exps[j][var]; ++k) v = v * pts[i][var];
            m(i, j) = v;
        }
    }
    return m;
}

template <class K>
struct BasePoint {
    std::vector<K> point;
    unsigned multiplicity = 1;
};

/// Conditions matrix for "vanish to order m_i at p_i": one row per point and
/// multi-index alpha with |alpha| <= m_i - 1 (all iterated partials; rank
/// absorbs any redundancy).  Column j is the condition on monomial j.
template <class F>
Matrix<typename F::element> vanishing_conditions(const F& fld, unsigned degree,
                                                 const std::vector<BasePoint<typename F::element>>& base,
                                                 unsigned n_vars) {
    using K = typename F::element;
    MonomialBasis b(degree, n_vars);
    std::vector<std::vector<K>> rows;
    for (const auto& bp : base) {
        if (bp.point.size() != n_vars)
            fail(errc::dimension_mismatch, "point arity does not match variable count");
        if (bp.multiplicity == 0) fail(errc::dimension_mismatch, "zero multiplicity");
        for (unsigned order = 0; order < bp.multiplicity; ++order) {
            MonomialBasis alphas(order, n_vars);
            for (const Exponent& alpha : alphas.exps) {
                std::vector<K> row;
                row.reserve(b.size());
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const Exponent& e = b.exps[j];
                    bool dead = false;
                    K c = fld.one();
                    Exponent rem = e;
                    for (unsigned v = 0; v < n_vars && !dead; ++v) {
                        if (alpha[v] > e[v]) {
                            dead = true;
                            break;
                        }
                        for (unsigned k = 0; k < alpha[v]; ++k)
                            c = c * fld.from_int(e[v] - k);
                        rem[v] = e[v] - alpha[v];
                    }
                    if (dead || c.is_zero()) {
                        row.push_back(fld.zero());
                        continue;
                    }
                    for (unsigned v = 0; v < n_vars; ++v)
                        for (unsigned k = 0; k < rem[v]; ++k) c = c * bp.point[v];
                    row.push_back(c);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    Matrix<K> m(fld, rows.size(), b.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = rows[i][j];
    return m;
}

/// Subspace of degree-d forms vanishing to the prescribed orders.
template <class F>
Subspace<typename F::element> vanishing_system(const F& fld, unsigned degree,
                                               const std::vector<BasePoint<typename F::element>>& base,
                                               unsigned n_vars) {
    return kernel(vanishing_conditions(fld, degree, base, n_vars));
}

template <class F>
HomogPoly<typename F::element> poly_from_coeffs(const F& fld, unsigned degree, unsigned n_vars,
                                                std::vector<typename F::element> coeffs) {
    return HomogPoly<typename F::element>(fld, degree, n_vars, std::move(coeffs));
}

/// Polynomials of a subspace of the coefficient space, one per basis column.
template <class F>
std::vector<HomogPoly<typename F::element>> system_polys(const F& fld, unsigned degree,
                                                         unsigned n_vars,
                                                         const Subspace<typename F::element>& s) {
    std::vector<HomogPoly<typename F::element>> out;
    for (std::size_t j = 0; j < s.dim(); ++j)
        out.push_back(poly_from_coeffs(fld, degree, n_vars, s.basis.col(j)));
    return out;
}

/// Exact division test: q with f*q == g, or nullopt.  Multiplication by f is
/// linear on coefficients, so this is one linear solve plus a verification.
template <class K>
std::optional<HomogPoly<K>> divides(const HomogPoly<K>& f, const HomogPoly<K>& g) {
    if (f.n_vars() != g.n_vars())
        fail(errc::dimension_mismatch, "variable count mismatch");
    if (f.is_zero()) return g.is_zero() ? std::optional(g) : std::nullopt;
    if (f.degree() > g.degree()) return std::nullopt;
    auto fld = f.field();
    unsigned qd = g.degree() - f.degree();
    MonomialBasis qb(qd, f.n_vars());
    MonomialBasis gb(g.degree(), f.n_vars());
    Matrix<K> m(fld, gb.size(), qb.size());
    for (std::size_t j = 0; j < qb.size(); ++j) {
        HomogPoly<K> qj(fld, qd, f.n_vars());
        qj[j] = fld.one();
        HomogPoly<K> prod = f * qj;
        for (std::size_t i = 0; i < gb.size(); ++i) m(i, j) = prod[i];
    }
    auto x = solve(m, g.coeffs());
    if (!x) return std::nullopt;
    HomogPoly<K> q(fld, qd, f.n_vars(), *x);
    if (!(f * q == g)) return std::nullopt;
    return q;
}

// ---------------------------------------------------------------------------
// univariate polynomials (support for resultants, gcds, root finding)
// ---------------------------------------------------------------------------

/// Dense univariate polynomial; deg() is -1 for the zero polynomial.
template <class K>
class Poly1 {
  public:
    using field_type = typename K::field_type;

    explicit Poly1(field_type fld) : fld_(fld) {}
    Poly1(field_type fld, std::vector<K> coeffs) : fld_(fld), c_(std::move(coeffs)) {
        strip();
    }

    field_type field() const { return fld_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : fld_.zero(); }
    K lead() const { return c_.empty() ? fld_.zero() : c_.back(); }

    static Poly1 constant(field_type fld, const K& v) { return Poly1(fld, {v}); }
    /// x - r
    static Poly1 linear_root(field_type fld, const K& r) {
        return Poly1(fld, {-r, fld.one()});
    }

    K eval(const K& x) const {
        K acc = fld_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly1 operator+(const Poly1& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), fld_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly1(fld_, std::move(r));
    }
    Poly1 operator-(const Poly1& o) const { return *this + (-o); }
    Poly1 operator-() const {
        std::vector<K> r = c_;
        for (K& x : r) x = -x;
        return Poly1(fld_, std::move(r));
    }
    Poly1 operator*(const Poly1& o) const {
        if (is_zero() || o.is_zero()) return Poly1(fld_);
        std::vector<K> r(c_.size() + o.c_.size() - 1, fld_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        }
        return Poly1(fld_, std::move(r));
    }
    Poly1 operator*(const K& s) const {
        std::vector<K> r = c_;
        for (K& x : r) x = x * s;
        return Poly1(fld_, std::move(r));
    }

    bool operator==(const Poly1& o) const { return c_ == o.c_; }

    /// Euclidean division (coefficients live in a field).
    std::pair<Poly1, Poly1> divmod(const Poly1& d) const {
        if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
        Poly1 r = *this;
        std::vector<K> q(deg() >= d.deg() ? deg() - d.deg() + 1 : 0, fld_.zero());
        K dl = d.lead().inv();
        while (!r.is_zero() && r.deg() >= d.deg()) {
            std::size_t shift = r.deg() - d.deg();
            K f = r.lead() * dl;
            q[shift] = f;
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                r.c_[shift + i] -= f * d.c_[i];
            r.strip();
        }
        return {Poly1(fld_, std::move(q)), r};
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return Poly1(fld_);
        std::vector<K> r(c_.size() - 1, fld_.zero());
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * fld_.from_int(i);
        return Poly1(fld_, std::move(r));
    }

    Poly1 monic() const {
        if (is_zero()) return *this;
        return *this * lead().inv();
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string() + "*t^" + std::to_string(i);
        }
        return s;
    }

  private:
    void strip() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    field_type fld_;
    std::vector<K> c_;
};

template <class K>
Poly1<K> gcd(Poly1<K> a, Poly1<K> b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = b;
        b = r;
    }
    return a.monic();
}

/// Determinant over a commutative ring (no division), bitmask expansion.
/// Sized for Sylvester matrices of low-degree plane curves.
template <class R>
R det_ring(const std::vector<std::vector<R>>& m, const R& zero, const R& one) {
    std::size_t n = m.size();
    if (n == 0) return one;
    if (n > 20) fail(errc::dimension_mismatch, "ring determinant too large");
    std::vector<R> d(std::size_t(1) << n, zero);
    d[0] = one;
    for (std::size_t mask = 1; mask < d.size(); ++mask) {
        std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
        R acc = zero;
        bool plus = (row % 2) == 0;  // cofactor sign (-1)^{row + col-position}
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (std::size_t(1) << j))) continue;
            if (!m[row][j].is_zero()) {
                R term = m[row][j] * d[mask ^ (std::size_t(1) << j)];
                acc = plus ? acc + term : acc - term;
            }
            plus = !plus;
        }
        d[mask] = acc;
    }
    return d.back();
}

/// Resultant of f, g in (K[x0])[x1]: determinant of the Sylvester matrix with
/// entries in K[x0].  Degrees here stay small (plane curves), so the ring
/// determinant is fine.
template <class K>
Poly1<K> sylvester_resultant(const std::vector<Poly1<K>>& f, const std::vector<Poly1<K>>& g,
                             typename K::field_type fld) {
    // f, g are coefficient lists in x1 (index = power of x1), entries in K[x0]
    int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
    if (m < 0 || n < 0) return Poly1<K>(fld);
    Poly1<K> zero(fld), one = Poly1<K>::constant(fld, fld.one());
    std::size_t size = m + n;
    if (size == 0) return one;
    std::vector<std::vector<Poly1<K>>> s(size, std::vector<Poly1<K>>(size, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
    return det_ring(s, zero, one);
}

}  // namespace goppa
