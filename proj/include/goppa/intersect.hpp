#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "goppa/field.hpp"
#include "goppa/poly.hpp"
#include "goppa/rng.hpp"

namespace goppa {

inline constexpr int kIntersectRetries = 20;

namespace detail {

/// f(x0, x1, 1) as a polynomial in x1 with coefficients in K[x0]:
/// result[b] = sum over monomials x0^a x1^b x2^c of coeff * x0^a.
template <class K>
std::vector<Poly1<K>> dehomog_x1(const HomogPoly<K>& f) {
    auto fld = f.field();
    unsigned d = f.degree();
    std::vector<std::vector<K>> acc(d + 1, std::vector<K>(d + 1, fld.zero()));
    const MonomialBasis& b = f.basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (f[i].is_zero()) continue;
        unsigned a = b.exps[i][0], x1 = b.exps[i][1];
        acc[x1][a] += f[i];
    }
    std::vector<Poly1<K>> out;
    out.reserve(d + 1);
    for (unsigned x1 = 0; x1 <= d; ++x1) out.emplace_back(fld, acc[x1]);
    return out;
}

/// Specialize coefficients-in-K[x0] at x0 = t.
template <class K>
Poly1<K> at_x0(const std::vector<Poly1<K>>& f, const K& t, typename K::field_type fld) {
    std::vector<K> c;
    c.reserve(f.size());
    for (const auto& p : f) c.push_back(p.eval(t));
    return Poly1<K>(fld, std::move(c));
}

inline std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < Rational(0)) return std::nullopt;
    bigint n = r.num(), d = r.den();
    bigint sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

/// Distinct roots in the base field.  Linear and quadratic are closed form;
/// higher degrees scan F_p (the documented enumeration regime).
inline std::vector<Rational> field_roots(const Poly1<Rational>& f) {
    RationalField Q;
    std::vector<Rational> out;
    if (f.deg() == 1) {
        out.push_back(-f.coeff(0) / f.coeff(1));
    } else if (f.deg() == 2) {
        Rational a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        Rational disc = b * b - Q.from_int(4) * a * c;
        auto s = rational_sqrt(disc);
        if (!s) return out;
        Rational two_a = Q.from_int(2) * a;
        out.push_back((-b + *s) / two_a);
        if (!s->is_zero()) out.push_back((-b - *s) / two_a);
    } else if (f.deg() > 2) {
        fail(errc::non_rational_excess, "cannot enumerate roots over the rationals");
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Fp> field_roots(const Poly1<Fp>& f) {
    std::vector<Fp> out;
    if (f.deg() < 1) return out;
    std::uint64_t p = f.lead().modulus();
    PrimeField F{p};
    if (f.deg() == 1) {
        out.push_back(-f.coeff(0) / f.coeff(1));
    } else if (f.deg() == 2 && p > 2) {
        Fp a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        Fp disc = b * b - F.from_int(4) * a * c;
        auto s = sqrt_mod(disc.value(), p);
        if (!s) return out;
        Fp sq(*s, p);
        Fp inv2a = (F.from_int(2) * a).inv();
        out.push_back((-b + sq) * inv2a);
        if (!sq.is_zero()) out.push_back((-b - sq) * inv2a);
    } else {
        if (p > 2000000)
            fail(errc::degenerate_after_retries,
                 "root scan over F_p not feasible for p this large");
        for (std::uint64_t t = 0; t < p; ++t) {
            Fp x(t, p);
            if (f.eval(x).is_zero()) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Multiplicity of root t (how many times (x - t) divides f).
template <class K>
unsigned root_multiplicity(Poly1<K> f, const K& t) {
    auto lin = Poly1<K>::linear_root(f.field(), t);
    unsigned m = 0;
    while (!f.is_zero()) {
        auto [q, r] = f.divmod(lin);
        if (!r.is_zero()) break;
        ++m;
        f = q;
    }
    return m;
}

template <class K>
Matrix<K> invert(const Matrix<K>& m) {
    auto fld = m.field();
    std::size_t n = m.rows();
    auto r = rref(hstack(m, Matrix<K>::identity(fld, n)));
    if (r.rank() < n || r.pivot_cols.back() >= n)
        fail(errc::degenerate, "matrix not invertible");
    Matrix<K> inv(fld, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
    return inv;
}

/// Deterministic invertible coordinate changes: identity first, then matrices
/// with small entries drawn from a fixed-seed stream.
template <class F>
Matrix<typename F::element> coord_change(const F& fld, std::mt19937_64& rng, int attempt) {
    using K = typename F::element;
    if (attempt == 0) return Matrix<K>::identity(fld, 3);
    for (int guard = 0; guard < 1000; ++guard) {
        Matrix<K> m(fld, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = fld.from_int(static_cast<long long>(draw(rng, 7)) - 3);
        if (!det(m).is_zero()) return m;
    }
    fail(errc::degenerate_after_retries, "could not draw an invertible coordinate change");
}

}  // namespace detail

/// Remaining points of V(f) ∩ V(g) in P^2 after the known common points are
/// divided out.  Exact resultant elimination; a deterministic sequence of
/// coordinate changes (budget 20) handles chart degeneracies.  Results are
/// scale-normalized and lexicographically sorted.
template <class K>
std::vector<std::vector<K>> plane_curve_intersection(const HomogPoly<K>& f,
                                                     const HomogPoly<K>& g,
                                                     const std::vector<std::vector<K>>& known) {
    auto fld = f.field();
    if (f.n_vars() != 3 || g.n_vars() != 3)
        fail(errc::dimension_mismatch, "plane curves live in 3 homogeneous variables");
    if (f.is_zero() || g.is_zero()) fail(errc::degenerate, "zero curve");
    if (f.degree() == g.degree() && f.proportional(g))
        fail(errc::non_reduced_intersection, "identical curves have no finite intersection");
    unsigned d1 = f.degree(), d2 = g.degree();
    if (known.size() > std::size_t(d1) * d2)
        fail(errc::degenerate, "more known points than Bezout allows");
    std::size_t excess = std::size_t(d1) * d2 - known.size();
    if (!fld.finite() && excess > 2)
        fail(errc::non_rational_excess,
             "over the rationals the remaining degree must be at most 2");

    for (const auto& q : known) {
        if (!f.evaluate(q).is_zero() || !g.evaluate(q).is_zero())
            fail(errc::degenerate, "known point does not lie on both curves");
    }
    bool police_reduced = excess <= 2;  // callers with small excess need distinct points

    auto rng = seeded_rng(kCoordChangeSeed);
    for (int attempt = 0; attempt < kIntersectRetries; ++attempt) {
        Matrix<K> M = detail::coord_change(fld, rng, attempt);
        Matrix<K> Minv = detail::invert(M);
        HomogPoly<K> F = transform(f, M), G = transform(g, M);

        // leading x1 coefficients must be nonzero constants
        Exponent top(3, 0);
        top[1] = d1;
        if (F.coeff(top).is_zero()) continue;
        top[1] = d2;
        if (G.coeff(top).is_zero()) continue;

        // knowns must be visible in the x2 = 1 chart
        std::vector<std::vector<K>> kn;
        bool chart_ok = true;
        for (const auto& q : known) {
            auto y = Minv.apply(q);
            if (y[2].is_zero()) {
                chart_ok = false;
                break;
            }
            K inv = y[2].inv();
            kn.push_back({y[0] * inv, y[1] * inv, fld.one()});
        }
        if (!chart_ok) continue;

        auto fb = detail::dehomog_x1(F);
        auto gb = detail::dehomog_x1(G);
        Poly1<K> R = sylvester_resultant(fb, gb, fld);
        if (R.is_zero())
            fail(errc::non_reduced_intersection,
                 "resultant vanishes identically: the curves share a component");
        if (R.deg() != static_cast<int>(d1 * d2)) continue;

        // strike the known points' x0-coordinates (once per known point)
        Poly1<K> Q = R;
        bool divided = true;
        for (const auto& q : kn) {
            auto [quo, rem] = Q.divmod(Poly1<K>::linear_root(fld, q[0]));
            if (!rem.is_zero()) {
                divided = false;
                break;
            }
            Q = quo;
        }
        if (!divided) continue;

        if (excess == 0) return {};

        bool nonreduced_seen = false;
        std::vector<K> ts;
        if (Q.deg() == 1) {
            ts.push_back(-Q.coeff(0) / Q.coeff(1));
        } else {
            ts = detail::field_roots(Q);
            if (police_reduced && ts.empty())
                fail(errc::non_rational_excess, "excess roots are not rational");
        }

        bool anomaly = false;
        std::vector<std::vector<K>> found;
        for (const K& t : ts) {
            Poly1<K> Ft = detail::at_x0(fb, t, fld);
            Poly1<K> Gt = detail::at_x0(gb, t, fld);
            Poly1<K> h = gcd(Ft, Gt);
            if (h.deg() < 1) {
                anomaly = true;
                break;
            }
            for (const auto& q : kn) {
                if (q[0] == t) {
                    auto [quo, rem] = h.divmod(Poly1<K>::linear_root(fld, q[1]));
                    if (rem.is_zero()) h = quo;
                }
            }
            if (police_reduced) {
                unsigned want = detail::root_multiplicity(Q, t);
                // more excess points above t than the resultant multiplicity
                // can explain means the chart glued distinct points together
                if (h.deg() > static_cast<int>(want)) {
                    anomaly = true;
                    break;
                }
                // in a clean chart the counts match exactly; a shortfall means
                // an excess point landed on a known point or doubled up
                if (h.deg() < static_cast<int>(want))
                    nonreduced_seen = true;
            }
            for (const K& u : detail::field_roots(h)) {
                if (police_reduced && detail::root_multiplicity(h, u) > 1)
                    nonreduced_seen = true;
                found.push_back({t, u, fld.one()});
            }
        }
        if (anomaly) continue;
        if (nonreduced_seen)
            fail(errc::non_reduced_intersection, "intersection has a repeated point");
        if (police_reduced && found.size() < excess) {
            if (!fld.finite())
                fail(errc::non_rational_excess, "excess intersection is not rational");
            fail(errc::non_rational_excess, "excess intersection not defined over F_p");
        }

        std::vector<std::vector<K>> out;
        for (auto& y : found) {
            auto x = normalize_scale(M.apply(y));
            if (!f.evaluate(x).is_zero() || !g.evaluate(x).is_zero()) {
                anomaly = true;
                break;
            }
            out.push_back(std::move(x));
        }
        if (anomaly) continue;
        std::sort(out.begin(), out.end(), lex_less<K>);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    fail(errc::degenerate_after_retries,
         "no usable coordinate change within the retry budget");
}

}  // namespace goppa
