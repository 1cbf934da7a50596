#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "goppa/gale.hpp"
#include "goppa/intersect.hpp"
#include "goppa/poly.hpp"
#include "goppa/rng.hpp"

namespace goppa {

/// The unique conic through five points in general position.
template <class K>
HomogPoly<K> conic_through_five(const PointConfig<K>& pts) {
    if (pts.size() != 5 || pts.dim() != 2)
        fail(errc::dimension_mismatch, "need exactly five points in P^2");
    Subspace<K> ker = kernel(evaluation_matrix(pts.field(), 2, pts.points(), 3));
    if (ker.dim() != 1)
        fail(errc::not_unique,
             "conic space has dimension " + std::to_string(ker.dim()) + ", not 1");
    return poly_from_coeffs(pts.field(), 2, 3, ker.basis.col(0));
}

/// Parametrized rational normal curve through s+3 points of P^s: the Gale
/// transform drops the points onto P^1, and transporting the degree-s
/// Veronese images back onto the input realizes the curve.
template <class K>
struct RncParam {
    std::size_t s;
    Matrix<K> map;                // (s+1) x (s+1), acts on Veronese coordinates
    PointConfig<K> gale_points;   // the s+3 parameters on P^1, normalized
    std::size_t transport_dim;
};

template <class K>
std::vector<K> veronese_p1(typename K::field_type fld, std::size_t s, const std::vector<K>& pt) {
    std::vector<K> v;
    v.reserve(s + 1);
    for (std::size_t k = 0; k <= s; ++k) {
        K term = fld.one();
        for (std::size_t i = 0; i + k < s; ++i) term = term * pt[0];
        for (std::size_t i = 0; i < k; ++i) term = term * pt[1];
        v.push_back(term);
    }
    return v;
}

template <class K>
RncParam<K> rnc_through(const PointConfig<K>& pts) {
    std::size_t s = pts.dim();
    if (pts.size() != s + 3)
        fail(errc::dimension_mismatch, "a rational normal curve in P^s is pinned by s+3 points");
    PointConfig<K> q = gale_transform(pts).normalized();
    if (!q.pairwise_distinct())
        fail(errc::coincident_gale_points, "Gale points on P^1 collide");

    auto fld = pts.field();
    Matrix<K> ver(fld, pts.size(), s + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto v = veronese_p1(fld, s, q.point(i));
        for (std::size_t j = 0; j <= s; ++j) ver(i, j) = v[j];
    }
    auto res = projective_transport(PointConfig<K>(ver), pts);
    if (!res.map.has_value())
        fail(errc::transport_not_unique,
             "transport space has dimension " + std::to_string(res.dim()));
    return RncParam<K>{s, *res.map, q, res.dim()};
}

/// Point of the parametrized curve at [t0 : t1].
template <class K>
std::vector<K> rnc_eval(const RncParam<K>& rnc, const std::vector<K>& t) {
    if (t.size() != 2) fail(errc::dimension_mismatch, "curve parameter lives on P^1");
    return normalize_scale(rnc.map.apply(veronese_p1(rnc.map.field(), rnc.s, t)));
}

/// Pencil of cubics through eight points, and its ninth base point.
template <class K>
struct PencilNinth {
    std::vector<K> ninth;
    HomogPoly<K> f;
    HomogPoly<K> g;
    std::size_t pencil_dim;
};

template <class K>
PencilNinth<K> cubic_pencil_ninth(const PointConfig<K>& pts) {
    if (pts.size() != 8 || pts.dim() != 2)
        fail(errc::dimension_mismatch, "need exactly eight points in P^2");
    if (!pts.pairwise_distinct()) fail(errc::degenerate, "repeated base point");
    auto fld = pts.field();
    std::vector<BasePoint<K>> base;
    for (auto& p : pts.points()) base.push_back({p, 1});
    Subspace<K> sys = vanishing_system(fld, 3, base, 3);
    if (sys.dim() != 2)
        fail(errc::pencil_dim_wrong,
             "cubics through the eight points form a space of dimension " +
                 std::to_string(sys.dim()) + ", expected 2");
    HomogPoly<K> f = poly_from_coeffs(fld, 3, 3, sys.basis.col(0));
    HomogPoly<K> g = poly_from_coeffs(fld, 3, 3, sys.basis.col(1));
    auto rest = plane_curve_intersection(f, g, pts.points());
    if (rest.size() != 1)
        fail(errc::non_reduced_intersection,
             "expected a single ninth base point, found " + std::to_string(rest.size()));
    for (auto& p : pts.normalized().points())
        if (p == rest[0])
            fail(errc::non_reduced_intersection, "ninth point collides with a base point");
    return PencilNinth<K>{rest[0], f, g, sys.dim()};
}

/// Net of cubics through seven points: two chosen members meet in two extra
/// points beyond the seven.
template <class K>
struct TwoExcess {
    std::vector<std::vector<K>> excess;
    HomogPoly<K> f;
    HomogPoly<K> g;
    std::size_t net_dim;
};

template <class K>
TwoExcess<K> two_excess_points(const PointConfig<K>& pts,
                               std::pair<std::size_t, std::size_t> pair_choice = {0, 1}) {
    if (pts.size() != 7 || pts.dim() != 2)
        fail(errc::dimension_mismatch, "need exactly seven points in P^2");
    if (!pts.pairwise_distinct()) fail(errc::degenerate, "repeated base point");
    auto fld = pts.field();
    // The echelon net basis degenerates whenever the configuration contains
    // the coordinate triangle (every rref-normalized Gale transform does):
    // the free-coefficient pattern forces one member to be singular at a
    // coordinate base point and two others to share a tangent line there, so
    // every pencil of raw basis members has a non-reduced base scheme.
    // Computing the basis in a fixed generic frame keeps the choice
    // deterministic without that structural collapse.
    std::mt19937_64 frame_rng(kCoordChangeSeed ^ 0x2e7u);
    Matrix<K> frame = detail::coord_change(fld, frame_rng, 1);
    std::vector<BasePoint<K>> base;
    for (auto& p : pts.points()) base.push_back({frame.apply(p), 1});
    Subspace<K> sys = vanishing_system(fld, 3, base, 3);
    if (sys.dim() != 3)
        fail(errc::pencil_dim_wrong,
             "cubics through the seven points form a space of dimension " +
                 std::to_string(sys.dim()) + ", expected 3");
    auto [i, j] = pair_choice;
    if (i == j || i >= sys.dim() || j >= sys.dim())
        fail(errc::dimension_mismatch, "pair choice out of range");
    HomogPoly<K> f = transform(poly_from_coeffs(fld, 3, 3, sys.basis.col(i)), frame);
    HomogPoly<K> g = transform(poly_from_coeffs(fld, 3, 3, sys.basis.col(j)), frame);
    auto rest = plane_curve_intersection(f, g, pts.points());
    if (rest.size() != 2)
        fail(errc::non_reduced_intersection,
             "expected two excess points, found " + std::to_string(rest.size()));
    return TwoExcess<K>{rest, f, g, sys.dim()};
}

// ---------------------------------------------------------------------------
// seeded generators
// ---------------------------------------------------------------------------

namespace detail {

template <class K>
bool subsets_independent(const PointConfig<K>& c, std::mt19937_64& rng) {
    std::size_t gamma = c.size(), n = c.dim() + 1;
    if (gamma < n) return true;
    auto check = [&](const std::vector<std::size_t>& idx) {
        Matrix<K> m(c.field(), n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) m(a, b) = c.matrix()(idx[a], b);
        return !det(m).is_zero();
    };
    if (gamma <= 12) {
        std::vector<std::size_t> idx(n);
        // enumerate all n-subsets
        std::vector<bool> mask(gamma, false);
        std::fill(mask.begin(), mask.begin() + n, true);
        do {
            std::size_t k = 0;
            for (std::size_t i = 0; i < gamma; ++i)
                if (mask[i]) idx[k++] = i;
            if (!check(idx)) return false;
        } while (std::prev_permutation(mask.begin(), mask.end()));
        return true;
    }
    for (int it = 0; it < 200; ++it) {
        std::vector<std::size_t> pool(gamma);
        for (std::size_t i = 0; i < gamma; ++i) pool[i] = i;
        for (std::size_t i = 0; i < n; ++i)
            std::swap(pool[i], pool[i + draw(rng, gamma - i)]);
        std::vector<std::size_t> idx(pool.begin(), pool.begin() + n);
        if (!check(idx)) return false;
    }
    return true;
}

}  // namespace detail

/// Seeded general-position sampler.  Rejects until the configuration spans,
/// has no zero rows, every (r+1)-subset is independent (exhaustive for
/// gamma <= 12, else 200 random subsets) and the Gale transform exists with
/// no vanishing dual point.
template <class F>
PointConfig<typename F::element> gen_general_points(const F& fld, std::size_t gamma,
                                                    std::size_t r, std::uint64_t seed) {
    using K = typename F::element;
    if (gamma < r + 2) fail(errc::too_few_points, "need at least r+2 points");
    if constexpr (std::is_same_v<F, PrimeField>) {
        if (fld.p <= 4 * gamma)
            fail(errc::field_too_small,
                 "general position needs p > 4*gamma (p = " + std::to_string(fld.p) + ")");
    }
    auto rng = seeded_rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix<K> m(fld, gamma, r + 1);
        for (std::size_t i = 0; i < gamma; ++i)
            for (std::size_t j = 0; j <= r; ++j) m(i, j) = fld.sample(rng);
        PointConfig<K> c(std::move(m));
        if (c.has_zero_row() || !c.nondegenerate()) continue;
        if (!detail::subsets_independent(c, rng)) continue;
        try {
            PointConfig<K> dual = gale_transform(c);
            if (!dual.nondegenerate() || dual.has_zero_row()) continue;
        } catch (const error&) {
            continue;
        }
        return c;
    }
    fail(errc::field_too_small, "resampling budget exhausted");
}

// ---------------------------------------------------------------------------
// cubic smoothness certificate (shared with the group-law machinery)
// ---------------------------------------------------------------------------

namespace detail {

/// Do the given forms share a projective zero on the line x2 = 0?
template <class K>
bool common_zero_at_infinity(const std::vector<HomogPoly<K>>& gs) {
    auto fld = gs[0].field();
    bool vanish_at_01 = true;  // the point [0:1:0], i.e. t = infinity
    Poly1<K> h(fld);           // gcd of the restrictions g(1, t, 0)
    bool first = true;
    for (const auto& g : gs) {
        std::vector<K> coeffs(g.degree() + 1, fld.zero());
        const MonomialBasis& b = g.basis();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b.exps[i][2] != 0 || g[i].is_zero()) continue;
            coeffs[b.exps[i][1]] += g[i];  // x0^(d-e) x1^e -> t^e with t = x1/x0
        }
        Poly1<K> p(fld, coeffs);
        if (p.deg() == static_cast<int>(g.degree())) vanish_at_01 = false;
        if (p.is_zero()) continue;  // identically zero on the line: no constraint
        h = first ? p.monic() : gcd(h, p);
        first = false;
    }
    if (vanish_at_01) return true;
    if (first) return true;  // every restriction vanished identically
    return h.deg() >= 1;
}

/// Resultant certificate that the partials have no common zero anywhere over
/// the algebraic closure.  Retries random frames to dodge spurious overlaps.
template <class K>
bool partials_never_vanish_together(const HomogPoly<K>& f) {
    auto fld = f.field();
    std::vector<HomogPoly<K>> gs = {f.partial(0), f.partial(1), f.partial(2)};
    for (const auto& g : gs)
        if (g.is_zero()) return false;  // degenerate in this characteristic
    auto rng = seeded_rng(kCoordChangeSeed ^ 0xabcdef);
    for (int attempt = 0; attempt < kIntersectRetries; ++attempt) {
        Matrix<K> M = detail::coord_change(fld, rng, attempt);
        std::vector<HomogPoly<K>> gt;
        for (const auto& g : gs) gt.push_back(transform(g, M));
        if (common_zero_at_infinity(gt)) continue;  // frame not generic (or singular)
        // leading x1-coefficients must be nonzero constants
        bool lead_ok = true;
        for (const auto& g : gt) {
            Exponent top(3, 0);
            top[1] = g.degree();
            if (g.coeff(top).is_zero()) lead_ok = false;
        }
        if (!lead_ok) continue;
        auto g0 = dehomog_x1(gt[0]);
        auto g1 = dehomog_x1(gt[1]);
        auto g2 = dehomog_x1(gt[2]);
        Poly1<K> r01 = sylvester_resultant(g0, g1, fld);
        Poly1<K> r02 = sylvester_resultant(g0, g2, fld);
        if (r01.is_zero() || r02.is_zero()) continue;
        if (gcd(r01, r02).deg() == 0) return true;  // certified: no common zero
    }
    return false;
}

}  // namespace detail

/// Exact smoothness check for a plane cubic (or any plane curve): over F_p a
/// rational scan plus the resultant certificate; over Q by reduction at an
/// auxiliary good prime (smooth reduction implies smooth).
inline bool smooth_plane_curve(const HomogPoly<Fp>& f) {
    std::uint64_t p = f.field().p;
    // rational singular points first: a cheap reject while the plane is small
    if (p <= 1024) {
        PrimeField F{p};
        auto singular_at = [&](const std::vector<Fp>& pt) {
            if (!f.evaluate(pt).is_zero()) return false;
            for (unsigned v = 0; v < 3; ++v)
                if (!f.partial(v).evaluate(pt).is_zero()) return false;
            return true;
        };
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b)
                if (singular_at({F.one(), F.from_int(a), F.from_int(b)})) return false;
        for (std::uint64_t b = 0; b < p; ++b)
            if (singular_at({F.zero(), F.one(), F.from_int(b)})) return false;
        if (singular_at({F.zero(), F.zero(), F.one()})) return false;
    }
    return detail::partials_never_vanish_together(f);
}

inline bool smooth_plane_curve(const HomogPoly<Rational>& f) {
    // clear denominators, reduce at auxiliary primes with good reduction
    bigint lcm_den = 1;
    for (const auto& c : f.coeffs())
        lcm_den = boost::multiprecision::lcm(lcm_den, c.den());
    for (std::uint64_t p : {10007ull, 10009ull, 10037ull, 10039ull, 10061ull,
                            10067ull, 10069ull, 10079ull, 10091ull, 10093ull}) {
        PrimeField F{p};
        HomogPoly<Fp> red(F, f.degree(), 3);
        bool all_zero = true;
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            bigint n = f[i].num() * (lcm_den / f[i].den());
            bigint r = n % bigint(p);
            if (r < 0) r += p;
            red[i] = Fp(static_cast<std::uint64_t>(r), p);
            if (!red[i].is_zero()) all_zero = false;
        }
        if (all_zero) continue;  // bad reduction, try the next prime
        if (smooth_plane_curve(red)) return true;
    }
    return false;
}

/// Nine distinct points cut out by two transverse cubics, plus the cubics.
template <class K>
struct PencilBase {
    std::vector<std::vector<K>> points;  // 9, normalized
    HomogPoly<K> f;
    HomogPoly<K> g;
};

/// All rational points of a plane curve over F_p, in the fixed enumeration
/// order [1:a:b], [0:1:b], [0:0:1].
inline std::vector<std::vector<Fp>> rational_curve_points(const HomogPoly<Fp>& f) {
    PrimeField F = f.field();
    std::uint64_t p = F.p;
    std::vector<std::vector<Fp>> pts;
    auto push_if = [&](std::vector<Fp> pt) {
        if (f.evaluate(pt).is_zero()) pts.push_back(std::move(pt));
    };
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            push_if({F.one(), F.from_int(a), F.from_int(b)});
    for (std::uint64_t b = 0; b < p; ++b) push_if({F.zero(), F.one(), F.from_int(b)});
    push_if({F.zero(), F.zero(), F.one()});
    return pts;
}

template <class F>
PencilBase<typename F::element> gen_cubic_pencil_base(const F& fld, std::uint64_t seed) {
    using K = typename F::element;
    auto rng = seeded_rng(seed);

    auto finish = [&](const PointConfig<K>& eight) -> std::optional<PencilBase<K>> {
        try {
            PencilNinth<K> nin = cubic_pencil_ninth(eight);
            std::vector<std::vector<K>> pts;
            for (auto& p : eight.normalized().points()) pts.push_back(p);
            pts.push_back(nin.ninth);
            return PencilBase<K>{std::move(pts), nin.f, nin.g};
        } catch (const error&) {
            return std::nullopt;
        }
    };

    if constexpr (std::is_same_v<F, PrimeField>) {
        if (fld.p < 11)
            fail(errc::field_too_small, "pencil generation needs p >= 11");
        for (int attempt = 0; attempt < 500; ++attempt) {
            HomogPoly<K> cubic(fld, 3, 3);
            for (std::size_t i = 0; i < cubic.coeffs().size(); ++i)
                cubic[i] = fld.sample(rng);
            if (cubic.is_zero() || !smooth_plane_curve(cubic)) continue;
            auto pts = rational_curve_points(cubic);
            if (pts.size() < 9) continue;
            // pick 8 distinct points off the curve
            std::vector<std::size_t> pool(pts.size());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            for (std::size_t i = 0; i < 8; ++i)
                std::swap(pool[i], pool[i + draw(rng, pool.size() - i)]);
            Matrix<K> m(fld, 8, 3);
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 3; ++j) m(i, j) = pts[pool[i]][j];
            auto base = finish(PointConfig<K>(std::move(m)));
            if (base) return *base;
        }
    } else {
        for (int attempt = 0; attempt < 500; ++attempt) {
            Matrix<K> m(fld, 8, 3);
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 3; ++j) m(i, j) = fld.sample(rng);
            PointConfig<K> eight(std::move(m));
            if (eight.has_zero_row() || !eight.nondegenerate() || !eight.pairwise_distinct())
                continue;
            auto base = finish(eight);
            if (base) return *base;
        }
    }
    fail(errc::retry_budget_exhausted, "no pencil base found within the budget");
}

}  // namespace goppa
