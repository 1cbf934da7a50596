#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "goppa/curves.hpp"
#include "goppa/errors.hpp"
#include "goppa/gale.hpp"
#include "goppa/linalg.hpp"
#include "goppa/poly.hpp"
#include "goppa/rng.hpp"

namespace goppa {

/// Smooth plane cubic with a marked rational point.  The chord-tangent group
/// law lives on the pair (curve, origin); any rational origin gives a valid
/// group, so we only insist on determinism, not on a flex.
template <class K>
struct PlaneCubic {
    HomogPoly<K> f;
    std::vector<K> origin;
};

namespace detail {

template <class K>
void validate_cubic(const HomogPoly<K>& f) {
    if (f.degree() != 3 || f.n_vars() != 3)
        fail(errc::dimension_mismatch, "plane cubics have degree 3 in 3 variables");
    if (f.is_zero()) fail(errc::degenerate, "zero polynomial");
    if (!smooth_plane_curve(f)) fail(errc::degenerate, "cubic is singular");
}

inline void reject_small_char(const PrimeField& fld) {
    if (fld.p == 2 || fld.p == 3)
        fail(errc::field_too_small, "characteristics 2 and 3 are rejected by the cubic pipelines");
}

}  // namespace detail

/// Origin defaults to the first rational point in the fixed enumeration order.
inline PlaneCubic<Fp> make_plane_cubic(const HomogPoly<Fp>& f) {
    detail::reject_small_char(f.field());
    detail::validate_cubic(f);
    auto pts = rational_curve_points(f);
    if (pts.empty()) fail(errc::no_solution, "cubic has no rational point to serve as origin");
    return PlaneCubic<Fp>{f, normalize_scale(pts.front())};
}

template <class K>
PlaneCubic<K> make_plane_cubic(const HomogPoly<K>& f, const std::vector<K>& origin) {
    if constexpr (std::is_same_v<K, Fp>) detail::reject_small_char(f.field());
    detail::validate_cubic(f);
    if (origin.size() != 3 || !f.evaluate(origin).is_zero())
        fail(errc::degenerate, "origin is not on the cubic");
    return PlaneCubic<K>{f, normalize_scale(origin)};
}

/// Third point in which the line through P and Q (the tangent when P = Q)
/// meets the cubic.  Restricting f to the pencil s·P + t·Q gives a binary
/// cubic whose known roots divide out exactly.
template <class K>
std::vector<K> third_intersection(const PlaneCubic<K>& C, const std::vector<K>& P,
                                  const std::vector<K>& Q) {
    auto fld = C.f.field();
    if (P.size() != 3 || Q.size() != 3) fail(errc::dimension_mismatch, "points live in P^2");
    if (!C.f.evaluate(P).is_zero() || !C.f.evaluate(Q).is_zero())
        fail(errc::degenerate, "point is not on the cubic");
    std::vector<K> a = normalize_scale(P);
    std::vector<K> b = normalize_scale(Q);
    bool tangent = (a == b);
    if (tangent) {
        // replace b by a second point of the tangent line at a
        Matrix<K> grad(fld, 1, 3);
        for (unsigned v = 0; v < 3; ++v) grad(0, v) = C.f.partial(v).evaluate(a);
        Subspace<K> line = kernel(grad);
        if (line.dim() != 2) fail(errc::degenerate, "singular point on a certified-smooth cubic");
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix<K> pair(fld, 2, 3);
            for (unsigned v = 0; v < 3; ++v) {
                pair(0, v) = a[v];
                pair(1, v) = line.basis(v, j);
            }
            if (rref(pair).rank() == 2) {
                b = normalize_scale(line.basis.col(j));
                break;
            }
        }
    }

    Matrix<K> m(fld, 3, 3);
    for (unsigned v = 0; v < 3; ++v) {
        m(v, 0) = a[v];
        m(v, 1) = b[v];
        m(v, 2) = fld.zero();
    }
    HomogPoly<K> restricted = transform(C.f, m);
    K c1 = restricted.coeff(Exponent{2, 1, 0});
    K c2 = restricted.coeff(Exponent{1, 2, 0});
    K c3 = restricted.coeff(Exponent{0, 3, 0});

    K s, t;
    if (tangent) {
        // double root at (1:0); c1 vanishes because b spans the tangent
        if (c2.is_zero() && c3.is_zero())
            fail(errc::line_on_curve, "tangent line lies on the cubic");
        s = c3;
        t = fld.zero() - c2;
    } else {
        // roots at (1:0) and (0:1)
        if (c1.is_zero() && c2.is_zero())
            fail(errc::line_on_curve, "chord lies on the cubic");
        s = c2;
        t = fld.zero() - c1;
    }
    std::vector<K> out(3, fld.zero());
    for (unsigned v = 0; v < 3; ++v) out[v] = s * a[v] + t * b[v];
    return normalize_scale(out);
}

template <class K>
std::vector<K> add(const PlaneCubic<K>& C, const std::vector<K>& P, const std::vector<K>& Q) {
    return third_intersection(C, C.origin, third_intersection(C, P, Q));
}

template <class K>
std::vector<K> neg(const PlaneCubic<K>& C, const std::vector<K>& P) {
    return third_intersection(C, third_intersection(C, C.origin, C.origin), P);
}

template <class K>
std::vector<K> mul(const PlaneCubic<K>& C, long long n, const std::vector<K>& P) {
    if (n < 0) return mul(C, -n, neg(C, P));
    std::vector<K> acc = C.origin;
    std::vector<K> base = normalize_scale(P);
    while (n > 0) {
        if (n & 1) acc = add(C, acc, base);
        base = add(C, base, base);
        n >>= 1;
    }
    return acc;
}

/// All rational points, fixed enumeration order, Hasse-checked.
inline std::vector<std::vector<Fp>> enumerate_points(const PlaneCubic<Fp>& C) {
    PrimeField fld = C.f.field();
    detail::reject_small_char(fld);
    if (fld.p > 10000)
        fail(errc::retry_budget_exhausted, "point enumeration budget is p <= 10000");
    auto pts = rational_curve_points(C.f);
    long long n = static_cast<long long>(pts.size());
    long long p = static_cast<long long>(fld.p);
    if ((n - p - 1) * (n - p - 1) > 4 * p)
        fail(errc::degenerate, "point count violates the Hasse bound");
    for (auto& q : pts) q = normalize_scale(q);
    return pts;
}

inline std::vector<std::vector<Fp>> enumerate_points(const PlaneCubic<Rational>&) {
    fail(errc::field_not_finite, "point enumeration needs a finite field");
}

/// Class of an effective divisor: its degree plus the group sum of its points.
/// Equal-degree effective divisors are linearly equivalent exactly when the
/// sums agree, which is all the downstream bookkeeping needs.
template <class K>
struct DivisorClass {
    long long degree;
    std::vector<K> abel;
};

template <class K>
DivisorClass<K> abel_sum(const PlaneCubic<K>& C, const std::vector<std::vector<K>>& pts) {
    std::vector<K> acc = C.origin;
    for (const auto& p : pts) acc = add(C, acc, p);
    return DivisorClass<K>{static_cast<long long>(pts.size()), acc};
}

/// The rational 2-torsion subgroup, origin included; size 1, 2 or 4.
inline std::vector<std::vector<Fp>> two_torsion(const PlaneCubic<Fp>& C) {
    std::vector<std::vector<Fp>> out;
    for (const auto& q : enumerate_points(C))
        if (mul(C, 2, q) == C.origin) out.push_back(q);
    return out;
}

/// Degree-3 classes whose double is the given degree-6 class: one halving a0
/// found by scanning the curve, then the full coset a0 + E[2].
inline std::vector<DivisorClass<Fp>> square_roots(const PlaneCubic<Fp>& C,
                                                  const DivisorClass<Fp>& target) {
    if (target.degree != 6)
        fail(errc::dimension_mismatch, "square roots are taken of degree-six classes");
    std::vector<Fp> want = normalize_scale(target.abel);
    std::optional<std::vector<Fp>> a0;
    for (const auto& q : enumerate_points(C)) {
        if (mul(C, 2, q) == want) {
            a0 = q;
            break;
        }
    }
    if (!a0) fail(errc::no_solution, "class is not divisible by two over this field");
    std::vector<DivisorClass<Fp>> out;
    for (const auto& eps : two_torsion(C)) out.push_back({3, add(C, *a0, eps)});
    return out;
}

/// Three distinct non-collinear curve points avoiding a forbidden set, with
/// prescribed group sum: p1, p2 seeded, p3 forced by the class.
inline std::vector<std::vector<Fp>> representative_triple(const PlaneCubic<Fp>& C,
                                                          const DivisorClass<Fp>& cls,
                                                          const std::vector<std::vector<Fp>>& avoid,
                                                          std::uint64_t seed) {
    if (cls.degree != 3)
        fail(errc::dimension_mismatch, "representative triples realize degree-three classes");
    auto pts = enumerate_points(C);
    std::vector<std::vector<Fp>> banned;
    for (const auto& q : avoid) banned.push_back(normalize_scale(q));
    auto rng = seeded_rng(seed);
    PrimeField fld = C.f.field();
    for (int attempt = 0; attempt < 500; ++attempt) {
        const auto& p1 = pts[draw(rng, pts.size())];
        const auto& p2 = pts[draw(rng, pts.size())];
        auto p3 = add(C, cls.abel, neg(C, add(C, p1, p2)));
        Matrix<Fp> m(fld, 3, 3);
        for (unsigned v = 0; v < 3; ++v) {
            m(0, v) = p1[v];
            m(1, v) = p2[v];
            m(2, v) = p3[v];
        }
        if (det(m).is_zero()) continue;  // collinear (or repeated)
        bool hit = false;
        for (const auto& q : banned)
            if (q == p1 || q == p2 || q == p3) hit = true;
        if (hit) continue;
        return {p1, p2, p3};
    }
    fail(errc::retry_budget_exhausted, "no admissible non-collinear triple in 500 attempts");
}

/// Quintics through nine points with nodes at a triple: dimension of the
/// system and whether it contains anything beyond cubic·(conics through R).
struct QuinticNodeReport {
    std::size_t dim = 0;
    bool irreducible_found = false;
};

template <class K>
QuinticNodeReport quintic_node_criterion(const PointConfig<K>& gamma9, const PlaneCubic<K>& C,
                                         const std::vector<std::vector<K>>& triple) {
    if (gamma9.size() != 9 || gamma9.dim() != 2)
        fail(errc::dimension_mismatch, "need nine points in P^2");
    if (triple.size() != 3) fail(errc::dimension_mismatch, "need a triple of node points");
    auto fld = C.f.field();
    for (const auto& r : triple) {
        if (!C.f.evaluate(r).is_zero()) fail(errc::degenerate, "node point is not on the cubic");
        for (const auto& p : gamma9.normalized().points())
            if (normalize_scale(r) == p)
                fail(errc::degenerate, "node point collides with the nine points");
    }
    std::vector<BasePoint<K>> base;
    for (const auto& p : gamma9.points()) base.push_back({p, 1});
    for (const auto& r : triple) base.push_back({r, 2});
    Subspace<K> sys = vanishing_system(fld, 5, base, 3);
    QuinticNodeReport rep;
    rep.dim = sys.dim();
    for (const auto& q : system_polys(fld, 5, 3, sys))
        if (!divides(C.f, q)) rep.irreducible_found = true;
    return rep;
}

/// One factorization of the nine-point embedding through a Veronese surface.
template <class K>
struct VeroneseResult {
    DivisorClass<K> cls;                    // the square-root class
    std::vector<std::vector<K>> triple;     // its representative R
    Subspace<K> conics;                     // conics through R, dim 3
    Subspace<K> quartics;                   // quartics with nodes at R, dim 6
    PointConfig<K> images;                  // quartic images of the nine points
    Matrix<K> transport;                    // alignment with the input config
    std::size_t transport_dim = 0;
    std::vector<std::vector<K>> samples;    // transported surface samples in P^5
    Subspace<K> quadrics;                   // quadrics through the samples, dim 6
};

template <class K>
struct CobleVeronese {
    PointConfig<K> gamma2;
    PlaneCubic<K> cubic;
    DivisorClass<K> target;
    std::vector<VeroneseResult<K>> factors;
};

namespace detail {

/// Surface samples: images of plane points under the node-quartic map,
/// moved into the input frame.  Fixed scan order, distinct images only.
inline std::vector<std::vector<Fp>> veronese_samples(
    const std::vector<HomogPoly<Fp>>& quartics, const Matrix<Fp>& transport,
    const std::vector<std::vector<Fp>>& source, std::size_t count) {
    std::vector<std::vector<Fp>> out;
    for (const auto& x : source) {
        if (out.size() >= count) break;
        std::vector<Fp> raw;
        raw.reserve(quartics.size());
        for (const auto& q : quartics) raw.push_back(q.evaluate(x));
        bool zero = true;
        for (const auto& c : raw)
            if (!c.is_zero()) zero = false;
        if (zero) continue;  // base point of the system
        auto y = normalize_scale(transport.apply(raw));
        if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(std::move(y));
    }
    return out;
}

/// Every point of P^2(F_p), deterministically shuffled so that a short prefix
/// is already in general position (the natural scan order walks along lines,
/// which starves the sample-based rank computations downstream).
inline std::vector<std::vector<Fp>> plane_points(const PrimeField& fld) {
    std::vector<std::vector<Fp>> out;
    for (std::uint64_t a = 0; a < fld.p; ++a)
        for (std::uint64_t b = 0; b < fld.p; ++b)
            out.push_back({fld.one(), fld.from_int(static_cast<long long>(a)),
                           fld.from_int(static_cast<long long>(b))});
    for (std::uint64_t b = 0; b < fld.p; ++b)
        out.push_back({fld.zero(), fld.one(), fld.from_int(static_cast<long long>(b))});
    out.push_back({fld.zero(), fld.zero(), fld.one()});
    auto rng = seeded_rng(kCoordChangeSeed ^ 0x5a5au);
    for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[draw(rng, i)]);
    return out;
}

}  // namespace detail

/// The four factorizations of nine general points in P^5 through a Veronese
/// surface: Gale back to P², the unique cubic through the nine, square roots
/// of the residual degree-six class, and one node-quartic map per root.
inline CobleVeronese<Fp> coble_four_veronese(const PointConfig<Fp>& gamma5, std::uint64_t seed,
                                             std::size_t min_samples = 40,
                                             bool require_full = true) {
    if (gamma5.size() != 9 || gamma5.dim() != 5)
        fail(errc::dimension_mismatch, "need nine points in P^5");
    PrimeField fld = gamma5.field();
    detail::reject_small_char(fld);
    if (fld.p < 11) fail(errc::field_too_small, "the Coble pipeline needs p >= 11");

    PointConfig<Fp> gamma2 = gale_transform(gamma5).normalized();
    if (!gamma2.pairwise_distinct()) fail(errc::degenerate, "Gale transform has repeated points");

    Subspace<Fp> cubics = kernel(evaluation_matrix(fld, 3, gamma2.points(), 3));
    if (cubics.dim() != 1)
        fail(errc::cubic_not_unique, "cubics through the nine points form a space of dimension " +
                                         std::to_string(cubics.dim()));
    PlaneCubic<Fp> C = make_plane_cubic(poly_from_coeffs(fld, 3, 3, cubics.basis.col(0)));

    // residual class of a quintic section minus the nine points, degree 6
    auto line_sum = third_intersection(C, C.origin, C.origin);
    auto gamma_cls = abel_sum(C, gamma2.points());
    DivisorClass<Fp> target{6, add(C, mul(C, 5, line_sum), neg(C, gamma_cls.abel))};

    auto roots = square_roots(C, target);
    if (require_full && roots.size() < 4)
        fail(errc::partial_torsion,
             "only " + std::to_string(roots.size()) + " rational square roots exist",
             static_cast<long long>(roots.size()));

    auto source = detail::plane_points(fld);
    CobleVeronese<Fp> out{gamma2, C, target, {}};
    for (std::size_t k = 0; k < roots.size(); ++k) {
        auto triple = representative_triple(C, roots[k], gamma2.points(), seed + k);

        std::vector<BasePoint<Fp>> nodes;
        for (const auto& r : triple) nodes.push_back({r, 2});
        Subspace<Fp> quartics = vanishing_system(fld, 4, nodes, 3);
        if (quartics.dim() != 6)
            fail(errc::degenerate, "node quartics have dimension " +
                                       std::to_string(quartics.dim()) + ", expected 6");
        std::vector<BasePoint<Fp>> simple;
        for (const auto& r : triple) simple.push_back({r, 1});
        Subspace<Fp> conics = vanishing_system(fld, 2, simple, 3);
        if (conics.dim() != 3)
            fail(errc::degenerate, "conics through the triple have dimension " +
                                       std::to_string(conics.dim()) + ", expected 3");

        // the six pairwise conic products must span the node quartics
        auto cpolys = system_polys(fld, 2, 3, conics);
        Matrix<Fp> products(fld, MonomialBasis(4, 3).size(), 6);
        std::size_t col = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j, ++col) {
                auto prod = cpolys[i] * cpolys[j];
                for (std::size_t row = 0; row < prod.coeffs().size(); ++row)
                    products(row, col) = prod[row];
            }
        Subspace<Fp> span = image(products);
        if (span.dim() != 6 || !same_subspace(span, quartics))
            fail(errc::certificate_not_found, "conic products do not span the node quartics");

        auto qpolys = system_polys(fld, 4, 3, quartics);
        Matrix<Fp> img(fld, 9, 6);
        for (std::size_t i = 0; i < 9; ++i) {
            for (std::size_t j = 0; j < 6; ++j) img(i, j) = qpolys[j].evaluate(gamma2.point(i));
        }
        PointConfig<Fp> images(img);
        if (images.has_zero_row())
            fail(errc::degenerate, "a point of the nine lies in the node-quartic base locus");
        auto tr = projective_transport(images, gamma5);
        if (!tr.map.has_value())
            fail(errc::transport_not_unique,
                 "transport space has dimension " + std::to_string(tr.dim()));

        auto samples = detail::veronese_samples(qpolys, *tr.map, source, min_samples);
        if (samples.size() < min_samples)
            fail(errc::too_few_points, "not enough distinct surface samples");
        Subspace<Fp> quadrics = kernel(evaluation_matrix(fld, 2, samples, 6));
        if (quadrics.dim() != 6)
            fail(errc::certificate_not_found, "surface quadrics have dimension " +
                                                  std::to_string(quadrics.dim()) + ", expected 6");

        out.factors.push_back(VeroneseResult<Fp>{roots[k], triple, conics, quartics, images,
                                                 *tr.map, tr.dim(), samples, quadrics});
    }
    return out;
}

/// Sextic check: push the curve's rational points through factorization k's
/// map and test them against quadric spaces.  All four factorizations embed
/// the cubic onto the one sextic through the nine points, so the image
/// satisfies every factorization's quadrics (on_own and on_other both hold);
/// the surfaces themselves still differ, witnessed by a surface sample of k
/// that violates a quadric of j.
struct SexticCheck {
    std::size_t samples_used = 0;
    bool on_own = false;
    bool on_other = false;
    bool surfaces_distinct = false;
};

inline SexticCheck two_sextics_veronese(const CobleVeronese<Fp>& coble, std::size_t k,
                                        std::size_t j, std::size_t min_samples = 20) {
    if (k >= coble.factors.size() || j >= coble.factors.size() || k == j)
        fail(errc::dimension_mismatch, "factorization indices out of range");
    PrimeField fld = coble.cubic.f.field();
    const auto& own = coble.factors[k];
    const auto& other = coble.factors[j];

    auto qpolys = system_polys(fld, 4, 3, own.quartics);
    auto curve_samples =
        detail::veronese_samples(qpolys, own.transport, enumerate_points(coble.cubic),
                                 static_cast<std::size_t>(-1));
    if (curve_samples.size() < min_samples)
        fail(errc::too_few_points, "need at least " + std::to_string(min_samples) +
                                       " distinct sextic samples, have " +
                                       std::to_string(curve_samples.size()));

    SexticCheck res;
    res.samples_used = curve_samples.size();
    res.on_own = true;
    res.on_other = true;
    auto own_quadrics = system_polys(fld, 2, 6, own.quadrics);
    auto other_quadrics = system_polys(fld, 2, 6, other.quadrics);
    for (const auto& y : curve_samples) {
        for (const auto& q : own_quadrics)
            if (!q.evaluate(y).is_zero()) res.on_own = false;
        for (const auto& q : other_quadrics)
            if (!q.evaluate(y).is_zero()) res.on_other = false;
    }
    for (const auto& y : own.samples)
        for (const auto& q : other_quadrics)
            if (!q.evaluate(y).is_zero()) res.surfaces_distinct = true;
    return res;
}

}  // namespace goppa
