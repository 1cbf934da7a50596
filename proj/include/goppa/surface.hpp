#pragma once

#include <utility>
#include <vector>

#include "goppa/curves.hpp"
#include "goppa/gale.hpp"
#include "goppa/poly.hpp"

namespace goppa {

/// Reduced (d1,d2) complete intersection on P^2: two curves and their common
/// zero locus of d1*d2 distinct points.
template <class K>
struct CiInstance {
    unsigned d1, d2;
    HomogPoly<K> f, g;
    PointConfig<K> gamma;
};

template <class K>
CiInstance<K> make_ci(unsigned d1, unsigned d2, HomogPoly<K> f, HomogPoly<K> g,
                      PointConfig<K> gamma) {
    if (f.degree() != d1 || g.degree() != d2 || f.n_vars() != 3 || g.n_vars() != 3)
        fail(errc::dimension_mismatch, "curve degrees do not match the instance");
    if (gamma.dim() != 2 || gamma.size() != std::size_t(d1) * d2)
        fail(errc::dimension_mismatch, "gamma must hold d1*d2 points of P^2");
    if (!gamma.pairwise_distinct())
        fail(errc::degenerate, "complete intersection is not reduced");
    for (auto& p : gamma.points())
        if (!f.evaluate(p).is_zero() || !g.evaluate(p).is_zero())
            fail(errc::degenerate, "a point misses one of the curves");
    return CiInstance<K>{d1, d2, std::move(f), std::move(g), std::move(gamma)};
}

template <class K>
CiInstance<K> ci_from_pencil_base(const PencilBase<K>& base) {
    auto fld = base.f.field();
    return make_ci<K>(3, 3, base.f, base.g,
                      PointConfig<K>::from_points(fld, base.points));
}

/// Degree of the dual series: d1 + d2 - d - 3.  Negative values are returned
/// as-is; pipelines reject them.
inline long long dual_degree(long long d, long long d1, long long d2) {
    return d1 + d2 - d - 3;
}

/// Evaluation of a coefficient subspace at a configuration: row i lists the
/// basis polynomials' values at point i.
template <class K>
Matrix<K> series_rows(unsigned degree, const PointConfig<K>& pts, const Subspace<K>& s) {
    return evaluation_matrix(pts.field(), degree, pts.points(), 3) * s.basis;
}

template <class K>
struct CiDual {
    Subspace<K> wperp;
    DualCertificate<K> cert;
    PointConfig<K> w_rows;      // gamma points in P^(dim W - 1)
    PointConfig<K> wperp_rows;  // gamma points in P^(dim Wperp - 1)
};

/// Goppa dual of a series W ⊂ H⁰(O(d)) on a reduced complete intersection:
/// the deterministic complement of the kernel of evaluation in degree
/// d' = d1+d2-d-3, certified Gale-dual to W through the points.
template <class K>
CiDual<K> ci_goppa_dual(const CiInstance<K>& ci, unsigned d, const Subspace<K>& w,
                        std::uint64_t seed = 0) {
    auto fld = ci.gamma.field();
    long long dd = dual_degree(d, ci.d1, ci.d2);
    if (dd < 0)
        fail(errc::negative_dual_degree, "dual degree " + std::to_string(dd));
    if (w.ambient != monomial_count(d, 3) || w.dim() == 0)
        fail(errc::dimension_mismatch, "W must sit in the degree-d coefficient space");

    Subspace<K> ker_d = kernel(evaluation_matrix(fld, d, ci.gamma.points(), 3));
    if (w.dim() + ker_d.dim() != w.ambient ||
        rank(hstack(w.basis, ker_d.basis)) != w.ambient)
        fail(errc::w_not_complementary,
             "W is not a complement of the degree-d evaluation kernel");

    Subspace<K> wperp = complement(kernel(
        evaluation_matrix(fld, static_cast<unsigned>(dd), ci.gamma.points(), 3)));
    if (w.dim() + wperp.dim() != ci.gamma.size())
        fail(errc::certificate_not_found,
             "dimension law dim W + dim Wperp = gamma fails; hypotheses violated");

    PointConfig<K> a(series_rows(d, ci.gamma, w));
    PointConfig<K> b(series_rows(static_cast<unsigned>(dd), ci.gamma, wperp));
    if (a.has_zero_row() || b.has_zero_row())
        fail(errc::certificate_not_found, "a point is a base point of the series");
    auto chk = is_gale_dual(a, b, seed);
    if (!chk.ok())
        fail(errc::certificate_not_found, "no invertible diagonal certifies the pair");
    return CiDual<K>{std::move(wperp), std::move(*chk.certificate), std::move(a),
                     std::move(b)};
}

template <class K>
struct VeroneseCert {
    PointConfig<K> images;  // gamma points in P^5
    DualCertificate<K> cert;
};

/// Quadric Veronese images of a plane configuration, certified Gale-dual to
/// the configuration itself.  The base locus of a cubic pencil passes; nine
/// unrelated points do not.
template <class K>
VeroneseCert<K> veronese_images_certified(const PointConfig<K>& gamma,
                                          std::uint64_t seed = 0) {
    if (gamma.dim() != 2 || gamma.size() != 9)
        fail(errc::dimension_mismatch, "need nine points of P^2");
    PointConfig<K> images(evaluation_matrix(gamma.field(), 2, gamma.points(), 3));
    auto chk = is_gale_dual(gamma, images, seed);
    if (!chk.ok())
        fail(errc::certificate_not_found,
             "Veronese images are not Gale-dual to the configuration");
    return VeroneseCert<K>{std::move(images), std::move(*chk.certificate)};
}

template <class K>
VeroneseCert<K> veronese_from_ci33(const CiInstance<K>& ci, std::uint64_t seed = 0) {
    if (ci.d1 != 3 || ci.d2 != 3)
        fail(errc::dimension_mismatch, "needs a (3,3) complete intersection");
    return veronese_images_certified(ci.gamma, seed);
}

/// A factorization through a blown-up plane: the excess base points R, the
/// series |d'H - sum m_i E_i| realized as a vanishing system, the Gale
/// certificate, and the transport aligning the evaluated rows with the
/// ambient configuration.
template <class K>
struct BlowupFactorization {
    std::vector<BasePoint<K>> excess;
    Subspace<K> system;
    std::size_t target_dim;
    DualCertificate<K> cert;
    Matrix<K> transport;
    PointConfig<K> gale_config;
    std::size_t transport_dim;
};

namespace detail {

template <class K>
BlowupFactorization<K> certify_blowup(const PointConfig<K>& ambient,
                                      const PointConfig<K>& plane,
                                      std::vector<BasePoint<K>> excess,
                                      std::uint64_t seed) {
    auto fld = ambient.field();
    std::size_t s = ambient.dim();
    Subspace<K> sys = vanishing_system(fld, 2, excess, 3);
    if (sys.dim() != s + 1)
        fail(errc::pencil_dim_wrong,
             "conic system has dimension " + std::to_string(sys.dim()) + ", expected " +
                 std::to_string(s + 1));
    PointConfig<K> rows(series_rows(2, plane, sys));
    auto chk = is_gale_dual(plane, rows, seed);
    if (!chk.ok())
        fail(errc::certificate_not_found, "no certificate for the blowup series");
    auto tr = projective_transport(rows, ambient);
    if (!tr.map.has_value())
        fail(errc::transport_not_unique,
             "transport space has dimension " + std::to_string(tr.dim()));
    return BlowupFactorization<K>{std::move(excess), std::move(sys),       s,
                                  std::move(*chk.certificate), std::move(*tr.map),
                                  plane, tr.dim()};
}

}  // namespace detail

/// Eight points of P^4 factor through Bl_p P^2 under |2H - E|, where p is the
/// ninth base point of the cubic pencil through the Gale transform.
template <class K>
BlowupFactorization<K> eight_points_p4(const PointConfig<K>& cfg, std::uint64_t seed = 0) {
    if (cfg.size() != 8 || cfg.dim() != 4)
        fail(errc::dimension_mismatch, "need eight points of P^4");
    PointConfig<K> plane = gale_transform(cfg);
    PencilNinth<K> nin = cubic_pencil_ninth(plane);
    return detail::certify_blowup(cfg, plane, {{nin.ninth, 1}}, seed);
}

/// Seven points of P^3 factor through Bl_{p,q} P^2, the pair {p,q} being the
/// excess intersection of two chosen cubics through the Gale transform.  The
/// pair, hence the factorization, depends on the choice.
template <class K>
BlowupFactorization<K> seven_points_p3(const PointConfig<K>& cfg,
                                       std::pair<std::size_t, std::size_t> pair_choice = {0, 1},
                                       std::uint64_t seed = 0) {
    if (cfg.size() != 7 || cfg.dim() != 3)
        fail(errc::dimension_mismatch, "need seven points of P^3");
    PointConfig<K> plane = gale_transform(cfg);
    TwoExcess<K> ex = two_excess_points(plane, pair_choice);
    return detail::certify_blowup(cfg, plane, {{ex.excess[0], 1}, {ex.excess[1], 1}}, seed);
}

/// (d-2)(d-3)(2d-3)/2, cross-checked against the dimension of the
/// Grassmannian G(2d-3, d(d-1)/2).
inline long long family_dim(long long d) {
    if (d < 3) fail(errc::dimension_mismatch, "family dimension needs d >= 3");
    long long direct = (d - 2) * (d - 3) * (2 * d - 3) / 2;
    long long grass = (2 * d - 3) * (d * (d - 1) / 2 - (2 * d - 3));
    if (direct != grass)
        fail(errc::dimension_mismatch, "dimension formulas disagree");
    return direct;
}

/// h0 of the blowup series |dH - sum m_i E_i| as the dimension of the
/// corresponding vanishing system on P^2.
template <class F>
std::size_t blowup_h0(const F& fld, unsigned d,
                      const std::vector<BasePoint<typename F::element>>& base) {
    return vanishing_system(fld, d, base, 3).dim();
}

}  // namespace goppa
