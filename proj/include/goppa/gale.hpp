#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "goppa/linalg.hpp"
#include "goppa/poly.hpp"
#include "goppa/rng.hpp"

namespace goppa {

/// gamma labelled points in P^dim, stored as the rows of a gamma x (dim+1)
/// matrix.  The labelling matters: duality certificates pair rows by index.
template <class K>
class PointConfig {
  public:
    using field_type = typename K::field_type;

    explicit PointConfig(Matrix<K> m) : m_(std::move(m)) {
        if (m_.cols() == 0) fail(errc::dimension_mismatch, "points need coordinates");
    }

    static PointConfig from_points(field_type fld, const std::vector<std::vector<K>>& pts) {
        if (pts.empty()) fail(errc::too_few_points, "empty configuration");
        return PointConfig(Matrix<K>::from_rows(fld, pts));
    }

    std::size_t size() const { return m_.rows(); }
    std::size_t dim() const { return m_.cols() - 1; }  // projective dimension
    field_type field() const { return m_.field(); }
    const Matrix<K>& matrix() const { return m_; }
    std::vector<K> point(std::size_t i) const { return m_.row(i); }

    std::vector<std::vector<K>> points() const {
        std::vector<std::vector<K>> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(m_.row(i));
        return out;
    }

    bool has_zero_row() const {
        for (std::size_t i = 0; i < size(); ++i) {
            bool zero = true;
            for (std::size_t j = 0; j < m_.cols(); ++j)
                if (!m_(i, j).is_zero()) {
                    zero = false;
                    break;
                }
            if (zero) return true;
        }
        return false;
    }

    /// Spanning: the points are not contained in a hyperplane.
    bool nondegenerate() const { return rank(m_) == m_.cols(); }

    /// Row-wise canonical form (first nonzero coordinate scaled to 1).
    PointConfig normalized() const {
        Matrix<K> m = m_;
        for (std::size_t i = 0; i < size(); ++i) {
            auto row = normalize_scale(m_.row(i));
            for (std::size_t j = 0; j < m_.cols(); ++j) m(i, j) = row[j];
        }
        return PointConfig(std::move(m));
    }

    bool pairwise_distinct() const {
        auto pts = normalized().points();
        std::sort(pts.begin(), pts.end(), lex_less<K>);
        return std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    }

    /// Same indexed points up to row scaling.
    bool projectively_equal(const PointConfig& o) const {
        if (size() != o.size() || dim() != o.dim()) return false;
        return normalized().matrix() == o.normalized().matrix();
    }

  private:
    Matrix<K> m_;
};

/// Witness that configurations a (in P^r) and b (in P^s) are Gale dual:
/// an invertible diagonal D with B^T D A = 0.
template <class K>
struct DualCertificate {
    PointConfig<K> a;
    PointConfig<K> b;
    std::vector<K> d;

    bool valid() const {
        if (a.size() != b.size() || d.size() != a.size()) return false;
        for (const K& x : d)
            if (x.is_zero()) return false;
        Matrix<K> scaled = a.matrix();
        for (std::size_t i = 0; i < scaled.rows(); ++i)
            for (std::size_t j = 0; j < scaled.cols(); ++j)
                scaled(i, j) = scaled(i, j) * d[i];
        return (b.matrix().transpose() * scaled).is_zero();
    }
};

/// The Gale transform: gamma points spanning P^r go to gamma points spanning
/// P^s, gamma = r + s + 2, as the rows of a kernel basis of G^T.
template <class K>
PointConfig<K> gale_transform(const PointConfig<K>& c) {
    std::size_t gamma = c.size(), r1 = c.dim() + 1;
    if (gamma < r1 + 1)
        fail(errc::too_few_points,
             "need at least dim+2 points, got " + std::to_string(gamma));
    if (c.has_zero_row()) fail(errc::degenerate, "zero row is not a projective point");
    if (!c.nondegenerate()) fail(errc::degenerate, "points lie in a hyperplane");

    Subspace<K> ker = kernel(c.matrix().transpose());
    // dim = gamma - (r+1) = s + 1 by rank-nullity and nondegeneracy
    PointConfig<K> dual(ker.basis);
    if (dual.has_zero_row())
        fail(errc::zero_row_in_dual,
             "a dual point vanished: input is not in general position");
    return dual;
}

template <class K>
struct GaleCheck {
    enum class Reason { found, empty_kernel, search_exhausted };

    std::optional<DualCertificate<K>> certificate;
    Reason reason = Reason::empty_kernel;
    std::size_t kernel_dim = 0;

    bool ok() const { return certificate.has_value(); }
};

/// Decide Gale duality by searching the certificate space: the diagonals D
/// with B^T D A = 0 form a kernel; we need one with every entry nonzero.
/// Over F_p: up to 100 seeded random kernel combinations.  Over Q: the
/// deterministic t-power sweep v(t) = sum t^i k_i, t = 1..1000.
template <class K>
GaleCheck<K> is_gale_dual(const PointConfig<K>& a, const PointConfig<K>& b,
                          std::uint64_t seed = 0) {
    if (a.size() != b.size())
        fail(errc::dimension_mismatch, "configurations pair points by index");
    auto fld = a.field();
    std::size_t gamma = a.size(), ra = a.dim() + 1, rb = b.dim() + 1;

    Matrix<K> sys(fld, ra * rb, gamma);
    for (std::size_t j = 0; j < ra; ++j)
        for (std::size_t k = 0; k < rb; ++k)
            for (std::size_t i = 0; i < gamma; ++i)
                sys(j * rb + k, i) = a.matrix()(i, j) * b.matrix()(i, k);

    Subspace<K> ker = kernel(sys);
    GaleCheck<K> out;
    out.kernel_dim = ker.dim();
    if (ker.dim() == 0) {
        out.reason = GaleCheck<K>::Reason::empty_kernel;
        return out;
    }

    auto try_combo = [&](const std::vector<K>& coeffs) -> bool {
        std::vector<K> d(gamma, fld.zero());
        for (std::size_t i = 0; i < gamma; ++i)
            for (std::size_t k = 0; k < ker.dim(); ++k)
                d[i] += ker.basis(i, k) * coeffs[k];
        for (const K& x : d)
            if (x.is_zero()) return false;
        out.certificate = DualCertificate<K>{a, b, normalize_scale(d)};
        out.reason = GaleCheck<K>::Reason::found;
        return true;
    };

    if (fld.finite()) {
        auto rng = seeded_rng(seed);
        for (int it = 0; it < 100; ++it) {
            std::vector<K> coeffs;
            for (std::size_t k = 0; k < ker.dim(); ++k) coeffs.push_back(fld.sample(rng));
            if (try_combo(coeffs)) return out;
        }
    } else {
        for (long long t = 1; t <= 1000; ++t) {
            std::vector<K> coeffs;
            K tp = fld.one();
            for (std::size_t k = 0; k < ker.dim(); ++k) {
                coeffs.push_back(tp);
                tp = tp * fld.from_int(t);
            }
            if (try_combo(coeffs)) return out;
        }
    }
    out.reason = GaleCheck<K>::Reason::search_exhausted;
    return out;
}

template <class K>
struct TransportResult {
    Subspace<K> solutions;              // in the (m+1)^2 + gamma unknowns
    std::optional<Matrix<K>> map;       // present iff the space is a line
    std::vector<K> lambdas;             // scalings, when map is present
    std::size_t dim() const { return solutions.dim(); }
};

/// Solve M src_i = lambda_i dst_i as one linear system in the entries of M
/// and the lambdas.  A 1-dimensional solution space with all lambdas nonzero
/// is the unique projective transport.
template <class K>
TransportResult<K> projective_transport(const PointConfig<K>& src, const PointConfig<K>& dst) {
    if (src.size() != dst.size() || src.dim() != dst.dim())
        fail(errc::dimension_mismatch, "transport needs matching shapes");
    auto fld = src.field();
    std::size_t gamma = src.size(), n = src.dim() + 1;
    std::size_t unknowns = n * n + gamma;

    Matrix<K> sys(fld, gamma * n, unknowns);
    for (std::size_t i = 0; i < gamma; ++i)
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t row = i * n + c;
            for (std::size_t j = 0; j < n; ++j)
                sys(row, c * n + j) = src.matrix()(i, j);
            sys(row, n * n + i) = -dst.matrix()(i, c);
        }

    TransportResult<K> out{kernel(sys), std::nullopt, {}};
    if (out.solutions.dim() == 0)
        fail(errc::no_transport, "no projective map sends source to target");
    if (out.solutions.dim() == 1) {
        std::vector<K> v = out.solutions.basis.col(0);
        std::vector<K> lambdas(v.begin() + n * n, v.end());
        for (const K& l : lambdas)
            if (l.is_zero())
                fail(errc::no_transport, "every solution drops rank on some point");
        Matrix<K> m(fld, n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t j = 0; j < n; ++j) m(c, j) = v[c * n + j];
        out.map = std::move(m);
        out.lambdas = std::move(lambdas);
    }
    return out;
}

template <class K>
struct DoubleDualReport {
    GaleCheck<K> duality;        // gale(c) vs gale(gale(c))
    TransportResult<K> transport;  // c vs gale(gale(c))
    bool ok() const { return duality.ok() && transport.map.has_value(); }
};

/// gale∘gale returns to the original projective type: certificate plus a
/// diagonal-rescaled transport back onto c.
template <class K>
DoubleDualReport<K> double_dual_check(const PointConfig<K>& c, std::uint64_t seed = 0) {
    PointConfig<K> b = gale_transform(c);
    PointConfig<K> c2 = gale_transform(b);
    return DoubleDualReport<K>{is_gale_dual(b, c2, seed), projective_transport(c, c2)};
}

}  // namespace goppa
