#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "goppa/errors.hpp"

namespace goppa {

/// Dense matrix over an exact field.  Row-major; the field handle is stored so
/// empty shapes still know their scalar domain.
template <class K>
class Matrix {
  public:
    using field_type = typename K::field_type;

    Matrix(field_type fld, std::size_t rows, std::size_t cols)
        : fld_(fld), rows_(rows), cols_(cols), a_(rows * cols, fld.zero()) {}

    static Matrix identity(field_type fld, std::size_t n) {
        Matrix m(fld, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = fld.one();
        return m;
    }

    static Matrix from_rows(field_type fld, const std::vector<std::vector<K>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(fld, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                fail(errc::dimension_mismatch, "ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_ints(field_type fld, const std::vector<std::vector<long long>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(fld, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                fail(errc::dimension_mismatch, "ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = fld.from_int(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    field_type field() const { return fld_; }

    K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<K> row(std::size_t i) const {
        return std::vector<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<K> col(std::size_t j) const {
        std::vector<K> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    Matrix transpose() const {
        Matrix t(fld_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_)
            fail(errc::dimension_mismatch,
                 "matmul " + shape() + " * " + o.shape());
        Matrix r(fld_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const K& aik = (*this)(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += aik * o(k, j);
            }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (v.size() != cols_)
            fail(errc::dimension_mismatch, "matrix-vector size mismatch");
        std::vector<K> r(rows_, fld_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const K& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j)
                s += (j ? " " : "") + (*this)(i, j).to_string();
            s += "]";
            if (i + 1 < rows_) s += "\n";
        }
        return s;
    }

  private:
    field_type fld_;
    std::size_t rows_, cols_;
    std::vector<K> a_;
};

/// Horizontal concatenation [A | B].
template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows()) fail(errc::dimension_mismatch, "hstack row mismatch");
    Matrix<K> m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

/// Vertical concatenation [A ; B].
template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.cols() != b.cols()) fail(errc::dimension_mismatch, "vstack col mismatch");
    Matrix<K> m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

template <class K>
struct RrefResult {
    Matrix<K> m;
    std::vector<std::size_t> pivot_cols;  // increasing
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan reduced row echelon form.  Pivot rule: sweep columns left to
/// right, take the first (topmost unused) row with a nonzero entry.  Fully
/// deterministic, which downstream code relies on for reproducible bases.
template <class K>
RrefResult<K> rref(Matrix<K> m) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(sel, j));
        K inv = m(pr, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(pr, j) = m(pr, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pr || m(i, c).is_zero()) continue;
            K f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(m), std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
    return rref(m).rank();
}

/// Linear subspace of k^ambient given by a basis matrix whose *columns* are
/// the basis vectors.
template <class K>
struct Subspace {
    std::size_t ambient;
    Matrix<K> basis;  // ambient x dim

    std::size_t dim() const { return basis.cols(); }
};

/// Kernel basis in the textbook rref parametrization: one vector per free
/// column f (increasing), with coordinate f set to 1.
template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
    RrefResult<K> r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Matrix<K> basis(m.field(), m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(f, k) = m.field().one();
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            basis(r.pivot_cols[i], k) = -r.m(i, f);
    }
    return Subspace<K>{m.cols(), std::move(basis)};
}

/// One solution of A x = b, or nullopt when inconsistent.  Free variables are
/// pinned to zero, so the answer is deterministic.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) fail(errc::dimension_mismatch, "solve rhs size mismatch");
    Matrix<K> aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RrefResult<K> r = rref(std::move(aug));
    for (std::size_t c : r.pivot_cols)
        if (c == a.cols()) return std::nullopt;  // pivot in the rhs column
    std::vector<K> x(a.cols(), a.field().zero());
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        x[r.pivot_cols[i]] = r.m(i, a.cols());
    return x;
}

/// Column space, spanned by the original columns at the pivot indices.
template <class K>
Subspace<K> image(const Matrix<K>& m) {
    RrefResult<K> r = rref(m);
    Matrix<K> basis(m.field(), m.rows(), r.rank());
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
        for (std::size_t i = 0; i < m.rows(); ++i)
            basis(i, k) = m(i, r.pivot_cols[k]);
    return Subspace<K>{m.rows(), std::move(basis)};
}

/// Coordinate complement: the standard basis vectors e_i at the non-pivot
/// column indices of rref(U^T).  Always a genuine direct-sum complement.
template <class K>
Subspace<K> complement(const Subspace<K>& u) {
    RrefResult<K> r = rref(u.basis.transpose());
    std::vector<bool> is_pivot(u.ambient, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::size_t d = u.ambient - r.rank();
    Matrix<K> basis(u.basis.field(), u.ambient, d);
    std::size_t k = 0;
    for (std::size_t i = 0; i < u.ambient; ++i)
        if (!is_pivot[i]) basis(i, k++) = u.basis.field().one();
    return Subspace<K>{u.ambient, std::move(basis)};
}

template <class K>
bool contains(const Subspace<K>& u, const std::vector<K>& v) {
    return solve(u.basis, v).has_value();
}

/// Equality as subspaces (same span), not as bases.
template <class K>
bool same_subspace(const Subspace<K>& u, const Subspace<K>& v) {
    if (u.ambient != v.ambient) return false;
    std::size_t ru = rank(u.basis), rv = rank(v.basis);
    return ru == rv && rank(hstack(u.basis, v.basis)) == ru;
}

/// Determinant by fraction-friendly Gaussian elimination with row swaps.
template <class K>
K det(Matrix<K> m) {
    if (m.rows() != m.cols()) fail(errc::dimension_mismatch, "det of non-square " + m.shape());
    K d = m.field().one();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t sel = c;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) return m.field().zero();
        if (sel != c) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(c, j), m(sel, j));
            d = -d;
        }
        d = d * m(c, c);
        K inv = m(c, c).inv();
        for (std::size_t i = c + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            K f = m(i, c) * inv;
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return d;
}

}  // namespace goppa
