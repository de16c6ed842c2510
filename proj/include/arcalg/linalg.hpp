#pragma once

// Dense exact linear algebra.  Pivoting is deterministic (first nonzero
// entry scanning rows top to bottom, columns left to right), so every
// reduced basis this file produces is byte-stable across runs.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arcalg/fields.hpp"

namespace arcalg {

template <class F>
using Vec = std::vector<F>;

template <class F>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<F> a;  // row-major

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, FieldTraits<F>::zero()) {}

    F& at(size_t i, size_t j) { return a[i * cols + j]; }
    const F& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = FieldTraits<F>::one();
        return m;
    }

    Vec<F> row(size_t i) const { return Vec<F>(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

    void set_row(size_t i, const Vec<F>& v) {
        if (v.size() != cols) throw std::invalid_argument("set_row: size mismatch");
        std::copy(v.begin(), v.end(), a.begin() + i * cols);
    }

    void append_row(const Vec<F>& v) {
        if (cols == 0) cols = v.size();
        if (v.size() != cols) throw std::invalid_argument("append_row: size mismatch");
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
        Matrix z(x.rows, y.cols);
        for (size_t i = 0; i < x.rows; ++i)
            for (size_t k = 0; k < x.cols; ++k) {
                const F& xik = x.at(i, k);
                if (FieldTraits<F>::is_zero(xik)) continue;
                for (size_t j = 0; j < y.cols; ++j) z.at(i, j) = z.at(i, j) + xik * y.at(k, j);
            }
        return z;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

template <class F>
Vec<F> mat_vec(const Matrix<F>& m, const Vec<F>& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    Vec<F> r(m.rows, FieldTraits<F>::zero());
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            if (!FieldTraits<F>::is_zero(m.at(i, j))) r[i] = r[i] + m.at(i, j) * v[j];
    return r;
}

template <class F>
Vec<F> vec_mat(const Vec<F>& v, const Matrix<F>& m) {
    if (m.rows != v.size()) throw std::invalid_argument("vec_mat: shape mismatch");
    Vec<F> r(m.cols, FieldTraits<F>::zero());
    for (size_t i = 0; i < m.rows; ++i) {
        if (FieldTraits<F>::is_zero(v[i])) continue;
        for (size_t j = 0; j < m.cols; ++j)
            if (!FieldTraits<F>::is_zero(m.at(i, j))) r[j] = r[j] + v[i] * m.at(i, j);
    }
    return r;
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
    for (const F& x : v)
        if (!FieldTraits<F>::is_zero(x)) return false;
    return true;
}

// In-place reduced row echelon form; returns pivot columns in order.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && FieldTraits<F>::is_zero(m.at(sel, c))) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        F piv_inv = FieldTraits<F>::inv(m.at(r, c));
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * piv_inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || FieldTraits<F>::is_zero(m.at(i, c))) continue;
            F f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
size_t rank(Matrix<F> m) {
    return rref(m).size();
}

// Basis of the right null space {x : m x = 0}, one vector per free column,
// in increasing free-column order.
template <class F>
std::vector<Vec<F>> kernel_basis(Matrix<F> m) {
    std::vector<size_t> piv = rref(m);
    std::vector<char> is_piv(m.cols, 0);
    for (size_t c : piv) is_piv[c] = 1;
    std::vector<Vec<F>> basis;
    for (size_t fc = 0; fc < m.cols; ++fc) {
        if (is_piv[fc]) continue;
        Vec<F> v(m.cols, FieldTraits<F>::zero());
        v[fc] = FieldTraits<F>::one();
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m.at(k, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b, if any.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
    if (b.size() != m.rows) throw std::invalid_argument("solve: shape mismatch");
    Matrix<F> aug(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<size_t> piv = rref(aug);
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    Vec<F> x(m.cols, FieldTraits<F>::zero());
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(k, m.cols);
    return x;
}

// Maintains a row space in reduced echelon form; insertion order independent
// final basis, deterministic.
template <class F>
class RrefBasis {
   public:
    explicit RrefBasis(size_t dim) : dim_(dim) {}

    size_t dim() const { return dim_; }
    size_t size() const { return rows_.size(); }
    const std::vector<Vec<F>>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Reduce v against the basis; returns the residual.
    Vec<F> reduce(Vec<F> v) const {
        for (size_t k = 0; k < rows_.size(); ++k) {
            const F& c = v[pivots_[k]];
            if (FieldTraits<F>::is_zero(c)) continue;
            F f = c;
            for (size_t j = 0; j < dim_; ++j) v[j] = v[j] - f * rows_[k][j];
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return is_zero_vec(reduce(v)); }

    // Insert v; returns true if it enlarged the span.
    bool insert(Vec<F> v) {
        if (v.size() != dim_) throw std::invalid_argument("RrefBasis: size mismatch");
        v = reduce(std::move(v));
        size_t p = 0;
        while (p < dim_ && FieldTraits<F>::is_zero(v[p])) ++p;
        if (p == dim_) return false;
        F inv = FieldTraits<F>::inv(v[p]);
        for (size_t j = p; j < dim_; ++j) v[j] = v[j] * inv;
        // eliminate the new pivot column from existing rows
        for (size_t k = 0; k < rows_.size(); ++k) {
            F f = rows_[k][p];
            if (FieldTraits<F>::is_zero(f)) continue;
            for (size_t j = 0; j < dim_; ++j) rows_[k][j] = rows_[k][j] - f * v[j];
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    // Coordinates of v in this basis, if v lies in the span.
    std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
        Vec<F> coords(rows_.size(), FieldTraits<F>::zero());
        Vec<F> w = v;
        for (size_t k = 0; k < rows_.size(); ++k) {
            F c = w[pivots_[k]];
            coords[k] = c;
            if (FieldTraits<F>::is_zero(c)) continue;
            for (size_t j = 0; j < dim_; ++j) w[j] = w[j] - c * rows_[k][j];
        }
        if (!is_zero_vec(w)) return std::nullopt;
        return coords;
    }

    Matrix<F> to_matrix() const {
        Matrix<F> m(rows_.size(), dim_);
        for (size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
        return m;
    }

   private:
    size_t dim_;
    std::vector<Vec<F>> rows_;    // reduced, pivots strictly increasing
    std::vector<size_t> pivots_;  // pivot column of each row
};

// Row-space basis (rref rows) of a list of spanning vectors.
template <class F>
RrefBasis<F> span_of(size_t dim, const std::vector<Vec<F>>& gens) {
    RrefBasis<F> b(dim);
    for (const auto& g : gens) b.insert(g);
    return b;
}

// Intersection of two row spaces inside F^dim.
template <class F>
std::vector<Vec<F>> subspace_intersection(size_t dim, const std::vector<Vec<F>>& ba,
                                          const std::vector<Vec<F>>& bb) {
    if (ba.empty() || bb.empty()) return {};
    // (x, y) with sum_i x_i ba_i = sum_j y_j bb_j  <=>  [ba^T | -bb^T] (x;y) = 0
    Matrix<F> m(dim, ba.size() + bb.size());
    for (size_t j = 0; j < ba.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = ba[j][i];
    for (size_t j = 0; j < bb.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m.at(i, ba.size() + j) = -bb[j][i];
    RrefBasis<F> result(dim);
    for (const auto& k : kernel_basis(std::move(m))) {
        Vec<F> u(dim, FieldTraits<F>::zero());
        for (size_t j = 0; j < ba.size(); ++j)
            if (!FieldTraits<F>::is_zero(k[j]))
                for (size_t i = 0; i < dim; ++i) u[i] = u[i] + k[j] * ba[j][i];
        result.insert(std::move(u));
    }
    return result.rows();
}

// Smallest subspace containing `seeds` and stable under every operator that
// `images` exposes: images(v) must return the images of v under each operator.
template <class F, class ImagesFn>
RrefBasis<F> spin(size_t dim, const std::vector<Vec<F>>& seeds, ImagesFn&& images) {
    RrefBasis<F> basis(dim);
    for (const auto& s : seeds) basis.insert(s);
    std::vector<Vec<F>> queue(basis.rows().begin(), basis.rows().end());
    while (!queue.empty()) {
        Vec<F> v = std::move(queue.back());
        queue.pop_back();
        for (Vec<F>& w : images(v)) {
            Vec<F> red = basis.reduce(std::move(w));
            if (!is_zero_vec(red)) {
                basis.insert(red);
                queue.push_back(std::move(red));
            }
        }
    }
    return basis;
}

}  // namespace arcalg
