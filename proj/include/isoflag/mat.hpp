// mat.hpp
// Dense matrices over a field element type K (Fp or Rat), with the exact
// kernels this library leans on: unique RREF, rank, inverse, kernel, solve.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoflag/field.hpp"

namespace isoflag {

template <class K>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, K exemplar)
        : rows_(rows), cols_(cols), ex_(exemplar.zero()), a_(static_cast<size_t>(rows) * cols, exemplar.zero()) {}

    static Mat identity(int n, K exemplar) {
        Mat m(n, n, exemplar);
        for (int i = 0; i < n; ++i) m.at(i, i) = exemplar.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const K& exemplar() const { return ex_; }

    K& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const K& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.a_.size(); ++i)
            if (a.a_[i] != b.a_[i]) return false;
        return true;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
        Mat r(rows_, o.cols_, ex_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const K& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const K& bkj = o.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }
    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat: shape mismatch in sum");
        Mat r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat: shape mismatch in difference");
        Mat r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Mat scaled(const K& c) const {
        Mat r = *this;
        for (auto& x : r.a_) x = x * c;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_, ex_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<K> row(int i) const {
        return std::vector<K>(a_.begin() + static_cast<size_t>(i) * cols_,
                              a_.begin() + static_cast<size_t>(i + 1) * cols_);
    }
    void set_row(int i, const std::vector<K>& v) {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Mat: bad row length");
        for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
    }

    static Mat from_rows(const std::vector<std::vector<K>>& rows, int cols, K exemplar) {
        Mat m(static_cast<int>(rows.size()), cols, exemplar);
        for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    int rows_, cols_;
    K ex_;
    std::vector<K> a_;
};

struct RrefResult {
    std::vector<int> pivots;
    int rank = 0;
};

// In-place reduced row echelon form. The output is the unique RREF of the
// row space, so matrices in RREF can be compared structurally.
template <class K>
RrefResult rref_inplace(Mat<K>& m) {
    RrefResult res;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        K inv = m.at(r, c).inv();
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

template <class K>
Mat<K> rref(Mat<K> m, RrefResult* out = nullptr) {
    RrefResult r = rref_inplace(m);
    if (out) *out = r;
    return m;
}

template <class K>
int rank(const Mat<K>& m) {
    Mat<K> t = m;
    return rref_inplace(t).rank;
}

template <class K>
Mat<K> inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("Mat: inverse of non-square");
    int n = m.rows();
    Mat<K> aug(n, 2 * n, m.exemplar());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = m.exemplar().one();
    }
    RrefResult r = rref_inplace(aug);
    if (r.rank != n) throw std::invalid_argument("Mat: singular matrix");
    Mat<K> inv(n, n, m.exemplar());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Canonical basis (RREF rows) of { x : m * x = 0 }, returned one kernel
// vector per row.
template <class K>
Mat<K> kernel(const Mat<K>& m) {
    Mat<K> t = m;
    RrefResult r = rref_inplace(t);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    K zero = m.exemplar().zero();
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(m.cols(), zero);
        v[c] = zero.one();
        for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = -t.at(i, c);
        basis.push_back(std::move(v));
    }
    Mat<K> km = Mat<K>::from_rows(basis, m.cols(), m.exemplar());
    rref_inplace(km);
    return km;
}

// One solution x of m * x = b (column form), if any.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("Mat: solve shape mismatch");
    Mat<K> aug(m.rows(), m.cols() + 1, m.exemplar());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult r = rref_inplace(aug);
    for (int c : r.pivots)
        if (c == m.cols()) return std::nullopt;
    std::vector<K> x(m.cols(), m.exemplar().zero());
    for (int i = 0; i < r.rank; ++i) x[r.pivots[i]] = aug.at(i, m.cols());
    return x;
}

} // namespace isoflag
