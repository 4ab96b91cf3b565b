// subspace.hpp
// Subspaces of F^N stored exclusively as RREF bases, so equality and hashing
// are structural. This is the universal value type for flags and orbits.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "isoflag/bigint.hpp"
#include "isoflag/mat.hpp"

namespace isoflag {

template <class K>
class Subspace {
public:
    Subspace() : ambient_(0), basis_() {}
    Subspace(int ambient, K exemplar) : ambient_(ambient), basis_(0, ambient, exemplar) {}

    // Canonicalizes: rref + drop zero rows.
    static Subspace span(const Mat<K>& generators) {
        Mat<K> t = generators;
        RrefResult r = rref_inplace(t);
        Subspace s;
        s.ambient_ = generators.cols();
        s.basis_ = Mat<K>(r.rank, generators.cols(), generators.exemplar());
        for (int i = 0; i < r.rank; ++i)
            for (int j = 0; j < generators.cols(); ++j) s.basis_.at(i, j) = t.at(i, j);
        return s;
    }
    static Subspace span_vectors(const std::vector<std::vector<K>>& vecs, int ambient, K exemplar) {
        return span(Mat<K>::from_rows(vecs, ambient, exemplar));
    }
    static Subspace full(int ambient, K exemplar) {
        return span(Mat<K>::identity(ambient, exemplar));
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Mat<K>& basis() const { return basis_; }
    std::vector<K> basis_row(int i) const { return basis_.row(i); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    bool contains(const std::vector<K>& v) const {
        std::vector<K> w = reduce(v);
        for (const auto& x : w)
            if (!x.is_zero()) return false;
        return true;
    }
    bool contains(const Subspace& other) const {
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_row(i))) return false;
        return true;
    }

    // Residue of v modulo this subspace (eliminate pivot coordinates).
    std::vector<K> reduce(std::vector<K> v) const {
        for (int i = 0; i < basis_.rows(); ++i) {
            int p = pivot_col(i);
            if (p < 0) continue;
            if (!v[p].is_zero()) {
                K f = v[p];
                for (int j = 0; j < ambient_; ++j) v[j] -= f * basis_.at(i, j);
            }
        }
        return v;
    }

    // Coordinates of v in this basis; throws if v is outside the subspace.
    std::vector<K> coordinates(const std::vector<K>& v) const {
        std::vector<K> w = v, c;
        for (int i = 0; i < basis_.rows(); ++i) {
            int p = pivot_col(i);
            K f = w[p];
            c.push_back(f);
            if (!f.is_zero())
                for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
        }
        for (const auto& x : w)
            if (!x.is_zero()) throw std::invalid_argument("Subspace: vector not in subspace");
        return c;
    }

    std::string key() const {
        std::string k = std::to_string(ambient_) + ";" + std::to_string(dim()) + ";";
        for (int i = 0; i < basis_.rows(); ++i)
            for (int j = 0; j < ambient_; ++j) k += basis_.at(i, j).str() + ",";
        return k;
    }

private:
    int ambient_;
    Mat<K> basis_;

    int pivot_col(int i) const {
        for (int j = 0; j < ambient_; ++j)
            if (!basis_.at(i, j).is_zero()) return j;
        return -1;
    }
};

template <class K>
Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("Subspace: ambient mismatch in sum");
    Mat<K> m(a.dim() + b.dim(), a.ambient_dim(), a.basis().exemplar());
    for (int i = 0; i < a.dim(); ++i) m.set_row(i, a.basis_row(i));
    for (int i = 0; i < b.dim(); ++i) m.set_row(a.dim() + i, b.basis_row(i));
    return Subspace<K>::span(m);
}

// Intersection via the kernel of the stacked-basis relation
// alpha * A + beta * B = 0.
template <class K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("Subspace: ambient mismatch in intersect");
    K ex = a.basis().exemplar();
    int da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace<K>(a.ambient_dim(), ex);
    // columns of M are the stacked coefficients; kernel rows give relations
    Mat<K> m(a.ambient_dim(), da + db, ex);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < a.ambient_dim(); ++j) m.at(j, i) = a.basis().at(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < b.ambient_dim(); ++j) m.at(j, da + i) = -b.basis().at(i, j);
    Mat<K> ker = kernel(m);
    std::vector<std::vector<K>> vecs;
    for (int r = 0; r < ker.rows(); ++r) {
        std::vector<K> v(a.ambient_dim(), ex.zero());
        for (int i = 0; i < da; ++i) {
            const K& c = ker.at(r, i);
            if (c.is_zero()) continue;
            for (int j = 0; j < a.ambient_dim(); ++j) v[j] += c * a.basis().at(i, j);
        }
        vecs.push_back(std::move(v));
    }
    return Subspace<K>::span_vectors(vecs, a.ambient_dim(), ex);
}

// Image of the subspace under the linear map with matrix g (columns act on
// coordinates: vectors transform as v -> g v).
template <class K>
Subspace<K> apply(const Mat<K>& g, const Subspace<K>& s) {
    return Subspace<K>::span(s.basis() * g.transpose());
}

inline BigInt gaussian_binomial(int n, int k, long long q) {
    if (k < 0 || k > n) return BigInt(0);
    BigInt num(1), den(1), Q(q);
    auto qpow_minus1 = [&](int e) {
        BigInt r(1);
        for (int i = 0; i < e; ++i) r = r * Q;
        return r - BigInt(1);
    };
    for (int i = 0; i < k; ++i) {
        num = num * qpow_minus1(n - i);
        den = den * qpow_minus1(i + 1);
    }
    return num / den;
}

// All k-dimensional subspaces of GF(p)^ambient, each in canonical RREF form,
// enumerated by pivot-column pattern plus free entries.
inline std::vector<Subspace<Fp>> enumerate_subspaces(int ambient, int k, long long p,
                                                     long long max_count = 2000000) {
    BigInt total = gaussian_binomial(ambient, k, p);
    if (total > BigInt(max_count))
        throw std::runtime_error("enumerate_subspaces: budget exceeded, would produce " + total.str() + " subspaces");
    std::vector<Subspace<Fp>> out;
    Fp ex(0, p);
    if (k == 0) { out.emplace_back(ambient, ex); return out; }
    std::vector<int> pivots(k);
    for (int i = 0; i < k; ++i) pivots[i] = i;
    auto emit_for_pivots = [&]() {
        // free entries: (i, j) with j > pivots[i], j not a pivot column
        std::vector<std::pair<int, int>> free_pos;
        std::vector<bool> is_piv(ambient, false);
        for (int c : pivots) is_piv[c] = true;
        for (int i = 0; i < k; ++i)
            for (int j = pivots[i] + 1; j < ambient; ++j)
                if (!is_piv[j]) free_pos.emplace_back(i, j);
        std::vector<long long> vals(free_pos.size(), 0);
        while (true) {
            Mat<Fp> m(k, ambient, ex);
            for (int i = 0; i < k; ++i) m.at(i, pivots[i]) = ex.one();
            for (size_t t = 0; t < free_pos.size(); ++t)
                m.at(free_pos[t].first, free_pos[t].second) = Fp(vals[t], p);
            Subspace<Fp> s;
            s = Subspace<Fp>::span(m);
            out.push_back(std::move(s));
            size_t t = 0;
            while (t < vals.size() && ++vals[t] == p) vals[t++] = 0;
            if (t == vals.size()) break;
        }
    };
    while (true) {
        emit_for_pivots();
        // next pivot combination
        int i = k - 1;
        while (i >= 0 && pivots[i] == ambient - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    if (BigInt(static_cast<long long>(out.size())) != total)
        throw std::logic_error("enumerate_subspaces: count mismatch vs Gaussian binomial");
    return out;
}

} // namespace isoflag
