// invariants.hpp
// The complete orbit invariant (b_1,...,b_15, eps) of a maximal isotropic V
// relative to a normalized pair (U+, U-), and the enumeration of all tuples
// admissible for a given pair shape.

#pragma once

#include <array>
#include <vector>

#include "isoflag/pair_shape.hpp"

namespace isoflag {

struct InvariantTuple {
    std::array<int, 15> b{};   // b[0] = b_1, ..., b[14] = b_15
    int eps = 0;

    int& bi(int i) { return b[i - 1]; }
    int bi(int i) const { return b[i - 1]; }

    friend bool operator==(const InvariantTuple& x, const InvariantTuple& y) {
        return x.b == y.b && x.eps == y.eps;
    }
    friend bool operator<(const InvariantTuple& x, const InvariantTuple& y) {
        if (x.b != y.b) return x.b < y.b;
        return x.eps < y.eps;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 1; i <= 15; ++i) s += std::to_string(bi(i)) + (i < 15 ? "," : "");
        s += ";eps=" + std::to_string(eps) + ")";
        return s;
    }
};

// The five counting identities plus the eps rule.
inline bool tuple_consistent(const PairShape& s, const InvariantTuple& t) {
    for (int i = 1; i <= 15; ++i)
        if (t.bi(i) < 0) return false;
    if (t.bi(1) + t.bi(2) != s.a0) return false;
    if (t.bi(3) + t.bi(7) + t.bi(8) + t.bi(10) != s.ap) return false;
    if (t.bi(4) + t.bi(7) + t.bi(9) + t.bi(11) != s.am) return false;
    if (t.bi(5) + t.bi(6) + t.bi(8) + t.bi(9) + 2 * t.bi(12) + t.bi(13) + t.bi(15) != s.a1) return false;
    if (t.bi(12) + t.bi(13) + t.bi(14) != s.a2) return false;
    if (t.bi(15) == 0 && t.eps != 0) return false;
    if (t.bi(15) % 2 == 1 && t.eps != 1) return false;
    if (t.eps != 0 && t.eps != 1) return false;
    return true;
}

namespace detail {

// The (U+ + W-)-component of v inside U+ + U-, well defined modulo W, which
// pairs to zero with everything here. Returns one valid representative.
template <class K>
std::vector<K> plus_component(const std::vector<K>& v, const Subspace<K>& UpWm, const Subspace<K>& WpUm) {
    K ex = UpWm.basis().exemplar();
    int N = UpWm.ambient_dim();
    int da = UpWm.dim(), db = WpUm.dim();
    Mat<K> m(N, da + db, ex);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < N; ++j) m.at(j, i) = UpWm.basis().at(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < N; ++j) m.at(j, da + i) = WpUm.basis().at(i, j);
    auto sol = solve(m, v);
    if (!sol) throw precondition_error("plus_component: vector not in U+ + U-");
    std::vector<K> vp(N, ex.zero());
    for (int i = 0; i < da; ++i) {
        const K& c = (*sol)[i];
        if (c.is_zero()) continue;
        for (int j = 0; j < N; ++j) vp[j] += c * UpWm.basis().at(i, j);
    }
    return vp;
}

} // namespace detail

// Invariants of V against the normalized pair determined by `shape`.
// V must be maximal isotropic; the pair must be in model position.
template <class K>
InvariantTuple compute_b(const Subspace<K>& Up, const Subspace<K>& Um, const Subspace<K>& V,
                         const PairShape& shape) {
    int n = shape.n;
    K ex = Up.basis().exemplar();
    if (!is_normalized_pair(Up, Um, shape))
        throw precondition_error("compute_b: pair is not in the normalized model position");
    if (V.dim() != n || !is_isotropic(V, n))
        throw precondition_error("compute_b: V must be maximal isotropic");

    auto coords = [&](int lo, int hi) {
        std::vector<std::vector<K>> v;
        for (int i = lo; i <= hi; ++i) v.push_back(basis_vector(i, n, ex));
        return Subspace<K>::span_vectors(v, 2 * n + 1, ex);
    };
    Subspace<K> W0 = coords(1, shape.a0);
    Subspace<K> Wp = coords(1, shape.a0 + shape.ap);                       // W_+ = U+ cap U-^perp
    Subspace<K> Wm = sum(W0, coords(shape.a0 + shape.ap + 1, shape.d));    // W_- = U- cap U+^perp
    Subspace<K> W = coords(1, shape.d);

    InvariantTuple t;
    t.bi(1) = intersect(W0, V).dim();
    t.bi(2) = shape.a0 - t.bi(1);
    t.bi(3) = intersect(Wp, V).dim() - t.bi(1);
    t.bi(4) = intersect(Wm, V).dim() - t.bi(1);
    t.bi(5) = intersect(Up, V).dim() - t.bi(1) - t.bi(3);
    t.bi(6) = intersect(Um, V).dim() - t.bi(1) - t.bi(4);
    int dimWV = intersect(W, V).dim();
    t.bi(7) = dimWV - t.bi(1) - t.bi(3) - t.bi(4);
    Subspace<K> WpUm = sum(Wp, Um);
    Subspace<K> UpWm = sum(Up, Wm);
    t.bi(8) = intersect(WpUm, V).dim() - dimWV - t.bi(6);
    t.bi(9) = intersect(UpWm, V).dim() - dimWV - t.bi(5);
    t.bi(10) = shape.ap - t.bi(3) - t.bi(7) - t.bi(8);
    t.bi(11) = shape.am - t.bi(4) - t.bi(7) - t.bi(9);

    Subspace<K> UpUm = sum(Up, Um);
    Subspace<K> X = intersect(UpUm, V);
    Subspace<K> Xp = intersect(UpUm, perp(V, n));
    Subspace<K> X0 = sum(intersect(UpWm, V), intersect(WpUm, V));

    // X1 = { v in X' : (v_+, X') = 0 }, v_+ the (U+ + W-)-component
    Subspace<K> X1;
    {
        int r = Xp.dim();
        Mat<K> pairings(r, r, ex);
        for (int i = 0; i < r; ++i) {
            std::vector<K> vp = detail::plus_component(Xp.basis_row(i), UpWm, WpUm);
            for (int j = 0; j < r; ++j) pairings.at(j, i) = form_value(vp, Xp.basis_row(j), n);
        }
        Mat<K> ker = kernel(pairings);
        std::vector<std::vector<K>> vecs;
        for (int rrow = 0; rrow < ker.rows(); ++rrow) {
            std::vector<K> v(2 * n + 1, ex.zero());
            for (int i = 0; i < r; ++i) {
                const K& c = ker.at(rrow, i);
                if (c.is_zero()) continue;
                for (int j = 0; j < 2 * n + 1; ++j) v[j] += c * Xp.basis().at(i, j);
            }
            vecs.push_back(std::move(v));
        }
        X1 = Subspace<K>::span_vectors(vecs, 2 * n + 1, ex);
    }

    if (!X1.contains(X0) || !X.contains(X1))
        throw precondition_error("compute_b: X0 c X1 c X violated");

    t.bi(12) = X1.dim() - X0.dim();
    t.bi(15) = Xp.dim() - X1.dim();
    t.eps = Xp.dim() - X.dim();
    // dim pi(X') = dim X' - dim(W cap V), since W cap V^perp = W cap V
    int dim_piXp = Xp.dim() - dimWV;
    t.bi(13) = shape.a1 - dim_piXp - t.bi(12);
    t.bi(14) = shape.a2 - t.bi(12) - t.bi(13);

    if (t.eps < 0 || t.eps > 1 || !tuple_consistent(shape, t))
        throw precondition_error("compute_b: result violates the counting identities");
    return t;
}

// All tuples admissible for the shape, deduplicated, lexicographic in
// (b_1..b_15, eps).
inline std::vector<InvariantTuple> enumerate_tuples(const PairShape& s) {
    std::vector<InvariantTuple> out;
    for (int b7 = 0; b7 <= std::min(s.ap, s.am); ++b7)
        for (int b8 = 0; b8 <= s.ap - b7; ++b8)
            for (int b3 = 0; b3 <= s.ap - b7 - b8; ++b3)
                for (int b9 = 0; b9 <= std::min(s.am - b7, s.a1 - b8); ++b9)
                    for (int b4 = 0; b4 <= s.am - b7 - b9; ++b4)
                        for (int b1 = 0; b1 <= s.a0; ++b1) {
                            int rem0 = s.a1 - b8 - b9;
                            if (rem0 < 0) continue;
                            for (int b12 = 0; 2 * b12 <= rem0 && b12 <= s.a2; ++b12)
                                for (int b13 = 0; b13 <= std::min(rem0 - 2 * b12, s.a2 - b12); ++b13)
                                    for (int b15 = 0; b15 <= rem0 - 2 * b12 - b13; ++b15)
                                        for (int b5 = 0; b5 <= rem0 - 2 * b12 - b13 - b15; ++b5) {
                                            InvariantTuple t;
                                            t.bi(1) = b1;
                                            t.bi(2) = s.a0 - b1;
                                            t.bi(3) = b3;
                                            t.bi(4) = b4;
                                            t.bi(5) = b5;
                                            t.bi(6) = rem0 - 2 * b12 - b13 - b15 - b5;
                                            t.bi(7) = b7;
                                            t.bi(8) = b8;
                                            t.bi(9) = b9;
                                            t.bi(10) = s.ap - b3 - b7 - b8;
                                            t.bi(11) = s.am - b4 - b7 - b9;
                                            t.bi(12) = b12;
                                            t.bi(13) = b13;
                                            t.bi(14) = s.a2 - b12 - b13;
                                            t.bi(15) = b15;
                                            if (b15 == 0) {
                                                t.eps = 0;
                                                if (tuple_consistent(s, t)) out.push_back(t);
                                            } else if (b15 % 2 == 1) {
                                                t.eps = 1;
                                                if (tuple_consistent(s, t)) out.push_back(t);
                                            } else {
                                                for (int e = 0; e <= 1; ++e) {
                                                    t.eps = e;
                                                    if (tuple_consistent(s, t)) out.push_back(t);
                                                }
                                            }
                                        }
                        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](const InvariantTuple& a, const InvariantTuple& b) { return a == b; }),
              out.end());
    return out;
}

} // namespace isoflag
