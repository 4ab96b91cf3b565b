// layout.hpp
// The index sets I_(1)..I_(15), the maps eta_7/8/9/13/15, kappa, lambda, and
// the center index c underlying the canonical representative V(b, eps).
// Everything is 1-based, matching the coordinate displays it implements.

#pragma once

#include <map>
#include <set>
#include <vector>

#include "isoflag/invariants.hpp"

namespace isoflag {

struct IndexLayout {
    PairShape shape;
    InvariantTuple tuple;
    std::vector<int> I[16];              // I[j] = I_(j), j = 1..15
    std::map<int, int> eta7, eta8, eta9, eta13, eta15, kappa, lambda;
    int c = 0;                           // center of the b15 block (0 if b15 = 0)
    std::vector<int> I15plus;

    int n() const { return shape.n; }
    int d() const { return shape.d; }
    int dprime() const { return shape.dprime; }
};

inline IndexLayout layout(const PairShape& s, const InvariantTuple& t) {
    if (!tuple_consistent(s, t))
        throw precondition_error("layout: tuple inconsistent with shape");
    IndexLayout L;
    L.shape = s;
    L.tuple = t;
    int a0 = s.a0, ap = s.ap, d = s.d, dp = s.dprime, a1 = s.a1;
    auto range = [](int lo, int count) {
        std::vector<int> v;
        for (int k = 1; k <= count; ++k) v.push_back(lo + k);
        return v;
    };
    L.I[1] = range(0, t.bi(1));
    L.I[2] = range(t.bi(1), t.bi(2));
    L.I[3] = range(a0, t.bi(3));
    L.I[4] = range(a0 + ap, t.bi(4));
    L.I[5] = range(d, t.bi(5));
    L.I[6] = range(dp, t.bi(6));
    L.I[7] = range(a0 + t.bi(3), t.bi(7));
    L.I[8] = range(a0 + t.bi(3) + t.bi(7), t.bi(8));
    L.I[9] = range(a0 + ap + t.bi(4) + t.bi(7), t.bi(9));
    L.I[10] = range(a0 + ap - t.bi(10), t.bi(10));
    L.I[11] = range(d - t.bi(11), t.bi(11));
    L.I[12] = range(d + t.bi(5) + t.bi(9), t.bi(12));
    L.I[13] = range(d + t.bi(5) + t.bi(9) + t.bi(12) + t.bi(15), t.bi(13));
    L.I[14] = range(d + a1, t.bi(14));
    L.I[15] = range(d + t.bi(5) + t.bi(9) + t.bi(12), t.bi(15));

    for (int k = 1; k <= t.bi(7); ++k) L.eta7[a0 + t.bi(3) + k] = a0 + ap + t.bi(4) + k;
    for (int k = 1; k <= t.bi(8); ++k) L.eta8[a0 + t.bi(3) + t.bi(7) + k] = dp + t.bi(6) + k;
    for (int k = 1; k <= t.bi(9); ++k) L.eta9[a0 + ap + t.bi(4) + t.bi(7) + k] = d + t.bi(5) + k;
    for (int k = 1; k <= t.bi(13); ++k)
        L.eta13[d + t.bi(5) + t.bi(9) + t.bi(12) + t.bi(15) + k] = d + a1 + t.bi(14) + t.bi(12) + k;
    for (int k = 1; k <= t.bi(12); ++k) {
        L.kappa[d + t.bi(5) + t.bi(9) + k] = dp + t.bi(6) + t.bi(8) + k;
        L.lambda[d + t.bi(5) + t.bi(9) + k] = d + a1 + t.bi(14) + k;
    }
    for (int k = 1; k <= t.bi(15); ++k)
        L.eta15[d + t.bi(5) + t.bi(9) + t.bi(12) + k] = dp + t.bi(6) + t.bi(8) + t.bi(12) + t.bi(13) + k;
    if (t.bi(15) > 0) {
        L.c = d + t.bi(5) + t.bi(9) + t.bi(12) + (t.bi(15) + 1) / 2;
        for (int i = d + t.bi(5) + t.bi(9) + t.bi(12) + 1; i <= L.c; ++i) L.I15plus.push_back(i);
    }

    // well-formedness: the extended blocks are pairwise disjoint
    int n = s.n, N = 2 * n + 1;
    std::set<int> seen;
    auto claim = [&](int i) {
        if (i < 1 || i > N) throw precondition_error("layout: index out of range");
        if (!seen.insert(i).second) throw precondition_error("layout: overlapping index blocks");
    };
    for (int j = 1; j <= 15; ++j)
        for (int i : L.I[j]) {
            claim(i);
            claim(bar(i, n));
        }
    for (auto& [i, k] : L.eta7) { claim(k); claim(bar(k, n)); }
    for (auto& [i, k] : L.eta8) { claim(k); claim(bar(k, n)); }
    for (auto& [i, k] : L.eta9) { claim(k); claim(bar(k, n)); }
    for (auto& [i, k] : L.eta13) { claim(k); claim(bar(k, n)); }
    for (auto& [i, k] : L.kappa) { claim(k); claim(bar(k, n)); }
    for (auto& [i, k] : L.lambda) { claim(k); claim(bar(k, n)); }
    // eta15 images coincide with the bars of I_(15); nothing new to claim
    for (auto& [i, k] : L.eta15)
        if (seen.find(k) == seen.end()) throw precondition_error("layout: eta15 image outside block");
    if (seen.find(n + 1) != seen.end()) throw precondition_error("layout: center coordinate claimed by a block");
    return L;
}

// Spanning rows of V(b_1,...,b_15, eps), following the block displays.
template <class K>
Subspace<K> representative(const PairShape& s, const InvariantTuple& t, K ex) {
    IndexLayout L = layout(s, t);
    int n = s.n, N = 2 * n + 1;
    std::vector<std::vector<K>> rows;
    auto ev = [&](int i) { return basis_vector(i, n, ex); };
    auto add = [&](std::vector<K> v) { rows.push_back(std::move(v)); };
    auto axpy = [&](std::vector<K>& v, const K& c, int i) { v[coord(i)] += c; };

    for (int j : {1, 3, 4, 5, 6, 14})
        for (int i : L.I[j]) add(ev(i));
    for (int j : {2, 10, 11})
        for (int i : L.I[j]) add(ev(bar(i, n)));
    auto pair_block = [&](const std::vector<int>& Ij, const std::map<int, int>& eta) {
        for (int i : Ij) {
            int k = eta.at(i);
            std::vector<K> v1 = ev(i);
            axpy(v1, ex.one(), k);
            add(v1);
            std::vector<K> v2 = ev(bar(i, n));
            axpy(v2, -ex.one(), bar(k, n));
            add(v2);
        }
    };
    pair_block(L.I[7], L.eta7);
    pair_block(L.I[8], L.eta8);
    pair_block(L.I[9], L.eta9);
    pair_block(L.I[13], L.eta13);
    for (int i : L.I[12]) {
        std::vector<K> v1 = ev(i);
        axpy(v1, ex.one(), L.kappa.at(i));
        add(v1);
        std::vector<K> v2 = ev(i);
        axpy(v2, ex.one(), L.lambda.at(i));
        add(v2);
        std::vector<K> v3 = ev(bar(i, n));
        axpy(v3, -ex.one(), bar(L.kappa.at(i), n));
        axpy(v3, -ex.one(), bar(L.lambda.at(i), n));
        add(v3);
    }
    int b15 = t.bi(15);
    if (b15 > 0) {
        K half = ex.one() / ex.from_int(2);
        for (int i : L.I15plus) {
            if (i == L.c) continue;
            std::vector<K> v1 = ev(i);
            axpy(v1, ex.one(), L.eta15.at(i));
            add(v1);
            std::vector<K> v2 = ev(bar(i, n));
            axpy(v2, -ex.one(), bar(L.eta15.at(i), n));
            add(v2);
        }
        int c = L.c;
        if (b15 % 2 == 0 && t.eps == 0) {
            std::vector<K> v1 = ev(c);
            axpy(v1, ex.one(), L.eta15.at(c));
            add(v1);
            std::vector<K> v2 = ev(bar(c, n));
            axpy(v2, -ex.one(), bar(L.eta15.at(c), n));
            add(v2);
        } else if (b15 % 2 == 0 && t.eps == 1) {
            std::vector<K> v1 = ev(c);
            axpy(v1, ex.one(), L.eta15.at(c));
            add(v1);
            std::vector<K> v2 = ev(bar(c, n));
            axpy(v2, -ex.one(), bar(L.eta15.at(c), n));
            axpy(v2, -half, c);
            axpy(v2, ex.one(), n + 1);
            add(v2);
        } else {
            std::vector<K> v = ev(bar(c, n));
            axpy(v, -half, c);
            axpy(v, ex.one(), n + 1);
            add(v);
        }
    }
    Subspace<K> V = Subspace<K>::span_vectors(rows, N, ex);
    if (V.dim() != n || !is_isotropic(V, n))
        throw precondition_error("representative: constructed space is not maximal isotropic");
    return V;
}

} // namespace isoflag
