// witt.hpp
// Constructive moves in the split orthogonal group over GF(p): find isotropic
// vectors, complete hyperbolic pairs, build standard split bases of
// nondegenerate subspaces, map an isotropic subspace onto the first
// coordinates, and extend a partial isometry with nondegenerate split domain.
//
// All searches scan GF(p) exhaustively; the fields in play are tiny.

#pragma once

#include <optional>
#include <vector>

#include "isoflag/split_form.hpp"

namespace isoflag {

// First isotropic vector (by coordinate odometer over the subspace basis),
// or nullopt if the subspace has none.
inline std::optional<std::vector<Fp>> find_isotropic_vector(const Subspace<Fp>& T, int n) {
    int k = T.dim();
    if (k == 0) return std::nullopt;
    for (int i = 0; i < k; ++i) {
        std::vector<Fp> r = T.basis_row(i);
        if (form_value(r, r, n).is_zero()) return r;
    }
    long long p = T.basis().exemplar().prime();
    // scan projective points: coefficients with first nonzero equal to 1
    std::vector<long long> cs(k, 0);
    while (true) {
        size_t t = 0;
        while (t < cs.size() && ++cs[t] == p) cs[t++] = 0;
        if (t == cs.size()) break;
        int lead = -1;
        for (int i = k - 1; i >= 0; --i)
            if (cs[i] != 0) lead = i;
        if (lead < 0 || cs[lead] != 1) continue;
        std::vector<Fp> v(T.ambient_dim(), Fp(0, p));
        for (int i = 0; i < k; ++i) {
            if (cs[i] == 0) continue;
            Fp c(cs[i], p);
            std::vector<Fp> r = T.basis_row(i);
            for (int j = 0; j < T.ambient_dim(); ++j) v[j] += c * r[j];
        }
        bool zero = true;
        for (const auto& x : v) zero = zero && x.is_zero();
        if (zero) continue;
        if (form_value(v, v, n).is_zero()) return v;
    }
    return std::nullopt;
}

// Isotropic w in T with (v, w) = 1, given isotropic v in T not in the radical
// of T's form.
inline std::vector<Fp> hyperbolic_partner(const std::vector<Fp>& v, const Subspace<Fp>& T, int n) {
    Fp ex = v[0].zero();
    for (int i = 0; i < T.dim(); ++i) {
        std::vector<Fp> u = T.basis_row(i);
        Fp c = form_value(v, u, n);
        if (c.is_zero()) continue;
        Fp inv = c.inv();
        for (auto& x : u) x = x * inv;                       // (v, u) = 1
        Fp q = form_value(u, u, n);
        Fp half = ex.one() / ex.from_int(2);
        for (size_t j = 0; j < u.size(); ++j) u[j] -= half * q * v[j];   // make u isotropic
        return u;
    }
    throw precondition_error("hyperbolic_partner: vector pairs to zero with the whole subspace");
}

struct SplitBasis {
    // u[i], w[i] hyperbolic pairs ((u_i, w_i) = 1); z the optional unit vector
    std::vector<std::vector<Fp>> u, w;
    std::optional<std::vector<Fp>> z;   // (z, z) = 1, present iff dim T odd
};

// Standard basis of a nondegenerate subspace T that is split (all our callers
// guarantee this: T is an orthogonal complement of a split subspace).
inline SplitBasis split_basis(const Subspace<Fp>& T, int n) {
    SplitBasis sb;
    Subspace<Fp> cur = T;
    Fp ex = T.basis().exemplar();
    while (cur.dim() >= 2) {
        auto v = find_isotropic_vector(cur, n);
        if (!v) break;
        std::vector<Fp> wv = hyperbolic_partner(*v, cur, n);
        sb.u.push_back(*v);
        sb.w.push_back(wv);
        // restrict to the orthogonal complement of <v, w> inside cur
        auto H = Subspace<Fp>::span_vectors({*v, wv}, cur.ambient_dim(), ex);
        cur = intersect(cur, perp(H, n));
    }
    if (cur.dim() == 1) {
        std::vector<Fp> z = cur.basis_row(0);
        Fp q = form_value(z, z, n);
        if (q.is_zero()) throw precondition_error("split_basis: degenerate leftover line");
        Fp s = q.inv().sqrt();   // leftover norm is a square for split T
        for (auto& x : z) x = x * s;
        sb.z = z;
    } else if (cur.dim() != 0) {
        throw precondition_error("split_basis: anisotropic plane encountered (input not split)");
    }
    return sb;
}

// g in G with g S = <e_1,...,e_k> for an isotropic subspace S of dim k.
inline OrthElement<Fp> straighten_isotropic(const Subspace<Fp>& S, int n) {
    int k = S.dim(), N = 2 * n + 1;
    Fp ex = S.basis().exemplar();
    if (!is_isotropic(S, n)) throw precondition_error("straighten_isotropic: input not isotropic");
    if (k > n) throw precondition_error("straighten_isotropic: dimension exceeds the Witt index");
    // dual isotropic family t_i with (s_i, t_j) = delta_ij, (t_i, t_j) = 0
    std::vector<std::vector<Fp>> svec, tvec;
    for (int i = 0; i < k; ++i) svec.push_back(S.basis_row(i));
    Fp half = ex.one() / ex.from_int(2);
    for (int i = 0; i < k; ++i) {
        // solve (x, s_j) = delta_ij, (x, t_j) = 0 for j < i
        Mat<Fp> A(k + i, N, ex);
        std::vector<Fp> b(k + i, ex.zero());
        auto fill = [&](int row, const std::vector<Fp>& vrow) {
            for (int c = 1; c <= N; ++c) A.at(row, coord(c)) = vrow[coord(bar(c, n))];
        };
        for (int j = 0; j < k; ++j) {
            fill(j, svec[j]);
            b[j] = (j == i) ? ex.one() : ex.zero();
        }
        for (int j = 0; j < i; ++j) fill(k + j, tvec[j]);
        auto x = solve(A, b);
        if (!x) throw precondition_error("straighten_isotropic: dual system unsolvable");
        std::vector<Fp> t = *x;
        Fp q = form_value(t, t, n);
        for (int c = 0; c < N; ++c) t[c] -= half * q * svec[i][c];
        tvec.push_back(t);
    }
    // complement: perp of the hyperbolic span
    std::vector<std::vector<Fp>> hyp = svec;
    hyp.insert(hyp.end(), tvec.begin(), tvec.end());
    auto H = Subspace<Fp>::span_vectors(hyp, N, ex);
    SplitBasis sb = split_basis(perp(H, n), n);
    if (static_cast<int>(sb.u.size()) != n - k || !sb.z)
        throw precondition_error("straighten_isotropic: complement has wrong split structure");
    // rows of g^{-1}: images of e_1..e_N
    Mat<Fp> ginv(N, N, ex);
    auto put = [&](int pos, const std::vector<Fp>& v) {
        for (int c = 0; c < N; ++c) ginv.at(c, coord(pos)) = v[c];
    };
    for (int i = 0; i < k; ++i) put(i + 1, svec[i]);
    for (int i = 0; i < n - k; ++i) put(k + i + 1, sb.u[i]);
    put(n + 1, *sb.z);
    for (int i = 0; i < n - k; ++i) put(bar(k + i + 1, n), sb.w[i]);
    for (int i = 0; i < k; ++i) put(bar(i + 1, n), tvec[i]);
    OrthElement<Fp> gi(ginv, n);
    return gi.inverse();
}

// Extend v_i -> w_i to an isometry of the whole space. Requires matching Gram
// matrices and both spans nondegenerate and split (after removing nothing:
// the families must be linearly independent).
inline OrthElement<Fp> witt_extend(const std::vector<std::vector<Fp>>& vfam,
                                   const std::vector<std::vector<Fp>>& wfam, int n) {
    if (vfam.size() != wfam.size() || vfam.empty())
        throw precondition_error("witt_extend: family size mismatch");
    int N = 2 * n + 1;
    Fp ex = vfam[0][0].zero();
    for (size_t i = 0; i < vfam.size(); ++i)
        for (size_t j = 0; j < vfam.size(); ++j)
            if (form_value(vfam[i], vfam[j], n) != form_value(wfam[i], wfam[j], n))
                throw precondition_error("witt_extend: Gram matrices differ");
    auto Tv = Subspace<Fp>::span_vectors(vfam, N, ex);
    auto Tw = Subspace<Fp>::span_vectors(wfam, N, ex);
    if (Tv.dim() != static_cast<int>(vfam.size()) || Tw.dim() != static_cast<int>(wfam.size()))
        throw precondition_error("witt_extend: families must be linearly independent");
    SplitBasis cv = split_basis(perp(Tv, n), n);
    SplitBasis cw = split_basis(perp(Tw, n), n);
    if (cv.u.size() != cw.u.size() || cv.z.has_value() != cw.z.has_value())
        throw precondition_error("witt_extend: complements not isometric");
    auto assemble = [&](const std::vector<std::vector<Fp>>& fam, const SplitBasis& sb) {
        Mat<Fp> B(N, N, ex);
        int col = 0;
        auto put = [&](const std::vector<Fp>& v) {
            for (int r = 0; r < N; ++r) B.at(r, col) = v[r];
            ++col;
        };
        for (const auto& v : fam) put(v);
        for (const auto& v : sb.u) put(v);
        if (sb.z) put(*sb.z);
        for (size_t i = sb.w.size(); i-- > 0;) put(sb.w[i]);
        if (col != N) throw precondition_error("witt_extend: basis incomplete");
        return B;
    };
    Mat<Fp> Bv = assemble(vfam, cv), Bw = assemble(wfam, cw);
    Mat<Fp> g = Bw * inverse(Bv);
    return OrthElement<Fp>(g, n);
}

// Symmetric middle block {lo, ..., bar(lo)} of the ambient space, viewed as a
// smaller split space in its own right.
struct SplitBlock {
    int lo;        // 1-based first coordinate
    int n_global;
    int n_block;   // rank of the block form

    SplitBlock(int lo_, int n_) : lo(lo_), n_global(n_), n_block(n_ - lo_ + 1) {
        if (lo < 1 || lo > n_global + 1) throw precondition_error("SplitBlock: bad start");
    }
    int size() const { return 2 * n_block + 1; }
    int hi() const { return lo + size() - 1; }

    std::vector<Fp> extract(const std::vector<Fp>& full) const {
        std::vector<Fp> v;
        for (int i = 0; i < static_cast<int>(full.size()); ++i) {
            int pos = i + 1;
            if (pos >= lo && pos <= hi()) v.push_back(full[i]);
            else if (!full[i].is_zero())
                throw precondition_error("SplitBlock: vector has support outside the block");
        }
        return v;
    }
    std::vector<Fp> embed_vec(const std::vector<Fp>& blockv) const {
        std::vector<Fp> v(2 * n_global + 1, blockv[0].zero());
        for (int i = 0; i < size(); ++i) v[coord(lo + i)] = blockv[i];
        return v;
    }
    OrthElement<Fp> embed(const OrthElement<Fp>& gb) const {
        int N = 2 * n_global + 1;
        Fp ex = gb.mat().exemplar();
        Mat<Fp> g = Mat<Fp>::identity(N, ex);
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) g.at(coord(lo + i), coord(lo + j)) = gb.mat().at(i, j);
        return OrthElement<Fp>(g, n_global);
    }
};

// Straighten an isotropic subspace supported in a middle block, acting by the
// identity outside it.
inline OrthElement<Fp> straighten_isotropic_in_block(const Subspace<Fp>& S, const SplitBlock& blk) {
    Fp ex = S.basis().exemplar();
    std::vector<std::vector<Fp>> rows;
    for (int i = 0; i < S.dim(); ++i) rows.push_back(blk.extract(S.basis_row(i)));
    auto Sb = Subspace<Fp>::span_vectors(rows, blk.size(), ex);
    if (S.dim() == 0) return OrthElement<Fp>::identity(blk.n_global, ex);
    return blk.embed(straighten_isotropic(Sb, blk.n_block));
}

inline OrthElement<Fp> witt_extend_in_block(const std::vector<std::vector<Fp>>& vfam,
                                            const std::vector<std::vector<Fp>>& wfam,
                                            const SplitBlock& blk) {
    std::vector<std::vector<Fp>> vb, wb;
    for (const auto& v : vfam) vb.push_back(blk.extract(v));
    for (const auto& w : wfam) wb.push_back(blk.extract(w));
    return blk.embed(witt_extend(vb, wb, blk.n_block));
}

} // namespace isoflag
