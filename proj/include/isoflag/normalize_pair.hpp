// normalize_pair.hpp
// Move an arbitrary isotropic pair (U+, U-) into the coordinate model
// position: straighten W+ + W-, split the W-block by a GL move, standardize
// the nondegenerate quotient pair, then erase the residual corrections with
// a unipotent g(X, Z).

#pragma once

#include "isoflag/pair_shape.hpp"
#include "isoflag/witt.hpp"

namespace isoflag {

struct NormalizedPair {
    OrthElement<Fp> g;
    PairShape shape;
};

inline NormalizedPair normalize_pair(const Subspace<Fp>& Up_in, const Subspace<Fp>& Um_in, int n) {
    Fp ex = Up_in.basis().exemplar();
    int N = 2 * n + 1;
    PairShape s = pair_shape(Up_in, Um_in, n);
    const int a0 = s.a0, apl = s.ap, a1 = s.a1, d = s.d;

    OrthElement<Fp> acc = OrthElement<Fp>::identity(n, ex);
    Subspace<Fp> Up = Up_in, Um = Um_in;
    auto push = [&](const OrthElement<Fp>& g) {
        acc = g * acc;
        Up = g.apply(Up);
        Um = g.apply(Um);
    };

    // (1) straighten W+ + W- onto <e_1..e_d>
    Subspace<Fp> Wp = intersect(Up, perp(Um, n));
    Subspace<Fp> Wm = intersect(Um, perp(Up, n));
    if (d > 0) {
        push(straighten_isotropic(sum(Wp, Wm), n));
        Wp = intersect(Up, perp(Um, n));
        Wm = intersect(Um, perp(Up, n));

        // (2) GL_d move separating W+ and W- inside the W-block
        Subspace<Fp> W0 = intersect(Wp, Wm);
        Mat<Fp> P(d, d, ex);
        auto wcoords = [&](const std::vector<Fp>& v) {
            std::vector<Fp> w(d, ex.zero());
            for (int i = 0; i < d; ++i) w[i] = v[i];
            for (int i = d; i < N; ++i)
                if (!v[i].is_zero()) throw precondition_error("normalize_pair: W-block vector has outside support");
            return w;
        };
        std::vector<std::vector<Fp>> cols;
        for (int i = 0; i < W0.dim(); ++i) cols.push_back(wcoords(W0.basis_row(i)));
        auto extend_from = [&](const Subspace<Fp>& src) {
            for (int i = 0; i < src.dim(); ++i) {
                std::vector<Fp> c = wcoords(src.basis_row(i));
                std::vector<std::vector<Fp>> trial = cols;
                trial.push_back(c);
                if (Subspace<Fp>::span_vectors(trial, d, ex).dim() == static_cast<int>(trial.size()))
                    cols.push_back(c);
            }
        };
        extend_from(Wp);
        if (static_cast<int>(cols.size()) != a0 + apl)
            throw precondition_error("normalize_pair: W+ extension failed");
        extend_from(Wm);
        if (static_cast<int>(cols.size()) != d)
            throw precondition_error("normalize_pair: W- extension failed");
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) P.at(i, j) = cols[j][i];
        push(ell(inverse(P), n));
    }

    // (3) standardize the quotient pair inside the middle block
    SplitBlock blk(d + 1, n);
    auto project_to_block = [&](const Subspace<Fp>& S) {
        std::vector<std::vector<Fp>> rows;
        for (int i = 0; i < S.dim(); ++i) {
            std::vector<Fp> v = S.basis_row(i);
            std::vector<Fp> b(blk.size(), ex.zero());
            for (int k = 0; k < blk.size(); ++k) b[k] = v[coord(d + 1 + k)];
            rows.push_back(std::move(b));
        }
        return Subspace<Fp>::span_vectors(rows, blk.size(), ex);
    };
    if (a1 > 0) {
        int nb = blk.n_block, M = blk.size();
        Subspace<Fp> piUp = project_to_block(Up);
        if (piUp.dim() != a1) throw precondition_error("normalize_pair: projected U+ has wrong dimension");
        push(blk.embed(straighten_isotropic(piUp, nb)));
        Subspace<Fp> piUm = project_to_block(Um);
        if (piUm.dim() != a1) throw precondition_error("normalize_pair: projected U- has wrong dimension");
        // nondegeneracy against pi(U+) = <f_1..f_a1> makes the projection of
        // pi(U-) onto the last a1 coordinates bijective: solve for the basis
        // v'_j = f_{M-a1+j} + sum z_{ij} f_i + sum y_{ij} f_{a1+i}
        Mat<Fp> tailT(a1, a1, ex);
        for (int i = 0; i < a1; ++i)
            for (int j = 0; j < a1; ++j) tailT.at(j, i) = piUm.basis().at(i, M - a1 + j);
        Mat<Fp> C = inverse(tailT);
        Mat<Fp> Y(M - 2 * a1, a1, ex), Zq(a1, a1, ex);
        for (int j = 0; j < a1; ++j) {
            std::vector<Fp> v(M, ex.zero());
            for (int r = 0; r < a1; ++r) {
                const Fp& c = C.at(r, j);
                if (c.is_zero()) continue;
                for (int k = 0; k < M; ++k) v[k] += c * piUm.basis().at(r, k);
            }
            for (int i = 0; i < a1; ++i) Zq.at(i, j) = v[i];
            for (int i = 0; i < M - 2 * a1; ++i) Y.at(i, j) = v[a1 + i];
        }
        push(blk.embed(gprime_exact(Y, Zq, a1, nb).inverse()));
        // both projections are now the standard coordinate subspaces
        Subspace<Fp> chk = project_to_block(Um);
        for (int i = 0; i < chk.dim(); ++i)
            for (int k = 0; k < M - a1; ++k)
                if (!chk.basis().at(i, k).is_zero())
                    throw precondition_error("normalize_pair: quotient standardization failed");
    }

    // (4) unipotent correction g(X, Z) clearing the residual W-components
    if (a1 > 0 && d > 0) {
        int m = s.m;
        Subspace<Fp> W0pl = Subspace<Fp>(N, ex);
        {
            std::vector<std::vector<Fp>> v;
            for (int i = 1; i <= a0 + apl; ++i) v.push_back(basis_vector(i, n, ex));
            W0pl = Subspace<Fp>::span_vectors(v, N, ex);
        }
        Subspace<Fp> W0mi = Subspace<Fp>(N, ex);
        {
            std::vector<std::vector<Fp>> v;
            for (int i = 1; i <= a0; ++i) v.push_back(basis_vector(i, n, ex));
            for (int i = a0 + apl + 1; i <= d; ++i) v.push_back(basis_vector(i, n, ex));
            W0mi = Subspace<Fp>::span_vectors(v, N, ex);
        }
        Mat<Fp> X(d, m, ex);
        for (int j = 1; j <= a1; ++j) {
            // v_j in U+ with middle part e_{d+j}
            std::vector<Fp> target = basis_vector(d + j, n, ex);
            bool found = false;
            // solve c . basis = e_{d+j} on the middle block coordinates
            Mat<Fp> A(N - d, Up.dim(), ex);
            std::vector<Fp> rhs(N - d, ex.zero());
            for (int r = 0; r < Up.dim(); ++r)
                for (int c = d; c < N; ++c) A.at(c - d, r) = Up.basis().at(r, c);
            rhs[j - 1 + (d + j > d ? 0 : 0)] = ex.one();
            // middle block position of e_{d+j} among coords d+1..N is j
            auto sol = solve(A, rhs);
            if (sol) {
                std::vector<Fp> u(N, ex.zero());
                for (int r = 0; r < Up.dim(); ++r)
                    for (int c = 0; c < N; ++c) u[c] += (*sol)[r] * Up.basis().at(r, c);
                u = W0pl.reduce(u);
                for (int i = a0 + apl + 1; i <= d; ++i) X.at(i - 1, j - 1) = u[coord(i)];
                found = true;
            }
            if (!found) throw precondition_error("normalize_pair: missing U+ lift");
            // v'_j in U- with middle part e_{d'+j}
            Mat<Fp> A2(N - d, Um.dim(), ex);
            std::vector<Fp> rhs2(N - d, ex.zero());
            for (int r = 0; r < Um.dim(); ++r)
                for (int c = d; c < N; ++c) A2.at(c - d, r) = Um.basis().at(r, c);
            rhs2[s.dprime + j - 1 - d] = ex.one();
            auto sol2 = solve(A2, rhs2);
            if (!sol2) throw precondition_error("normalize_pair: missing U- lift");
            std::vector<Fp> u2(N, ex.zero());
            for (int r = 0; r < Um.dim(); ++r)
                for (int c = 0; c < N; ++c) u2[c] += (*sol2)[r] * Um.basis().at(r, c);
            u2 = W0mi.reduce(u2);
            int colm = s.dprime + j - d;   // column of e_{d'+j} within the middle block
            for (int i = a0 + 1; i <= a0 + apl; ++i) X.at(i - 1, colm - 1) = u2[coord(i)];
        }
        push(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n).inverse());
    }

    if (Up != model_Uplus(s, ex) || Um != model_Uminus(s, ex))
        throw precondition_error("normalize_pair: postcondition failed");
    return {acc, s};
}

} // namespace isoflag
