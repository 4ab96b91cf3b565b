// stabilizer.hpp
// Finite generating sets over GF(p) for the joint stabilizer
// R = P_{U+} cap P_{U-} of the model pair, for parabolic flag stabilizers,
// and for the split odd orthogonal groups acting on middle blocks.
// Every emitted element is checked against its stabilizer conditions.

#pragma once

#include <string>
#include <vector>

#include "isoflag/oracle.hpp"
#include "isoflag/pair_shape.hpp"

namespace isoflag {

struct GenElem {
    OrthElement<Fp> g;
    std::string provenance;
};

struct GeneratorSet {
    int n = 0;
    long long p = 0;
    std::string context;
    std::vector<GenElem> elems;

    std::vector<Mat<Fp>> matrices() const {
        std::vector<Mat<Fp>> ms;
        ms.reserve(elems.size());
        for (const auto& e : elems) ms.push_back(e.g.mat());
        return ms;
    }
};

// Generators of the full odd orthogonal group O_{2k+1}(p) on its own split
// space: Eichler unipotents of two opposite line stabilizers, the coordinate
// reversal, a torus element, and the central-vector reflection, topped up
// with reflections in f_i +- f_j for good measure.
inline std::vector<Mat<Fp>> block_O_generators(int k, long long p) {
    Fp ex(0, p);
    int mm = 2 * k + 1;
    std::vector<Mat<Fp>> gens;
    if (k == 0) {
        Mat<Fp> neg(1, 1, ex);
        neg.at(0, 0) = -ex.one();
        gens.push_back(neg);
        return gens;
    }
    for (int j = 0; j < mm - 2; ++j) {
        Mat<Fp> X(1, mm - 2, ex);
        X.at(0, j) = ex.one();
        gens.push_back(unipotent_XZ(X, Mat<Fp>(1, 1, ex), 1, k).mat());
    }
    gens.push_back(anti_identity<Fp>(mm, ex));
    Mat<Fp> torus = Mat<Fp>::identity(mm, ex);
    Fp t(primitive_root(p), p);
    torus.at(0, 0) = t;
    torus.at(mm - 1, mm - 1) = t.inv();
    gens.push_back(torus);
    Mat<Fp> refl = Mat<Fp>::identity(mm, ex);
    refl.at(k, k) = -ex.one();
    gens.push_back(refl);
    // reflections in f_i + f_{mm+1-i} and f_i - f_{mm+1-i}
    auto reflection = [&](const std::vector<Fp>& v) {
        Fp q = form_value(v, v, k);
        Mat<Fp> r = Mat<Fp>::identity(mm, ex);
        Fp two = ex.from_int(2);
        for (int c = 0; c < mm; ++c) {
            std::vector<Fp> x(mm, ex.zero());
            x[c] = ex.one();
            Fp f = two * form_value(x, v, k) / q;
            for (int row = 0; row < mm; ++row) r.at(row, c) = (row == c ? ex.one() : ex.zero()) - f * v[row];
        }
        return r;
    };
    for (int i = 1; i <= k; ++i)
        for (int sgn : {1, -1}) {
            std::vector<Fp> v(mm, ex.zero());
            v[coord(i)] = ex.one();
            v[coord(mm + 1 - i)] = ex.from_int(sgn);
            gens.push_back(reflection(v));
        }
    for (auto& g : gens)
        if (!is_orthogonal(g, k)) throw precondition_error("block_O_generators: element not orthogonal");
    return gens;
}

namespace detail {

inline void check_in_R(const OrthElement<Fp>& g, const Subspace<Fp>& Up, const Subspace<Fp>& Um,
                       const char* who) {
    if (g.apply(Up) != Up || g.apply(Um) != Um)
        throw precondition_error(std::string(who) + ": element does not stabilize the pair");
}

} // namespace detail

// Generators of R(GF(p)) for the model pair of the given shape, following the
// product decomposition (N_W cap R)(L_U cap R)(L_W cap R).
inline GeneratorSet r_generators(const PairShape& s, long long p) {
    Fp ex(0, p);
    int n = s.n, d = s.d, m = s.m, a0 = s.a0, ap = s.ap, am = s.am, a1 = s.a1;
    GeneratorSet out;
    out.n = n;
    out.p = p;
    out.context = "R(" + s.str() + ")";
    Subspace<Fp> Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
    auto emit = [&](const OrthElement<Fp>& g, const std::string& tag) {
        detail::check_in_R(g, Up, Um, "r_generators");
        out.elems.push_back({g, tag});
    };

    // L_W cap R: block (A, B, C; Y1, Y2) inside GL_d
    auto emit_lw = [&](const Mat<Fp>& blockA) { emit(ell(blockA, n), "LW"); };
    auto gl_block = [&](int offset, int size) {
        for (const auto& gsmall : gl_generators(size, p)) {
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) A.at(offset + i, offset + j) = gsmall.at(i, j);
            emit_lw(A);
        }
    };
    if (d > 0) {
        gl_block(0, a0);
        gl_block(a0, ap);
        gl_block(a0 + ap, am);
        for (int i = 0; i < a0; ++i)
            for (int j = 0; j < ap + am; ++j) {
                Mat<Fp> A = Mat<Fp>::identity(d, ex);
                A.at(i, a0 + j) = ex.one();
                emit_lw(A);
            }
    }

    // L_U cap R: ell00(D, D') with D in GL_{a1}, D' in O_{m-2a1}
    for (const auto& gd : gl_generators(a1, p))
        emit(ell00(gd, Mat<Fp>::identity(m - 2 * a1, ex), d, n), "LU-GL");
    for (const auto& go : block_O_generators(s.a2, p))
        emit(ell00(Mat<Fp>::identity(a1, ex), go, d, n), "LU-O");

    // N_W cap R: unit X entries on admissible cells, plus pure-Z units
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= m; ++j) {
            bool zone1 = (i > a0 + ap) && (j <= a1);
            bool zone2 = (i > a0 && i <= a0 + ap) && (j > m - a1);
            if (zone1 || zone2) continue;
            Mat<Fp> X(d, m, ex);
            X.at(i - 1, j - 1) = ex.one();
            emit(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n), "NW-X");
        }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j + i <= d; ++j) {
            Mat<Fp> zf(d, d, ex);
            zf.at(i - 1, j - 1) = ex.one();
            emit(unipotent_XZ(Mat<Fp>(d, m, ex), zf, d, n), "NW-Z");
        }
    return out;
}

// Generators of the parabolic stabilizer of the canonical isotropic flag of
// the given type: block-upper GL_d part, the full middle orthogonal group,
// and the full unipotent radical N_W.
inline GeneratorSet parabolic_generators(const FlagType& type, int n, long long p) {
    type.validate(n);
    Fp ex(0, p);
    int d = type.sum(), m = 2 * n + 1 - 2 * d;
    GeneratorSet out;
    out.n = n;
    out.p = p;
    out.context = "P" + type.str();
    auto flag = canonical_flag(type, n, ex);
    auto emit = [&](const OrthElement<Fp>& g, const std::string& tag) {
        if (!parabolic_contains(g, flag))
            throw precondition_error("parabolic_generators: element moves the flag");
        out.elems.push_back({g, tag});
    };
    int off = 0;
    for (int a : type.parts) {
        for (const auto& gsmall : gl_generators(a, p)) {
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < a; ++j) A.at(off + i, off + j) = gsmall.at(i, j);
            emit(ell(A, n), "Levi-GL");
        }
        for (int i = 0; i < off; ++i)
            for (int j = 0; j < a; ++j) {
                Mat<Fp> A = Mat<Fp>::identity(d, ex);
                A.at(i, off + j) = ex.one();
                emit(ell(A, n), "Levi-upper");
            }
        off += a;
    }
    int k = n - d;
    for (const auto& go : block_O_generators(k, p)) emit(ell0(go, d, n), "Levi-O");
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= m; ++j) {
            Mat<Fp> X(d, m, ex);
            X.at(i - 1, j - 1) = ex.one();
            emit(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n), "NW-X");
        }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j + i <= d; ++j) {
            Mat<Fp> zf(d, d, ex);
            zf.at(i - 1, j - 1) = ex.one();
            emit(unipotent_XZ(Mat<Fp>(d, m, ex), zf, d, n), "NW-Z");
        }
    return out;
}

// Action matrices of stabilizer elements restricted to an invariant subspace,
// in the given basis rows.
inline std::vector<Mat<Fp>> restrict_to_basis(const std::vector<std::vector<Fp>>& basis_rows,
                                              const std::vector<Mat<Fp>>& gens) {
    if (basis_rows.empty()) return {};
    int N = static_cast<int>(basis_rows[0].size());
    int k = static_cast<int>(basis_rows.size());
    Fp ex = basis_rows[0][0].zero();
    Subspace<Fp> V = Subspace<Fp>::span_vectors(basis_rows, N, ex);
    if (V.dim() != k) throw precondition_error("restrict_to_basis: rows not independent");
    Mat<Fp> B(N, k, ex);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < N; ++i) B.at(i, j) = basis_rows[j][i];
    std::vector<Mat<Fp>> out;
    for (const auto& g : gens) {
        Mat<Fp> act(k, k, ex);
        for (int j = 0; j < k; ++j) {
            std::vector<Fp> img(N, ex.zero());
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) img[r] += g.at(r, c) * basis_rows[j][c];
            auto sol = solve(B, img);
            if (!sol) throw precondition_error("restrict_to_basis: generator leaves the subspace");
            for (int i = 0; i < k; ++i) act.at(i, j) = (*sol)[i];
        }
        out.push_back(std::move(act));
    }
    return out;
}

} // namespace isoflag
