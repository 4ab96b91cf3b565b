// split_form.hpp
// The split symmetric bilinear form (e_i, e_j) = delta_{i, 2n+2-j} on
// F^(2n+1), certified orthogonal-group elements, isotropic flags, and the
// unipotent element constructors g(X,Z), g'(Y,Z) together with the
// isotropic-family completion element.
//
// Index convention: formulas use the 1-based indices 1..2n+1 with
// bar(i) = 2n+2-i, exactly as in the coordinate displays they implement.
// The only 0-based boundary is coord() below.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isoflag/subspace.hpp"

namespace isoflag {

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& m) : std::runtime_error(m) {}
};

inline int bar(int i, int n) { return 2 * n + 2 - i; }

// 1-based index -> 0-based coordinate. The single documented conversion.
inline int coord(int i) { return i - 1; }

template <class K>
std::vector<K> basis_vector(int i, int n, K ex) {
    std::vector<K> v(2 * n + 1, ex.zero());
    v[coord(i)] = ex.one();
    return v;
}

template <class K>
K form_value(const std::vector<K>& u, const std::vector<K>& v, int n) {
    if (static_cast<int>(u.size()) != 2 * n + 1 || u.size() != v.size())
        throw precondition_error("form_value: vectors must have length 2n+1");
    K s = u[0].zero();
    for (int i = 1; i <= 2 * n + 1; ++i) s += u[coord(i)] * v[coord(bar(i, n))];
    return s;
}

template <class K>
Mat<K> gram_matrix(const Subspace<K>& s, const Subspace<K>& t, int n) {
    Mat<K> g(s.dim(), t.dim(), s.basis().exemplar());
    for (int i = 0; i < s.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j)
            g.at(i, j) = form_value(s.basis_row(i), t.basis_row(j), n);
    return g;
}

template <class K>
Mat<K> anti_identity(int m, K ex) {
    Mat<K> j(m, m, ex);
    for (int i = 0; i < m; ++i) j.at(i, m - 1 - i) = ex.one();
    return j;
}

template <class K>
bool is_isotropic(const Subspace<K>& s, int n) {
    return gram_matrix(s, s, n).is_zero();
}

template <class K>
bool is_orthogonal(const Mat<K>& g, int n) {
    int N = 2 * n + 1;
    if (g.rows() != N || g.cols() != N) return false;
    Mat<K> J = anti_identity(N, g.exemplar());
    return g.transpose() * J * g == J;
}

// Orthogonal complement: kernel of v -> (basis_i, v).
template <class K>
Subspace<K> perp(const Subspace<K>& s, int n) {
    int N = 2 * n + 1;
    if (s.ambient_dim() != N) throw precondition_error("perp: ambient must be 2n+1");
    K ex = s.basis().exemplar();
    Mat<K> pairing(s.dim(), N, ex);
    for (int i = 0; i < s.dim(); ++i) {
        std::vector<K> r = s.basis_row(i);
        for (int j = 1; j <= N; ++j) pairing.at(i, coord(j)) = r[coord(bar(j, n))];
    }
    return Subspace<K>::span(kernel(pairing));
}

// A (2n+1)x(2n+1) matrix certified at construction to preserve the form.
template <class K>
class OrthElement {
public:
    OrthElement() : n_(0) {}
    OrthElement(Mat<K> m, int n) : n_(n), g_(std::move(m)) {
        if (!is_orthogonal(g_, n_))
            throw precondition_error("OrthElement: matrix does not preserve the split form");
    }
    static OrthElement identity(int n, K ex) {
        return OrthElement(Mat<K>::identity(2 * n + 1, ex), n);
    }

    int n() const { return n_; }
    const Mat<K>& mat() const { return g_; }

    OrthElement operator*(const OrthElement& o) const {
        if (n_ != o.n_) throw precondition_error("OrthElement: rank mismatch");
        OrthElement r;
        r.n_ = n_;
        r.g_ = g_ * o.g_;   // already certified, skip re-verification
        return r;
    }
    // g^{-1} = J g^T J for g in the split orthogonal group.
    OrthElement inverse() const {
        Mat<K> J = anti_identity(2 * n_ + 1, g_.exemplar());
        OrthElement r;
        r.n_ = n_;
        r.g_ = J * g_.transpose() * J;
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        std::vector<K> r(v.size(), g_.exemplar().zero());
        for (int i = 0; i < g_.rows(); ++i)
            for (int j = 0; j < g_.cols(); ++j)
                if (!g_.at(i, j).is_zero() && !v[j].is_zero()) r[i] += g_.at(i, j) * v[j];
        return r;
    }
    Subspace<K> apply(const Subspace<K>& s) const { return isoflag::apply(g_, s); }

    friend bool operator==(const OrthElement& a, const OrthElement& b) { return a.g_ == b.g_; }

private:
    int n_;
    Mat<K> g_;
};

struct FlagType {
    std::vector<int> parts;

    int sum() const {
        int s = 0;
        for (int a : parts) s += a;
        return s;
    }
    void validate(int n) const {
        if (parts.empty()) throw precondition_error("FlagType: empty composition");
        for (int a : parts)
            if (a <= 0) throw precondition_error("FlagType: parts must be positive");
        if (sum() > n) throw precondition_error("FlagType: composition sum exceeds n");
    }
    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

template <class K>
struct IsotropicFlag {
    FlagType type;
    std::vector<Subspace<K>> spaces;

    void validate(int n) const {
        type.validate(n);
        if (spaces.size() != type.parts.size())
            throw precondition_error("IsotropicFlag: member count mismatch");
        int d = 0;
        for (size_t i = 0; i < spaces.size(); ++i) {
            d += type.parts[i];
            if (spaces[i].dim() != d) throw precondition_error("IsotropicFlag: wrong member dimension");
            if (i > 0 && !spaces[i].contains(spaces[i - 1]))
                throw precondition_error("IsotropicFlag: members not nested");
        }
        if (!is_isotropic(spaces.back(), n))
            throw precondition_error("IsotropicFlag: top member not isotropic");
    }
};

// Canonical flag F_0 of a given type: e_1..e_{a_1} c e_1..e_{a_1+a_2} c ...
template <class K>
IsotropicFlag<K> canonical_flag(const FlagType& type, int n, K ex) {
    IsotropicFlag<K> f;
    f.type = type;
    int d = 0;
    for (int a : type.parts) {
        d += a;
        std::vector<std::vector<K>> vecs;
        for (int i = 1; i <= d; ++i) vecs.push_back(basis_vector(i, n, ex));
        f.spaces.push_back(Subspace<K>::span_vectors(vecs, 2 * n + 1, ex));
    }
    return f;
}

template <class K>
bool parabolic_contains(const OrthElement<K>& g, const IsotropicFlag<K>& flag) {
    for (const auto& v : flag.spaces)
        if (g.apply(v) != v) return false;
    return true;
}

// ell(A) = diag(A, I_m, J_d A^{-T} J_d) for A in GL_d.
template <class K>
OrthElement<K> ell(const Mat<K>& A, int n) {
    int d = A.rows(), N = 2 * n + 1;
    K ex = A.exemplar();
    Mat<K> g = Mat<K>::identity(N, ex);
    Mat<K> Jd = anti_identity(d, ex);
    Mat<K> Astar = Jd * inverse(A).transpose() * Jd;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            g.at(i, j) = A.at(i, j);
            g.at(N - d + i, N - d + j) = Astar.at(i, j);
        }
    return OrthElement<K>(g, n);
}

// ell0(B) = diag(I_d, B, I_d) for B in O_m acting on the middle block.
template <class K>
OrthElement<K> ell0(const Mat<K>& B, int d, int n) {
    int m = B.rows(), N = 2 * n + 1;
    if (2 * d + m != N) throw precondition_error("ell0: block sizes must satisfy 2d+m = 2n+1");
    Mat<K> g = Mat<K>::identity(N, B.exemplar());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g.at(d + i, d + j) = B.at(i, j);
    return OrthElement<K>(g, n);
}

// ell00(D, D') = ell0(diag(D, D', J a1 D^{-T} J a1)) per the Levi description
// of the pair stabilizer.
template <class K>
OrthElement<K> ell00(const Mat<K>& D, const Mat<K>& Dp, int d, int n) {
    int a1 = D.rows();
    int m = 2 * n + 1 - 2 * d;
    if (Dp.rows() != m - 2 * a1) throw precondition_error("ell00: middle block size mismatch");
    K ex = D.exemplar();
    Mat<K> B(m, m, ex);
    Mat<K> J1 = anti_identity(a1, ex);
    Mat<K> Dstar = J1 * inverse(D).transpose() * J1;
    for (int i = 0; i < a1; ++i)
        for (int j = 0; j < a1; ++j) {
            B.at(i, j) = D.at(i, j);
            B.at(m - a1 + i, m - a1 + j) = Dstar.at(i, j);
        }
    for (int i = 0; i < m - 2 * a1; ++i)
        for (int j = 0; j < m - 2 * a1; ++j) B.at(a1 + i, a1 + j) = Dp.at(i, j);
    return ell0(B, d, n);
}

// Unipotent radical element g(X,Z): upper block-triangular with blocks
// [I_d, X, Z; 0, I_m, -J_m X^T J_d; 0, 0, I_d], where Z is completed from
// Z + J_d Z^T J_d = -X J_m X^T J_d and the free entries z_{i,j}, i+j <= d.
template <class K>
OrthElement<K> unipotent_XZ(const Mat<K>& X, const Mat<K>& z_free, int d, int n) {
    int m = 2 * n + 1 - 2 * d;
    if (X.rows() != d || X.cols() != m) throw precondition_error("unipotent_XZ: X must be d x m");
    if (z_free.rows() != d || z_free.cols() != d) throw precondition_error("unipotent_XZ: z_free must be d x d");
    K ex = X.exemplar();
    K half = ex.one() / ex.from_int(2);
    Mat<K> Jd = anti_identity(d, ex), Jm = anti_identity(m, ex);
    Mat<K> M = -(X * Jm * X.transpose() * Jd);
    Mat<K> Z(d, d, ex);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i + j < d + 1) Z.at(i - 1, j - 1) = z_free.at(i - 1, j - 1);
            else if (i + j == d + 1) Z.at(i - 1, j - 1) = half * M.at(i - 1, j - 1);
            else Z.at(i - 1, j - 1) = M.at(i - 1, j - 1) - z_free.at(d - j, d - i);
        }
    Mat<K> Y = -(Jm * X.transpose() * Jd);
    int N = 2 * n + 1;
    Mat<K> g = Mat<K>::identity(N, ex);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) g.at(i, d + j) = X.at(i, j);
        for (int j = 0; j < d; ++j) g.at(i, d + m + j) = Z.at(i, j);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) g.at(d + i, d + m + j) = Y.at(i, j);
    return OrthElement<K>(g, n);
}

// g'(Y,Z) of the rewritten form: maps e_{2n+1-d+j} to the prescribed vectors
// v_j = e_{2n+1-d+j} + sum z_{i,j} e_i + sum y_{i,j} e_{d+i}; Z is completed
// from Z + J_d Z^T J_d = -J_d Y^T J_m Y with free entries zero.
template <class K>
OrthElement<K> gprime_YZ(const Mat<K>& Y, int d, int n) {
    int m = 2 * n + 1 - 2 * d;
    if (Y.rows() != m || Y.cols() != d) throw precondition_error("gprime_YZ: Y must be m x d");
    K ex = Y.exemplar();
    K half = ex.one() / ex.from_int(2);
    Mat<K> Jd = anti_identity(d, ex), Jm = anti_identity(m, ex);
    Mat<K> M = -(Jd * Y.transpose() * Jm * Y);
    Mat<K> Z(d, d, ex);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i + j < d + 1) Z.at(i - 1, j - 1) = ex.zero();   // free entries, fixed to zero
            else if (i + j == d + 1) Z.at(i - 1, j - 1) = half * M.at(i - 1, j - 1);
            else Z.at(i - 1, j - 1) = M.at(i - 1, j - 1);
        }
    int N = 2 * n + 1;
    Mat<K> g = Mat<K>::identity(N, ex);
    Mat<K> Xblk = -(Jd * Y.transpose() * Jm);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) g.at(i, d + j) = Xblk.at(i, j);
        for (int j = 0; j < d; ++j) g.at(i, d + m + j) = Z.at(i, j);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) g.at(d + i, d + m + j) = Y.at(i, j);
    return OrthElement<K>(g, n);
}

// g'(Y,Z) with Z given explicitly; the pair must satisfy the defining
// constraint Z + J_d Z^T J_d = -J_d Y^T J_m Y.
template <class K>
OrthElement<K> gprime_exact(const Mat<K>& Y, const Mat<K>& Z, int d, int n) {
    int m = 2 * n + 1 - 2 * d;
    if (Y.rows() != m || Y.cols() != d || Z.rows() != d || Z.cols() != d)
        throw precondition_error("gprime_exact: bad block shapes");
    K ex = Y.exemplar();
    Mat<K> Jd = anti_identity(d, ex), Jm = anti_identity(m, ex);
    if (Z + Jd * Z.transpose() * Jd != -(Jd * Y.transpose() * Jm * Y))
        throw precondition_error("gprime_exact: (Y, Z) violates the isotropy constraint");
    int N = 2 * n + 1;
    Mat<K> g = Mat<K>::identity(N, ex);
    Mat<K> Xblk = -(Jd * Y.transpose() * Jm);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < m; ++j) g.at(i, d + j) = Xblk.at(i, j);
        for (int j = 0; j < d; ++j) g.at(i, d + m + j) = Z.at(i, j);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) g.at(d + i, d + m + j) = Y.at(i, j);
    return OrthElement<K>(g, n);
}

// Completion element for a family of isotropic vectors v_k = e_k + corrections
// supported outside K u bar(K): maps e_k -> v_k for k in K, fixes e_k for
// k in bar(K), and applies the dual correction elsewhere.
template <class K>
OrthElement<K> element_from_isotropic_vectors(const std::vector<int>& Kset,
                                              const std::vector<std::vector<K>>& vecs,
                                              int n, K ex) {
    int N = 2 * n + 1;
    if (Kset.size() != vecs.size()) throw precondition_error("element_from_isotropic_vectors: size mismatch");
    std::vector<bool> inK(N + 2, false), inKbar(N + 2, false);
    for (int k : Kset) {
        if (k < 1 || k > N) throw precondition_error("element_from_isotropic_vectors: index out of range");
        inK[k] = true;
    }
    for (int k : Kset) {
        if (inK[bar(k, n)]) throw precondition_error("element_from_isotropic_vectors: K meets bar(K)");
        inKbar[bar(k, n)] = true;
    }
    // c[i][t]: coefficient of e_i in v_{K[t]} for i outside K
    for (size_t t = 0; t < vecs.size(); ++t) {
        const auto& v = vecs[t];
        if (static_cast<int>(v.size()) != N) throw precondition_error("element_from_isotropic_vectors: bad vector length");
        for (int i = 1; i <= N; ++i) {
            if (i == Kset[t]) {
                if (v[coord(i)] != ex.one())
                    throw precondition_error("element_from_isotropic_vectors: v_k must have unit e_k coefficient");
            } else if (inK[i]) {
                if (!v[coord(i)].is_zero())
                    throw precondition_error("element_from_isotropic_vectors: v_k has support on K beyond e_k");
            }
        }
        for (size_t u = 0; u < vecs.size(); ++u)
            if (!form_value(vecs[t], vecs[u], n).is_zero())
                throw precondition_error("element_from_isotropic_vectors: family is not pairwise isotropic");
    }
    auto coeff = [&](int i, int k_index) -> K {
        return vecs[k_index][coord(i)];
    };
    Mat<K> g = Mat<K>::identity(N, ex);
    for (int col = 1; col <= N; ++col) {
        if (inKbar[col]) continue;      // fixed
        if (inK[col]) {
            int t = -1;
            for (size_t u = 0; u < Kset.size(); ++u)
                if (Kset[u] == col) t = static_cast<int>(u);
            for (int i = 1; i <= N; ++i) g.at(coord(i), coord(col)) = coeff(i, t);
        } else {
            // e_col -> e_col - sum_{i in bar(K)} c_{bar(col), bar(i)} e_i
            for (int t = 0; t < static_cast<int>(Kset.size()); ++t) {
                int i = bar(Kset[t], n);   // i in bar(K)
                K c = coeff(bar(col, n), t);
                if (!c.is_zero()) g.at(coord(i), coord(col)) -= c;
            }
        }
    }
    return OrthElement<K>(g, n);
}

} // namespace isoflag
