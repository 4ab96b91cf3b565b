// Tests for the split bilinear form, orthogonal elements, and the unipotent
// constructors.

#include <doctest.h>

#include <random>

#include "isoflag/split_form.hpp"

using namespace isoflag;

namespace {

std::vector<Fp> e(int i, int n, long long p) { return basis_vector(i, n, Fp(0, p)); }

std::vector<Fp> lin(std::initializer_list<std::pair<long long, int>> terms, int n, long long p) {
    std::vector<Fp> v(2 * n + 1, Fp(0, p));
    for (auto [c, i] : terms) v[coord(i)] = Fp(c, p);
    return v;
}

} // namespace

TEST_CASE("form values on basis vectors") {
    int n = 1;
    long long p = 5;
    CHECK(form_value(e(1, n, p), e(3, n, p), n).val() == 1);
    CHECK(form_value(e(2, n, p), e(2, n, p), n).val() == 1);
    CHECK(form_value(e(1, n, p), e(1, n, p), n).val() == 0);
    // symmetry on random vectors
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        std::vector<Fp> u(7, Fp(0, p)), v(7, Fp(0, p));
        for (auto& x : u) x = Fp(static_cast<long long>(rng() % p), p);
        for (auto& x : v) x = Fp(static_cast<long long>(rng() % p), p);
        CHECK(form_value(u, v, 3) == form_value(v, u, 3));
    }
}

TEST_CASE("perp: involution, dimensions, examples") {
    long long p = 3;
    {
        int n = 1;
        Fp ex(0, p);
        auto S = Subspace<Fp>::span_vectors({e(1, n, p)}, 3, ex);
        auto P = perp(S, n);
        CHECK(P.dim() == 2);
        CHECK(P.contains(e(1, n, p)));
        CHECK(P.contains(e(2, n, p)));
        CHECK_FALSE(P.contains(e(3, n, p)));
        CHECK(perp(P, n) == S);
        CHECK(perp(Subspace<Fp>::full(3, ex), n).dim() == 0);
    }
    {
        int n = 2;
        Fp ex(0, p);
        auto S = Subspace<Fp>::span_vectors({lin({{1, 1}, {1, 5}}, n, p)}, 5, ex);
        auto P = perp(S, n);
        CHECK(P.dim() == 4);
        CHECK(P.contains(e(2, n, p)));
        CHECK(P.contains(e(3, n, p)));
        CHECK(P.contains(e(4, n, p)));
        // (e1+e5, e1-e5) = -1 + 1 = 0, so e1-e5 lies in the perp as well
        CHECK(P.contains(lin({{1, 1}, {-1, 5}}, n, p)));
    }
    // inclusion-reversal on random subspaces
    std::mt19937 rng(17);
    int n = 2;
    Fp ex(0, p);
    for (int t = 0; t < 50; ++t) {
        Mat<Fp> m(2, 5, ex);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 5; ++j) m.at(i, j) = Fp(static_cast<long long>(rng() % p), p);
        auto S = Subspace<Fp>::span(m);
        auto T = sum(S, Subspace<Fp>::span_vectors({e(1, n, p)}, 5, ex));
        CHECK(perp(T, n).dim() + T.dim() == 5);
        CHECK(perp(T, n) == intersect(perp(S, n), perp(Subspace<Fp>::span_vectors({e(1, n, p)}, 5, ex), n)));
    }
}

TEST_CASE("isotropy and orthogonality checks") {
    long long p = 3;
    int n = 1;
    Fp ex(0, p);
    CHECK(is_isotropic(Subspace<Fp>::span_vectors({e(1, n, p)}, 3, ex), n));
    CHECK_FALSE(is_isotropic(Subspace<Fp>::span_vectors({e(2, n, p)}, 3, ex), n));
    Mat<Fp> J = anti_identity<Fp>(3, ex);
    CHECK(is_orthogonal(J, n));
    OrthElement<Fp> gJ(J, n);
    CHECK(gJ.inverse() == gJ);
    Mat<Fp> bad = Mat<Fp>::identity(3, ex);
    bad.at(0, 0) = Fp(2, p);
    CHECK_FALSE(is_orthogonal(bad, n));
    CHECK_THROWS_AS(OrthElement<Fp>(bad, n), precondition_error);
}

TEST_CASE("canonical maximal isotropic and parabolic membership") {
    long long p = 3;
    int n = 2;
    Fp ex(0, p);
    FlagType full_iso{{1, 1}};
    auto f0 = canonical_flag(full_iso, n, ex);
    f0.validate(n);
    CHECK(parabolic_contains(OrthElement<Fp>::identity(n, ex), f0));
    // block upper-triangular element of the displayed parabolic shape
    Mat<Fp> g = Mat<Fp>::identity(5, ex);
    g.at(0, 1) = Fp(2, p);   // strictly upper within the GL-part: A_1 entries
    // compensate on the dual block: full matrix must stay orthogonal
    OrthElement<Fp> le = ell(rref(Mat<Fp>::identity(2, ex)), n);
    CHECK(parabolic_contains(le, f0));
    Mat<Fp> A(2, 2, ex);
    A.at(0, 0) = Fp(1, p);
    A.at(0, 1) = Fp(2, p);
    A.at(1, 1) = Fp(1, p);
    CHECK(parabolic_contains(ell(A, n), f0));
    // the anti-diagonal J swaps span(e1..en) with its opposite
    FlagType top{{2}};
    auto fn = canonical_flag(top, n, ex);
    OrthElement<Fp> gJ(anti_identity<Fp>(5, ex), n);
    CHECK_FALSE(parabolic_contains(gJ, fn));
}

TEST_CASE("unipotent g(X,Z): completion and closure") {
    long long p = 5;
    {
        // n=1, d=1, m=1, X=[x]: Z completes to [-x^2/2] and the middle block
        // is -J_m X^T J_d = [-x], so g e3 = -(x^2/2) e1 - x e2 + e3
        int n = 1, d = 1;
        Fp ex(0, p);
        for (long long x = 0; x < p; ++x) {
            Mat<Fp> X(1, 1, ex);
            X.at(0, 0) = Fp(x, p);
            Mat<Fp> zf(1, 1, ex);
            auto g = unipotent_XZ(X, zf, d, n);
            std::vector<Fp> ge3 = g.apply(e(3, n, p));
            Fp half = ex.one() / ex.from_int(2);
            CHECK(ge3[0] == -(Fp(x, p) * Fp(x, p) * half));
            CHECK(ge3[1] == -Fp(x, p));
            CHECK(ge3[2] == ex.one());
        }
        // X = 0, z_free = 0 -> identity
        Mat<Fp> X0(1, 1, ex), zf(1, 1, ex);
        CHECK(unipotent_XZ(X0, zf, d, n) == OrthElement<Fp>::identity(n, ex));
    }
    {
        // random X, z over GF(5) at n=2, d=2: always lands in G, closed under product
        int n = 2, d = 2, m = 1;
        Fp ex(0, p);
        std::mt19937 rng(23);
        for (int t = 0; t < 60; ++t) {
            Mat<Fp> X(d, m, ex), X2(d, m, ex), zf(d, d, ex), zf2(d, d, ex);
            for (int i = 0; i < d; ++i) {
                X.at(i, 0) = Fp(static_cast<long long>(rng() % p), p);
                X2.at(i, 0) = Fp(static_cast<long long>(rng() % p), p);
            }
            zf.at(0, 0) = Fp(static_cast<long long>(rng() % p), p);   // i+j <= d means (1,1) only
            zf2.at(0, 0) = Fp(static_cast<long long>(rng() % p), p);
            auto g1 = unipotent_XZ(X, zf, d, n);
            auto g2 = unipotent_XZ(X2, zf2, d, n);
            auto g12 = g1 * g2;
            CHECK(is_orthogonal(g12.mat(), n));
            // product stays in N_W: strictly block-upper with X-part additive
            for (int i = 0; i < d; ++i)
                CHECK(g12.mat().at(d + m + i, d + m + i) == ex.one());
            CHECK(g12.mat().at(0, 2) == X.at(0, 0) + X2.at(0, 0));
        }
    }
}

TEST_CASE("g'(Y,Z) fixes W pointwise and moves the opposite block onto the prescribed vectors") {
    long long p = 5;
    int n = 2, d = 2, m = 1;
    Fp ex(0, p);
    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
        Mat<Fp> Y(m, d, ex);
        for (int j = 0; j < d; ++j) Y.at(0, j) = Fp(static_cast<long long>(rng() % p), p);
        auto g = gprime_YZ(Y, d, n);
        CHECK(g.apply(e(1, n, p)) == e(1, n, p));
        CHECK(g.apply(e(2, n, p)) == e(2, n, p));
        // column of e_{2n+1-d+j} picks up the prescribed middle part
        std::vector<Fp> v = g.apply(e(4, n, p));
        CHECK(v[coord(4)] == ex.one());
        CHECK(v[coord(3)] == Y.at(0, 0));
    }
}

TEST_CASE("element_from_isotropic_vectors") {
    long long p = 5;
    int n = 2;
    Fp ex(0, p);
    // all corrections zero: identity
    auto id = element_from_isotropic_vectors<Fp>({1}, {e(1, n, p)}, n, ex);
    CHECK(id == OrthElement<Fp>::identity(n, ex));
    // non-isotropic v rejected: v1 = e1 + e2 + e4 has (v1,v1) = 2
    CHECK_THROWS_AS(element_from_isotropic_vectors<Fp>({1}, {lin({{1, 1}, {1, 2}, {1, 4}}, n, p)}, n, ex),
                    precondition_error);
    // v1 = e1 + e2 + e3 + 2 e4 is isotropic over GF(5): 2*1*2 + 1 = 0
    std::vector<Fp> v1 = lin({{1, 1}, {1, 2}, {1, 3}, {2, 4}}, n, p);
    auto g = element_from_isotropic_vectors<Fp>({1}, {v1}, n, ex);
    CHECK(g.apply(e(1, n, p)) == v1);
    CHECK(is_orthogonal(g.mat(), n));
    // overlapping K and bar(K) rejected
    CHECK_THROWS_AS(element_from_isotropic_vectors<Fp>({1, 5}, {e(1, n, p), e(5, n, p)}, n, ex),
                    precondition_error);
}
