// The projection identity of the preliminaries and the indecomposable-summand
// profile table of the representative, checked at the smallest configuration
// carrying every block at once.

#include <doctest.h>

#include "isoflag/layout.hpp"
#include "isoflag/oracle.hpp"

using namespace isoflag;

TEST_CASE("projection of a maximal isotropic onto the opposite block") {
    // p_Wbar(V) is the orthogonal space of W cap V inside Wbar, for every
    // maximal isotropic V at n = 2 over GF(3) and W = <e_1..e_d>
    int n = 2;
    long long p = 3;
    Fp ex(0, p);
    for (int d = 1; d <= n; ++d) {
        std::vector<std::vector<Fp>> wrows, wbrows;
        for (int i = 1; i <= d; ++i) {
            wrows.push_back(basis_vector(i, n, ex));
            wbrows.push_back(basis_vector(bar(i, n), n, ex));
        }
        auto W = Subspace<Fp>::span_vectors(wrows, 2 * n + 1, ex);
        auto Wbar = Subspace<Fp>::span_vectors(wbrows, 2 * n + 1, ex);
        for (const auto& V : enumerate_max_isotropic(n, p)) {
            // p_Wbar(V): image of V under dropping all coordinates except the
            // bar block
            std::vector<std::vector<Fp>> proj;
            for (int i = 0; i < V.dim(); ++i) {
                std::vector<Fp> v = V.basis_row(i), q(2 * n + 1, ex.zero());
                for (int j = 1; j <= d; ++j) q[coord(bar(j, n))] = v[coord(bar(j, n))];
                proj.push_back(std::move(q));
            }
            auto P = Subspace<Fp>::span_vectors(proj, 2 * n + 1, ex);
            auto expect = intersect(perp(intersect(W, V), n), Wbar);
            CHECK(P == expect);
        }
    }
}

namespace {

struct Profile {
    int d1, d2, d3;
    friend bool operator==(const Profile& a, const Profile& b) {
        return a.d1 == b.d1 && a.d2 == b.d2 && a.d3 == b.d3;
    }
};

Profile profile_of(const Subspace<Fp>& W, const Subspace<Fp>& S, const Subspace<Fp>& Sperp) {
    int d1 = intersect(W, S).dim();
    int d2 = intersect(W, Sperp).dim() - d1;
    return {d1, d2, W.dim() - d1 - d2};
}

} // namespace

TEST_CASE("summand profiles of the representative with every block present") {
    // all b_j = 1 forces n = 21
    InvariantTuple t;
    for (int i = 1; i <= 15; ++i) t.bi(i) = 1;
    t.eps = 1;
    PairShape s = PairShape::make(21, 2, 4, 4, 8);
    REQUIRE(tuple_consistent(s, t));
    long long p = 3;
    Fp ex(0, p);
    int n = s.n;
    IndexLayout L = layout(s, t);
    auto V = representative(s, t, ex);
    auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
    auto Vp = perp(V, n), Upp = perp(Up, n), Ump = perp(Um, n);

    auto span_of = [&](const std::vector<int>& idx) {
        std::vector<std::vector<Fp>> rows;
        for (int i : idx) rows.push_back(basis_vector(i, n, ex));
        return Subspace<Fp>::span_vectors(rows, 2 * n + 1, ex);
    };
    auto bars = [&](const std::vector<int>& idx) {
        std::vector<int> b;
        for (int i : idx) b.push_back(bar(i, n));
        return b;
    };
    auto check_row = [&](const std::vector<int>& block, Profile pv, Profile pp, Profile pm) {
        auto W = span_of(block);
        CHECK(profile_of(W, V, Vp) == pv);
        CHECK(profile_of(W, Up, Upp) == pp);
        CHECK(profile_of(W, Um, Ump) == pm);
        auto Wb = span_of(bars(block));
        auto rev = [](Profile q) { return Profile{q.d3, q.d2, q.d1}; };
        CHECK(profile_of(Wb, V, Vp) == rev(pv));
        CHECK(profile_of(Wb, Up, Upp) == rev(pp));
        CHECK(profile_of(Wb, Um, Ump) == rev(pm));
    };

    int i;
    i = L.I[1][0];
    check_row({i}, {1, 0, 0}, {1, 0, 0}, {1, 0, 0});
    i = L.I[2][0];
    check_row({i}, {0, 0, 1}, {1, 0, 0}, {1, 0, 0});
    i = L.I[3][0];
    check_row({i}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0});
    i = L.I[4][0];
    check_row({i}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0});
    i = L.I[5][0];
    check_row({i}, {1, 0, 0}, {1, 0, 0}, {0, 0, 1});
    i = L.I[6][0];
    check_row({i}, {1, 0, 0}, {0, 0, 1}, {1, 0, 0});
    i = L.I[7][0];
    check_row({i, L.eta7.at(i)}, {1, 0, 1}, {1, 1, 0}, {1, 1, 0});
    i = L.I[8][0];
    check_row({i, L.eta8.at(i)}, {1, 0, 1}, {1, 0, 1}, {1, 1, 0});
    i = L.I[9][0];
    check_row({i, L.eta9.at(i)}, {1, 0, 1}, {1, 1, 0}, {1, 0, 1});
    i = L.I[10][0];
    check_row({i}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0});
    i = L.I[11][0];
    check_row({i}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0});
    i = L.I[12][0];
    check_row({i, L.kappa.at(i), L.lambda.at(i)}, {2, 0, 1}, {1, 1, 1}, {1, 1, 1});
    // the table prints the barred V-profile of this block as (01); the
    // symmetry d_k(W) = d_{4-k}(Wbar) forces (11), which is what holds
    i = L.I[13][0];
    check_row({i, L.eta13.at(i)}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1});
    i = L.I[14][0];
    check_row({i}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0});
    // b15 = 1 (odd): the center block <e_c, e_cbar, e_{n+1}> has profile
    // (111) against all three
    {
        int c = L.c;
        auto W = span_of({c, bar(c, n), n + 1});
        CHECK(profile_of(W, V, Vp) == Profile{1, 1, 1});
        CHECK(profile_of(W, Up, Upp) == Profile{1, 1, 1});
        CHECK(profile_of(W, Um, Ump) == Profile{1, 1, 1});
    }
}
