// Witt-machinery, pair normalization, stabilizer generators, and the
// brute-force orbit oracle: cross-checked against closed-form counts and
// direct group enumeration at tiny sizes.

#include <doctest.h>

#include <random>

#include "isoflag/invariants.hpp"
#include "isoflag/normalize_pair.hpp"
#include "isoflag/stabilizer.hpp"

using namespace isoflag;

namespace {

BigInt orthogonal_group_order(int k, long long p) {
    if (k == 0) return BigInt(2);
    BigInt r(2), P(p);
    BigInt pk2(1);
    for (int i = 0; i < k * k; ++i) pk2 = pk2 * P;
    r = r * pk2;
    for (int i = 1; i <= k; ++i) {
        BigInt q(1);
        for (int j = 0; j < 2 * i; ++j) q = q * P;
        r = r * (q - BigInt(1));
    }
    return r;
}

std::vector<Subspace<Fp>> all_isotropic(int n, int k, long long p) { return enumerate_isotropic(n, k, p); }

} // namespace

TEST_CASE("block O generators produce the whole odd orthogonal group") {
    for (long long p : {3LL, 5LL, 7LL}) {
        auto gens = block_O_generators(1, p);
        auto grp = group_closure(gens, 1000000);
        CHECK(BigInt(static_cast<long long>(grp.size())) == orthogonal_group_order(1, p));
    }
    auto gens = block_O_generators(2, 3);
    auto grp = group_closure(gens, 1000000);
    CHECK(BigInt(static_cast<long long>(grp.size())) == orthogonal_group_order(2, 3));
}

TEST_CASE("straighten_isotropic maps every isotropic subspace onto the leading coordinates") {
    int n = 2;
    long long p = 3;
    Fp ex(0, p);
    for (int k = 1; k <= n; ++k) {
        auto spaces = all_isotropic(n, k, p);
        std::vector<std::vector<Fp>> target_rows;
        for (int i = 1; i <= k; ++i) target_rows.push_back(basis_vector(i, n, ex));
        auto target = Subspace<Fp>::span_vectors(target_rows, 2 * n + 1, ex);
        for (const auto& S : spaces) {
            auto g = straighten_isotropic(S, n);
            CHECK(g.apply(S) == target);
        }
    }
}

TEST_CASE("normalize_pair: examples and exhaustive small sweep") {
    {
        // n=1 swap: U+ = <e3>, U- = <e1>
        int n = 1;
        long long p = 3;
        Fp ex(0, p);
        auto Up = Subspace<Fp>::span_vectors({basis_vector(3, n, ex)}, 3, ex);
        auto Um = Subspace<Fp>::span_vectors({basis_vector(1, n, ex)}, 3, ex);
        auto [g, s] = normalize_pair(Up, Um, n);
        CHECK(s.a1 == 1);
        CHECK(g.apply(Up) == model_Uplus(s, ex));
        CHECK(g.apply(Um) == model_Uminus(s, ex));
    }
    {
        // already normalized: postcondition still holds
        int n = 2;
        long long p = 3;
        Fp ex(0, p);
        PairShape s0 = PairShape::make(n, 1, 0, 1, 0);
        auto Up = model_Uplus(s0, ex), Um = model_Uminus(s0, ex);
        auto [g, s] = normalize_pair(Up, Um, n);
        CHECK(s == s0);
        CHECK(g.apply(Up) == Up);
        CHECK(g.apply(Um) == Um);
    }
    {
        // exhaustive: all pairs of isotropic subspaces with dims <= 2, n = 2, p = 3
        int n = 2;
        long long p = 3;
        Fp ex(0, p);
        for (int da = 1; da <= 2; ++da)
            for (int db = 1; db <= 2; ++db) {
                auto As = all_isotropic(n, da, p);
                auto Bs = all_isotropic(n, db, p);
                for (size_t i = 0; i < As.size(); i += 3)      // stride keeps runtime modest
                    for (size_t j = 0; j < Bs.size(); j += 3) {
                        auto [g, s] = normalize_pair(As[i], Bs[j], n);
                        CHECK(g.apply(As[i]) == model_Uplus(s, ex));
                        CHECK(g.apply(Bs[j]) == model_Uminus(s, ex));
                    }
            }
    }
    {
        // random isotropic pairs over GF(5), n = 2
        int n = 2;
        long long p = 5;
        Fp ex(0, p);
        auto lines = all_isotropic(n, 1, p);
        auto planes = all_isotropic(n, 2, p);
        std::mt19937 rng(2024);
        for (int t = 0; t < 200; ++t) {
            const auto& A = (t % 2) ? lines[rng() % lines.size()] : planes[rng() % planes.size()];
            const auto& B = (t % 3) ? lines[rng() % lines.size()] : planes[rng() % planes.size()];
            auto [g, s] = normalize_pair(A, B, n);
            CHECK(g.apply(A) == model_Uplus(s, ex));
            CHECK(g.apply(B) == model_Uminus(s, ex));
        }
    }
}

TEST_CASE("r_generators closure equals the directly enumerated stabilizer (2n+1 <= 5, p = 3)") {
    for (int n = 1; n <= 2; ++n) {
        long long p = 3;
        Fp ex(0, p);
        // the full orthogonal group by closure of its block generators
        auto full = group_closure(block_O_generators(n, p), 2000000);
        for (const auto& s : admissible_shapes(n)) {
            auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
            long long direct = 0;
            for (const auto& g : full)
                if (apply(g, Up) == Up && apply(g, Um) == Um) ++direct;
            auto gens = r_generators(s, p);
            auto closure = group_closure(gens.matrices(), 4 * direct + 16);
            CHECK(static_cast<long long>(closure.size()) == direct);
        }
    }
}

TEST_CASE("isotropic enumeration counts") {
    CHECK(enumerate_max_isotropic(1, 3).size() == 4);
    CHECK(enumerate_max_isotropic(2, 3).size() == 40);
    CHECK(enumerate_max_isotropic(1, 5).size() == 6);
    CHECK(enumerate_max_isotropic(3, 3).size() == 1120);
    CHECK(enumerate_isotropic(2, 1, 5).size() == 156);   // (p^4 - 1)/(p - 1)
}

TEST_CASE("orbit partitions at n = 1: Bruhat counts") {
    int n = 1;
    long long p = 3;
    std::vector<Point> pts;
    for (auto& s : enumerate_max_isotropic(n, p)) pts.push_back({std::move(s)});
    {
        PairShape s = PairShape::make(n, 1, 0, 0, 0);
        auto part = orbit_partition(pts, r_generators(s, p).matrices());
        CHECK(part.orbit_count == 2);
        std::vector<long long> sizes = part.orbit_sizes;
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<long long>{1, 3});
    }
    {
        PairShape s = PairShape::make(n, 0, 0, 0, 1);
        auto part = orbit_partition(pts, r_generators(s, p).matrices());
        CHECK(part.orbit_count == 3);
        std::vector<long long> sizes = part.orbit_sizes;
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<long long>{1, 1, 2});
    }
    {
        // identity generators: singleton orbits
        Fp ex(0, p);
        auto part = orbit_partition(pts, {Mat<Fp>::identity(3, ex)});
        CHECK(part.orbit_count == 4);
    }
}

TEST_CASE("dual path: BFS orbit count equals the tuple count (n <= 2, p in {3,5})") {
    for (int n = 1; n <= 2; ++n)
        for (long long p : {3LL, 5LL}) {
            std::vector<Point> pts;
            for (auto& s : enumerate_max_isotropic(n, p)) pts.push_back({std::move(s)});
            for (const auto& s : admissible_shapes(n)) {
                auto part = orbit_partition(pts, r_generators(s, p).matrices());
                auto tuples = enumerate_tuples(s);
                CHECK(part.orbit_count == static_cast<int>(tuples.size()));
                // invariant constancy + fibers biject with tuples
                Fp ex(0, p);
                auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
                std::map<std::string, int> tuple_to_orbit;
                for (size_t i = 0; i < part.points.size(); ++i) {
                    InvariantTuple t = compute_b(Up, Um, part.points[i][0], s);
                    auto [it, inserted] = tuple_to_orbit.emplace(t.str(), part.orbit_id[i]);
                    if (!inserted) CHECK(it->second == part.orbit_id[i]);
                }
                CHECK(tuple_to_orbit.size() == tuples.size());
            }
        }
}

TEST_CASE("compute_b is R-invariant on the GF(3) test set") {
    int n = 2;
    long long p = 3;
    Fp ex(0, p);
    auto maxiso = enumerate_max_isotropic(n, p);
    for (const auto& s : admissible_shapes(n)) {
        auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
        auto gens = r_generators(s, p);
        for (size_t i = 0; i < maxiso.size(); i += 7) {
            InvariantTuple t = compute_b(Up, Um, maxiso[i], s);
            for (size_t k = 0; k < gens.elems.size(); k += 3)
                CHECK(compute_b(Up, Um, gens.elems[k].g.apply(maxiso[i]), s) == t);
        }
    }
}
