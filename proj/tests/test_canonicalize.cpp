// The nine-stage normalization: worked examples, exhaustive sweeps at small
// rank, and the b15 block normal form.

#include <doctest.h>

#include "isoflag/canonicalize.hpp"
#include "isoflag/oracle.hpp"

using namespace isoflag;

namespace {

void check_sound(const Subspace<Fp>& Up, const Subspace<Fp>& Um, const Subspace<Fp>& V,
                 const PairShape& s) {
    Fp ex(0, 3);
    CanonicalizeResult r = canonicalize(Up, Um, V, s);
    CHECK(r.g.apply(Up) == Up);
    CHECK(r.g.apply(Um) == Um);
    CHECK(r.g.apply(V) == representative(s, r.tuple, Up.basis().exemplar()));
    CHECK(is_orthogonal(r.g.mat(), s.n));
    // the trace composes to the total element
    OrthElement<Fp> acc = OrthElement<Fp>::identity(s.n, Up.basis().exemplar());
    for (const auto& st : r.trace.stages) acc = st.g * acc;
    CHECK(acc == r.g);
}

} // namespace

TEST_CASE("canonicalize: n = 1 worked examples") {
    int n = 1;
    long long p = 3;
    Fp ex(0, p);
    PairShape s = PairShape::make(n, 1, 0, 0, 0);
    auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
    // V = span(e1 + e2 - (1/2)e3) = span(e1 + e2 + e3) over GF(3)
    std::vector<Fp> v(3, ex.zero());
    v[0] = ex.one();
    v[1] = ex.one();
    v[2] = ex.one();
    auto V = Subspace<Fp>::span_vectors({v}, 3, ex);
    CanonicalizeResult r = canonicalize(Up, Um, V, s);
    InvariantTuple expect;
    expect.bi(2) = 1;
    CHECK(r.tuple == expect);
    CHECK(r.g.apply(V) == Subspace<Fp>::span_vectors({basis_vector(3, n, ex)}, 3, ex));

    // V already a representative: identity-compatible normalization
    auto Vrep = representative(s, expect, ex);
    CanonicalizeResult r2 = canonicalize(Up, Um, Vrep, s);
    CHECK(r2.g.apply(Vrep) == Vrep);
}

TEST_CASE("canonicalize: exhaustive over GF(3), n <= 2, all shapes") {
    for (int n = 1; n <= 2; ++n) {
        long long p = 3;
        Fp ex(0, p);
        auto maxiso = enumerate_max_isotropic(n, p);
        for (const auto& s : admissible_shapes(n)) {
            auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
            for (const auto& V : maxiso) check_sound(Up, Um, V, s);
        }
    }
}

TEST_CASE("b15 block normal form: exhaustive at b15 = 2 over GF(3)") {
    // realize b15 = 2 at n = 2 with a1 = 2: U+ = <e1,e2>, U- = <e4,e5>
    int n = 2;
    long long p = 3;
    Fp ex(0, p);
    PairShape s = PairShape::make(n, 0, 0, 0, 2);
    InvariantTuple t0;
    t0.bi(15) = 2;
    for (int eps = 0; eps <= 1; ++eps) {
        InvariantTuple t = t0;
        t.eps = eps;
        REQUIRE(tuple_consistent(s, t));
        IndexLayout L = layout(s, t);
        auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
        auto rep = representative(s, t, ex);
        int count = 0;
        for (const auto& V : enumerate_max_isotropic(n, p)) {
            // blocks with the full U15 structure: T cap U+ = T cap U- = 0 and
            // the invariant tuple matches
            InvariantTuple tv = compute_b(Up, Um, V, s);
            if (!(tv == t)) continue;
            auto g = b15_block_normalize(V, L, eps);
            CHECK(g.apply(V) == rep);
            CHECK(g.apply(Up) == Up);
            CHECK(g.apply(Um) == Um);
            ++count;
        }
        CHECK(count > 0);
    }
}

TEST_CASE("canonicalize refuses bad inputs") {
    int n = 1;
    long long p = 3;
    Fp ex(0, p);
    PairShape s = PairShape::make(n, 1, 0, 0, 0);
    auto Up = model_Uplus(s, ex), Um = model_Uminus(s, ex);
    // non-maximal V
    CHECK_THROWS_AS(canonicalize(Up, Um, Subspace<Fp>(3, ex), s), precondition_error);
    // un-normalized pair
    auto W = Subspace<Fp>::span_vectors({basis_vector(3, n, ex)}, 3, ex);
    CHECK_THROWS_AS(canonicalize(W, W, W, s), precondition_error);
}
