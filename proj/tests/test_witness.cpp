// Witness families: builders, separation incidence, stabilizer rigidity,
// and the orbit-class growth across fields.

#include <doctest.h>

#include "isoflag/witness.hpp"

using namespace isoflag;

TEST_CASE("family builders produce isotropic members over small fields") {
    for (long long p : {3LL, 5LL, 7LL})
        for (FamilyName f : {FamilyName::O3_Wlambda, FamilyName::O6_U3lambda, FamilyName::O6_U4lambda,
                             FamilyName::P14_lambda}) {
            FamilyInstance F = build_family(f, p);   // builder validates isotropy
            CHECK(F.domain.size() >= 2);
        }
}

TEST_CASE("the one-line family vector over GF(3) at lambda = 1") {
    FamilyInstance F = build_family(FamilyName::O3_Wlambda, 3);
    Fp ex(0, 3);
    // W_1 = span(e1 + e2 - 2 e3) = span(e1 + e2 + e3) since -1/2 = 1 in GF(3)
    Point pt = F.moving(ex.one());
    std::vector<Fp> v(3, ex.zero());
    v[0] = ex.one();
    v[1] = ex.one();
    v[2] = ex.one();
    CHECK(pt[1] == Subspace<Fp>::span_vectors({v}, 3, ex));
}

TEST_CASE("two-plane family at lambda = 0 has the stated coefficient pattern") {
    FamilyInstance F = build_family(FamilyName::O6_U3lambda, 3);
    Fp ex(0, 3);
    Point pt = F.moving(ex.zero());
    // second spanning vector: 0*f2 - f4 + (1-0) f6, embedded as -e5 + e7
    std::vector<Fp> v(7, ex.zero());
    v[4] = -ex.one();
    v[6] = ex.one();
    CHECK(pt[0].contains(v));
}

TEST_CASE("separation incidence is an equivalence and matches the predicates") {
    for (long long p : {3LL, 5LL}) {
        for (FamilyName f : {FamilyName::O6_U3lambda, FamilyName::O6_U4lambda, FamilyName::P14_lambda}) {
            SeparationReport r = verify_separation(f, p);
            CHECK(r.predicate_match);
            // classes partition the domain
            size_t total = 0;
            for (const auto& c : r.classes) total += c.size();
            CHECK(total == build_family(f, p).domain.size());
        }
    }
}

TEST_CASE("orbit-class growth of the two-plane family across fields") {
    std::vector<size_t> class_counts;
    for (long long p : {3LL, 5LL, 7LL}) {
        SeparationReport r = verify_separation(FamilyName::O6_U3lambda, p);
        class_counts.push_back(r.classes.size());
    }
    CHECK(class_counts[0] < class_counts[1]);
    CHECK(class_counts[1] < class_counts[2]);
}

TEST_CASE("stabilizer rigidity at GF(3)") {
    for (FamilyName f : {FamilyName::O3_Wlambda, FamilyName::O5_fix, FamilyName::O7_fix}) {
        RigidityReport r = stabilizer_rigidity(f, 3);
        CHECK(r.stabilizer_order == 2);
        CHECK(r.plus_minus_identity_only);
    }
}
