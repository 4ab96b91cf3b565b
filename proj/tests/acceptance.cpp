// Acceptance runner: executes every gate criterion at its pinned scale and
// prints one pass/fail line per criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <iostream>
#include <vector>

#include "isoflag/suites.hpp"

using namespace isoflag;

namespace {

int failures = 0;

void report(const std::string& what, bool pass, long long ms, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << what << " (" << ms << " ms)";
    if (!detail.empty()) std::cout << "  " << detail;
    std::cout << std::endl;
    if (!pass) ++failures;
}

template <class F>
void run(const std::string& what, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        SuiteResult r = f();
        pass = r.pass;
        if (!pass) detail = r.report.dump();
    } catch (const std::exception& e) {
        detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                  .count();
    report(what, pass, ms, detail);
}

} // namespace

int main() {
    // 1. dual-path orbit counts and canonical forms, n in {1,2,3}, p in {3,5}
    for (int n = 1; n <= 3; ++n)
        for (long long p : {3LL, 5LL})
            run("criterion 1: dual path + canonical forms (n=" + std::to_string(n) +
                    ", p=" + std::to_string(p) + ")",
                [&] { return suite_th310(n, p); });
    // 2. invariant round trip at n <= 3 over GF(3), GF(5), Q
    run("criterion 2: invariant round trip (n <= 3)", [] { return suite_roundtrip(3); });
    // 3. canonicalize soundness, exhaustive over GF(3) at n <= 2
    run("criterion 3: canonicalize soundness (GF(3), n <= 2)",
        [] { return suite_canonical_soundness(); });
    // 4. the dim T = dim G catalogue
    run("criterion 4: equality catalogue", [] { return suite_remark4(); });
    // 5. double-coset counting
    run("criterion 5: double-coset counts (GL side)", [] { return suite_cor93(3); });
    // 6. restricted stabilizers and flag-orbit counts of the small-flag cases
    run("criterion 6: small-flag orbit counts", [] { return suite_sec5(); });
    // 7. separation laws and rigidity
    run("criterion 7a: separation (two-plane family)", [] { return suite_families("family-lem29"); });
    run("criterion 7b: separation (two-step family)", [] { return suite_families("family-lem212"); });
    run("criterion 7c: separation (square-class family)", [] { return suite_families("family-p14"); });
    run("criterion 7d: stabilizer rigidity", [] { return suite_families("rigidity"); });
    // 8. finite/infinite dichotomy at desk scale
    run("criterion 8: dichotomy", [] { return suite_dichotomy(); });
    // 9. Grassmannian finiteness and the echelon normal form
    run("criterion 9: Grassmannian finiteness", [] { return suite_prop81(); });

    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
