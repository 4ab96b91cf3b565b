// suites.hpp
// Named verification suites: each runs one oracle-backed check and returns a
// machine-readable report. The acceptance runner and the CLI `verify`
// subcommand share these implementations.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace isoflag {

struct SuiteResult {
    std::string name;
    bool pass = false;
    nlohmann::json report;
};

// Dual path: BFS orbit counts vs tuple counts, canonical forms
// per orbit (n in {1,2,3}, p in {3,5} for the acceptance gate).
SuiteResult suite_th310(int n, long long p);

// compute_b(representative(t)) == t for every shape and tuple at rank <= n_max,
// over GF(3), GF(5) and the rationals.
SuiteResult suite_roundtrip(int n_max);

// canonicalize soundness: exhaustive over GF(3) at n <= 2, all shapes.
SuiteResult suite_canonical_soundness();

// the dim T = dim G catalogue against the sixteen recorded entries.
SuiteResult suite_remark4();

// double-coset counting: the Hashimoto instance (9 orbits) and the pure
// parabolic counts at small GL rank.
SuiteResult suite_cor93(long long p);

// restricted stabilizer block shapes and full-flag orbit counts of the
// five small-flag configurations, over GF(3).
SuiteResult suite_sec5();

// separation laws of the parametric families over p in {3,5,7} and the
// rigidity checks over GF(3).
SuiteResult suite_families(const std::string& which);

// finite/infinite dichotomy at desk scale.
SuiteResult suite_dichotomy();

// Grassmannian finiteness and the echelon normal form coverage.
SuiteResult suite_prop81();

SuiteResult run_suite(const std::string& name, int n, long long p);
std::vector<std::string> suite_names();

} // namespace isoflag
