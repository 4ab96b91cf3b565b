// classifier.hpp
// The finite-type decision for triple flag varieties of the split odd
// orthogonal group, the flag-variety dimension formula, and the catalogue of
// triples with dim T = dim G.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "isoflag/split_form.hpp"

namespace isoflag {

struct TripleType {
    FlagType a, b, c;
    int n = 0;

    void validate() const {
        a.validate(n);
        b.validate(n);
        c.validate(n);
    }
    std::string str() const { return a.str() + b.str() + c.str() + "@n=" + std::to_string(n); }
    friend bool operator==(const TripleType& x, const TripleType& y) {
        return x.n == y.n && x.a.parts == y.a.parts && x.b.parts == y.b.parts && x.c.parts == y.c.parts;
    }
    friend bool operator<(const TripleType& x, const TripleType& y) {
        if (x.n != y.n) return x.n < y.n;
        if (x.a.parts != y.a.parts) return x.a.parts < y.a.parts;
        if (x.b.parts != y.b.parts) return x.b.parts < y.b.parts;
        return x.c.parts < y.c.parts;
    }
};

struct Verdict {
    bool finite = false;
    std::vector<std::string> cases;      // matched finiteness cases, I < II < III < IV
    std::string excluded_by;             // violated statement when infinite
    TripleType normalized;               // component order used for the case tests
};

inline long long flag_dim(const FlagType& a, int n) {
    a.validate(n);
    long long dim = static_cast<long long>(n) * n;
    for (int p : a.parts) dim -= static_cast<long long>(p) * (p - 1) / 2;
    long long rest = n - a.sum();
    return dim - rest * rest;
}

inline long long triple_dim(const TripleType& t) {
    return flag_dim(t.a, t.n) + flag_dim(t.b, t.n) + flag_dim(t.c, t.n);
}

inline long long group_dim(int n) { return static_cast<long long>(n) * (2 * n + 1); }

// Decide finite type. square_classes_finite states whether the coefficient
// field has finitely many square classes (true for finite fields and R,
// false for Q); it gates the small-flag configurations.
inline Verdict is_finite_type(const TripleType& t_in, bool square_classes_finite) {
    t_in.validate();
    Verdict v;
    int n = t_in.n;
    // sort components by length, then by first part for the two one-part ones
    std::vector<FlagType> f = {t_in.a, t_in.b, t_in.c};
    std::stable_sort(f.begin(), f.end(), [](const FlagType& x, const FlagType& y) {
        return x.parts.size() < y.parts.size();
    });
    int q = static_cast<int>(f[1].parts.size());
    int r = static_cast<int>(f[2].parts.size());
    if (q == 1 && f[0].parts[0] > f[1].parts[0]) std::swap(f[0], f[1]);
    if (r == 1) {
        std::sort(f.begin(), f.end(),
                  [](const FlagType& x, const FlagType& y) { return x.parts[0] < y.parts[0]; });
    }
    v.normalized = {f[0], f[1], f[2], n};
    if (q >= 2) {
        v.finite = false;
        v.excluded_by = "two components with several steps";
        return v;
    }
    int alpha1 = f[0].parts[0], beta1 = f[1].parts[0], gamma1 = f[2].parts[0];
    int maxflag = std::max(alpha1, std::max(beta1, *std::max_element(f[2].parts.begin(), f[2].parts.end())));
    // condition (C): small flags need finitely many square classes
    if (std::max(alpha1, std::max(beta1, gamma1)) < n && !square_classes_finite) {
        v.finite = false;
        v.excluded_by = "square-class condition";
        return v;
    }
    (void)maxflag;
    if (alpha1 == n && beta1 == n) v.cases.push_back("I");
    if (alpha1 == 1) v.cases.push_back("II");
    if (r == 1 && gamma1 == n) v.cases.push_back("III");
    if (r == 2 && beta1 == n) v.cases.push_back("IV");
    v.finite = !v.cases.empty();
    if (!v.finite) {
        if (r == 1) v.excluded_by = "one-step components with 1 < alpha <= beta <= gamma < n";
        else if (r == 2) v.excluded_by = "two-step third component with alpha > 1, beta < n";
        else v.excluded_by = "third component with three or more steps and alpha > 1";
    }
    return v;
}

inline std::vector<FlagType> all_compositions(int max_sum) {
    std::vector<FlagType> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rem) {
        if (!cur.empty()) out.push_back(FlagType{cur});
        for (int next = 1; next <= rem; ++next) {
            cur.push_back(next);
            rec(rem - next);
            cur.pop_back();
        }
    };
    rec(max_sum);
    return out;
}

// All finite-type triples with dim T = dim G, for each n <= n_max. Finite
// type is taken field-independently (no square-class assistance), matching
// the catalogue this reproduces.
inline std::vector<TripleType> equality_catalogue(int n_max) {
    std::vector<TripleType> out;
    for (int n = 1; n <= n_max; ++n) {
        auto comps = all_compositions(n);
        for (const auto& a : comps)
            for (const auto& b : comps)
                for (const auto& c : comps) {
                    TripleType t{a, b, c, n};
                    if (triple_dim(t) != group_dim(n)) continue;
                    if (!is_finite_type(t, false).finite) continue;
                    // record the normalized form once
                    TripleType norm = is_finite_type(t, false).normalized;
                    if (std::find(out.begin(), out.end(), norm) == out.end()) out.push_back(norm);
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace isoflag
