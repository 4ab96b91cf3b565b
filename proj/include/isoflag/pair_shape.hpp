// pair_shape.hpp
// Relative position of an isotropic pair (U+, U-): the counts
// (a0, a+, a-, a1) and derived quantities, plus the normalized coordinate
// model subspaces they determine.

#pragma once

#include <vector>

#include "isoflag/split_form.hpp"

namespace isoflag {

struct PairShape {
    int n = 0;
    int alpha = 0, beta = 0;
    int a0 = 0, ap = 0, am = 0, a1 = 0;
    int a2 = 0, d = 0, m = 0, dprime = 0;

    static PairShape make(int n, int a0, int ap, int am, int a1) {
        PairShape s;
        s.n = n;
        s.a0 = a0; s.ap = ap; s.am = am; s.a1 = a1;
        s.alpha = a0 + ap + a1;
        s.beta = a0 + am + a1;
        s.d = a0 + ap + am;
        s.m = 2 * n + 1 - 2 * s.d;
        s.a2 = n - s.d - a1;
        s.dprime = 2 * n + 1 - s.d - a1;
        s.validate();
        return s;
    }

    void validate() const {
        if (a0 < 0 || ap < 0 || am < 0 || a1 < 0 || n <= 0)
            throw precondition_error("PairShape: negative count");
        if (alpha != a0 + ap + a1 || beta != a0 + am + a1 || d != a0 + ap + am)
            throw precondition_error("PairShape: inconsistent fields");
        if (m != 2 * n + 1 - 2 * d || a2 != n - d - a1 || dprime != 2 * n + 1 - d - a1)
            throw precondition_error("PairShape: inconsistent derived fields");
        if (alpha > n || beta > n || a2 < 0)
            throw precondition_error("PairShape: dimensions exceed rank");
    }

    friend bool operator==(const PairShape& a, const PairShape& b) {
        return a.n == b.n && a.a0 == b.a0 && a.ap == b.ap && a.am == b.am && a.a1 == b.a1;
    }

    std::string str() const {
        return "n=" + std::to_string(n) + ",a0=" + std::to_string(a0) + ",a+=" + std::to_string(ap) +
               ",a-=" + std::to_string(am) + ",a1=" + std::to_string(a1);
    }
};

// Shape of an arbitrary isotropic pair, from intersection dimensions.
template <class K>
PairShape pair_shape(const Subspace<K>& Up, const Subspace<K>& Um, int n) {
    if (!is_isotropic(Up, n) || !is_isotropic(Um, n))
        throw precondition_error("pair_shape: inputs must be isotropic");
    int a0 = intersect(Up, Um).dim();
    int ap = intersect(Up, perp(Um, n)).dim() - a0;
    int am = intersect(Um, perp(Up, n)).dim() - a0;
    int a1 = Up.dim() - a0 - ap;
    return PairShape::make(n, a0, ap, am, a1);
}

// W_(0) = <e_1..e_{a0}>, W_(+) = <e_{a0+1}..e_{a0+a+}>, W_(-) = next a- ones,
// U_(+) = <e_{d+1}..e_{d+a1}>, U_(-) = <e_{d'+1}..e_{d'+a1}>.
template <class K>
Subspace<K> model_W0(const PairShape& s, K ex) {
    std::vector<std::vector<K>> v;
    for (int i = 1; i <= s.a0; ++i) v.push_back(basis_vector(i, s.n, ex));
    return Subspace<K>::span_vectors(v, 2 * s.n + 1, ex);
}
template <class K>
Subspace<K> model_Uplus(const PairShape& s, K ex) {
    std::vector<std::vector<K>> v;
    for (int i = 1; i <= s.a0 + s.ap; ++i) v.push_back(basis_vector(i, s.n, ex));
    for (int j = 1; j <= s.a1; ++j) v.push_back(basis_vector(s.d + j, s.n, ex));
    return Subspace<K>::span_vectors(v, 2 * s.n + 1, ex);
}
template <class K>
Subspace<K> model_Uminus(const PairShape& s, K ex) {
    std::vector<std::vector<K>> v;
    for (int i = 1; i <= s.a0; ++i) v.push_back(basis_vector(i, s.n, ex));
    for (int i = s.a0 + s.ap + 1; i <= s.d; ++i) v.push_back(basis_vector(i, s.n, ex));
    for (int j = 1; j <= s.a1; ++j) v.push_back(basis_vector(s.dprime + j, s.n, ex));
    return Subspace<K>::span_vectors(v, 2 * s.n + 1, ex);
}

template <class K>
bool is_normalized_pair(const Subspace<K>& Up, const Subspace<K>& Um, const PairShape& s) {
    K ex = Up.basis().exemplar();
    return Up == model_Uplus(s, ex) && Um == model_Uminus(s, ex);
}

// All shapes (a0, a+, a-, a1) admissible at rank n, lexicographic.
inline std::vector<PairShape> admissible_shapes(int n) {
    std::vector<PairShape> out;
    for (int a0 = 0; a0 <= n; ++a0)
        for (int ap = 0; a0 + ap <= n; ++ap)
            for (int am = 0; a0 + ap + am <= n; ++am)
                for (int a1 = 0; a0 + ap + am + a1 <= n; ++a1) {
                    PairShape s = PairShape::make(n, a0, ap, am, a1);
                    if (s.alpha <= n && s.beta <= n && s.alpha > 0 && s.beta > 0)
                        out.push_back(s);
                }
    return out;
}

} // namespace isoflag
