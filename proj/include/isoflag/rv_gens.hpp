// rv_gens.hpp
// Families of elements of R_V = {g in R : gV = V} for the canonical
// representative V: the block elements h_(j)(A), the transvection-like
// g_{i,k}(mu) built from the phi maps between indecomposable summands, their
// variants for the b15 block, and a filtered supply of elementary moves.
// Every emitted element is checked to stabilize U+, U-, and V.
//
// phi maps are composed at the label level (self/eta/kappa/lambda/births of
// bars), so a path through an empty family is still usable; labels resolve
// to coordinates only at the endpoints.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "isoflag/layout.hpp"
#include "isoflag/stabilizer.hpp"

namespace isoflag {

namespace rv_detail {

constexpr int NODE_12BAR = 21, NODE_8BAR = 22, NODE_6BAR = 23;

enum class Lb { self, eta, kap, lam, barself, bareta, center, lambar, barmain };

// labels of the source block an atomic map consumes / target block it fills
using LabelMap = std::map<Lb, std::vector<std::pair<Lb, int>>>;   // src -> [(tgt, coeff)]

inline const std::vector<std::pair<int, int>>& phi_edges() {
    static const std::vector<std::pair<int, int>> e = {
        {1, 2},   {1, 3},   {2, 7},  {3, 7},  {3, 5},  {5, 9},
        {7, 8},   {7, 9},   {8, 10}, {8, 12}, {9, 12}, {10, 13},
        {12, 13}, {13, NODE_12BAR}, {NODE_12BAR, NODE_8BAR}, {NODE_8BAR, NODE_6BAR}};
    return e;
}

inline const std::vector<int>& plus_nodes() {
    static const std::vector<int> v = {1, 2, 3, 7, 8, 10, 5, 9, 12, 15, 13, NODE_12BAR, NODE_8BAR, NODE_6BAR};
    return v;
}

// label-level atomic maps; the (12,15) edge is handled separately because it
// depends on the concrete source block
inline LabelMap label_atomic(int jt, int js) {
    using enum Lb;
    auto one = [](Lb t) { return std::vector<std::pair<Lb, int>>{{t, 1}}; };
    auto minus = [](Lb t) { return std::vector<std::pair<Lb, int>>{{t, -1}}; };
    LabelMap f;
    if ((jt == 1 && (js == 2 || js == 3)) || (jt == 3 && js == 5) || (jt == 8 && js == 10) ||
        (jt == NODE_8BAR && js == NODE_6BAR)) {
        f[self] = one(self);
    } else if ((jt == 2 && js == 7) || (jt == 10 && js == 13)) {
        f[self] = one(self);
        f[eta] = minus(self);
    } else if ((jt == 3 && js == 7) || (jt == 5 && js == 9)) {
        f[self] = one(self);
    } else if ((jt == 7 && js == 8) || (jt == 7 && js == 9)) {
        f[self] = one(self);
        f[eta] = one(eta);
    } else if (jt == 8 && js == 12) {
        f[self] = one(self);
        f[kap] = one(eta);
        f[lam] = minus(self);
    } else if (jt == 9 && js == 12) {
        f[self] = one(self);
        f[kap] = one(eta);
        f[lam] = one(eta);
    } else if (jt == 12 && js == 13) {
        f[self] = one(self);
        f[eta] = one(kap);
    } else if (jt == 13 && js == NODE_12BAR) {
        f[self] = one(self);     // kappa-bar -> e_i
        f[lambar] = one(eta);    // lambda-bar -> e_{eta13(i)}
    } else if (jt == NODE_12BAR && js == NODE_8BAR) {
        f[self] = one(self);     // eta8-bar -> kappa-bar
        f[barmain] = {{barmain, 1}, {lambar, -1}};   // y-bar -> x-bar - lambda(x)-bar
    } else {
        throw precondition_error("label_atomic: no atomic map for this edge");
    }
    return f;
}

inline LabelMap label_compose(const LabelMap& outer, const LabelMap& inner) {
    LabelMap f;
    for (const auto& [src, mids] : inner)
        for (const auto& [mid, c1] : mids) {
            auto it = outer.find(mid);
            if (it == outer.end()) continue;
            for (const auto& [tgt, c2] : it->second) {
                int c = c1 * c2;
                bool merged = false;
                for (auto& [t0, c0] : f[src])
                    if (t0 == tgt) {
                        c0 += c;
                        merged = true;
                    }
                if (!merged) f[src].emplace_back(tgt, c);
            }
        }
    for (auto& [src, terms] : f) {
        std::vector<std::pair<Lb, int>> keep;
        for (auto& t : terms)
            if (t.second != 0) keep.push_back(t);
        terms = keep;
    }
    return f;
}

inline bool smallest_path(int jt, int js, std::vector<int>& path) {
    std::vector<int> best;
    std::function<void(int, std::vector<int>&)> dfs = [&](int cur, std::vector<int>& acc) {
        if (cur == js) {
            if (best.empty() || acc < best) best = acc;
            return;
        }
        for (const auto& [t, s] : phi_edges())
            if (t == cur) {
                acc.push_back(s);
                dfs(s, acc);
                acc.pop_back();
            }
    };
    std::vector<int> acc = {jt};
    dfs(jt, acc);
    if (best.empty()) return false;
    path = best;
    return true;
}

// resolve a label of node j anchored at index a to a 1-based coordinate
inline int resolve_label(const IndexLayout& L, int j, int a, Lb lb) {
    using enum Lb;
    int n = L.n();
    switch (j) {
        case 1: case 2: case 3: case 5: case 10:
            if (lb == self) return a;
            break;
        case 7:
            if (lb == self) return a;
            if (lb == eta) return L.eta7.at(a);
            break;
        case 8:
            if (lb == self) return a;
            if (lb == eta) return L.eta8.at(a);
            break;
        case 9:
            if (lb == self) return a;
            if (lb == eta) return L.eta9.at(a);
            break;
        case 13:
            if (lb == self) return a;
            if (lb == eta) return L.eta13.at(a);
            break;
        case 12:
            if (lb == self) return a;
            if (lb == kap) return L.kappa.at(a);
            if (lb == lam) return L.lambda.at(a);
            break;
        case 15:
            if (lb == self) return a;
            if (lb == eta) return L.eta15.at(a);
            if (lb == barself) return bar(a, n);
            if (lb == bareta) return bar(L.eta15.at(a), n);
            if (lb == center) return n + 1;
            break;
        case NODE_12BAR:
            if (lb == self) return bar(L.kappa.at(a), n);
            if (lb == lambar) return bar(L.lambda.at(a), n);
            if (lb == barmain) return bar(a, n);
            break;
        case NODE_8BAR:
            if (lb == self) return bar(L.eta8.at(a), n);
            if (lb == barmain) return bar(a, n);
            break;
        case NODE_6BAR:
            if (lb == self) return bar(a, n);
            break;
        default:
            break;
    }
    throw precondition_error("resolve_label: label not defined for this node");
}

// sparse coordinate map src coord -> [(tgt coord, coeff)]
using PhiMap = std::map<int, std::vector<std::pair<int, Fp>>>;

// the (12, 15)-atomic at concrete anchors, in coordinates
inline PhiMap phi_12_15(const IndexLayout& L, int i, int k, Fp ex) {
    int n = L.n();
    int b15 = L.tuple.bi(15);
    int c = L.c, etac = L.eta15.at(L.c);
    Fp one = ex.one(), half = one / ex.from_int(2);
    PhiMap f;
    auto put = [&](int src, int tgt, Fp cc) {
        if (!cc.is_zero()) f[src].emplace_back(tgt, cc);
    };
    auto delta = [&](int kk) {
        for (int x : L.I15plus)
            if (x == kk) return one;
        return -one;
    };
    bool c_block = (b15 % 2 == 1 && k == c) || (b15 % 2 == 0 && (k == c || k == bar(etac, n)));
    if (!c_block || (b15 % 2 == 0 && L.tuple.eps == 0)) {
        put(k, i, one);
        put(L.eta15.at(k), L.kappa.at(i), delta(k));
    } else if (b15 % 2 == 0 && L.tuple.eps == 1) {
        if (k == c) {
            put(c, i, one);
            put(etac, L.kappa.at(i), one);
            put(bar(c, n), L.kappa.at(i), half);
            put(n + 1, L.lambda.at(i), -one);
        } else {
            put(bar(etac, n), i, one);
            put(bar(c, n), L.kappa.at(i), -one);
        }
    } else {
        put(c, i, one);
        put(bar(c, n), L.kappa.at(i), half);
        put(n + 1, L.lambda.at(i), -one);
    }
    return f;
}

// full phi between comparable nodes at concrete endpoint anchors
inline bool phi_between(const IndexLayout& L, int jt, int js, int i, int k, Fp ex, PhiMap& out) {
    if (js == 15) {
        if (jt == 12) {
            out = phi_12_15(L, i, k, ex);
            return true;
        }
        // route through the (12)-labels: compose the label map (jt <- 12)
        // with the coordinate-level (12 <- 15) map
        std::vector<int> path;
        if (!smallest_path(jt, 12, path)) return false;
        LabelMap lm = label_atomic(path[path.size() - 2], path.back());
        for (size_t t = path.size() - 2; t > 0; --t)
            lm = label_compose(label_atomic(path[t - 1], path[t]), lm);
        // lm : labels of node 12 -> labels of node jt; the (12,15) map is
        // expressed on the target labels self/kap/lam of the formal node 12
        std::map<int, std::vector<std::pair<Lb, int>>> srcn;
        {
            using enum Lb;
            int b15 = L.tuple.bi(15);
            int c = L.c, etac = L.eta15.at(L.c);
            int n = L.n();
            auto deltai = [&](int kk) {
                for (int x : L.I15plus)
                    if (x == kk) return 1;
                return -1;
            };
            bool c_block = (b15 % 2 == 1 && k == c) || (b15 % 2 == 0 && (k == c || k == bar(etac, n)));
            if (!c_block || (b15 % 2 == 0 && L.tuple.eps == 0)) {
                srcn[k] = {{self, 1}};
                srcn[L.eta15.at(k)] = {{kap, deltai(k)}};
            } else if (b15 % 2 == 0 && L.tuple.eps == 1) {
                if (k == c) {
                    srcn[c] = {{self, 1}};
                    srcn[etac] = {{kap, 1}};
                    srcn[bar(c, n)] = {{kap, 2}};   // stands for 1/2: fixed below
                    srcn[n + 1] = {{lam, -1}};
                } else {
                    srcn[bar(etac, n)] = {{self, 1}};
                    srcn[bar(c, n)] = {{kap, -1}};
                }
            } else {
                srcn[c] = {{self, 1}};
                srcn[bar(c, n)] = {{kap, 2}};
                srcn[n + 1] = {{lam, -1}};
            }
            out.clear();
            Fp half = ex.one() / ex.from_int(2);
            for (const auto& [srccoord, terms12] : srcn)
                for (const auto& [lb12, c12] : terms12) {
                    Fp c12f = (c12 == 2) ? half : ex.from_int(c12);
                    auto it = lm.find(lb12);
                    if (it == lm.end()) continue;
                    for (const auto& [lbt, ct] : it->second) {
                        Fp cc = c12f * ex.from_int(ct);
                        if (cc.is_zero()) continue;
                        int tc = resolve_label(L, jt, i, lbt);
                        bool merged = false;
                        for (auto& [t0, c0] : out[srccoord])
                            if (t0 == tc) {
                                c0 += cc;
                                merged = true;
                            }
                        if (!merged) out[srccoord].emplace_back(tc, cc);
                    }
                }
            for (auto& [src, terms] : out) {
                std::vector<std::pair<int, Fp>> keep;
                for (auto& tt : terms)
                    if (!tt.second.is_zero()) keep.push_back(tt);
                terms = keep;
            }
        }

        return true;
    }
    std::vector<int> path;
    if (!smallest_path(jt, js, path)) return false;
    LabelMap lm = label_atomic(path[path.size() - 2], path.back());
    for (size_t t = path.size() - 2; t > 0; --t)
        lm = label_compose(label_atomic(path[t - 1], path[t]), lm);
    out.clear();
    for (const auto& [lbs, terms] : lm) {
        int sc = resolve_label(L, js, k, lbs);
        for (const auto& [lbt, c] : terms) {
            int tc = resolve_label(L, jt, i, lbt);
            out[sc].emplace_back(tc, ex.from_int(c));
        }
    }
    return true;
}

inline PhiMap phi_adjoint(const PhiMap& f, int n) {
    PhiMap a;
    for (const auto& [src, terms] : f)
        for (const auto& [tgt, c] : terms) a[bar(tgt, n)].emplace_back(bar(src, n), c);
    return a;
}

} // namespace rv_detail

struct RvContext {
    PairShape shape;
    InvariantTuple tuple;
    IndexLayout L;
    Subspace<Fp> Up, Um, V;
    Fp ex;

    RvContext(const PairShape& s, const InvariantTuple& t, long long p)
        : shape(s), tuple(t), L(layout(s, t)), ex(0, p) {
        Up = model_Uplus(s, ex);
        Um = model_Uminus(s, ex);
        V = representative(s, t, ex);
    }
    bool stabilizes(const OrthElement<Fp>& g) const {
        return g.apply(Up) == Up && g.apply(Um) == Um && g.apply(V) == V;
    }
};

// h_(j)(A): A on the I_(j) copies, inverse-transpose on the barred copies.
inline OrthElement<Fp> h_block(const RvContext& C, int j, const Mat<Fp>& A) {
    const IndexLayout& L = C.L;
    int n = C.shape.n, N = 2 * n + 1;
    int bj = static_cast<int>(L.I[j].size());
    if (A.rows() != bj) throw precondition_error("h_block: size mismatch");
    Mat<Fp> g = Mat<Fp>::identity(N, C.ex);
    Mat<Fp> Ainv = inverse(A);
    auto copy_at = [&](const std::vector<int>& coords, const Mat<Fp>& M) {
        for (int r = 0; r < bj; ++r)
            for (int c = 0; c < bj; ++c) g.at(coord(coords[r]), coord(coords[c])) = M.at(r, c);
    };
    auto bars = [&](const std::vector<int>& coords) {
        std::vector<int> b;
        for (int i : coords) b.push_back(bar(i, n));
        return b;
    };
    std::vector<int> main = L.I[j];
    copy_at(main, A);
    copy_at(bars(main), Ainv.transpose());
    if (j == 7 || j == 8 || j == 9 || j == 13) {
        const std::map<int, int>& eta = j == 7 ? L.eta7 : j == 8 ? L.eta8 : j == 9 ? L.eta9 : L.eta13;
        std::vector<int> im;
        for (int i : main) im.push_back(eta.at(i));
        copy_at(im, A);
        copy_at(bars(im), Ainv.transpose());
    } else if (j == 12) {
        std::vector<int> imk, iml;
        for (int i : main) {
            imk.push_back(L.kappa.at(i));
            iml.push_back(L.lambda.at(i));
        }
        copy_at(imk, A);
        copy_at(bars(imk), Ainv.transpose());
        copy_at(iml, A);
        copy_at(bars(iml), Ainv.transpose());
    }
    OrthElement<Fp> el(g, n);
    if (!C.stabilizes(el)) throw precondition_error("h_block: element leaves the configuration");
    return el;
}

// g_{i,k}(mu) from a phi map; quadratic correction term for b15-side sources.
inline OrthElement<Fp> g_from_phi(const RvContext& C, const rv_detail::PhiMap& f, Fp mu,
                                  bool quadratic) {
    int n = C.shape.n, N = 2 * n + 1;
    Fp ex = C.ex;
    Mat<Fp> g = Mat<Fp>::identity(N, ex);
    for (const auto& [src, terms] : f)
        for (const auto& [tgt, c] : terms) g.at(coord(tgt), coord(src)) += mu * c;
    rv_detail::PhiMap fstar = rv_detail::phi_adjoint(f, n);
    for (const auto& [src, terms] : fstar)
        for (const auto& [tgt, c] : terms) g.at(coord(tgt), coord(src)) -= mu * c;
    if (quadratic) {
        Fp half = ex.one() / ex.from_int(2);
        for (const auto& [src, terms] : fstar)
            for (const auto& [mid, c1] : terms) {
                auto it = f.find(mid);
                if (it == f.end()) continue;
                for (const auto& [tgt, c2] : it->second)
                    g.at(coord(tgt), coord(src)) -= half * mu * mu * c1 * c2;
            }
    }
    return OrthElement<Fp>(g, n);
}

inline Mat<Fp> txv_matrix(int i, int k, Fp mu, int n, Fp ex) {
    int N = 2 * n + 1;
    Mat<Fp> g = Mat<Fp>::identity(N, ex);
    g.at(coord(i), coord(k)) += mu;
    g.at(coord(bar(k, n)), coord(bar(i, n))) -= mu;
    return g;
}

inline GeneratorSet rv_generators(const PairShape& s, const InvariantTuple& t, long long p,
                                  bool include_elementary = true) {
    using namespace rv_detail;
    RvContext C(s, t, p);
    int n = s.n, N = 2 * n + 1;
    Fp ex = C.ex;
    GeneratorSet out;
    out.n = n;
    out.p = p;
    out.context = "R_V(" + s.str() + "; " + t.str() + ")";
    auto emit = [&](const OrthElement<Fp>& g, const std::string& tag) {
        if (!C.stabilizes(g))
            throw precondition_error("rv_generators: element leaves the configuration (" + tag + ")");
        out.elems.push_back({g, tag});
    };
    auto node_anchors = [&](int node) -> const std::vector<int>& {
        switch (node) {
            case NODE_12BAR: return C.L.I[12];
            case NODE_8BAR: return C.L.I[8];
            case NODE_6BAR: return C.L.I[6];
            default: return C.L.I[node];
        }
    };

    for (int j = 1; j <= 14; ++j) {
        int bj = static_cast<int>(C.L.I[j].size());
        if (bj == 0) continue;
        for (const auto& A : gl_generators(bj, p)) emit(h_block(C, j, A), "h" + std::to_string(j));
    }

    std::vector<Fp> mus = {ex.one()};
    if (p > 3) mus.push_back(Fp(primitive_root(p), p));
    for (int jt : plus_nodes())
        for (int js : plus_nodes()) {
            if (jt == js) continue;
            const auto& anchors_t = node_anchors(jt);
            const auto& anchors_s = node_anchors(js);
            if (anchors_t.empty() || anchors_s.empty()) continue;
            for (int i : anchors_t)
                for (int k : anchors_s) {
                    PhiMap f;
                    if (!phi_between(C.L, jt, js, i, k, ex, f)) continue;
                    bool quadratic = (js == 15);
                    for (const Fp& mu : mus) {
                        OrthElement<Fp> g = g_from_phi(C, f, mu, quadratic);
                        if (js == 15 && (jt == 12 || jt == 8) && t.eps == 1 && k == C.L.c) {
                            Fp quarter = (mu * mu) / ex.from_int(4);
                            int across = jt == 12 ? bar(C.L.kappa.at(i), n) : bar(C.L.eta8.at(i), n);
                            OrthElement<Fp> fix(txv_matrix(i, across, quarter, n, ex), n);
                            g = fix * g;
                        }
                        emit(g, "g(" + std::to_string(jt) + "," + std::to_string(js) + ")");
                    }
                }
        }

    for (int i : C.L.I[15])
        for (int k6 : C.L.I[6])
            for (const Fp& mu : mus)
                emit(OrthElement<Fp>(txv_matrix(i, bar(k6, n), mu, n, ex), n), "g(15,6bar)");

    for (int i : C.L.I[12])
        for (const Fp& mu : mus)
            emit(OrthElement<Fp>(txv_matrix(i, bar(C.L.kappa.at(i), n), mu, n, ex), n), "txv-kappa");
    for (int i : C.L.I[8])
        for (const Fp& mu : mus)
            emit(OrthElement<Fp>(txv_matrix(i, bar(C.L.eta8.at(i), n), mu, n, ex), n), "txv-eta8");

    // symplectic part of the b15 block: rho(A, 1) candidates built from the
    // transvections of the block pairing, filtered by the stabilizer check
    int b15 = t.bi(15);
    if (b15 >= 1) {
        std::vector<int> pos = C.L.I[15];
        auto rho = [&](const Mat<Fp>& A, Fp sgn) {
            Mat<Fp> g = Mat<Fp>::identity(N, ex);
            Mat<Fp> Jb = anti_identity<Fp>(b15, ex);
            Mat<Fp> Astar = Jb * inverse(A).transpose() * Jb;
            for (int r = 0; r < b15; ++r)
                for (int c = 0; c < b15; ++c) {
                    g.at(coord(pos[r]), coord(pos[c])) = A.at(r, c);
                    g.at(coord(C.L.eta15.at(pos[r])), coord(C.L.eta15.at(pos[c]))) = Astar.at(r, c);
                }
            g.at(coord(n + 1), coord(n + 1)) = sgn;
            return g;
        };
        {
            Mat<Fp> gm = rho(Mat<Fp>::identity(b15, ex), -ex.one());
            if (is_orthogonal(gm, n)) {
                OrthElement<Fp> g(gm, n);
                if (C.stabilizes(g)) out.elems.push_back({g, "rho-filtered"});
            }
        }
        // candidate A's: elementary and diagonal moves plus their transposes
        std::vector<Mat<Fp>> cand;
        for (const auto& A : gl_generators(b15, p)) {
            cand.push_back(A);
            cand.push_back(A.transpose());
        }
        for (int i = 0; i < b15; ++i)
            for (int j = 0; j < b15; ++j) {
                if (i == j) continue;
                for (const Fp& mu : mus) {
                    Mat<Fp> A = Mat<Fp>::identity(b15, ex);
                    A.at(i, j) = -mu;
                    cand.push_back(A);
                }
            }
        for (const auto& A : cand) {
            Mat<Fp> gm = rho(A, ex.one());
            if (!is_orthogonal(gm, n)) continue;
            OrthElement<Fp> g(gm, n);
            if (C.stabilizes(g)) out.elems.push_back({g, "rho-filtered"});
        }
    }

    if (include_elementary) {
        // pair-stabilizer generators (and products of two) that fix V already
        auto rg = r_generators(s, p);
        for (const auto& e : rg.elems)
            if (e.g.apply(C.V) == C.V) out.elems.push_back({e.g, "r-filtered"});
        for (const auto& e1 : rg.elems)
            for (const auto& e2 : rg.elems) {
                OrthElement<Fp> g = e1.g * e2.g;
                if (g.apply(C.V) == C.V && g.apply(C.Up) == C.Up && g.apply(C.Um) == C.Um)
                    out.elems.push_back({g, "r2-filtered"});
            }
        Mat<Fp> minus = Mat<Fp>::identity(N, ex);
        for (int i = 0; i < N; ++i) minus.at(i, i) = -ex.one();
        emit(OrthElement<Fp>(minus, n), "center");
        for (int i = 1; i <= n + 1; ++i) {
            Mat<Fp> sg = Mat<Fp>::identity(N, ex);
            sg.at(coord(i), coord(i)) = -ex.one();
            if (i != n + 1) sg.at(coord(bar(i, n)), coord(bar(i, n))) = -ex.one();
            OrthElement<Fp> g(sg, n);
            if (C.stabilizes(g)) out.elems.push_back({g, "sign-filtered"});
        }
        Fp pr(primitive_root(p), p);
        for (int i = 1; i <= n; ++i) {
            Mat<Fp> tg = Mat<Fp>::identity(N, ex);
            tg.at(coord(i), coord(i)) = pr;
            tg.at(coord(bar(i, n)), coord(bar(i, n))) = pr.inv();
            OrthElement<Fp> g(tg, n);
            if (C.stabilizes(g)) out.elems.push_back({g, "torus-filtered"});
        }
        for (int i = 1; i <= N; ++i)
            for (int k = 1; k <= N; ++k) {
                if (i == k || i == bar(k, n)) continue;
                Mat<Fp> gm = txv_matrix(i, k, ex.one(), n, ex);
                if (!is_orthogonal(gm, n)) continue;
                OrthElement<Fp> g(gm, n);
                if (C.stabilizes(g)) out.elems.push_back({g, "elementary-filtered"});
            }
    }
    // dedupe (keeping first provenance) and drop identities
    {
        std::set<std::string> seen;
        std::vector<GenElem> unique;
        Mat<Fp> id = Mat<Fp>::identity(N, ex);
        for (auto& e : out.elems) {
            if (e.g.mat() == id) continue;
            std::string key;
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) key.push_back(static_cast<char>(e.g.mat().at(r, c).val()));
            if (seen.insert(std::move(key)).second) unique.push_back(std::move(e));
        }
        out.elems = std::move(unique);
    }
    return out;
}

} // namespace isoflag
