// canonicalize.hpp
// Constructive normalization of a maximal isotropic V against the normalized
// pair (U+, U-): produces g in R with g V equal to the canonical
// representative, in nine stages. Each stage element is certified to lie in
// R and each intermediate decomposition is re-validated, so a failure names
// its stage.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "isoflag/layout.hpp"
#include "isoflag/normalize_pair.hpp"
#include "isoflag/witt.hpp"

namespace isoflag {

struct stage_error : std::runtime_error {
    std::string stage;
    stage_error(std::string st, const std::string& m)
        : std::runtime_error("stage (" + st + "): " + m), stage(std::move(st)) {}
};

struct StageRecord {
    std::string label;
    OrthElement<Fp> g;
    Subspace<Fp> v_after;
};

struct NormalizationTrace {
    std::vector<StageRecord> stages;
};

struct CanonicalizeResult {
    OrthElement<Fp> g;
    InvariantTuple tuple;
    NormalizationTrace trace;
};

namespace canon_detail {

inline Subspace<Fp> coords_span(const std::vector<int>& idx, int n, Fp ex) {
    std::vector<std::vector<Fp>> rows;
    for (int i : idx) rows.push_back(basis_vector(i, n, ex));
    return Subspace<Fp>::span_vectors(rows, 2 * n + 1, ex);
}

inline std::vector<int> range1(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// x in S with x[c] = val for every (c, val) prescribed (c is 1-based).
inline std::vector<Fp> solve_in_subspace(const Subspace<Fp>& S,
                                         const std::vector<std::pair<int, Fp>>& prescribed,
                                         const char* stage) {
    Fp ex = S.basis().exemplar();
    int k = S.dim();
    Mat<Fp> A(static_cast<int>(prescribed.size()), k, ex);
    std::vector<Fp> rhs;
    for (size_t r = 0; r < prescribed.size(); ++r) {
        for (int j = 0; j < k; ++j) A.at(static_cast<int>(r), j) = S.basis().at(j, coord(prescribed[r].first));
        rhs.push_back(prescribed[r].second);
    }
    auto sol = solve(A, rhs);
    if (!sol) throw stage_error(stage, "prescribed-coordinate solve failed");
    std::vector<Fp> v(S.ambient_dim(), ex.zero());
    for (int j = 0; j < k; ++j) {
        if ((*sol)[j].is_zero()) continue;
        for (int c = 0; c < S.ambient_dim(); ++c) v[c] += (*sol)[j] * S.basis().at(j, c);
    }
    return v;
}

// Block GL matrix (size x size) sending the given block-coordinate vectors to
// the standard vectors at the given target positions (0-based within block).
inline Mat<Fp> gl_map_to(const std::vector<std::vector<Fp>>& sources, const std::vector<int>& targets,
                         int size, Fp ex, const char* stage) {
    if (sources.size() != targets.size()) throw stage_error(stage, "gl_map_to: size mismatch");
    std::vector<std::vector<Fp>> cols = sources;
    std::vector<int> tgt = targets;
    std::vector<bool> used(size, false);
    for (int t : targets) used[t] = true;
    for (int j = 0; j < size && static_cast<int>(cols.size()) < size; ++j) {
        std::vector<Fp> e(size, ex.zero());
        e[j] = ex.one();
        std::vector<std::vector<Fp>> trial = cols;
        trial.push_back(e);
        if (Subspace<Fp>::span_vectors(trial, size, ex).dim() == static_cast<int>(trial.size())) {
            cols.push_back(e);
            for (int t = 0; t < size; ++t)
                if (!used[t]) {
                    tgt.push_back(t);
                    used[t] = true;
                    break;
                }
        }
    }
    if (static_cast<int>(cols.size()) != size) throw stage_error(stage, "gl_map_to: cannot complete basis");
    Mat<Fp> P(size, size, ex), T(size, size, ex);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            P.at(i, j) = cols[j][i];
            T.at(i, j) = (i == tgt[j]) ? ex.one() : ex.zero();
        }
    return T * inverse(P);
}

// Nested positioning for a chain S_1 c S_2 c ... of block subspaces; layer r
// contributes new basis vectors mapped to new_positions[r].
inline Mat<Fp> gl_position_chain(const std::vector<Subspace<Fp>>& chain,
                                 const std::vector<std::vector<int>>& new_positions, int size, Fp ex,
                                 const char* stage) {
    std::vector<std::vector<Fp>> cols;
    std::vector<int> tgt;
    for (size_t layer = 0; layer < chain.size(); ++layer) {
        size_t base = tgt.size();
        size_t want = base + new_positions[layer].size();
        for (int i = 0; i < chain[layer].dim() && tgt.size() < want; ++i) {
            std::vector<Fp> v = chain[layer].basis_row(i);
            std::vector<std::vector<Fp>> trial = cols;
            trial.push_back(v);
            if (Subspace<Fp>::span_vectors(trial, size, ex).dim() == static_cast<int>(trial.size())) {
                cols.push_back(v);
                tgt.push_back(new_positions[layer][tgt.size() - base]);
            }
        }
        if (tgt.size() != want) throw stage_error(stage, "gl_position_chain: chain extension failed");
    }
    return gl_map_to(cols, tgt, size, ex, stage);
}

// Linear map on the coordinate space F^dimension defined by src_i -> img_i
// and zero on a complement of span(src); returned as a dimension-column
// matrix of images in F^N.
inline std::vector<std::vector<Fp>> linear_extension_by_zero(const std::vector<std::vector<Fp>>& src,
                                                             const std::vector<std::vector<Fp>>& img,
                                                             int dimension, int N, Fp ex,
                                                             const char* stage) {
    std::vector<std::vector<Fp>> cols = src;
    std::vector<std::vector<Fp>> imgs = img;
    for (int j = 0; j < dimension && static_cast<int>(cols.size()) < dimension; ++j) {
        std::vector<Fp> e(dimension, ex.zero());
        e[j] = ex.one();
        std::vector<std::vector<Fp>> trial = cols;
        trial.push_back(e);
        if (Subspace<Fp>::span_vectors(trial, dimension, ex).dim() == static_cast<int>(trial.size())) {
            cols.push_back(e);
            imgs.push_back(std::vector<Fp>(N, ex.zero()));
        }
    }
    if (static_cast<int>(cols.size()) != dimension)
        throw stage_error(stage, "linear_extension_by_zero: basis completion failed");
    Mat<Fp> P(dimension, dimension, ex);
    for (int j = 0; j < dimension; ++j)
        for (int i = 0; i < dimension; ++i) P.at(i, j) = cols[j][i];
    Mat<Fp> Pinv = inverse(P);
    // F(eps_t) = sum_j imgs[j] * Pinv[j][t]
    std::vector<std::vector<Fp>> out(dimension, std::vector<Fp>(N, ex.zero()));
    for (int t = 0; t < dimension; ++t)
        for (int j = 0; j < dimension; ++j) {
            const Fp& c = Pinv.at(j, t);
            if (c.is_zero()) continue;
            for (int r = 0; r < N; ++r) out[t][r] += c * imgs[j][r];
        }
    return out;
}

} // namespace canon_detail

// Normal form inside the b15 block: T maximal isotropic in U_(15) with
// trivial intersections with both coordinate halves; returns the element of
// O(U_(15)) cap R carrying T onto V_(15)^eps.
inline OrthElement<Fp> b15_block_normalize(const Subspace<Fp>& T, const IndexLayout& L, int eps) {
    const int b = L.tuple.bi(15);
    const int n = L.n();
    Fp ex = T.basis().exemplar();
    if (b == 0) return OrthElement<Fp>::identity(n, ex);
    if (T.dim() != b) throw stage_error("ix", "b15 block: wrong dimension");
    std::vector<int> pos = L.I[15];
    auto eta_of_pos = [&](int x) { return L.eta15.at(pos[x]); };

    // T = { u + phi(u) + psi(u) e_{n+1} } in the block coordinates
    Mat<Fp> phiM(b, b, ex);
    std::vector<Fp> psi(b, ex.zero());
    for (int c = 0; c < b; ++c) {
        std::vector<std::pair<int, Fp>> want;
        for (int x = 0; x < b; ++x) want.emplace_back(pos[x], x == c ? ex.one() : ex.zero());
        std::vector<Fp> v = canon_detail::solve_in_subspace(T, want, "ix");
        for (int r = 0; r < b; ++r) phiM.at(r, c) = v[coord(eta_of_pos(r))];
        psi[c] = v[coord(n + 1)];
    }
    // B[x][c] = (eps_x, phi(eps_c)) = phiM[b-1-x][c];  S = B + (1/2) psi psi^T
    Mat<Fp> S(b, b, ex);
    Fp half = ex.one() / ex.from_int(2);
    for (int x = 0; x < b; ++x)
        for (int c = 0; c < b; ++c) S.at(x, c) = phiM.at(b - 1 - x, c) + half * psi[x] * psi[c];
    for (int x = 0; x < b; ++x)
        for (int c = 0; c < b; ++c)
            if (S.at(x, c) != -S.at(c, x)) throw stage_error("ix", "b15 block: S not alternating");

    auto Sform = [&](const std::vector<Fp>& u, const std::vector<Fp>& v) {
        Fp s = ex.zero();
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) s += u[i] * S.at(i, j) * v[j];
        return s;
    };
    auto psival = [&](const std::vector<Fp>& u) {
        Fp s = ex.zero();
        for (int i = 0; i < b; ++i) s += psi[i] * u[i];
        return s;
    };

    const int h = (b + 1) / 2;
    std::vector<std::vector<Fp>> slot(b);

    auto harvest_pairs = [&](Subspace<Fp> cur, const std::vector<std::pair<int, int>>& slot_pairs) {
        size_t next = 0;
        while (next < slot_pairs.size()) {
            if (cur.dim() < 2) throw stage_error("ix", "b15 block: pairing space exhausted");
            std::vector<Fp> a = cur.basis_row(0);
            std::vector<Fp> bh;
            bool found = false;
            for (int i = 1; i < cur.dim() && !found; ++i) {
                Fp c = Sform(a, cur.basis_row(i));
                if (!c.is_zero()) {
                    bh = cur.basis_row(i);
                    Fp inv = c.inv();
                    for (auto& x : bh) x = x * inv;
                    found = true;
                }
            }
            if (!found) throw stage_error("ix", "b15 block: first vector pairs to zero with everything");
            slot[slot_pairs[next].first] = a;
            slot[slot_pairs[next].second] = bh;
            ++next;
            std::vector<std::vector<Fp>> rest;
            for (int i = 0; i < cur.dim(); ++i) {
                std::vector<Fp> v = cur.basis_row(i);
                Fp ca = Sform(v, a), cb = Sform(v, bh);
                for (int j = 0; j < b; ++j) v[j] = v[j] + ca * bh[j] - cb * a[j];
                rest.push_back(std::move(v));
            }
            cur = Subspace<Fp>::span_vectors(rest, b, ex);
        }
    };

    if (eps == 0) {
        for (const auto& x : psi)
            if (!x.is_zero()) throw stage_error("ix", "b15 block: eps=0 but psi != 0");
        std::vector<std::pair<int, int>> slot_pairs;
        for (int y = 1; y <= h; ++y) slot_pairs.emplace_back(b - y, y - 1);
        harvest_pairs(Subspace<Fp>::full(b, ex), slot_pairs);
    } else if (b % 2 == 1) {
        Mat<Fp> ker = kernel(S);
        if (ker.rows() != 1) throw stage_error("ix", "b15 block: radical dimension wrong");
        std::vector<Fp> r = ker.row(0);
        Fp pr = psival(r);
        if (pr.is_zero()) throw stage_error("ix", "b15 block: psi vanishes on the radical");
        Fp scale = -ex.from_int(2) / pr;
        for (auto& x : r) x = x * scale;
        slot[h - 1] = r;
        Mat<Fp> psirow(1, b, ex);
        for (int i = 0; i < b; ++i) psirow.at(0, i) = psi[i];
        Subspace<Fp> kerpsi = Subspace<Fp>::span(kernel(psirow));
        std::vector<std::pair<int, int>> slot_pairs;
        for (int y = 1; y <= h - 1; ++y) slot_pairs.emplace_back(b - y, y - 1);
        harvest_pairs(kerpsi, slot_pairs);
    } else {
        // b even, eps = 1: g_h = -S^{-1} psi so that S(g_h, x) = psi(x)
        // (S is alternating, so S(S^{-1} v, x) = -v(x))
        Mat<Fp> Sinv = inverse(S);
        std::vector<Fp> gh(b, ex.zero());
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) gh[i] -= Sinv.at(i, j) * psi[j];
        Mat<Fp> psirow(1, b, ex);
        for (int i = 0; i < b; ++i) psirow.at(0, i) = psi[i];
        auto sol = solve(psirow, {-ex.one()});
        if (!sol) throw stage_error("ix", "b15 block: psi = -1 unsolvable");
        std::vector<Fp> gh1 = *sol;
        if (Sform(gh, gh1) != -ex.one()) throw stage_error("ix", "b15 block: S(gh, gh1) != -1");
        slot[h - 1] = gh;
        slot[h] = gh1;
        Mat<Fp> cons(2, b, ex);
        for (int j = 0; j < b; ++j) {
            Fp s0 = ex.zero(), s1 = ex.zero();
            for (int i = 0; i < b; ++i) {
                s0 += gh[i] * S.at(i, j);
                s1 += gh1[i] * S.at(i, j);
            }
            cons.at(0, j) = s0;
            cons.at(1, j) = s1;
        }
        Subspace<Fp> rest = Subspace<Fp>::span(kernel(cons));
        std::vector<std::pair<int, int>> slot_pairs;
        for (int y = 1; y <= h - 1; ++y) slot_pairs.emplace_back(b - y, y - 1);
        harvest_pairs(rest, slot_pairs);
    }

    Mat<Fp> P(b, b, ex);
    for (int c = 0; c < b; ++c)
        for (int r = 0; r < b; ++r) P.at(r, c) = slot[c][r];
    Mat<Fp> A = inverse(P);

    int N = 2 * n + 1;
    Mat<Fp> g = Mat<Fp>::identity(N, ex);
    Mat<Fp> Jb = anti_identity<Fp>(b, ex);
    Mat<Fp> Astar = Jb * inverse(A).transpose() * Jb;
    for (int r = 0; r < b; ++r)
        for (int c = 0; c < b; ++c) {
            g.at(coord(pos[r]), coord(pos[c])) = A.at(r, c);
            g.at(coord(eta_of_pos(r)), coord(eta_of_pos(c))) = Astar.at(r, c);
        }
    return OrthElement<Fp>(g, n);
}

// The nine-stage normalization. Preconditions: the pair is the coordinate
// model of `shape` and V is maximal isotropic.
inline CanonicalizeResult canonicalize(const Subspace<Fp>& Up, const Subspace<Fp>& Um,
                                       const Subspace<Fp>& V_in, const PairShape& shape) {
    using namespace canon_detail;
    Fp ex = Up.basis().exemplar();
    const int n = shape.n, N = 2 * n + 1;
    const int a0 = shape.a0, ap = shape.ap, am = shape.am, a1 = shape.a1, d = shape.d, m = shape.m,
              dp = shape.dprime;
    InvariantTuple tuple = compute_b(Up, Um, V_in, shape);
    IndexLayout L = layout(shape, tuple);
    auto B = [&](int i) { return tuple.bi(i); };

    CanonicalizeResult res;
    res.tuple = tuple;
    res.g = OrthElement<Fp>::identity(n, ex);
    Subspace<Fp> V = V_in;

    std::vector<std::vector<Fp>> handled_rows;
    auto handled = [&]() { return Subspace<Fp>::span_vectors(handled_rows, N, ex); };
    auto push = [&](const OrthElement<Fp>& g, const std::string& label) {
        if (g.apply(Up) != Up || g.apply(Um) != Um)
            throw stage_error(label, "element does not stabilize the pair");
        V = g.apply(V);
        res.g = g * res.g;
        res.trace.stages.push_back({label, g, V});
    };
    auto done_stage = [&](const std::string& label, const std::vector<std::vector<Fp>>& new_rows) {
        for (const auto& r : new_rows) handled_rows.push_back(r);
        Subspace<Fp> H = handled();
        if (static_cast<int>(handled_rows.size()) != H.dim())
            throw stage_error(label, "handled rows became dependent");
        if (!V.contains(H)) throw stage_error(label, "claimed block is not inside V");
    };
    auto reduce_handled = [&](std::vector<Fp> v) { return handled().reduce(std::move(v)); };
    auto ev = [&](int i) { return basis_vector(i, n, ex); };
    auto lin2 = [&](int i, Fp ci, int j, Fp cj) {
        std::vector<Fp> v(N, ex.zero());
        v[coord(i)] += ci;
        v[coord(j)] += cj;
        return v;
    };

    // ---- stage (i): V_(1) ----
    {
        Subspace<Fp> W0V = intersect(coords_span(range1(1, a0), n, ex), V);
        if (W0V.dim() != B(1)) throw stage_error("i", "dim(W0 cap V) != b1");
        if (B(1) > 0) {
            std::vector<std::vector<Fp>> src;
            std::vector<int> tgt;
            for (int i = 0; i < B(1); ++i) {
                std::vector<Fp> row = W0V.basis_row(i);
                src.push_back(std::vector<Fp>(row.begin(), row.begin() + a0));
                tgt.push_back(i);
            }
            Mat<Fp> A0 = gl_map_to(src, tgt, a0, ex, "i");
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            for (int i = 0; i < a0; ++i)
                for (int j = 0; j < a0; ++j) A.at(i, j) = A0.at(i, j);
            push(ell(A, n), "i");
        } else {
            push(OrthElement<Fp>::identity(n, ex), "i");
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[1]) rows.push_back(ev(i));
        done_stage("i", rows);
    }

    // ---- stage (ii): V_(2) ----
    {
        std::vector<int> K;
        std::vector<std::vector<Fp>> vecs;
        for (int i : L.I[2]) K.push_back(bar(i, n));
        for (int j : K) {
            std::vector<std::pair<int, Fp>> want;
            for (int jj : K) want.emplace_back(jj, jj == j ? ex.one() : ex.zero());
            vecs.push_back(solve_in_subspace(V, want, "ii"));
        }
        if (!K.empty()) push(element_from_isotropic_vectors<Fp>(K, vecs, n, ex).inverse(), "ii");
        else push(OrthElement<Fp>::identity(n, ex), "ii");
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[2]) rows.push_back(ev(bar(i, n)));
        done_stage("ii", rows);
    }

    // ---- stage (iii): V_(3), V_(4) ----
    {
        Subspace<Fp> T3 = intersect(coords_span(range1(a0 + 1, a0 + ap), n, ex), V);
        Subspace<Fp> T4 = intersect(coords_span(range1(a0 + ap + 1, d), n, ex), V);
        if (T3.dim() != B(3)) throw stage_error("iii", "dim(W+ part of V) != b3");
        if (T4.dim() != B(4)) throw stage_error("iii", "dim(W- part of V) != b4");
        if (T3.dim() + T4.dim() > 0) {
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            auto place = [&](const Subspace<Fp>& T, int off, int size) {
                if (size == 0 || T.dim() == 0) return;
                std::vector<std::vector<Fp>> src;
                std::vector<int> tgt;
                for (int i = 0; i < T.dim(); ++i) {
                    std::vector<Fp> row = T.basis_row(i);
                    src.push_back(std::vector<Fp>(row.begin() + off, row.begin() + off + size));
                    tgt.push_back(i);
                }
                Mat<Fp> blockA = gl_map_to(src, tgt, size, ex, "iii");
                for (int i = 0; i < size; ++i)
                    for (int j = 0; j < size; ++j) A.at(off + i, off + j) = blockA.at(i, j);
            };
            place(T3, a0, ap);
            place(T4, a0 + ap, am);
            push(ell(A, n), "iii");
        } else {
            push(OrthElement<Fp>::identity(n, ex), "iii");
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[3]) rows.push_back(ev(i));
        for (int i : L.I[4]) rows.push_back(ev(i));
        done_stage("iii", rows);
    }

    // ---- stage (iv): V_(5), V_(6) ----
    {
        if (a1 > 0) {
            auto ublock_part = [&](const Subspace<Fp>& T, int base) {
                std::vector<std::vector<Fp>> rows;
                for (int i = 0; i < T.dim(); ++i) {
                    std::vector<Fp> full = T.basis_row(i), v(a1, ex.zero());
                    bool nonzero = false;
                    for (int j = 1; j <= a1; ++j) {
                        v[j - 1] = full[coord(base + j)];
                        nonzero = nonzero || !v[j - 1].is_zero();
                    }
                    if (nonzero) rows.push_back(std::move(v));
                }
                return Subspace<Fp>::span_vectors(rows, a1, ex);
            };
            Subspace<Fp> S5 = ublock_part(intersect(V, Up), d);
            Subspace<Fp> S6 = ublock_part(intersect(V, Um), dp);
            if (S5.dim() != B(5) || S6.dim() != B(6)) throw stage_error("iv", "b5/b6 dimensions wrong");
            Mat<Fp> pairing(S6.dim(), a1, ex);
            for (int i = 0; i < S6.dim(); ++i)
                for (int j = 0; j < a1; ++j) pairing.at(i, j) = S6.basis().at(i, a1 - 1 - j);
            Subspace<Fp> S6perp = Subspace<Fp>::span(kernel(pairing));
            if (!S6perp.contains(S5)) throw stage_error("iv", "S5 not orthogonal to S6");
            std::vector<int> tgt5 = range1(1, B(5)), tgt6p = range1(B(5) + 1, a1 - B(6));
            for (auto& t : tgt5) --t;
            for (auto& t : tgt6p) --t;
            Mat<Fp> A = gl_position_chain({S5, S6perp}, {tgt5, tgt6p}, a1, ex, "iv");
            push(ell00(A, Mat<Fp>::identity(m - 2 * a1, ex), d, n), "iv");

            if (d > 0 && B(5) + B(6) > 0) {
                Subspace<Fp> VUp = intersect(V, Up), VUm = intersect(V, Um);
                Mat<Fp> X(d, m, ex);
                for (int j = 1; j <= B(5); ++j) {
                    std::vector<std::pair<int, Fp>> want;
                    for (int t = 1; t <= a1; ++t) want.emplace_back(d + t, t == j ? ex.one() : ex.zero());
                    std::vector<Fp> v = reduce_handled(solve_in_subspace(VUp, want, "iv"));
                    for (int i = 1; i <= d; ++i) {
                        if (v[coord(i)].is_zero()) continue;
                        if (i <= a0 + B(3) || i > a0 + ap)
                            throw stage_error("iv", "U+ lift has corrections outside the W+ range");
                        X.at(i - 1, j - 1) = v[coord(i)];
                    }
                }
                for (int j = 1; j <= B(6); ++j) {
                    std::vector<std::pair<int, Fp>> want;
                    for (int t = 1; t <= a1; ++t) want.emplace_back(dp + t, t == j ? ex.one() : ex.zero());
                    std::vector<Fp> v = reduce_handled(solve_in_subspace(VUm, want, "iv"));
                    int colm = dp + j - d;
                    for (int i = 1; i <= d; ++i) {
                        if (v[coord(i)].is_zero()) continue;
                        if (i <= a0 + ap + B(4) || i > d)
                            throw stage_error("iv", "U- lift has corrections outside the W- range");
                        X.at(i - 1, colm - 1) = v[coord(i)];
                    }
                }
                push(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n).inverse(), "iv");
            } else {
                push(OrthElement<Fp>::identity(n, ex), "iv");
            }
        } else {
            push(OrthElement<Fp>::identity(n, ex), "iv");
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[5]) rows.push_back(ev(i));
        for (int i : L.I[6]) rows.push_back(ev(i));
        done_stage("iv", rows);
        if (intersect(V, Up).dim() != B(1) + B(3) + B(5)) throw stage_error("iv", "dim(V cap U+) wrong");
        if (intersect(V, Um).dim() != B(1) + B(4) + B(6)) throw stage_error("iv", "dim(V cap U-) wrong");
    }

    // ---- stage (v): V_(7) ----
    {
        std::vector<int> wplus_rem = range1(a0 + B(3) + 1, a0 + ap);
        std::vector<int> wminus_rem = range1(a0 + ap + B(4) + 1, d);
        std::vector<int> both = wplus_rem;
        both.insert(both.end(), wminus_rem.begin(), wminus_rem.end());
        Subspace<Fp> T7 = intersect(coords_span(both, n, ex), V);
        if (T7.dim() != B(7)) throw stage_error("v", "dim(W cap V)-part != b7");
        if (B(7) > 0) {
            std::vector<std::vector<Fp>> usrc, xsrc;
            std::vector<int> utgt, xtgt;
            for (int k = 0; k < B(7); ++k) {
                std::vector<Fp> row = T7.basis_row(k);
                std::vector<Fp> u(wplus_rem.size(), ex.zero()), x(wminus_rem.size(), ex.zero());
                for (size_t t = 0; t < wplus_rem.size(); ++t) u[t] = row[coord(wplus_rem[t])];
                for (size_t t = 0; t < wminus_rem.size(); ++t) x[t] = row[coord(wminus_rem[t])];
                usrc.push_back(std::move(u));
                xsrc.push_back(std::move(x));
                utgt.push_back(k);
                xtgt.push_back(L.eta7.at(L.I[7][k]) - wminus_rem[0]);
            }
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            Mat<Fp> Ablk = gl_map_to(usrc, utgt, static_cast<int>(wplus_rem.size()), ex, "v");
            Mat<Fp> Bblk = gl_map_to(xsrc, xtgt, static_cast<int>(wminus_rem.size()), ex, "v");
            for (size_t i = 0; i < wplus_rem.size(); ++i)
                for (size_t j = 0; j < wplus_rem.size(); ++j)
                    A.at(coord(wplus_rem[i]), coord(wplus_rem[j])) = Ablk.at(static_cast<int>(i), static_cast<int>(j));
            for (size_t i = 0; i < wminus_rem.size(); ++i)
                for (size_t j = 0; j < wminus_rem.size(); ++j)
                    A.at(coord(wminus_rem[i]), coord(wminus_rem[j])) = Bblk.at(static_cast<int>(i), static_cast<int>(j));
            push(ell(A, n), "v");

            std::vector<int> K;
            std::vector<std::vector<Fp>> vecs, vjs;
            std::vector<int> avail_up = range1(d + B(5) + 1, d + a1 - B(6));
            for (int j : L.I[7]) {
                std::vector<std::pair<int, Fp>> want;
                for (int i = 1; i <= d; ++i) {
                    Fp c = ex.zero();
                    if (i == j) c = ex.one();
                    if (i == L.eta7.at(j)) c = -ex.one();
                    want.emplace_back(bar(i, n), c);
                }
                vjs.push_back(reduce_handled(solve_in_subspace(V, want, "v")));
            }
            for (size_t t = 0; t < vjs.size(); ++t) {
                int j = L.I[7][t];
                std::vector<Fp> u(N, ex.zero());
                u[coord(bar(L.eta7.at(j), n))] = vjs[t][coord(bar(L.eta7.at(j), n))];
                for (int i : avail_up) u[coord(i)] = vjs[t][coord(i)];
                std::vector<Fp> vplus = u;
                for (size_t r = 0; r < vjs.size(); ++r) {
                    Fp c = form_value(u, vjs[r], n);
                    if (!c.is_zero()) vplus[coord(L.I[7][r])] -= c;
                }
                std::vector<Fp> vminus(N, ex.zero());
                for (int c2 = 0; c2 < N; ++c2) vminus[c2] = vjs[t][c2] - vplus[c2];
                K.push_back(bar(j, n));
                vecs.push_back(vminus);
                K.push_back(bar(L.eta7.at(j), n));
                for (auto& xx : vplus) xx = -xx;
                vecs.push_back(vplus);
            }
            push(element_from_isotropic_vectors<Fp>(K, vecs, n, ex).inverse(), "v");
        } else {
            push(OrthElement<Fp>::identity(n, ex), "v");
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[7]) {
            rows.push_back(lin2(i, ex.one(), L.eta7.at(i), ex.one()));
            rows.push_back(lin2(bar(i, n), ex.one(), bar(L.eta7.at(i), n), -ex.one()));
        }
        done_stage("v", rows);
    }

    // ---- stages (vi) and (vii): V_(8) and V_(9) ----
    auto stage_six_seven = [&](bool plus_side) {
        const char* lbl = plus_side ? "vi" : "vii";
        int bj = plus_side ? B(8) : B(9);
        const std::vector<int>& Ij = plus_side ? L.I[8] : L.I[9];
        const std::map<int, int>& eta = plus_side ? L.eta8 : L.eta9;
        std::vector<int> wrem = plus_side ? range1(a0 + B(3) + B(7) + 1, a0 + ap)
                                          : range1(a0 + ap + B(4) + B(7) + 1, d);
        std::vector<int> wopp = plus_side ? range1(a0 + ap + B(4) + B(7) + 1, d)
                                          : range1(a0 + ap - B(10) + 1, a0 + ap);
        std::vector<int> u_avail;
        if (plus_side)
            for (int t = B(6) + 1; t <= a1 - B(5); ++t) u_avail.push_back(dp + t);
        else
            for (int t = B(5) + 1; t <= a1 - B(6) - B(8); ++t) u_avail.push_back(d + t);
        std::vector<int> span_coords = wrem;
        for (int i : wopp) span_coords.push_back(i);
        for (int i : u_avail) span_coords.push_back(i);

        Subspace<Fp> Umix = plus_side ? sum(coords_span(range1(1, a0 + ap), n, ex), Um)
                                      : sum(Up, intersect(Um, perp(Up, n)));
        auto reduced_T = [&]() {
            Subspace<Fp> Tfull = intersect(V, Umix);
            std::vector<std::vector<Fp>> redrows;
            for (int i = 0; i < Tfull.dim(); ++i) redrows.push_back(reduce_handled(Tfull.basis_row(i)));
            return Subspace<Fp>::span_vectors(redrows, N, ex);
        };
        Subspace<Fp> T = reduced_T();
        if (T.dim() != bj) throw stage_error(lbl, "reduced mixed intersection has wrong dimension");
        for (int i = 0; i < T.dim(); ++i)
            for (int c = 1; c <= N; ++c) {
                bool ok = false;
                for (int s : span_coords) ok = ok || (s == c);
                if (!ok && !T.basis().at(i, coord(c)).is_zero())
                    throw stage_error(lbl, "reduced vector has support outside the expected block");
            }
        if (bj > 0) {
            // (1) GL move on the W remainder carrying I_(j)
            std::vector<std::vector<Fp>> src;
            std::vector<int> tgt;
            for (int k = 0; k < bj; ++k) {
                std::vector<Fp> row = T.basis_row(k), u(wrem.size(), ex.zero());
                for (size_t t = 0; t < wrem.size(); ++t) u[t] = row[coord(wrem[t])];
                src.push_back(std::move(u));
                tgt.push_back(Ij[k] - wrem[0]);
            }
            Mat<Fp> A = Mat<Fp>::identity(d, ex);
            Mat<Fp> Ablk = gl_map_to(src, tgt, static_cast<int>(wrem.size()), ex, lbl);
            for (size_t i = 0; i < wrem.size(); ++i)
                for (size_t j = 0; j < wrem.size(); ++j)
                    A.at(coord(wrem[i]), coord(wrem[j])) = Ablk.at(static_cast<int>(i), static_cast<int>(j));
            push(ell(A, n), lbl);

            // (2) dual GL move on the middle block aligning the U parts
            T = reduced_T();
            {
                std::vector<std::vector<Fp>> usrc;
                std::vector<int> utgt;
                for (int k = 0; k < bj; ++k) {
                    std::vector<std::pair<int, Fp>> want;
                    for (int i : wrem) want.emplace_back(i, i == Ij[k] ? ex.one() : ex.zero());
                    std::vector<Fp> tv = solve_in_subspace(T, want, lbl);
                    std::vector<Fp> u(u_avail.size(), ex.zero());
                    for (size_t t = 0; t < u_avail.size(); ++t) u[t] = tv[coord(u_avail[t])];
                    usrc.push_back(std::move(u));
                    int pos = -1;
                    for (size_t t = 0; t < u_avail.size(); ++t)
                        if (u_avail[t] == eta.at(Ij[k])) pos = static_cast<int>(t);
                    if (pos < 0) throw stage_error(lbl, "eta image outside the free middle block");
                    utgt.push_back(pos);
                }
                Mat<Fp> Dsub = gl_map_to(usrc, utgt, static_cast<int>(u_avail.size()), ex, lbl);
                Mat<Fp> Dside = Mat<Fp>::identity(a1, ex);
                for (size_t i = 0; i < u_avail.size(); ++i)
                    for (size_t j = 0; j < u_avail.size(); ++j) {
                        int pi = plus_side ? (u_avail[i] - dp - 1) : (u_avail[i] - d - 1);
                        int pj = plus_side ? (u_avail[j] - dp - 1) : (u_avail[j] - d - 1);
                        Dside.at(pi, pj) = Dsub.at(static_cast<int>(i), static_cast<int>(j));
                    }
                Mat<Fp> J1 = anti_identity<Fp>(a1, ex);
                Mat<Fp> D = plus_side ? Mat<Fp>(J1 * inverse(Dside).transpose() * J1) : Dside;
                push(ell00(D, Mat<Fp>::identity(m - 2 * a1, ex), d, n), lbl);
            }

            // (3) unipotent correction erasing the residual opposite-W parts
            T = reduced_T();
            {
                Mat<Fp> X(d, m, ex);
                bool any = false;
                for (int k = 0; k < bj; ++k) {
                    std::vector<std::pair<int, Fp>> want;
                    for (int i : wrem) want.emplace_back(i, i == Ij[k] ? ex.one() : ex.zero());
                    for (int i : u_avail) want.emplace_back(i, i == eta.at(Ij[k]) ? ex.one() : ex.zero());
                    std::vector<Fp> v = solve_in_subspace(T, want, lbl);
                    int colm = eta.at(Ij[k]) - d;
                    for (int i : wopp)
                        if (!v[coord(i)].is_zero()) {
                            X.at(coord(i), colm - 1) = v[coord(i)];
                            any = true;
                        }
                }
                if (any) push(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n).inverse(), lbl);
            }

            // (4) bar-side extraction via the completion element
            std::vector<int> K;
            std::vector<std::vector<Fp>> vecs, vjs(bj);
            std::vector<int> avail_same = plus_side ? range1(d + B(5) + 1, d + a1 - B(6))
                                                    : range1(dp + B(6) + B(8) + 1, dp + a1 - B(5));
            for (int k = 0; k < bj; ++k) {
                std::vector<std::pair<int, Fp>> want;
                for (int i = 1; i <= d; ++i) want.emplace_back(bar(i, n), i == Ij[k] ? ex.one() : ex.zero());
                vjs[k] = reduce_handled(solve_in_subspace(V, want, lbl));
            }
            for (int k = 0; k < bj; ++k) {
                int j = Ij[k];
                int etabar = bar(eta.at(j), n);
                std::vector<Fp> u(N, ex.zero());
                u[coord(etabar)] = vjs[k][coord(etabar)];
                for (int i : avail_same)
                    if (i != etabar) u[coord(i)] = vjs[k][coord(i)];
                if (u[coord(etabar)] != -ex.one()) throw stage_error(lbl, "bar vector lacks the -eta term");
                std::vector<Fp> vplus = u;
                for (int r = 0; r < bj; ++r) {
                    Fp c = form_value(u, vjs[r], n);
                    if (!c.is_zero()) vplus[coord(Ij[r])] -= c;
                }
                std::vector<Fp> vminus(N, ex.zero());
                for (int c2 = 0; c2 < N; ++c2) vminus[c2] = vjs[k][c2] - vplus[c2];
                K.push_back(bar(j, n));
                vecs.push_back(vminus);
                K.push_back(etabar);
                for (auto& xx : vplus) xx = -xx;
                vecs.push_back(vplus);
            }
            push(element_from_isotropic_vectors<Fp>(K, vecs, n, ex).inverse(), lbl);
        } else {
            push(OrthElement<Fp>::identity(n, ex), lbl);
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : Ij) {
            rows.push_back(lin2(i, ex.one(), eta.at(i), ex.one()));
            rows.push_back(lin2(bar(i, n), ex.one(), bar(eta.at(i), n), -ex.one()));
        }
        done_stage(lbl, rows);
    };
    stage_six_seven(true);
    stage_six_seven(false);

    // ---- stage (viii): V_(10), V_(11) ----
    {
        std::vector<int> uprem = range1(d + B(5) + B(9) + 1, d + a1 - B(6) - B(8));
        std::vector<int> umrem;
        for (int i : uprem) umrem.push_back(bar(i, n));
        std::vector<int> zmid = range1(d + a1 + 1, bar(d + a1 + 1, n));
        std::vector<int> u9;
        for (int i : L.I[10]) { u9.push_back(i); u9.push_back(bar(i, n)); }
        for (int i : L.I[11]) { u9.push_back(i); u9.push_back(bar(i, n)); }
        for (int i : uprem) u9.push_back(i);
        for (int i : umrem) u9.push_back(i);
        for (int i : zmid) u9.push_back(i);
        Subspace<Fp> U9 = coords_span(u9, n, ex);
        Subspace<Fp> UpUm = sum(Up, Um);
        Subspace<Fp> U9X = intersect(intersect(UpUm, perp(V, n)), U9);
        if (U9X.dim() != B(12) + B(15)) throw stage_error("viii", "dim(U9 cap X') != b12 + b15");

        int kdim = U9X.dim();
        if (kdim > 0) {
            std::vector<std::vector<Fp>> pip, pim, php, phm;
            for (int i = 0; i < kdim; ++i) {
                std::vector<Fp> v = U9X.basis_row(i);
                std::vector<Fp> vp(a1, ex.zero()), vm(a1, ex.zero()), wp(N, ex.zero()), wm(N, ex.zero());
                for (int t = 1; t <= a1; ++t) vp[t - 1] = v[coord(d + t)];
                for (int t = 1; t <= a1; ++t) vm[t - 1] = v[coord(dp + t)];
                for (int c : L.I[10]) wp[coord(c)] = v[coord(c)];
                for (int c : L.I[11]) wm[coord(c)] = v[coord(c)];
                pip.push_back(vp);
                pim.push_back(vm);
                php.push_back(wp);
                phm.push_back(wm);
            }
            auto Fplus = linear_extension_by_zero(pip, php, a1, N, ex, "viii");
            auto Fminus = linear_extension_by_zero(pim, phm, a1, N, ex, "viii");
            Mat<Fp> X(d, m, ex);
            bool any = false;
            for (int t = 1; t <= a1; ++t) {
                for (int w : L.I[10])
                    if (!Fplus[t - 1][coord(w)].is_zero()) {
                        X.at(coord(w), t - 1) = Fplus[t - 1][coord(w)];
                        any = true;
                    }
                for (int w : L.I[11])
                    if (!Fminus[t - 1][coord(w)].is_zero()) {
                        X.at(coord(w), m - a1 + t - 1) = Fminus[t - 1][coord(w)];
                        any = true;
                    }
            }
            if (any) push(unipotent_XZ(X, Mat<Fp>(d, d, ex), d, n).inverse(), "viii");
        }

        if (B(10) + B(11) > 0) {
            std::vector<int> K;
            std::vector<std::vector<Fp>> vecs;
            // corrections live in U9 cap Z with Z = (U+ + U-)^perp, which
            // contains the W block as well as the middle block
            Subspace<Fp> Z0 = intersect(perp(UpUm, n), U9);
            for (int i : L.I[10]) K.push_back(bar(i, n));
            for (int i : L.I[11]) K.push_back(bar(i, n));
            for (int kk : K) {
                Mat<Fp> A(N, V.dim() + Z0.dim(), ex);
                for (int r = 0; r < V.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) A.at(c2, r) = V.basis().at(r, c2);
                for (int r = 0; r < Z0.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) A.at(c2, V.dim() + r) = -Z0.basis().at(r, c2);
                auto sol = solve(A, ev(kk));
                if (!sol) throw stage_error("viii", "no lift e_i + z inside V");
                std::vector<Fp> v = ev(kk);
                for (int r = 0; r < Z0.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) v[c2] += (*sol)[V.dim() + r] * Z0.basis().at(r, c2);
                vecs.push_back(v);
            }
            push(element_from_isotropic_vectors<Fp>(K, vecs, n, ex).inverse(), "viii");
        } else {
            push(OrthElement<Fp>::identity(n, ex), "viii");
        }
        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[10]) rows.push_back(ev(bar(i, n)));
        for (int i : L.I[11]) rows.push_back(ev(bar(i, n)));
        done_stage("viii", rows);
    }

    // ---- stage (ix): V_(12), V_(13), V_(14), V_(15) ----
    {
        std::vector<int> uprem = range1(d + B(5) + B(9) + 1, d + a1 - B(6) - B(8));
        std::vector<int> umrem;
        for (int i : uprem) umrem.push_back(bar(i, n));
        std::vector<int> zmid = range1(d + a1 + 1, bar(d + a1 + 1, n));
        std::vector<int> u11 = uprem;
        u11.insert(u11.end(), umrem.begin(), umrem.end());
        u11.insert(u11.end(), zmid.begin(), zmid.end());
        Subspace<Fp> U11 = coords_span(u11, n, ex);
        Subspace<Fp> UpUm = sum(Up, Um);
        int arem = static_cast<int>(uprem.size());
        auto sub_pos_p = [&](int c) {
            for (int t = 0; t < arem; ++t)
                if (uprem[t] == c) return t;
            throw stage_error("ix", "coordinate not in the remainder block");
        };

        auto computeYp = [&]() { return intersect(intersect(UpUm, perp(V, n)), U11); };
        auto computeY1 = [&](const Subspace<Fp>& Yp) {
            int r = Yp.dim();
            Mat<Fp> pair(r, r, ex);
            for (int i = 0; i < r; ++i) {
                std::vector<Fp> vp(N, ex.zero());
                std::vector<Fp> full = Yp.basis_row(i);
                for (int t = 0; t < arem; ++t) vp[coord(uprem[t])] = full[coord(uprem[t])];
                for (int j = 0; j < r; ++j) pair.at(j, i) = form_value(vp, Yp.basis_row(j), n);
            }
            Mat<Fp> ker = kernel(pair);
            std::vector<std::vector<Fp>> rows;
            for (int rr = 0; rr < ker.rows(); ++rr) {
                std::vector<Fp> v(N, ex.zero());
                for (int i = 0; i < r; ++i) {
                    const Fp& c = ker.at(rr, i);
                    if (c.is_zero()) continue;
                    for (int c2 = 0; c2 < N; ++c2) v[c2] += c * Yp.basis().at(i, c2);
                }
                rows.push_back(std::move(v));
            }
            return Subspace<Fp>::span_vectors(rows, N, ex);
        };

        if (arem > 0) {
            Subspace<Fp> Yp = computeYp();
            if (Yp.dim() != B(12) + B(15)) throw stage_error("ix", "dim Y' != b12 + b15");
            Subspace<Fp> Y1 = computeY1(Yp);
            if (Y1.dim() != B(12)) throw stage_error("ix", "dim Y1 != b12");

            auto pi_plus_space = [&](const Subspace<Fp>& S) {
                std::vector<std::vector<Fp>> rows;
                for (int i = 0; i < S.dim(); ++i) {
                    std::vector<Fp> full = S.basis_row(i), v(arem, ex.zero());
                    for (int t = 0; t < arem; ++t) v[t] = full[coord(uprem[t])];
                    rows.push_back(std::move(v));
                }
                return Subspace<Fp>::span_vectors(rows, arem, ex);
            };
            Subspace<Fp> piY1 = pi_plus_space(Y1), piYp = pi_plus_space(Yp);
            if (piY1.dim() != B(12) || piYp.dim() != B(12) + B(15))
                throw stage_error("ix", "pi+ not bijective on Y1 or Y'");
            Subspace<Fp> Sc(arem, ex);
            {
                Mat<Fp> pairing(Yp.dim(), arem, ex);
                for (int i = 0; i < Yp.dim(); ++i) {
                    std::vector<Fp> full = Yp.basis_row(i);
                    for (int t = 0; t < arem; ++t) pairing.at(i, t) = full[coord(umrem[t])];
                }
                Sc = Subspace<Fp>::span(kernel(pairing));
            }
            if (Sc.dim() != B(12) + B(13)) throw stage_error("ix", "perp of pi-(Y') has wrong dimension");
            if (intersect(piYp, Sc) != piY1) throw stage_error("ix", "pi+(Y1) is not the stated intersection");
            std::vector<int> pos12, pos15, pos13;
            for (int i : L.I[12]) pos12.push_back(sub_pos_p(i));
            for (int i : L.I[15]) pos15.push_back(sub_pos_p(i));
            for (int i : L.I[13]) pos13.push_back(sub_pos_p(i));
            Mat<Fp> A = gl_position_chain({piY1, piYp, sum(piYp, Sc)}, {pos12, pos15, pos13}, arem, ex, "ix");
            Mat<Fp> D = Mat<Fp>::identity(a1, ex);
            for (int i = 0; i < arem; ++i)
                for (int j = 0; j < arem; ++j) D.at(uprem[i] - d - 1, uprem[j] - d - 1) = A.at(i, j);
            push(ell00(D, Mat<Fp>::identity(m - 2 * a1, ex), d, n), "ix");

            // ell_2: align Y1 with V_(12)^1 = span(e_i + e_kappa(i))
            if (B(12) > 0) {
                Yp = computeYp();
                Y1 = computeY1(Yp);
                Mat<Fp> A2blk(B(12), B(12), ex);
                for (int t = 0; t < B(12); ++t) {
                    std::vector<std::pair<int, Fp>> want;
                    for (int s : umrem)
                        want.emplace_back(s, s == L.kappa.at(L.I[12][t]) ? ex.one() : ex.zero());
                    std::vector<Fp> y = solve_in_subspace(Y1, want, "ix");
                    for (int s = 0; s < B(12); ++s) A2blk.at(s, t) = y[coord(L.I[12][s])];
                }
                Mat<Fp> D2 = Mat<Fp>::identity(a1, ex);
                for (int i = 0; i < B(12); ++i)
                    for (int j = 0; j < B(12); ++j)
                        D2.at(L.I[12][i] - d - 1, L.I[12][j] - d - 1) = A2blk.at(i, j);
                push(ell00(D2, Mat<Fp>::identity(m - 2 * a1, ex), d, n).inverse(), "ix");
            }

            // ell_3: erase the I12 components of the U15-side of Y'
            if (B(15) > 0 && B(12) > 0) {
                Yp = computeYp();
                Mat<Fp> C = Mat<Fp>::identity(a1, ex);
                for (int t = 0; t < B(15); ++t) {
                    int i15 = L.I[15][t];
                    std::vector<std::pair<int, Fp>> want;
                    for (int s : L.I[12]) want.emplace_back(L.kappa.at(s), ex.zero());
                    for (int s : L.I[15]) want.emplace_back(s, s == i15 ? ex.one() : ex.zero());
                    std::vector<Fp> y = solve_in_subspace(Yp, want, "ix");
                    for (int s = 0; s < B(12); ++s)
                        C.at(L.I[12][s] - d - 1, i15 - d - 1) = y[coord(L.I[12][s])];
                }
                push(ell00(C, Mat<Fp>::identity(m - 2 * a1, ex), d, n).inverse(), "ix");
            }
        }

        // ell_4: straighten Z cap V onto V_(14)
        {
            Subspace<Fp> Z0 = coords_span(zmid, n, ex);
            Subspace<Fp> ZV = intersect(Z0, V);
            if (ZV.dim() != B(14)) throw stage_error("ix", "dim(Z cap V) != b14");
            if (B(14) > 0) push(straighten_isotropic_in_block(ZV, SplitBlock(d + a1 + 1, n)), "ix");
        }

        // ell_5: send the Z components of the complement lifts to their spots
        {
            std::vector<int> z1 = range1(d + a1 + B(14) + 1, bar(d + a1 + B(14) + 1, n));
            Subspace<Fp> Z1 = coords_span(z1, n, ex);
            auto lift_z = [&](const std::vector<Fp>& u) {
                Mat<Fp> A(N, V.dim() + Z1.dim(), ex);
                for (int r = 0; r < V.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) A.at(c2, r) = V.basis().at(r, c2);
                for (int r = 0; r < Z1.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) A.at(c2, V.dim() + r) = -Z1.basis().at(r, c2);
                auto sol = solve(A, u);
                if (!sol) throw stage_error("ix", "no Z-lift for complement vector");
                std::vector<Fp> v(N, ex.zero());
                for (int r = 0; r < Z1.dim(); ++r)
                    for (int c2 = 0; c2 < N; ++c2) v[c2] += (*sol)[V.dim() + r] * Z1.basis().at(r, c2);
                return v;
            };
            std::vector<std::vector<Fp>> ufam, targets;
            for (int i : L.I[12]) {
                ufam.push_back(ev(i));
                targets.push_back(ev(L.lambda.at(i)));
            }
            for (int i : L.I[13]) {
                ufam.push_back(ev(i));
                targets.push_back(ev(L.eta13.at(i)));
            }
            for (int i : L.I[13]) {
                ufam.push_back(ev(bar(i, n)));
                std::vector<Fp> t = ev(bar(L.eta13.at(i), n));
                for (auto& x : t) x = -x;
                targets.push_back(t);
            }
            for (int i : L.I[12]) {
                ufam.push_back(lin2(bar(i, n), ex.one(), bar(L.kappa.at(i), n), -ex.one()));
                std::vector<Fp> t = ev(bar(L.lambda.at(i), n));
                for (auto& x : t) x = -x;
                targets.push_back(t);
            }
            if (tuple.eps == 1) {
                std::vector<int> u15c;
                for (int i : L.I[15]) { u15c.push_back(i); u15c.push_back(bar(i, n)); }
                Subspace<Fp> U150 = coords_span(u15c, n, ex);
                Subspace<Fp> T15 = intersect(U150, perp(V, n));
                if (T15.dim() != B(15)) throw stage_error("ix", "dim(U15^0 cap V^perp) != b15");
                Subspace<Fp> V15 = intersect(U150, perp(T15, n));
                Subspace<Fp> VT = intersect(U150, V);
                if (V15.dim() != B(15) || VT.dim() != B(15) - 1)
                    throw stage_error("ix", "eps=1 block dimensions unexpected");
                std::vector<Fp> w;
                for (int i = 0; i < V15.dim(); ++i)
                    if (!VT.contains(V15.basis_row(i))) {
                        w = V15.basis_row(i);
                        break;
                    }
                if (w.empty()) throw stage_error("ix", "no complement vector for eps=1");
                std::vector<Fp> zw = lift_z(w);
                Fp etaq = form_value(zw, zw, n);
                bool found = false;
                Fp c = ex.zero();
                for (long long t = 1; t < ex.prime(); ++t) {
                    Fp cand(t, ex.prime());
                    if (cand * cand * etaq == ex.one()) {
                        c = cand;
                        found = true;
                        break;
                    }
                }
                if (!found) throw stage_error("ix", "eps=1 lift norm is not an inverse square");
                for (auto& x : w) x = x * c;
                ufam.push_back(w);
                targets.push_back(ev(n + 1));
            }
            if (!ufam.empty()) {
                std::vector<std::vector<Fp>> vfam;
                for (const auto& u : ufam) vfam.push_back(lift_z(u));
                push(witt_extend_in_block(vfam, targets, SplitBlock(d + a1 + B(14) + 1, n)), "ix");
            }
        }

        // ell_6: the b15 block normal form
        if (B(15) > 0) {
            std::vector<int> u15all;
            for (int i : L.I[15]) { u15all.push_back(i); u15all.push_back(bar(i, n)); }
            u15all.push_back(n + 1);
            Subspace<Fp> U15 = coords_span(u15all, n, ex);
            Subspace<Fp> T = intersect(U15, V);
            if (T.dim() != B(15)) throw stage_error("ix", "dim(U15 cap V) != b15 before the block normal form");
            push(b15_block_normalize(T, L, tuple.eps), "ix");
        }

        bool stage_ix_pushed = false;
        for (const auto& st : res.trace.stages) stage_ix_pushed = stage_ix_pushed || st.label == "ix";
        if (!stage_ix_pushed) push(OrthElement<Fp>::identity(n, ex), "ix");

        std::vector<std::vector<Fp>> rows;
        for (int i : L.I[12]) {
            rows.push_back(lin2(i, ex.one(), L.kappa.at(i), ex.one()));
            rows.push_back(lin2(i, ex.one(), L.lambda.at(i), ex.one()));
            std::vector<Fp> v3 = ev(bar(i, n));
            v3[coord(bar(L.kappa.at(i), n))] -= ex.one();
            v3[coord(bar(L.lambda.at(i), n))] -= ex.one();
            rows.push_back(v3);
        }
        for (int i : L.I[13]) {
            rows.push_back(lin2(i, ex.one(), L.eta13.at(i), ex.one()));
            rows.push_back(lin2(bar(i, n), ex.one(), bar(L.eta13.at(i), n), -ex.one()));
        }
        for (int i : L.I[14]) rows.push_back(ev(i));
        done_stage("ix", rows);
    }

    Subspace<Fp> rep = representative(shape, tuple, ex);
    if (V != rep) throw stage_error("ix", "final space differs from the canonical representative");
    return res;
}

} // namespace isoflag
