// oracle.hpp
// Brute-force verification engine over GF(p): enumerate isotropic subspaces
// and flags, partition point sets into orbits under generator closure (BFS
// over canonical packed keys), and count double cosets on GL-side flag
// varieties. Budgets fail loudly; nothing is sampled.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "isoflag/split_form.hpp"

namespace isoflag {

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};

struct OracleBudget {
    long long max_points = 1000000;          // maximum point count
    long long max_applications = 100000000;  // maximum generator applications
};

inline OracleBudget& oracle_budget() {
    static OracleBudget b;
    return b;
}

// A point is a tuple of nested-or-not subspaces over one field; a single
// subspace is a one-member point. Keys pack the RREF entries as bytes.
using Point = std::vector<Subspace<Fp>>;

inline std::string pack_point(const Point& pt) {
    std::string key;
    for (const auto& s : pt) {
        key.push_back(static_cast<char>(s.dim()));
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.ambient_dim(); ++j)
                key.push_back(static_cast<char>(s.basis().at(i, j).val()));
    }
    return key;
}

inline Point apply_point(const Mat<Fp>& g, const Point& pt) {
    Point out;
    out.reserve(pt.size());
    Mat<Fp> gt = g.transpose();
    for (const auto& s : pt) out.push_back(Subspace<Fp>::span(s.basis() * gt));
    return out;
}

struct OrbitPartition {
    std::vector<Point> points;                    // sorted by packed key
    std::vector<int> orbit_id;                    // per point
    std::vector<long long> orbit_sizes;
    std::vector<int> orbit_rep;                   // index of lexicographic-min point
    int orbit_count = 0;
};

// Partition `points` into orbits under the listed generator matrices. The
// result is independent of input order: points are sorted by key and BFS is
// seeded in ascending order, so representatives are lexicographic minima.
inline OrbitPartition orbit_partition(std::vector<Point> points, const std::vector<Mat<Fp>>& gens) {
    if (static_cast<long long>(points.size()) > oracle_budget().max_points)
        throw budget_error("orbit_partition: point budget exceeded");
    OrbitPartition part;
    std::vector<std::pair<std::string, size_t>> keyed(points.size());
    for (size_t i = 0; i < points.size(); ++i) keyed[i] = {pack_point(points[i]), i};
    std::sort(keyed.begin(), keyed.end());
    for (size_t i = 1; i < keyed.size(); ++i)
        if (keyed[i].first == keyed[i - 1].first)
            throw precondition_error("orbit_partition: duplicate points");
    part.points.reserve(points.size());
    std::unordered_map<std::string, int> index;
    index.reserve(points.size() * 2);
    for (size_t i = 0; i < keyed.size(); ++i) {
        part.points.push_back(std::move(points[keyed[i].second]));
        index.emplace(std::move(keyed[i].first), static_cast<int>(i));
    }
    part.orbit_id.assign(part.points.size(), -1);
    long long applications = 0;
    for (size_t seed = 0; seed < part.points.size(); ++seed) {
        if (part.orbit_id[seed] >= 0) continue;
        int id = part.orbit_count++;
        long long size = 0;
        std::queue<int> q;
        part.orbit_id[seed] = id;
        part.orbit_rep.push_back(static_cast<int>(seed));
        q.push(static_cast<int>(seed));
        while (!q.empty()) {
            int cur = q.front();
            q.pop();
            ++size;
            for (const auto& g : gens) {
                if (++applications > oracle_budget().max_applications)
                    throw budget_error("orbit_partition: application budget exceeded");
                Point img = apply_point(g, part.points[cur]);
                auto it = index.find(pack_point(img));
                if (it == index.end())
                    throw precondition_error("orbit_partition: generator leaves the point set");
                if (part.orbit_id[it->second] < 0) {
                    part.orbit_id[it->second] = id;
                    q.push(it->second);
                }
            }
        }
        part.orbit_sizes.push_back(size);
    }
    return part;
}

// Single-orbit BFS from a seed point; the universe is discovered on the fly.
inline std::vector<Point> orbit_of(const Point& seed, const std::vector<Mat<Fp>>& gens) {
    std::unordered_set<std::string> visited;
    std::vector<Point> orbit;
    std::queue<Point> q;
    visited.insert(pack_point(seed));
    orbit.push_back(seed);
    q.push(seed);
    long long applications = 0;
    while (!q.empty()) {
        Point cur = std::move(q.front());
        q.pop();
        for (const auto& g : gens) {
            if (++applications > oracle_budget().max_applications)
                throw budget_error("orbit_of: application budget exceeded");
            Point img = apply_point(g, cur);
            std::string key = pack_point(img);
            if (visited.insert(std::move(key)).second) {
                if (static_cast<long long>(orbit.size()) >= oracle_budget().max_points)
                    throw budget_error("orbit_of: point budget exceeded");
                orbit.push_back(img);
                q.push(img);
            }
        }
    }
    return orbit;
}

// Number of isotropic k-subspaces of the split form on GF(p)^(2n+1).
inline BigInt isotropic_subspace_count(int n, int k, long long p) {
    BigInt num(1), den(1), P(p);
    auto pw = [&](int e) {
        BigInt r(1);
        for (int i = 0; i < e; ++i) r = r * P;
        return r;
    };
    for (int i = 0; i < k; ++i) {
        num = num * pw(i) * (pw(2 * (n - i)) - BigInt(1));
        den = den * (pw(k) - pw(i));
    }
    return num / den;
}

// All isotropic k-subspaces, grown from (k-1)-subspaces with deduplication.
inline std::vector<Subspace<Fp>> enumerate_isotropic(int n, int k, long long p) {
    BigInt total = isotropic_subspace_count(n, k, p);
    if (total > BigInt(oracle_budget().max_points))
        throw budget_error("enumerate_isotropic: would produce " + total.str() + " subspaces");
    int N = 2 * n + 1;
    Fp ex(0, p);
    std::vector<Subspace<Fp>> cur{Subspace<Fp>(N, ex)};
    for (int step = 1; step <= k; ++step) {
        std::unordered_set<std::string> seen;
        std::vector<Subspace<Fp>> next;
        BigInt expect = isotropic_subspace_count(n, step, p);
        for (const auto& S : cur) {
            // isotropic vectors in perp(S) outside S extend S
            Subspace<Fp> P = perp(S, n);
            int pd = P.dim();
            std::vector<long long> cs(pd, 0);
            while (true) {
                size_t t = 0;
                while (t < cs.size() && ++cs[t] == p) cs[t++] = 0;
                if (t == cs.size()) break;
                int lead = -1;
                for (int i = pd - 1; i >= 0; --i)
                    if (cs[i] != 0) lead = i;
                if (lead < 0 || cs[lead] != 1) continue;
                std::vector<Fp> v(N, ex.zero());
                for (int i = 0; i < pd; ++i) {
                    if (cs[i] == 0) continue;
                    Fp c(cs[i], p);
                    for (int j = 0; j < N; ++j) v[j] += c * P.basis().at(i, j);
                }
                if (!form_value(v, v, n).is_zero()) continue;
                if (S.contains(v)) continue;
                Mat<Fp> m(S.dim() + 1, N, ex);
                for (int i = 0; i < S.dim(); ++i) m.set_row(i, S.basis_row(i));
                m.set_row(S.dim(), v);
                Subspace<Fp> T = Subspace<Fp>::span(m);
                std::string key = pack_point({T});
                if (seen.insert(std::move(key)).second) next.push_back(std::move(T));
            }
        }
        if (BigInt(static_cast<long long>(next.size())) != expect)
            throw std::logic_error("enumerate_isotropic: count mismatch at step " + std::to_string(step));
        cur = std::move(next);
    }
    return cur;
}

inline std::vector<Subspace<Fp>> enumerate_max_isotropic(int n, long long p) {
    return enumerate_isotropic(n, n, p);
}

// All isotropic flags of the given type (nested tuples).
inline std::vector<Point> enumerate_isotropic_flags(const FlagType& type, int n, long long p) {
    type.validate(n);
    std::vector<Point> cur{{}};
    int d = 0;
    for (int a : type.parts) {
        d += a;
        auto layers = enumerate_isotropic(n, d, p);
        std::vector<Point> next;
        for (const auto& pt : cur)
            for (const auto& S : layers) {
                if (!pt.empty() && !S.contains(pt.back())) continue;
                Point q = pt;
                q.push_back(S);
                next.push_back(std::move(q));
                if (static_cast<long long>(next.size()) > oracle_budget().max_points)
                    throw budget_error("enumerate_isotropic_flags: point budget exceeded");
            }
        cur = std::move(next);
    }
    return cur;
}

// ---- GL-side machinery (appendix verifications) ----

// All k-subspaces of GF(p)^amb as single-member points.
inline std::vector<Point> gl_grassmannian(int amb, int k, long long p) {
    std::vector<Point> pts;
    for (auto& s : enumerate_subspaces(amb, k, p, oracle_budget().max_points)) pts.push_back({std::move(s)});
    return pts;
}

// Full flags (V_1 c ... c V_{amb-1}) of GF(p)^amb.
inline std::vector<Point> gl_full_flags(int amb, long long p) {
    std::vector<Point> cur{{}};
    for (int d = 1; d < amb; ++d) {
        auto layers = enumerate_subspaces(amb, d, p, oracle_budget().max_points);
        std::vector<Point> next;
        for (const auto& pt : cur)
            for (const auto& S : layers) {
                if (!pt.empty() && !S.contains(pt.back())) continue;
                Point q = pt;
                q.push_back(S);
                next.push_back(std::move(q));
                if (static_cast<long long>(next.size()) > oracle_budget().max_points)
                    throw budget_error("gl_full_flags: point budget exceeded");
            }
        cur = std::move(next);
    }
    return cur;
}

// Elementary generators of GL_k(p): transvections E_ij(1) and the torus
// element diag(g, 1, .., 1) with g a primitive root.
inline std::vector<Mat<Fp>> gl_generators(int k, long long p) {
    Fp ex(0, p);
    std::vector<Mat<Fp>> gens;
    if (k == 0) return gens;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            Mat<Fp> m = Mat<Fp>::identity(k, ex);
            m.at(i, j) = ex.one();
            gens.push_back(m);
        }
    Mat<Fp> t = Mat<Fp>::identity(k, ex);
    t.at(0, 0) = Fp(primitive_root(p), p);
    gens.push_back(t);
    return gens;
}

// Group closure of a finite generator list (matrix BFS over packed keys).
inline std::vector<Mat<Fp>> group_closure(const std::vector<Mat<Fp>>& gens, long long max_order) {
    if (gens.empty()) return {};
    int k = gens[0].rows();
    Fp ex = gens[0].exemplar();
    auto key_of = [&](const Mat<Fp>& m) {
        std::string key;
        key.reserve(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) key.push_back(static_cast<char>(m.at(i, j).val()));
        return key;
    };
    std::unordered_set<std::string> seen;
    std::vector<Mat<Fp>> all;
    std::queue<Mat<Fp>> q;
    Mat<Fp> id = Mat<Fp>::identity(k, ex);
    seen.insert(key_of(id));
    all.push_back(id);
    q.push(id);
    while (!q.empty()) {
        Mat<Fp> cur = std::move(q.front());
        q.pop();
        for (const auto& g : gens) {
            Mat<Fp> nxt = g * cur;
            std::string key = key_of(nxt);
            if (seen.insert(std::move(key)).second) {
                if (static_cast<long long>(all.size()) >= max_order)
                    throw budget_error("group_closure: order budget exceeded");
                all.push_back(nxt);
                q.push(nxt);
            }
        }
    }
    return all;
}

} // namespace isoflag
