#pragma once

// Brute-force ground truth for small labelled graphs (n <= 8): planarity via
// Wagner's characterization (no K5 and no K33 minor), connectivity and
// biconnectivity by exhaustive vertex deletion, and full enumeration of all
// 2^C(n,2) edge subsets for n <= 7. Written for auditability, not speed;
// memoization on canonical codes keeps the enumeration tractable.

#include "planarcount/counts.hpp"
#include "planarcount/parallel.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace planarcount::oracle {

// Edge (i,j), i < j, sits at bit j(j-1)/2 + i: pairs ordered
// (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),... by larger endpoint.
inline int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

struct GraphCode {
    int n = 0;
    std::uint64_t mask = 0;

    bool has_edge(int i, int j) const { return (mask >> pair_index(i, j)) & 1; }
    int edge_count() const { return __builtin_popcountll(mask); }

    static GraphCode from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
        GraphCode g{n, 0};
        for (auto [i, j] : edges) g.mask |= std::uint64_t(1) << pair_index(i, j);
        return g;
    }
    static GraphCode complete(int n) {
        GraphCode g{n, 0};
        g.mask = (std::uint64_t(1) << (n * (n - 1) / 2)) - 1;
        return g;
    }
};

namespace detail {

using Rows = std::array<std::uint8_t, 8>;  // adjacency bitmasks per vertex

inline Rows rows_of(int n, std::uint64_t mask) {
    Rows r{};
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((mask >> pair_index(i, j)) & 1) {
                r[i] |= std::uint8_t(1) << j;
                r[j] |= std::uint8_t(1) << i;
            }
    return r;
}

inline std::uint64_t mask_of(const Rows& r, int n) {
    std::uint64_t m = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((r[i] >> j) & 1) m |= std::uint64_t(1) << pair_index(i, j);
    return m;
}

inline int edge_count(const Rows& r, int n) {
    int s = 0;
    for (int v = 0; v < n; ++v) s += __builtin_popcount(r[v]);
    return s / 2;
}

// Connectivity of the vertex subset `keep` (bitmask), ignoring the rest.
inline bool connected_within(const Rows& r, std::uint8_t keep) {
    if (!keep) return false;
    std::uint8_t start = keep & (~keep + 1);
    std::uint8_t seen = start, frontier = start;
    while (frontier) {
        std::uint8_t next = 0;
        while (frontier) {
            int v = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            next |= r[v] & keep;
        }
        next &= ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == keep;
}

inline int component_count(const Rows& r, int n) {
    std::uint8_t all = std::uint8_t((1u << n) - 1), seen = 0;
    int comps = 0;
    while (seen != all) {
        std::uint8_t rest = all & ~seen;
        std::uint8_t start = rest & (~rest + 1);
        std::uint8_t frontier = start, comp = start;
        while (frontier) {
            std::uint8_t next = 0;
            while (frontier) {
                int v = __builtin_ctz(frontier);
                frontier &= frontier - 1;
                next |= r[v];
            }
            next &= all & ~comp;
            comp |= next;
            frontier = next;
        }
        seen |= comp;
        ++comps;
    }
    return comps;
}

// Contract edge (i,j) into vertex i, drop j, relabel j+1..n-1 down by one.
inline Rows contract(const Rows& r, int n, int i, int j) {
    Rows m = r;
    m[i] |= m[j];
    for (int v = 0; v < n; ++v)
        if ((m[v] >> j) & 1) m[v] |= std::uint8_t(1) << i;
    m[i] &= ~(std::uint8_t(1) << i);
    Rows out{};
    auto newid = [j](int v) { return v < j ? v : v - 1; };
    for (int v = 0; v < n; ++v) {
        if (v == j) continue;
        std::uint8_t row = 0;
        std::uint8_t adj = m[v] & ~(std::uint8_t(1) << j);
        while (adj) {
            int u = __builtin_ctz(adj);
            adj &= adj - 1;
            row |= std::uint8_t(1) << newid(u);
        }
        out[newid(v)] = row;
    }
    return out;
}

// Canonical code: minimum edge mask over vertex relabelings. Permutations are
// restricted to classes of an invariant (degree, sorted neighbour degrees),
// which prunes the n! search except on highly regular graphs.
inline std::uint64_t canonical_mask(const Rows& r, int n) {
    std::array<std::uint32_t, 8> inv{};
    for (int v = 0; v < n; ++v) {
        std::array<int, 8> nd{};
        int cnt = 0;
        std::uint8_t adj = r[v];
        while (adj) {
            int u = __builtin_ctz(adj);
            adj &= adj - 1;
            nd[cnt++] = __builtin_popcount(r[u]);
        }
        std::sort(nd.begin(), nd.begin() + cnt);
        std::uint32_t key = std::uint32_t(cnt) << 24;
        for (int t = 0; t < cnt; ++t) key |= std::uint32_t(nd[t]) << (3 * t);
        inv[v] = key;
    }
    std::array<int, 8> verts{};
    for (int v = 0; v < n; ++v) verts[v] = v;
    std::sort(verts.begin(), verts.begin() + n,
              [&](int a, int b) { return inv[a] > inv[b] || (inv[a] == inv[b] && a < b); });

    // class boundaries in the sorted order
    std::array<int, 9> bounds{};
    int nb = 0;
    bounds[nb++] = 0;
    for (int t = 1; t < n; ++t)
        if (inv[verts[t]] != inv[verts[t - 1]]) bounds[nb++] = t;
    bounds[nb] = n;

    std::array<int, 8> pos{};  // pos[v] = slot of vertex v
    std::uint64_t best = ~std::uint64_t(0);
    auto eval = [&]() {
        std::uint64_t m = 0;
        for (int j = 1; j < n; ++j) {
            int v = verts[j];
            std::uint8_t adj = r[v];
            while (adj) {
                int u = __builtin_ctz(adj);
                adj &= adj - 1;
                if (pos[u] < j) m |= std::uint64_t(1) << pair_index(pos[u], j);
            }
        }
        if (m < best) best = m;
    };
    // odometer over per-class permutations of the slot assignment
    auto rec = [&](auto&& self, int ci) -> void {
        if (ci == nb) {
            for (int t = 0; t < n; ++t) pos[verts[t]] = t;
            eval();
            return;
        }
        int lo = bounds[ci], hi = bounds[ci + 1];
        std::sort(verts.begin() + lo, verts.begin() + hi);
        do {
            self(self, ci + 1);
        } while (std::next_permutation(verts.begin() + lo, verts.begin() + hi));
    };
    rec(rec, 0);
    return best;
}

inline std::uint64_t memo_key(int n, std::uint64_t canon) {
    return (std::uint64_t(n) << 32) | canon;
}

// H = K5 or K33 as a subgraph?
inline bool has_k5_subgraph(const Rows& r, int n) {
    if (n < 5) return false;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!((r[a] >> b) & 1)) continue;
            for (int c = b + 1; c < n; ++c) {
                std::uint8_t abc = r[a] & r[b];
                if (!((abc >> c) & 1)) continue;
                std::uint8_t common = abc & r[c];
                common &= std::uint8_t(~0u << (c + 1));
                while (common) {
                    int d = __builtin_ctz(common);
                    common &= common - 1;
                    std::uint8_t last = r[a] & r[b] & r[c] & r[d] & std::uint8_t(~0u << (d + 1));
                    if (last) return true;
                }
            }
        }
    return false;
}

inline bool has_k33_subgraph(const Rows& r, int n) {
    if (n < 6) return false;
    // choose side A = {a,b,c}; K33 present iff their common "other side"
    // candidates contain 3 vertices each adjacent to all of A
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                std::uint8_t common =
                    r[a] & r[b] & r[c] &
                    std::uint8_t(~((1u << a) | (1u << b) | (1u << c)));
                if (__builtin_popcount(common) >= 3) return true;
            }
    return false;
}

// Minor search: G >= H iff H is a subgraph of G or some single-edge
// contraction has H as a minor (a model with a non-singleton branch set has
// an internal edge to contract; an all-singleton model is a subgraph).
template <bool K5>
inline bool has_minor(const Rows& r, int n) {
    constexpr int hn = K5 ? 5 : 6;
    constexpr int hm = K5 ? 10 : 9;
    if (n < hn || edge_count(r, n) < hm) return false;
    if (K5 ? has_k5_subgraph(r, n) : has_k33_subgraph(r, n)) return true;

    static thread_local std::unordered_map<std::uint64_t, bool> memo;
    std::uint64_t key = memo_key(n, canonical_mask(r, n)) | (std::uint64_t(K5) << 40);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    bool found = false;
    for (int j = 1; j < n && !found; ++j)
        for (int i = 0; i < j && !found; ++i)
            if ((r[i] >> j) & 1) found = has_minor<K5>(contract(r, n, i, j), n - 1);
    memo.emplace(key, found);
    return found;
}

} // namespace detail

inline bool is_planar(const GraphCode& g) {
    if (g.n > 8) throw std::domain_error("is_planar: n > 8 unsupported");
    if (g.n <= 4) return true;
    int m = g.edge_count();
    if (g.n >= 3 && m > 3 * g.n - 6) return false;
    detail::Rows r = detail::rows_of(g.n, g.mask);
    static thread_local std::unordered_map<std::uint64_t, bool> memo;
    std::uint64_t key = detail::memo_key(g.n, detail::canonical_mask(r, g.n));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool planar = !detail::has_minor<true>(r, g.n) && !detail::has_minor<false>(r, g.n);
    memo.emplace(key, planar);
    return planar;
}

inline bool has_k5_minor(const GraphCode& g) {
    return detail::has_minor<true>(detail::rows_of(g.n, g.mask), g.n);
}
inline bool has_k33_minor(const GraphCode& g) {
    return detail::has_minor<false>(detail::rows_of(g.n, g.mask), g.n);
}

inline int component_count(const GraphCode& g) {
    if (g.n == 0) return 0;
    detail::Rows r = detail::rows_of(g.n, g.mask);
    return detail::component_count(r, g.n);
}

inline bool is_connected(const GraphCode& g) { return g.n >= 1 && component_count(g) == 1; }

// 2-connected in the block sense: connected, n >= 2, no cutvertex; a single
// edge counts.
inline bool is_biconnected(const GraphCode& g) {
    if (g.n < 2 || !is_connected(g)) return false;
    if (g.n == 2) return true;
    detail::Rows r = detail::rows_of(g.n, g.mask);
    std::uint8_t all = std::uint8_t((1u << g.n) - 1);
    for (int v = 0; v < g.n; ++v)
        if (!detail::connected_within(r, all & ~(std::uint8_t(1) << v))) return false;
    return true;
}

struct OracleTables {
    CountTable g, c, b;
};

// Exhaustive tables over all labelled graphs on 0..nmax vertices.
inline OracleTables enumerate_counts(int nmax, unsigned threads = thread_budget()) {
    if (nmax > 7) throw std::domain_error("enumerate_counts: nmax > 7 unsupported");
    OracleTables t{CountTable("g", nmax), CountTable("c", nmax), CountTable("b", nmax)};
    for (int n = 0; n <= nmax; ++n) {
        int e = n * (n - 1) / 2;
        std::uint64_t total = std::uint64_t(1) << e;
        unsigned workers = std::min<std::uint64_t>(total >= 4096 ? threads : 1, 64);
        workers = std::max(1u, workers);
        std::vector<std::vector<std::array<std::uint64_t, 3>>> acc(
            workers, std::vector<std::array<std::uint64_t, 3>>(e + 1, {0, 0, 0}));
        long chunk = ((long)total + workers - 1) / workers;  // same split as parallel_ranges
        parallel_ranges(
            (long)total,
            [&](long lo, long hi) {
                auto& a = acc[std::min<size_t>(acc.size() - 1, lo / chunk)];
                for (long maskl = lo; maskl < hi; ++maskl) {
                    GraphCode gc{n, (std::uint64_t)maskl};
                    if (!is_planar(gc)) continue;
                    int q = gc.edge_count();
                    a[q][0] += 1;
                    if (is_connected(gc)) a[q][1] += 1;
                    if (is_biconnected(gc)) a[q][2] += 1;
                }
            },
            workers);
        for (auto& a : acc)
            for (int q = 0; q <= e; ++q) {
                t.g.v[n][q] += Int(a[q][0]);
                t.c.v[n][q] += Int(a[q][1]);
                t.b.v[n][q] += Int(a[q][2]);
            }
    }
    return t;
}

} // namespace planarcount::oracle
