// Brute-force ground truth: minor-based planarity on tiny graphs plus
// exhaustive labelled count tables.

#include "planarcount/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

using namespace planarcount;
using oracle::GraphCode;

namespace {

GraphCode k33() {
    return GraphCode::from_edges(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                     {2, 3}, {2, 4}, {2, 5}});
}

GraphCode cycle(int n) {
    GraphCode g{n, 0};
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        g.mask |= std::uint64_t(1) << oracle::pair_index(std::min(i, j), std::max(i, j));
    }
    return g;
}

} // namespace

TEST_CASE("planarity on named graphs") {
    REQUIRE(oracle::is_planar(GraphCode::complete(4)));
    REQUIRE_FALSE(oracle::is_planar(GraphCode::complete(5)));
    REQUIRE_FALSE(oracle::is_planar(GraphCode::complete(6)));
    REQUIRE_FALSE(oracle::is_planar(k33()));
    REQUIRE(oracle::is_planar(cycle(7)));

    SECTION("K5 or K33 minus any edge is planar") {
        GraphCode k5 = GraphCode::complete(5);
        for (int b = 0; b < 10; ++b) {
            GraphCode g{5, k5.mask & ~(std::uint64_t(1) << b)};
            REQUIRE(oracle::is_planar(g));
        }
        GraphCode g33 = k33();
        for (int b = 0; b < 15; ++b) {
            if (!((g33.mask >> b) & 1)) continue;
            GraphCode g{6, g33.mask & ~(std::uint64_t(1) << b)};
            REQUIRE(oracle::is_planar(g));
        }
    }
    SECTION("octahedron K_{2,2,2} is planar, at the Euler bound m = 3n-6") {
        GraphCode oct = GraphCode::complete(6);
        for (auto [i, j] : {std::pair{0, 1}, std::pair{2, 3}, std::pair{4, 5}})
            oct.mask &= ~(std::uint64_t(1) << oracle::pair_index(i, j));
        REQUIRE(oct.edge_count() == 12);
        REQUIRE(oracle::is_planar(oct));
        REQUIRE_FALSE(oracle::has_k5_minor(oct));
        REQUIRE_FALSE(oracle::has_k33_minor(oct));
    }
    SECTION("subdivided K5 needs the contraction branch of the minor test") {
        // K5 with edge (3,4) subdivided through vertex 5: no K5 subgraph,
        // but contracting (3,5) recovers K5.
        GraphCode g = GraphCode::complete(5);
        g.n = 6;
        g.mask &= ~(std::uint64_t(1) << oracle::pair_index(3, 4));
        g.mask |= std::uint64_t(1) << oracle::pair_index(3, 5);
        g.mask |= std::uint64_t(1) << oracle::pair_index(4, 5);
        REQUIRE(oracle::has_k5_minor(g));
        REQUIRE_FALSE(oracle::is_planar(g));
    }
    SECTION("subdivided K33 likewise") {
        GraphCode g = k33();
        g.n = 7;
        g.mask &= ~(std::uint64_t(1) << oracle::pair_index(0, 3));
        g.mask |= std::uint64_t(1) << oracle::pair_index(0, 6);
        g.mask |= std::uint64_t(1) << oracle::pair_index(3, 6);
        REQUIRE(oracle::has_k33_minor(g));
        REQUIRE_FALSE(oracle::is_planar(g));
    }
    SECTION("n beyond the oracle range is rejected") {
        REQUIRE_THROWS_AS(oracle::is_planar(GraphCode{9, 0}), std::domain_error);
    }
}

TEST_CASE("planarity is monotone under edge deletion") {
    // Every subgraph of a planar graph is planar; check over all n=6 graphs
    // on a deterministic sample of masks.
    for (std::uint64_t seed = 1; seed < (1u << 15); seed += 97) {
        GraphCode g{6, seed};
        if (!oracle::is_planar(g)) continue;
        for (int b = 0; b < 15; ++b) {
            if (!((g.mask >> b) & 1)) continue;
            REQUIRE(oracle::is_planar(GraphCode{6, g.mask & ~(std::uint64_t(1) << b)}));
        }
    }
}

TEST_CASE("connectivity and biconnectivity") {
    REQUIRE(oracle::component_count(GraphCode{4, 0}) == 4);
    REQUIRE(oracle::component_count(GraphCode::from_edges(4, {{0, 1}, {2, 3}})) == 2);
    REQUIRE(oracle::is_connected(GraphCode::from_edges(3, {{0, 1}, {1, 2}})));
    REQUIRE_FALSE(oracle::is_connected(GraphCode{2, 0}));

    REQUIRE(oracle::is_biconnected(GraphCode::from_edges(2, {{0, 1}})));  // single edge
    REQUIRE(oracle::is_biconnected(cycle(5)));
    REQUIRE_FALSE(oracle::is_biconnected(GraphCode::from_edges(3, {{0, 1}, {1, 2}})));  // path
    REQUIRE_FALSE(oracle::is_biconnected(GraphCode{1, 0}));
    REQUIRE_FALSE(oracle::is_biconnected(GraphCode::from_edges(5, {{0, 1}, {1, 2}, {2, 0},
                                                                   {2, 3}, {3, 4}, {4, 2}})));
}

TEST_CASE("canonical codes are relabeling invariants") {
    // Apply an explicit permutation and compare canonical forms.
    const int n = 6;
    const int perm[n] = {3, 0, 5, 1, 4, 2};
    for (std::uint64_t seed = 5; seed < (1u << 15); seed += 211) {
        GraphCode g{n, seed};
        GraphCode h{n, 0};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (g.has_edge(i, j)) {
                    int a = perm[i], b = perm[j];
                    h.mask |= std::uint64_t(1) << oracle::pair_index(std::min(a, b), std::max(a, b));
                }
        REQUIRE(oracle::detail::canonical_mask(oracle::detail::rows_of(n, g.mask), n) ==
                oracle::detail::canonical_mask(oracle::detail::rows_of(n, h.mask), n));
    }
}

TEST_CASE("exhaustive labelled tables up to n = 6") {
    oracle::OracleTables t = oracle::enumerate_counts(6);

    // All planar / connected planar / biconnected planar totals.
    const long g_tot[] = {1, 1, 2, 8, 64, 1023, 32071};
    const long c_tot[] = {0, 1, 1, 4, 38, 727, 26013};
    const long b_tot5[] = {0, 0, 1, 1, 10, 237};
    for (int n = 0; n <= 6; ++n) REQUIRE(t.g.total(n) == g_tot[n]);
    for (int n = 0; n <= 6; ++n) REQUIRE(t.c.total(n) == c_tot[n]);
    for (int n = 0; n <= 5; ++n) REQUIRE(t.b.total(n) == b_tot5[n]);

    SECTION("bivariate slices") {
        // n = 4: every graph is planar, so counts are binomials.
        const long binom6[] = {1, 6, 15, 20, 15, 6, 1};
        for (int q = 0; q <= 6; ++q) REQUIRE(t.g.v[4][q] == binom6[q]);
        // n = 5: only K5 is nonplanar.
        REQUIRE(t.g.v[5][10] == 0);
        REQUIRE(t.g.v[5][9] == 10);
        // 2-connected planar on 4 vertices: 3 cycles, 6 diamonds, 1 K4.
        REQUIRE(t.b.v[4][4] == 3);
        REQUIRE(t.b.v[4][5] == 6);
        REQUIRE(t.b.v[4][6] == 1);
    }
    SECTION("thread split does not change results") {
        oracle::OracleTables t1 = oracle::enumerate_counts(5, 1);
        oracle::OracleTables t4 = oracle::enumerate_counts(5, 4);
        REQUIRE(t1.g == t4.g);
        REQUIRE(t1.c == t4.c);
        REQUIRE(t1.b == t4.b);
        REQUIRE(t1.g == oracle::enumerate_counts(5).g);
    }
    SECTION("rejects n beyond the mask width") {
        REQUIRE_THROWS_AS(oracle::enumerate_counts(8), std::domain_error);
    }
}
