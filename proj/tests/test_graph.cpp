#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "uecmc/graph.hpp"

using namespace uecmc;

namespace {

// 1->3, 1->4, 2->3, 3->4 relabelled to 0-based vertices.
Dag example_dag() { return Dag(4, {{0, 2}, {0, 3}, {1, 2}, {2, 3}}); }

UndirectedGraph k4_minus_01() { return UndirectedGraph(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

CountMatrix matrix(const std::vector<std::vector<std::int64_t>>& rows) { return CountMatrix(rows); }

}  // namespace

TEST(UndirectedGraph, StoresPairsCanonically) {
    UndirectedGraph g(3);
    g.add_edge(2, 0);
    EXPECT_TRUE(g.has_edge(0, 2));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}}));
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
}

TEST(Dag, RejectsCycles) {
    Dag d(3, {{0, 1}, {1, 2}});
    EXPECT_TRUE(d.is_acyclic());
    d.add_edge(2, 0);
    EXPECT_FALSE(d.is_acyclic());
    EXPECT_THROW(d.topological_order(), std::invalid_argument);
    EXPECT_THROW(udg(d), std::invalid_argument);
    EXPECT_THROW(path_count_matrix(d), std::invalid_argument);
}

TEST(Dag, AncestorsAndSources) {
    Dag d = example_dag();
    EXPECT_EQ(d.ancestors(3), full_mask(4));
    EXPECT_EQ(d.sources(), bit(0) | bit(1));
    EXPECT_EQ(d.max_ancestors(3), bit(0) | bit(1));
    EXPECT_EQ(d.max_ancestors(0), bit(0));
}

TEST(Udg, ExampleDagMissesOnlyEdge01) {
    for (auto m : {UdgMethod::ancestors, UdgMethod::max_ancestors, UdgMethod::moral_trans_rev, UdgMethod::matrix})
        EXPECT_EQ(udg(example_dag(), m), k4_minus_01());
}

TEST(Udg, EdgelessDagGivesEdgelessGraph) {
    for (int n = 1; n <= 6; ++n)
        for (auto m : {UdgMethod::ancestors, UdgMethod::max_ancestors, UdgMethod::moral_trans_rev, UdgMethod::matrix})
            EXPECT_EQ(udg(Dag(n), m).edge_count(), 0);
}

TEST(PathCounts, ExampleMatrices) {
    EXPECT_EQ(path_count_matrix(example_dag()), matrix({{1, 0, 1, 2}, {0, 1, 1, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}}));
    EXPECT_EQ(colliderless_walk_counts(example_dag()),
              matrix({{1, 0, 1, 2}, {0, 1, 1, 1}, {1, 1, 3, 4}, {2, 1, 4, 7}}));
}

TEST(PathCounts, EdgelessIsIdentityAndChainHasOnePath) {
    EXPECT_EQ(path_count_matrix(Dag(3)), matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(colliderless_walk_counts(Dag(3)), matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(path_count_matrix(Dag(3, {{0, 1}, {1, 2}})).at(0, 2), 1);
}

TEST(PathCounts, MatchBruteForceEnumeration) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 5;
        Dag d = oracle::random_dag(n, 0.5, rng);
        auto t = path_count_matrix(d);
        auto u = colliderless_walk_counts(d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                EXPECT_EQ(t.at(i, j), oracle::count_paths(d, i, j));
                EXPECT_EQ(u.at(i, j), oracle::count_colliderless_walks(d, i, j));
            }
    }
}

TEST(PathCounts, UnitUpperTriangularInTopologicalOrder) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        Dag d = oracle::random_dag(6, 0.6, rng);
        auto order = d.topological_order();
        auto t = path_count_matrix(d);
        for (int a = 0; a < 6; ++a) {
            EXPECT_EQ(t.at(order[a], order[a]), 1);
            for (int b = 0; b < a; ++b) EXPECT_EQ(t.at(order[a], order[b]), 0);
        }
    }
}

TEST(PathCounts, OverflowIsAnError) {
    // The complete DAG on 64 vertices has 2^62 paths from 0 to 63, which fits,
    // but the squared counts of T^T T do not.
    Dag dense(64);
    for (int a = 0; a < 64; ++a)
        for (int b = a + 1; b < 64; ++b) dense.add_edge(a, b);
    auto t = path_count_matrix(dense);
    EXPECT_EQ(t.at(0, 63), std::int64_t{1} << 62);
    EXPECT_THROW(colliderless_walk_counts(dense), std::overflow_error);
}

TEST(PathCounts, ColliderlessCountsAreInjectiveOnUpperTriangularDags) {
    for (int n = 1; n <= 4; ++n) {
        const int pairs = n * (n - 1) / 2;
        std::set<std::vector<std::int64_t>> seen;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            Dag d(n);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++k)
                    if (mask >> k & 1) d.add_edge(i, j);
            auto u = colliderless_walk_counts(d);
            std::vector<std::int64_t> flat;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) flat.push_back(u.at(i, j));
            EXPECT_TRUE(seen.insert(flat).second);
        }
    }
}

TEST(DagOperators, FigureTwoConstruction) {
    // r, then t, then m of the example DAG.
    Dag d = example_dag();
    UndirectedGraph u3 = moralization(transitive_closure(reversal(d)));
    EXPECT_EQ(u3, k4_minus_01());
    auto ops = dag_operators(d);
    EXPECT_EQ(ops.reversal.edges(), reversal(d).edges());
    EXPECT_TRUE(ops.transitive_closure.has_edge(1, 3));
}

TEST(DagOperators, TrivialCases) {
    EXPECT_EQ(transitive_closure(Dag(4)).edge_count(), 0);
    UndirectedGraph triangle(3, {{0, 1}, {0, 2}, {1, 2}});
    EXPECT_EQ(moralization(Dag(3, {{0, 2}, {1, 2}})), triangle);
}

TEST(Udg, FourMethodsAgreeWithTrekOracle) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        Dag d = oracle::random_dag(size(rng), density(rng), rng);
        UndirectedGraph expected = oracle::udg(d);
        for (auto m : {UdgMethod::ancestors, UdgMethod::max_ancestors, UdgMethod::moral_trans_rev, UdgMethod::matrix})
            EXPECT_EQ(udg(d, m), expected);
    }
}

TEST(Cpdag, ChainComponentsPartitionVertices) {
    Cpdag c(5);
    c.add_undirected(0, 1);
    c.add_undirected(1, 2);
    c.add_directed(2, 3);
    auto comps = c.chain_components();
    EXPECT_EQ(comps, (std::vector<Mask>{bit(0) | bit(1) | bit(2), bit(3), bit(4)}));
    c.add_directed(1, 0);
    EXPECT_FALSE(c.has_undirected(0, 1));
    EXPECT_TRUE(c.has_directed(1, 0));
    EXPECT_THROW(c.add_directed(2, 2), std::invalid_argument);
}
