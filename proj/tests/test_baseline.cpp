#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "uecmc/baseline.hpp"
#include "uecmc/synth.hpp"

using namespace uecmc;

namespace {

DataMatrix gaussian_data(int N, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd v(N, n);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < n; ++j) v(i, j) = z(rng);
    return DataMatrix(v);
}

// Largest edge count over representative edge subsets, by enumeration.
int max_representative_subgraph(const UndirectedGraph& g) {
    auto edges = g.edges();
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << edges.size()); ++s) {
        if (std::popcount(s) <= best) continue;
        UndirectedGraph h(g.n());
        for (std::size_t k = 0; k < edges.size(); ++k)
            if (s >> k & 1) h.add_edge(edges[k].first, edges[k].second);
        if (oracle::is_uec_representative(h)) best = std::popcount(s);
    }
    return best;
}

bool is_subgraph(const UndirectedGraph& h, const UndirectedGraph& g) {
    for (auto [a, b] : h.edges())
        if (!g.has_edge(a, b)) return false;
    return h.n() == g.n();
}

}  // namespace

TEST(NormalQuantile, MatchesReferenceValues) {
    // Reference values from scipy.stats.norm.ppf.
    const std::vector<std::pair<double, double>> ref = {
        {1e-10, -6.361340902404056}, {1e-06, -4.753424308822899}, {0.001, -3.090232306167813},
        {0.025, -1.9599639845400545}, {0.05, -1.6448536269514729}, {0.3, -0.5244005127080409},
        {0.5, 0.0}, {0.7, 0.5244005127080407}, {0.975, 1.959963984540054}, {0.999999, 4.753424308817087}};
    for (auto [p, z] : ref) EXPECT_NEAR(normal_quantile(p), z, 1e-8) << p;
    EXPECT_THROW(normal_quantile(0.0), std::invalid_argument);
    EXPECT_THROW(normal_quantile(1.0), std::invalid_argument);
}

TEST(NormalQuantile, InvertsTheCdf) {
    for (double p = 0.001; p < 1; p += 0.0137) EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12);
}

TEST(IndependenceGraph, DuplicateColumnGivesEdge) {
    std::mt19937_64 rng(1);
    auto x = gaussian_data(50, 3, rng);
    x.values.col(2) = x.values.col(0);
    auto g = marginal_independence_graph(x, {});
    EXPECT_TRUE(g.has_edge(0, 2));
}

TEST(IndependenceGraph, ConstantColumnWarnsAndHasNoEdges) {
    std::mt19937_64 rng(2);
    auto x = gaussian_data(50, 3, rng);
    x.values.col(1).setConstant(4.0);
    x.values.col(2) = x.values.col(0);
    std::vector<std::string> warnings;
    auto g = marginal_independence_graph(x, {}, &warnings);
    EXPECT_EQ(g.neighbors(1), 0u);
    EXPECT_TRUE(g.has_edge(0, 2));
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("1"), std::string::npos);
}

TEST(IndependenceGraph, ArgumentsAreChecked) {
    std::mt19937_64 rng(3);
    auto x = gaussian_data(3, 2, rng);
    EXPECT_THROW(marginal_independence_graph(x, {}), std::invalid_argument);
    auto y = gaussian_data(20, 2, rng);
    EXPECT_THROW(marginal_independence_graph(y, {0.0}), std::invalid_argument);
    EXPECT_THROW(marginal_independence_graph(y, {1.0}), std::invalid_argument);
}

TEST(IndependenceGraph, IndependentColumnsRejectAtNominalRate) {
    int absent = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        auto g = marginal_independence_graph(gaussian_data(10000, 2, rng), {0.05});
        absent += !g.has_edge(0, 1);
    }
    EXPECT_NEAR(absent / 200.0, 0.95, 0.04);
}

TEST(IndependenceGraph, RecoversThreeNodeModel) {
    LinearGaussianModel m{Dag(3, {{0, 2}}), {}};
    m.weights[{0, 2}] = -0.9247;
    int found = 0, absent01 = 0, absent12 = 0;
    const int seeds = 400;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(seed);
        auto g = marginal_independence_graph(sample(m, 1000, rng), {});
        found += g.has_edge(0, 2);
        absent01 += !g.has_edge(0, 1);
        absent12 += !g.has_edge(1, 2);
    }
    EXPECT_GE(found, 0.95 * seeds);
    // Each null pair is rejected at the nominal level.
    EXPECT_NEAR(absent01 / double(seeds), 0.95, 0.04);
    EXPECT_NEAR(absent12 / double(seeds), 0.95, 0.04);
}

TEST(IndependenceGraph, InvariantUnderAffineRescaling) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto model = random_weights(random_dag(5, 0.4, rng), rng);
        auto x = sample(model, 60, rng);
        auto y = x;
        for (int j = 0; j < 5; ++j) y.values.col(j) = y.values.col(j) * (j % 2 ? -3.5 : 0.01) + Eigen::VectorXd::Constant(60, 7.0 * j);
        EXPECT_EQ(marginal_independence_graph(x, {}), marginal_independence_graph(y, {}));
    }
}

TEST(LargestSubgraph, TwoTrianglesDropTheBridge) {
    UndirectedGraph g(6, {{2, 3}, {0, 1}, {0, 2}, {1, 2}, {3, 5}, {4, 5}, {3, 4}});
    EXPECT_EQ(max_representative_subgraph(g), 6);
    auto h = largest_uec_subgraph(g);
    EXPECT_EQ(h.edge_count(), 6);
    EXPECT_FALSE(h.has_edge(2, 3));
    EXPECT_TRUE(is_uec_representative(h));
    EXPECT_TRUE(is_subgraph(h, g));
}

TEST(LargestSubgraph, TrivialInputs) {
    EXPECT_EQ(largest_uec_subgraph(UndirectedGraph(5)), UndirectedGraph(5));
    UndirectedGraph rep(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_EQ(largest_uec_subgraph(rep), rep);
    EXPECT_EQ(largest_uec_subgraph_greedy(rep), rep);
}

TEST(LargestSubgraph, ExactMatchesEnumerationOnSmallGraphs) {
    for (int n = 2; n <= 4; ++n)
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (n * (n - 1) / 2)); ++idx) {
            auto g = oracle::graph_from_index(n, idx);
            auto h = largest_uec_subgraph_exact(g);
            EXPECT_TRUE(is_subgraph(h, g));
            EXPECT_EQ(h.edge_count(), max_representative_subgraph(g)) << uec_id(g);
        }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::graph_from_index(5, rng() & 1023);
        EXPECT_EQ(largest_uec_subgraph_exact(g).edge_count(), max_representative_subgraph(g)) << uec_id(g);
    }
}

TEST(LargestSubgraph, ExactDominatesGreedy) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 3 + trial % 4;
        auto g = oracle::graph_from_index(n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
        auto exact = largest_uec_subgraph_exact(g);
        auto greedy = largest_uec_subgraph_greedy(g);
        EXPECT_TRUE(is_uec_representative(exact));
        EXPECT_TRUE(is_uec_representative(greedy));
        EXPECT_TRUE(is_subgraph(greedy, g));
        EXPECT_GE(exact.edge_count(), greedy.edge_count());
    }
}

TEST(LargestSubgraph, GreedyHandlesLargerGraphs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        UndirectedGraph g(12);
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                if (rng() % 3 == 0) g.add_edge(a, b);
        auto h = largest_uec_subgraph(g);
        EXPECT_TRUE(is_uec_representative(h));
        EXPECT_TRUE(is_subgraph(h, g));
    }
}

TEST(Violations, ZeroExactlyForRepresentatives) {
    for (int n = 1; n <= 5; ++n)
        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (n * (n - 1) / 2)); ++idx) {
            auto g = oracle::graph_from_index(n, idx);
            EXPECT_EQ(uec_violation_count(g) == 0, oracle::is_uec_representative(g)) << uec_id(g);
        }
}
