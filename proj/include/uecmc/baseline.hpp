#ifndef UECMC_BASELINE_HPP
#define UECMC_BASELINE_HPP

#include <string>
#include <vector>

#include "uecmc/graph.hpp"
#include "uecmc/inference.hpp"

namespace uecmc {

struct TestConfig {
    double alpha = 0.05;
};

double normal_cdf(double x);
/// Inverse standard normal distribution function (Wichura, AS 241).
double normal_quantile(double p);

/// Edge {i, j} iff the Fisher z test rejects zero correlation at level alpha.
/// Constant columns get no edges and add a message to warnings.
UndirectedGraph marginal_independence_graph(const DataMatrix& x, const TestConfig& cfg,
                                            std::vector<std::string>* warnings = nullptr);

inline constexpr int kExactSubgraphLimit = 8;

/// Edges not covered by the cliques of simplicial vertices; zero exactly for
/// UEC-representatives.
int uec_violation_count(const UndirectedGraph& g);

UndirectedGraph largest_uec_subgraph_exact(const UndirectedGraph& g);
UndirectedGraph largest_uec_subgraph_greedy(const UndirectedGraph& g);
/// Exact for n <= kExactSubgraphLimit, greedy above.
UndirectedGraph largest_uec_subgraph(const UndirectedGraph& g);

}  // namespace uecmc

#endif  // UECMC_BASELINE_HPP
