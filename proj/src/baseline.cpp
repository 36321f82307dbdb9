#include "uecmc/baseline.hpp"

#include <cmath>
#include <stdexcept>

#include "uecmc/combinatorics.hpp"

namespace uecmc {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("normal quantile needs p in (0, 1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                    45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
                 133.14166789178437745) * r + 3.387132872796366608) /
               (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                    21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
                 42.313330701600911252) * r + 1.0);
    }
    double r = q < 0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                     1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                  4.6303378461565452959) * r + 1.42343711074968357734) /
                (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                     0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                  2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                     0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                  5.4637849111641143699) * r + 6.6579046435011037772) /
                (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                     7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                  0.59983220655588793769) * r + 1.0);
    }
    return q < 0 ? -value : value;
}

UndirectedGraph marginal_independence_graph(const DataMatrix& x, const TestConfig& cfg,
                                            std::vector<std::string>* warnings) {
    if (!(cfg.alpha > 0 && cfg.alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const int N = x.N(), n = x.n();
    if (N < 4) throw std::invalid_argument("Fisher z test needs at least 4 samples");
    std::vector<bool> constant(n, false);
    for (int j = 0; j < n; ++j) {
        constant[j] = (x.values.col(j).array() == x.values(0, j)).all();
        if (constant[j] && warnings)
            warnings->push_back("column " + std::to_string(j) + " is constant; treated as independent");
    }
    Eigen::MatrixXd centered = x.values.rowwise() - x.values.colwise().mean();
    Eigen::MatrixXd s = centered.transpose() * centered;
    const double critical = normal_quantile(1.0 - cfg.alpha / 2.0);
    const double scale = std::sqrt(static_cast<double>(N) - 3.0);
    UndirectedGraph g(n);
    for (int i = 0; i < n; ++i) {
        if (constant[i]) continue;
        for (int j = i + 1; j < n; ++j) {
            if (constant[j]) continue;
            double r = s(i, j) / std::sqrt(s(i, i) * s(j, j));
            if (std::fabs(r) >= 1.0) {
                g.add_edge(i, j);
                continue;
            }
            if (std::fabs(std::atanh(r) * scale) > critical) g.add_edge(i, j);
        }
    }
    return g;
}

int uec_violation_count(const UndirectedGraph& g) {
    auto groups = simplicial_groups(g);
    int violations = 0;
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            if (g.has_edge(groups[i].center, groups[j].center)) ++violations;
    for (auto [a, b] : g.edges()) {
        bool covered = false;
        for (const auto& s : groups)
            if ((s.clique & bit(a)) && (s.clique & bit(b))) {
                covered = true;
                break;
            }
        if (!covered) ++violations;
    }
    return violations;
}

UndirectedGraph largest_uec_subgraph_exact(const UndirectedGraph& g) {
    if (is_uec_representative(g)) return g;
    const int n = g.n();
    if (n > kExactSubgraphLimit)
        throw std::invalid_argument("exact subgraph search supports n <= " + std::to_string(kExactSubgraphLimit));
    std::vector<Mask> cliques;
    for (Mask m = 1; m <= full_mask(n); ++m)
        if (g.is_clique(m)) cliques.push_back(m);
    // Every representative subgraph comes from one minimal cover by cliques of g.
    std::vector<Mask> best;
    int best_edges = -1;
    std::vector<Mask> adj(n);
    for_each_minimal_cover(n, cliques, [&](const std::vector<Mask>& sets) {
        std::fill(adj.begin(), adj.end(), 0);
        for (Mask s : sets)
            for (int v : members(s)) adj[v] |= s & ~bit(v);
        int edges = 0;
        for (Mask a : adj) edges += popcount(a);
        edges /= 2;
        if (edges > best_edges) {
            best_edges = edges;
            best = sets;
        }
        return true;
    });
    return graph_from_cover(n, best);
}

UndirectedGraph largest_uec_subgraph_greedy(const UndirectedGraph& g) {
    UndirectedGraph h = g;
    while (uec_violation_count(h) > 0) {
        int best = -1;
        Edge choice{-1, -1};
        for (auto [a, b] : h.edges()) {
            UndirectedGraph trial = h;
            trial.remove_edge(a, b);
            int v = uec_violation_count(trial);
            if (best < 0 || v < best) best = v, choice = {a, b};
        }
        h.remove_edge(choice.first, choice.second);
    }
    return h;
}

UndirectedGraph largest_uec_subgraph(const UndirectedGraph& g) {
    if (g.n() <= kExactSubgraphLimit) return largest_uec_subgraph_exact(g);
    return largest_uec_subgraph_greedy(g);
}

}  // namespace uecmc
