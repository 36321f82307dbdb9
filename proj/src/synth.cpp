#include "uecmc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uecmc {

Eigen::MatrixXd LinearGaussianModel::weight_matrix() const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dag.n(), dag.n());
    for (const auto& [e, value] : weights) w(e.first, e.second) = value;
    return w;
}

Dag random_dag(int n, double p, std::mt19937_64& rng) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("edge probability must lie in [0, 1]");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Dag dag(n);
    std::bernoulli_distribution keep(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (keep(rng)) dag.add_edge(order[i], order[j]);
    return dag;
}

LinearGaussianModel random_weights(const Dag& dag, std::mt19937_64& rng, double min_abs) {
    if (!(min_abs >= 0 && min_abs < 1)) throw std::invalid_argument("weight rejection zone must lie in [0, 1)");
    LinearGaussianModel model{dag, {}};
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (const auto& e : dag.edges()) {
        double w;
        do {
            w = unif(rng);
        } while (std::fabs(w) < min_abs || w == 0.0);
        model.weights[e] = w;
    }
    return model;
}

DataMatrix sample(const LinearGaussianModel& model, int N, std::mt19937_64& rng) {
    if (N < 1) throw std::invalid_argument("sample size must be positive");
    const int n = model.dag.n();
    const auto order = model.dag.topological_order();
    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::MatrixXd x(N, n);
    for (int r = 0; r < N; ++r) {
        for (int j = 0; j < n; ++j) x(r, j) = noise(rng);
        for (int j : order)
            for (int i : members(model.dag.parents(j))) x(r, j) += model.weights.at({i, j}) * x(r, i);
    }
    return DataMatrix(std::move(x));
}

Eigen::MatrixXd implied_covariance(const LinearGaussianModel& model) {
    const int n = model.dag.n();
    const auto order = model.dag.topological_order();
    // l(i, j): total effect of noise i on variable j.
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int j : order) {
        l(j, j) = 1.0;
        for (int k : members(model.dag.parents(j))) {
            const double w = model.weights.at({k, j});
            for (int i = 0; i < n; ++i)
                if (l(i, k) != 0.0) l(i, j) += l(i, k) * w;
        }
    }
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double s = 0;
            for (int i = 0; i < n; ++i)
                if (l(i, a) != 0.0 && l(i, b) != 0.0) s += l(i, a) * l(i, b);
            sigma(a, b) = s;
        }
    return sigma;
}

}  // namespace uecmc
