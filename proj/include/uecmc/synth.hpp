#ifndef UECMC_SYNTH_HPP
#define UECMC_SYNTH_HPP

#include <Eigen/Dense>
#include <map>
#include <random>

#include "uecmc/graph.hpp"
#include "uecmc/inference.hpp"

namespace uecmc {

/// X = XW + eps with standard normal eps; weights keyed by (parent, child).
struct LinearGaussianModel {
    Dag dag;
    std::map<Edge, double> weights;

    Eigen::MatrixXd weight_matrix() const;
};

inline constexpr double kMinAbsWeight = 1e-3;

/// Uniform random topological order, each compatible pair kept with probability p.
Dag random_dag(int n, double p, std::mt19937_64& rng);
/// Weights uniform on [-1, 1], redrawn while |w| < min_abs.
LinearGaussianModel random_weights(const Dag& dag, std::mt19937_64& rng, double min_abs = kMinAbsWeight);
DataMatrix sample(const LinearGaussianModel& model, int N, std::mt19937_64& rng);

/// Cov(X) = L^T L with L = (I - W)^-1; structurally zero entries are exact zeros.
Eigen::MatrixXd implied_covariance(const LinearGaussianModel& model);

}  // namespace uecmc

#endif  // UECMC_SYNTH_HPP
