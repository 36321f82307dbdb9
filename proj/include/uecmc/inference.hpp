#ifndef UECMC_INFERENCE_HPP
#define UECMC_INFERENCE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uecmc/dag_reduction.hpp"
#include "uecmc/graph.hpp"

namespace uecmc {

/// N x n observations, one row per sample.
struct DataMatrix {
    Eigen::MatrixXd values;

    DataMatrix() = default;
    explicit DataMatrix(Eigen::MatrixXd v);

    int N() const { return static_cast<int>(values.rows()); }
    int n() const { return static_cast<int>(values.cols()); }
    /// Throws unless N >= n + 2.
    void require_regression_size() const;
};

double delta_prior_log(int n, int s, double p, int source_count);

struct Prior {
    enum class Kind { uniform, triangle };
    Kind kind = Kind::uniform;
    int s = 1;
    double p = 1.0;

    static Prior uniform() { return {}; }
    static Prior delta(int s, double p) { return {Kind::triangle, s, p}; }
    /// "uniform" or "delta:S:P".
    static Prior parse(const std::string& text);
    std::string str() const;

    /// Zero for the uniform kind.
    double log_prob(int n, int source_count) const;
};

/// Gaussian likelihood from the centered Gram matrix of the data.
class GaussianScorer {
public:
    explicit GaussianScorer(const DataMatrix& x);

    int N() const { return N_; }
    int n() const { return static_cast<int>(gram_.rows()); }

    /// Maximized log-likelihood of column v regressed on the given columns.
    double node_log_likelihood(int v, Mask regressors) const;
    double log_likelihood(const UndirectedGraph& g) const;

    static constexpr double kVarianceFloor = 1e-12;
    static constexpr double kRidgeScale = 1e-8;

private:
    Eigen::MatrixXd gram_;
    int N_;
};

double gaussian_log_likelihood(const UndirectedGraph& g, const DataMatrix& x);

enum class ScoreKind { l0, nuclear };

ScoreKind score_kind_from_string(const std::string& name);
std::string to_string(ScoreKind kind);

/// Sum of absolute eigenvalues of the adjacency matrix.
double nuclear_norm(const UndirectedGraph& g);
/// Skeleton edges of init_cpdag(g) plus one variance per vertex.
int bic_parameter_count(const UndirectedGraph& g);
/// Nuclear weight used when none is given: log(N) / 2, the per-parameter BIC charge.
double default_nuclear_lambda(int N);
double penalized_score(double log_likelihood, const UndirectedGraph& g, int N, ScoreKind kind,
                       std::optional<double> lambda = std::nullopt);
double score(const UndirectedGraph& g, const DataMatrix& x, ScoreKind kind, std::optional<double> lambda = std::nullopt);

struct ChainRecord {
    std::int64_t step = 0;
    std::string uec_id;
    double log_likelihood = 0.0;
    double log_prior = 0.0;
    double score = 0.0;
    bool accepted = false;
};

/// log of the Metropolis-Hastings ratio; -inf when the reverse move is impossible.
double mh_log_ratio(double current_log_target, double proposal_log_target, const MoveProposal& proposal);
bool mh_step(double current_log_target, double proposal_log_target, const MoveProposal& proposal,
             std::mt19937_64& rng);

struct GruesOptions {
    std::int64_t length = 1000;
    TransitionWeights transitions;
    Prior prior;
    ScoreKind score = ScoreKind::l0;
    std::optional<double> lambda;
};

struct GruesResult {
    UndirectedGraph score_optimal;
    double optimal_score = 0.0;
    /// Best graphs under each score, tracked over the same proposals.
    UndirectedGraph optimal_l0;
    UndirectedGraph optimal_nuclear;
    std::vector<ChainRecord> chain;
    std::int64_t accepted = 0;
    std::uint64_t reverse_violations = 0;
};

/// Metropolis-Hastings over UEC-representatives. A null scorer means a
/// constant likelihood.
GruesResult grues(const GaussianScorer* scorer, const UndirectedGraph& init, const GruesOptions& options,
                  std::mt19937_64& rng);
GruesResult grues(const DataMatrix& x, const UndirectedGraph& init, const GruesOptions& options,
                  std::mt19937_64& rng);

struct Posterior {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;

    static Posterior from_chain(const std::vector<ChainRecord>& chain, std::int64_t burn_in);
    double probability(const std::string& id) const;
};

/// Highest count, ties to the lowest id.
std::string map_estimate(const Posterior& post);
/// Longest descending-probability prefix with cumulative mass at most t.
std::vector<std::string> hpd_set(const Posterior& post, double t);

/// 1 - |symmetric difference| / C(n, 2).
double shs(const UndirectedGraph& a, const UndirectedGraph& b);

}  // namespace uecmc

#endif  // UECMC_INFERENCE_HPP
