#include "uecmc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "uecmc/combinatorics.hpp"

namespace uecmc {

DataMatrix::DataMatrix(Eigen::MatrixXd v) : values(std::move(v)) {
    if (!values.allFinite()) throw std::invalid_argument("data contains non-finite values");
}

void DataMatrix::require_regression_size() const {
    if (N() < n() + 2)
        throw std::invalid_argument("need at least n + 2 samples, got N = " + std::to_string(N()) +
                                    " for n = " + std::to_string(n()));
}

double delta_prior_log(int n, int s, double p, int source_count) {
    if (n < 1) throw std::invalid_argument("prior: n must be positive");
    if (s < 1 || s > n) throw std::invalid_argument("prior: s must lie in [1, n]");
    if (!(p > 0)) throw std::invalid_argument("prior: p must be positive");
    if (source_count < 1 || source_count > n) throw std::invalid_argument("prior: source count must lie in [1, n]");
    const double m = n + 1.0;
    auto d = [&](int i) {
        double base;
        if (i < s)
            base = 2.0 * i / (m * s);
        else if (i == s)
            base = 2.0 / m;
        else
            base = 2.0 * (m - i) / (m * (m - s));
        return std::pow(base, p);
    };
    double total = 0;
    for (int i = 1; i <= n; ++i) total += d(i);
    return std::log(d(source_count) / total);
}

Prior Prior::parse(const std::string& text) {
    if (text == "uniform") return uniform();
    if (text.rfind("delta:", 0) == 0) {
        std::stringstream ss(text.substr(6));
        std::string s_text, p_text;
        if (std::getline(ss, s_text, ':') && std::getline(ss, p_text) && !s_text.empty() && !p_text.empty()) {
            std::size_t used_s = 0, used_p = 0;
            int s = 0;
            double p = 0;
            try {
                s = std::stoi(s_text, &used_s);
                p = std::stod(p_text, &used_p);
            } catch (const std::exception&) {
                used_s = 0;
            }
            if (used_s == s_text.size() && used_p == p_text.size() && s >= 1 && p > 0) return delta(s, p);
        }
    }
    throw std::invalid_argument("bad prior '" + text + "', expected uniform or delta:S:P");
}

std::string Prior::str() const {
    if (kind == Kind::uniform) return "uniform";
    std::ostringstream os;
    os << "delta:" << s << ':' << p;
    return os.str();
}

double Prior::log_prob(int n, int source_count) const {
    if (kind == Kind::uniform) return 0.0;
    return delta_prior_log(n, s, p, source_count);
}

GaussianScorer::GaussianScorer(const DataMatrix& x) : N_(x.N()) {
    x.require_regression_size();
    Eigen::MatrixXd centered = x.values.rowwise() - x.values.colwise().mean();
    gram_ = centered.transpose() * centered;
}

double GaussianScorer::node_log_likelihood(int v, Mask regressors) const {
    regressors &= ~bit(v);
    double rss = gram_(v, v);
    if (regressors) {
        auto idx = members(regressors);
        const int k = static_cast<int>(idx.size());
        Eigen::MatrixXd a(k, k);
        Eigen::VectorXd b(k);
        for (int i = 0; i < k; ++i) {
            b(i) = gram_(idx[i], v);
            for (int j = 0; j < k; ++j) a(i, j) = gram_(idx[i], idx[j]);
        }
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
            const double ridge = kRidgeScale * std::max(a.trace(), 0.0) / k;
            a.diagonal().array() += ridge > 0 ? ridge : kRidgeScale;
            llt.compute(a);
        }
        rss -= b.dot(llt.solve(b));
    }
    const double sigma2 = std::max(rss / N_, kVarianceFloor);
    return -0.5 * N_ * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0);
}

double GaussianScorer::log_likelihood(const UndirectedGraph& g) const {
    if (g.n() != n()) throw std::invalid_argument("graph and data disagree on the number of variables");
    Cpdag cp = init_cpdag(g);
    auto comps = cp.chain_components();
    std::vector<Mask> comp_of(g.n(), 0);
    for (Mask c : comps)
        for (int v : members(c)) comp_of[v] = c;
    double total = 0;
    for (int v = 0; v < g.n(); ++v) total += node_log_likelihood(v, cp.parents(v) | (comp_of[v] & ~bit(v)));
    return total;
}

double gaussian_log_likelihood(const UndirectedGraph& g, const DataMatrix& x) {
    return GaussianScorer(x).log_likelihood(g);
}

ScoreKind score_kind_from_string(const std::string& name) {
    if (name == "bic" || name == "l0") return ScoreKind::l0;
    if (name == "nuclear") return ScoreKind::nuclear;
    throw std::invalid_argument("unknown score '" + name + "', expected bic or nuclear");
}

std::string to_string(ScoreKind kind) { return kind == ScoreKind::l0 ? "bic" : "nuclear"; }

double nuclear_norm(const UndirectedGraph& g) {
    const int n = g.n();
    if (n == 0 || g.edge_count() == 0) return 0.0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

int bic_parameter_count(const UndirectedGraph& g) { return init_cpdag(g).skeleton().edge_count() + g.n(); }

double default_nuclear_lambda(int N) { return 0.5 * std::log(static_cast<double>(N)); }

double penalized_score(double log_likelihood, const UndirectedGraph& g, int N, ScoreKind kind,
                       std::optional<double> lambda) {
    if (kind == ScoreKind::l0) return log_likelihood - 0.5 * bic_parameter_count(g) * std::log(static_cast<double>(N));
    return log_likelihood - lambda.value_or(default_nuclear_lambda(N)) * nuclear_norm(g);
}

double score(const UndirectedGraph& g, const DataMatrix& x, ScoreKind kind, std::optional<double> lambda) {
    return penalized_score(gaussian_log_likelihood(g, x), g, x.N(), kind, lambda);
}

double mh_log_ratio(double current_log_target, double proposal_log_target, const MoveProposal& proposal) {
    if (proposal.reverse_prob <= 0 || proposal.forward_prob <= 0) return -std::numeric_limits<double>::infinity();
    return (proposal_log_target + std::log(proposal.reverse_prob)) -
           (current_log_target + std::log(proposal.forward_prob));
}

bool mh_step(double current_log_target, double proposal_log_target, const MoveProposal& proposal,
             std::mt19937_64& rng) {
    const double log_h = mh_log_ratio(current_log_target, proposal_log_target, proposal);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (log_h >= 0) return true;
    return std::log(u) < log_h;
}

namespace {

struct StateEval {
    double log_likelihood;
    double log_prior;
    double l0;
    double nuclear;
};

}  // namespace

GruesResult grues(const GaussianScorer* scorer, const UndirectedGraph& init, const GruesOptions& opt,
                  std::mt19937_64& rng) {
    if (opt.length < 1) throw std::invalid_argument("chain length must be at least 1");
    if (scorer && scorer->n() != init.n()) throw std::invalid_argument("initial graph and data disagree on n");
    const int n = init.n();
    const int N = scorer ? scorer->N() : 1;

    std::unordered_map<std::string, StateEval> cache;
    auto evaluate = [&](const UndirectedGraph& g, const std::string& id) -> const StateEval& {
        if (auto it = cache.find(id); it != cache.end()) return it->second;
        StateEval e{};
        e.log_likelihood = scorer ? scorer->log_likelihood(g) : 0.0;
        e.log_prior = opt.prior.log_prob(n, source_count(g));
        e.l0 = penalized_score(e.log_likelihood, g, N, ScoreKind::l0, opt.lambda);
        e.nuclear = penalized_score(e.log_likelihood, g, N, ScoreKind::nuclear, opt.lambda);
        return cache.emplace(id, e).first->second;
    };
    auto pick_score = [&](const StateEval& e) { return opt.score == ScoreKind::l0 ? e.l0 : e.nuclear; };

    DagReduction d = to_dag_reduction(init);
    UndirectedGraph g = init;
    std::string id = uec_id(g);
    StateEval cur = evaluate(g, id);

    GruesResult res;
    res.score_optimal = res.optimal_l0 = res.optimal_nuclear = g;
    res.optimal_score = pick_score(cur);
    double best_l0 = cur.l0, best_nuc = cur.nuclear;
    res.chain.reserve(static_cast<std::size_t>(opt.length));
    res.chain.push_back({0, id, cur.log_likelihood, cur.log_prior, pick_score(cur), true});

    MoveKernel kernel(opt.transitions);
    for (std::int64_t step = 1; step < opt.length; ++step) {
        auto proposal = kernel.propose(d, id, rng);
        bool accepted = false;
        if (proposal) {
            auto& [prop, next] = *proposal;
            UndirectedGraph next_g = reconstruct_uec(next);
            std::string next_id = uec_id(next_g);
            StateEval e = evaluate(next_g, next_id);
            if (pick_score(e) > res.optimal_score) {
                res.optimal_score = pick_score(e);
                res.score_optimal = next_g;
            }
            if (e.l0 > best_l0) best_l0 = e.l0, res.optimal_l0 = next_g;
            if (e.nuclear > best_nuc) best_nuc = e.nuclear, res.optimal_nuclear = next_g;
            accepted = mh_step(cur.log_likelihood + cur.log_prior, e.log_likelihood + e.log_prior, prop, rng);
            if (accepted) {
                d = std::move(next);
                g = std::move(next_g);
                id = std::move(next_id);
                cur = e;
                ++res.accepted;
            }
        }
        res.chain.push_back({step, id, cur.log_likelihood, cur.log_prior, pick_score(cur), accepted});
    }
    res.reverse_violations = kernel.reverse_violations();
    return res;
}

GruesResult grues(const DataMatrix& x, const UndirectedGraph& init, const GruesOptions& options,
                  std::mt19937_64& rng) {
    GaussianScorer scorer(x);
    return grues(&scorer, init, options, rng);
}

Posterior Posterior::from_chain(const std::vector<ChainRecord>& chain, std::int64_t burn_in) {
    if (burn_in < 0) throw std::invalid_argument("burn-in must be nonnegative");
    Posterior post;
    for (std::size_t i = static_cast<std::size_t>(std::min<std::int64_t>(burn_in, chain.size())); i < chain.size();
         ++i) {
        ++post.counts[chain[i].uec_id];
        ++post.total;
    }
    return post;
}

double Posterior::probability(const std::string& id) const {
    auto it = counts.find(id);
    return it == counts.end() || total == 0 ? 0.0 : static_cast<double>(it->second) / total;
}

namespace {

std::vector<std::pair<std::string, std::int64_t>> ranked(const Posterior& post) {
    if (post.total <= 0 || post.counts.empty()) throw std::invalid_argument("posterior is empty");
    std::vector<std::pair<std::string, std::int64_t>> items(post.counts.begin(), post.counts.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return items;
}

}  // namespace

std::string map_estimate(const Posterior& post) { return ranked(post).front().first; }

std::vector<std::string> hpd_set(const Posterior& post, double t) {
    if (!(t > 0) || t > 1) throw std::invalid_argument("credible probability must lie in (0, 1]");
    std::vector<std::string> out;
    const double limit = t * static_cast<double>(post.total) * (1.0 + 1e-12);
    std::int64_t cumulative = 0;
    for (const auto& [id, count] : ranked(post)) {
        if (static_cast<double>(cumulative + count) > limit) break;
        cumulative += count;
        out.push_back(id);
    }
    return out;
}

double shs(const UndirectedGraph& a, const UndirectedGraph& b) {
    if (a.n() != b.n()) throw std::invalid_argument("shs needs graphs on the same vertices");
    const int n = a.n();
    if (n < 2) return 1.0;
    int diff = 0;
    for (int v = 0; v < n; ++v) diff += popcount(a.neighbors(v) ^ b.neighbors(v));
    diff /= 2;
    return 1.0 - static_cast<double>(diff) / (n * (n - 1) / 2);
}

}  // namespace uecmc
