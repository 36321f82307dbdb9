#ifndef UECMC_DAG_REDUCTION_HPP
#define UECMC_DAG_REDUCTION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uecmc/graph.hpp"
#include "uecmc/monomial_moves.hpp"

namespace uecmc {

/// DAG on chain components. Nodes are sorted vertex lists ordered by their
/// smallest vertex; edges are (parent, child) node indices. In normal form
/// a -> b holds exactly when ma(a) is a proper subset of ma(b), where a
/// source node is its own maximal ancestor.
struct DagReduction {
    std::vector<std::vector<int>> nodes;
    std::vector<Edge> edges;

    int n() const;
    friend bool operator==(const DagReduction&, const DagReduction&) = default;
};

Cpdag init_cpdag(const UndirectedGraph& g);
DagReduction to_dag_reduction(const UndirectedGraph& g);
UndirectedGraph reconstruct_uec(const DagReduction& d);

/// Throws std::invalid_argument unless d is in lattice normal form.
void validate(const DagReduction& d);

/// Per-node structure of a normal-form reduction. Node sets are bitmasks
/// over node indices.
struct ReductionView {
    std::vector<Mask> vertices;
    std::vector<Mask> parents;
    std::vector<Mask> children;
    std::vector<Mask> max_ancestors;
    Mask sources = 0;

    explicit ReductionView(const DagReduction& d);
    int size() const { return static_cast<int>(vertices.size()); }
};

class MoveUnavailable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Choices made by one move. s, s2, t are node indices of the input
/// reduction; v, w are vertices. Unused fields stay -1.
struct MovePicks {
    MoveKind kind = MoveKind::within;
    int s = -1;
    int s2 = -1;
    int t = -1;
    int v = -1;
    int w = -1;

    friend bool operator==(const MovePicks&, const MovePicks&) = default;
};

DagReduction merge_move(const DagReduction& d, int s, int s2);
DagReduction split_move(const DagReduction& d, int s, int v, int w);
DagReduction algebraic_move(const DagReduction& d, MoveKind fiber, const MovePicks& picks);
DagReduction apply_move(const DagReduction& d, const MovePicks& picks);

// Admissible pick sets.
std::vector<std::pair<int, int>> merge_candidates(const ReductionView& view);
std::vector<int> split_candidates(const ReductionView& view);
std::vector<int> out_del_targets(const ReductionView& view);
std::vector<std::pair<int, int>> algebraic_pairs(const ReductionView& view);
std::vector<int> algebraic_targets(const ReductionView& view, int s, int s2);
bool move_available(const ReductionView& view, MoveKind kind);

struct WeightedMove {
    MovePicks picks;
    double probability;
};

/// All pick tuples of one kind with their probability under uniform picks,
/// conditional on the kind.
std::vector<WeightedMove> enumerate_moves(const DagReduction& d, MoveKind kind);

/// Unnormalized weights over move kinds, indexed by MoveKind order
/// merge, split, out_add, out_del, within.
struct TransitionWeights {
    std::array<double, 5> weight{1.0, 1.0, 1.0, 1.0, 2.0};

    double operator[](MoveKind k) const { return weight[static_cast<int>(k)]; }
    /// Parses "m:s:a:d:w".
    static TransitionWeights parse(const std::string& text);
    std::string str() const;
};

struct MoveProposal {
    MoveKind kind = MoveKind::within;
    MovePicks picks;
    /// Probability of the realized pick sequence, kind choice included.
    double path_prob = 0.0;
    /// q(u, u') and q(u', u), summed over every pick sequence joining the two states.
    double forward_prob = 0.0;
    double reverse_prob = 0.0;
};

/// Kind probabilities renormalized over the kinds available at d.
std::array<double, 5> kind_probabilities(const ReductionView& view, const TransitionWeights& w);

/// Proposal kernel q with per-state caching of the full move distribution.
class MoveKernel {
public:
    explicit MoveKernel(TransitionWeights weights = {}, std::size_t cache_limit = 20000);

    /// q(u, .) keyed by canonical id of the destination.
    const std::unordered_map<std::string, double>& distribution(const DagReduction& d, const std::string& id);

    /// Returns nothing when no move kind is available.
    std::optional<std::pair<MoveProposal, DagReduction>> propose(const DagReduction& d, const std::string& id,
                                                                 std::mt19937_64& rng);

    const TransitionWeights& weights() const { return weights_; }
    std::uint64_t reverse_violations() const { return reverse_violations_; }

private:
    TransitionWeights weights_;
    std::size_t cache_limit_;
    std::unordered_map<std::string, std::unordered_map<std::string, double>> cache_;
    std::uint64_t reverse_violations_ = 0;
};

std::optional<std::pair<MoveProposal, DagReduction>> propose_random_move(const DagReduction& d,
                                                                         const TransitionWeights& w,
                                                                         std::mt19937_64& rng);

}  // namespace uecmc

#endif  // UECMC_DAG_REDUCTION_HPP
