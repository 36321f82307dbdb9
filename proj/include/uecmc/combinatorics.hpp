#ifndef UECMC_COMBINATORICS_HPP
#define UECMC_COMBINATORICS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uecmc/graph.hpp"

namespace uecmc {

/// Edge clique cover with one independent center per clique.
struct CliqueCover {
    std::vector<Mask> cliques;
    std::vector<int> centers;
};

struct MonomialTerm {
    int source = 0;
    Mask tail = 0;

    friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

/// Product x_{i1|A1} ... x_{ik|Ak}; terms kept sorted by source.
struct MonomialRep {
    int n = 0;
    std::vector<MonomialTerm> terms;

    friend bool operator==(const MonomialRep&, const MonomialRep&) = default;
};

struct SufficientStatistic {
    std::vector<int> sources;
    std::vector<int> assn;

    friend bool operator==(const SufficientStatistic&, const SufficientStatistic&) = default;
    friend auto operator<=>(const SufficientStatistic&, const SufficientStatistic&) = default;
};

class NotUecRepresentative : public std::invalid_argument {
public:
    NotUecRepresentative(int alpha, int delta);
    int alpha;
    int delta;
};

/// Vertices whose closed neighborhood is a clique, one per distinct
/// neighborhood (lowest index), with that neighborhood.
struct SimplicialGroup {
    int center;
    Mask clique;
};
std::vector<SimplicialGroup> simplicial_groups(const UndirectedGraph& g);

bool is_uec_representative(const UndirectedGraph& g);

/// Exact searches; exponential in the worst case.
Mask maximum_independent_set(const UndirectedGraph& g);
int independence_number(const UndirectedGraph& g);
std::vector<Mask> maximal_cliques(const UndirectedGraph& g);
/// Minimum cover of edges and isolated vertices by cliques, for any graph.
std::vector<Mask> minimum_clique_cover(const UndirectedGraph& g);
int intersection_number(const UndirectedGraph& g);

/// Throws NotUecRepresentative carrying alpha and delta.
CliqueCover min_edge_clique_cover(const UndirectedGraph& g);

/// Number of cliques in the minimum cover, i.e. alpha of a representative.
int source_count(const UndirectedGraph& g);

/// Calls visit for every minimal cover of {0..n-1} drawn from candidates.
/// Returning false from visit stops the enumeration.
void for_each_minimal_cover(int n, std::vector<Mask> candidates,
                            const std::function<bool(const std::vector<Mask>&)>& visit);

UndirectedGraph graph_from_cover(int n, const std::vector<Mask>& sets);

inline constexpr int kDefaultEnumerationLimit = 6;

std::vector<UndirectedGraph> enumerate_uec_representatives(int n, int limit = kDefaultEnumerationLimit);

MonomialRep monomial_rep(const UndirectedGraph& g);
/// Every representation obtainable by choosing one private vertex per clique.
std::vector<MonomialRep> all_monomial_reps(const UndirectedGraph& g);

UndirectedGraph realize(const MonomialRep& rep);
bool is_valid(const MonomialRep& rep);
void validate(const MonomialRep& rep);
void canonicalize(MonomialRep& rep);

SufficientStatistic sufficient_statistic(const MonomialRep& rep);

/// Text form such as x_{0|12}x_{3|24}; vertices above 9 are comma separated.
std::string to_string(const MonomialRep& rep);

/// Hex encoding of the edge bitmask over pairs (0,1),(0,2),...,(n-2,n-1).
std::string uec_id(const UndirectedGraph& g);
UndirectedGraph graph_from_uec_id(int n, const std::string& id);

}  // namespace uecmc

#endif  // UECMC_COMBINATORICS_HPP
