#ifndef UECMC_MONOMIAL_MOVES_HPP
#define UECMC_MONOMIAL_MOVES_HPP

#include <string>
#include <vector>

#include "uecmc/combinatorics.hpp"

namespace uecmc {

enum class MoveKind { merge, split, out_add, out_del, within };

inline constexpr MoveKind kAllMoveKinds[] = {MoveKind::merge, MoveKind::split, MoveKind::out_add, MoveKind::out_del,
                                             MoveKind::within};

std::string to_string(MoveKind kind);
MoveKind move_kind_from_string(const std::string& name);

/// A binomial rewrite with explicit parameters. Term indices refer to the
/// canonical (source-sorted) term order of the input representation.
struct BinomialMove {
    MoveKind kind = MoveKind::within;
    int j1 = -1;
    int j2 = -1;
    int c = -1;
    Mask transfer = 0;
};

/// x_{i|A} x_{j|B} -> x_{i|A+C} x_{j|B-C} with i = term j1, j = term j2.
MonomialRep apply_within(const MonomialRep& rep, int j1, int j2, Mask c_set);
/// Adds c to A_{j2}; requires c in A_{j1} and not in A_{j2}.
MonomialRep apply_out_add(const MonomialRep& rep, int j1, int j2, int c);
/// Removes c from A_{j2}; requires c in both A_{j1} and A_{j2}.
MonomialRep apply_out_del(const MonomialRep& rep, int j1, int j2, int c);
MonomialRep apply_merge(const MonomialRep& rep, int j1, int j2);
MonomialRep apply_split(const MonomialRep& rep, int j, int c);

MonomialRep apply(const MonomialRep& rep, const BinomialMove& move);

/// Every admissible move on this representation, within moves over all
/// nonempty transfer sets C.
std::vector<BinomialMove> admissible_moves(const MonomialRep& rep);
std::vector<BinomialMove> admissible_moves(const MonomialRep& rep, MoveKind kind);

/// Graphs reachable from g by one move of the given kind from any of its
/// representations, as sorted canonical ids.
std::vector<std::string> monomial_neighbors(const UndirectedGraph& g, MoveKind kind);

/// True iff some pair of representations of a and b share a sufficient statistic.
bool fiber_equivalent(const UndirectedGraph& a, const UndirectedGraph& b);

}  // namespace uecmc

#endif  // UECMC_MONOMIAL_MOVES_HPP
