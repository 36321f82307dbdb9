#include "uecmc/monomial_moves.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace uecmc {

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::merge: return "merge";
        case MoveKind::split: return "split";
        case MoveKind::out_add: return "out_add";
        case MoveKind::out_del: return "out_del";
        case MoveKind::within: return "within";
    }
    return "unknown";
}

MoveKind move_kind_from_string(const std::string& name) {
    for (MoveKind k : kAllMoveKinds)
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown move kind '" + name + "'");
}

namespace {

void check_terms(const MonomialRep& rep, int j1, int j2) {
    const int k = static_cast<int>(rep.terms.size());
    if (j1 < 0 || j1 >= k || j2 < 0 || j2 >= k) throw std::invalid_argument("term index out of range");
    if (j1 == j2) throw std::invalid_argument("move needs two distinct terms");
}

MonomialRep finish(MonomialRep rep) {
    canonicalize(rep);
    validate(rep);
    return rep;
}

}  // namespace

MonomialRep apply_within(const MonomialRep& rep, int j1, int j2, Mask c_set) {
    check_terms(rep, j1, j2);
    const auto& a = rep.terms[j1];
    const auto& b = rep.terms[j2];
    if ((c_set & ~b.tail) != 0) throw std::invalid_argument("within: C must be a subset of the second tail");
    if ((c_set & a.tail) != 0) throw std::invalid_argument("within: C must be disjoint from the first tail");
    MonomialRep out = rep;
    out.terms[j1].tail |= c_set;
    out.terms[j2].tail &= ~c_set;
    return finish(std::move(out));
}

MonomialRep apply_out_add(const MonomialRep& rep, int j1, int j2, int c) {
    check_terms(rep, j1, j2);
    if (c < 0 || c >= rep.n) throw std::invalid_argument("out_add: vertex out of range");
    if ((rep.terms[j1].tail & bit(c)) == 0 || (rep.terms[j2].tail & bit(c)) != 0)
        throw std::invalid_argument("out_add: c must lie in the first tail and not the second");
    MonomialRep out = rep;
    out.terms[j2].tail |= bit(c);
    return finish(std::move(out));
}

MonomialRep apply_out_del(const MonomialRep& rep, int j1, int j2, int c) {
    check_terms(rep, j1, j2);
    if (c < 0 || c >= rep.n) throw std::invalid_argument("out_del: vertex out of range");
    if ((rep.terms[j1].tail & bit(c)) == 0 || (rep.terms[j2].tail & bit(c)) == 0)
        throw std::invalid_argument("out_del: c must lie in both tails");
    MonomialRep out = rep;
    out.terms[j2].tail &= ~bit(c);
    return finish(std::move(out));
}

MonomialRep apply_merge(const MonomialRep& rep, int j1, int j2) {
    check_terms(rep, j1, j2);
    if (rep.terms[j1].tail != rep.terms[j2].tail) throw std::invalid_argument("merge: tails differ");
    MonomialRep out = rep;
    out.terms[j1].tail |= bit(rep.terms[j2].source);
    out.terms.erase(out.terms.begin() + j2);
    return finish(std::move(out));
}

MonomialRep apply_split(const MonomialRep& rep, int j, int c) {
    const int k = static_cast<int>(rep.terms.size());
    if (j < 0 || j >= k) throw std::invalid_argument("term index out of range");
    if (c < 0 || c >= rep.n || (rep.terms[j].tail & bit(c)) == 0)
        throw std::invalid_argument("split: c must lie in the tail");
    for (int l = 0; l < k; ++l)
        if (l != j && (rep.terms[l].tail & bit(c)))
            throw std::invalid_argument("split: c must not lie in any other tail");
    MonomialRep out = rep;
    Mask tail = rep.terms[j].tail & ~bit(c);
    out.terms[j].tail = tail;
    out.terms.push_back({c, tail});
    return finish(std::move(out));
}

MonomialRep apply(const MonomialRep& rep, const BinomialMove& m) {
    switch (m.kind) {
        case MoveKind::within: return apply_within(rep, m.j1, m.j2, m.transfer);
        case MoveKind::out_add: return apply_out_add(rep, m.j1, m.j2, m.c);
        case MoveKind::out_del: return apply_out_del(rep, m.j1, m.j2, m.c);
        case MoveKind::merge: return apply_merge(rep, m.j1, m.j2);
        case MoveKind::split: return apply_split(rep, m.j1, m.c);
    }
    throw std::invalid_argument("unknown move kind");
}

std::vector<BinomialMove> admissible_moves(const MonomialRep& rep, MoveKind kind) {
    std::vector<BinomialMove> out;
    const int k = static_cast<int>(rep.terms.size());
    for (int j1 = 0; j1 < k; ++j1) {
        const Mask a = rep.terms[j1].tail;
        if (kind == MoveKind::split) {
            Mask others = 0;
            for (int l = 0; l < k; ++l)
                if (l != j1) others |= rep.terms[l].tail;
            for (int c : members(a & ~others)) out.push_back({kind, j1, -1, c, 0});
            continue;
        }
        for (int j2 = 0; j2 < k; ++j2) {
            if (j1 == j2) continue;
            const Mask b = rep.terms[j2].tail;
            switch (kind) {
                case MoveKind::merge:
                    if (j1 < j2 && a == b) out.push_back({kind, j1, j2, -1, 0});
                    break;
                case MoveKind::out_add:
                    for (int c : members(a & ~b)) out.push_back({kind, j1, j2, c, 0});
                    break;
                case MoveKind::out_del:
                    for (int c : members(a & b)) out.push_back({kind, j1, j2, c, 0});
                    break;
                case MoveKind::within: {
                    const Mask pool = b & ~a;
                    for (Mask sub = pool; sub; sub = (sub - 1) & pool) out.push_back({kind, j1, j2, -1, sub});
                    break;
                }
                case MoveKind::split: break;
            }
        }
    }
    return out;
}

std::vector<BinomialMove> admissible_moves(const MonomialRep& rep) {
    std::vector<BinomialMove> out;
    for (MoveKind kind : kAllMoveKinds) {
        auto part = admissible_moves(rep, kind);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<std::string> monomial_neighbors(const UndirectedGraph& g, MoveKind kind) {
    std::set<std::string> ids;
    for (const auto& rep : all_monomial_reps(g))
        for (const auto& m : admissible_moves(rep, kind)) ids.insert(uec_id(realize(apply(rep, m))));
    return {ids.begin(), ids.end()};
}

bool fiber_equivalent(const UndirectedGraph& a, const UndirectedGraph& b) {
    if (a.n() != b.n()) return false;
    std::set<SufficientStatistic> stats;
    for (const auto& rep : all_monomial_reps(a)) stats.insert(sufficient_statistic(rep));
    for (const auto& rep : all_monomial_reps(b))
        if (stats.count(sufficient_statistic(rep))) return true;
    return false;
}

}  // namespace uecmc
