#include <gtest/gtest.h>

#include <map>
#include <queue>
#include <random>
#include <set>

#include "oracles.hpp"
#include "uecmc/monomial_moves.hpp"

using namespace uecmc;

namespace {

MonomialRep rep(int n, std::vector<std::pair<int, std::vector<int>>> terms) {
    MonomialRep r{n, {}};
    for (auto& [s, tail] : terms) r.terms.push_back({s, to_mask(tail)});
    canonicalize(r);
    return r;
}

int term_of(const MonomialRep& r, int source) {
    for (std::size_t j = 0; j < r.terms.size(); ++j)
        if (r.terms[j].source == source) return static_cast<int>(j);
    return -1;
}

std::string key(const MonomialRep& r) { return to_string(r); }

}  // namespace

TEST(Within, FigureSixSteps) {
    // x_{1|2} x_{3|24} x_{5|4} in 1-based labels.
    auto start = rep(5, {{0, {1}}, {2, {1, 3}}, {4, {3}}});
    auto mid = apply_within(start, term_of(start, 4), term_of(start, 0), to_mask({1}));
    EXPECT_EQ(mid, rep(5, {{0, {}}, {2, {1, 3}}, {4, {1, 3}}}));
    auto end = apply_within(mid, term_of(mid, 0), term_of(mid, 2), to_mask({3}));
    EXPECT_EQ(end, rep(5, {{0, {3}}, {2, {1}}, {4, {1, 3}}}));
    EXPECT_EQ(sufficient_statistic(start), sufficient_statistic(mid));
    EXPECT_EQ(sufficient_statistic(mid), sufficient_statistic(end));
}

TEST(Within, EmptyTransferIsIdentity) {
    auto r = rep(5, {{0, {1}}, {2, {1, 3}}, {4, {3}}});
    EXPECT_EQ(apply_within(r, 0, 1, 0), r);
}

TEST(Within, PreconditionsAreChecked) {
    auto r = rep(5, {{0, {1}}, {2, {1, 3}}, {4, {3}}});
    // C must lie in the second tail and avoid the first.
    EXPECT_THROW(apply_within(r, 0, 1, to_mask({4})), std::invalid_argument);
    EXPECT_THROW(apply_within(r, 0, 1, to_mask({1})), std::invalid_argument);
    EXPECT_THROW(apply_within(r, 0, 0, to_mask({1})), std::invalid_argument);
    EXPECT_THROW(apply_within(r, 0, 7, to_mask({1})), std::invalid_argument);
}

TEST(OutOfFiber, DeleteExample) {
    // x_{1|3} x_{2|35} x_{4|35} in 1-based labels.
    auto r = rep(5, {{0, {2}}, {1, {2, 4}}, {3, {2, 4}}});
    auto out = apply_out_del(r, term_of(r, 1), term_of(r, 0), 2);
    EXPECT_EQ(out, rep(5, {{0, {}}, {1, {2, 4}}, {3, {2, 4}}}));
    EXPECT_EQ(out.terms.size(), r.terms.size());
    EXPECT_EQ(apply_out_add(out, term_of(out, 1), term_of(out, 0), 2), r);
}

TEST(OutOfFiber, AddThenDeleteRoundTrips) {
    for (const auto& g : enumerate_uec_representatives(4))
        for (const auto& r : all_monomial_reps(g))
            for (const auto& m : admissible_moves(r, MoveKind::out_add)) {
                auto added = apply(r, m);
                EXPECT_EQ(added.terms.size(), r.terms.size());
                // The same source pair and element undo the move.
                int j1 = term_of(added, r.terms[m.j1].source), j2 = term_of(added, r.terms[m.j2].source);
                EXPECT_EQ(apply_out_del(added, j1, j2, m.c), r);
            }
}

TEST(OutOfFiber, PreconditionsAreChecked) {
    auto r = rep(5, {{0, {2}}, {1, {2, 4}}, {3, {2, 4}}});
    EXPECT_THROW(apply_out_add(r, term_of(r, 1), term_of(r, 0), 2), std::invalid_argument);
    EXPECT_THROW(apply_out_del(r, term_of(r, 0), term_of(r, 1), 4), std::invalid_argument);
}

TEST(MergeSplit, TrivialExamples) {
    auto pair = rep(2, {{0, {}}, {1, {}}});
    EXPECT_EQ(apply_merge(pair, 0, 1), rep(2, {{0, {1}}}));
    EXPECT_EQ(realize(apply_merge(pair, 0, 1)), UndirectedGraph::complete(2));
    auto tri = rep(3, {{0, {1, 2}}});
    EXPECT_EQ(apply_split(tri, 0, 2), rep(3, {{0, {1}}, {2, {1}}}));
}

TEST(MergeSplit, PreconditionsAreChecked) {
    auto r = rep(4, {{0, {2}}, {1, {2, 3}}});
    EXPECT_THROW(apply_merge(r, 0, 1), std::invalid_argument);
    EXPECT_THROW(apply_split(r, 1, 2), std::invalid_argument);
    EXPECT_THROW(apply_split(r, 0, 3), std::invalid_argument);
}

TEST(MergeSplit, SplitThenMergeRoundTripsOnAllFourVertexReps) {
    int checked = 0;
    for (const auto& g : enumerate_uec_representatives(4))
        for (const auto& r : all_monomial_reps(g))
            for (const auto& m : admissible_moves(r, MoveKind::split)) {
                auto s = apply(r, m);
                EXPECT_EQ(s.terms.size(), r.terms.size() + 1);
                int j1 = term_of(s, r.terms[m.j1].source), j2 = term_of(s, m.c);
                EXPECT_EQ(apply_merge(s, j1, j2), r);
                ++checked;
            }
    EXPECT_GT(checked, 0);
}

TEST(Moves, EveryMoveYieldsARepresentativeWithTheExpectedTermCount) {
    for (int n = 2; n <= 5; ++n)
        for (const auto& g : enumerate_uec_representatives(n)) {
            const int a = static_cast<int>(monomial_rep(g).terms.size());
            for (const auto& r : all_monomial_reps(g))
                for (const auto& m : admissible_moves(r)) {
                    auto out = apply(r, m);
                    ASSERT_TRUE(is_valid(out));
                    auto h = realize(out);
                    ASSERT_TRUE(is_uec_representative(h));
                    const int b = static_cast<int>(out.terms.size());
                    EXPECT_EQ(independence_number(h), b);
                    switch (m.kind) {
                        case MoveKind::merge: EXPECT_EQ(b, a - 1); break;
                        case MoveKind::split: EXPECT_EQ(b, a + 1); break;
                        case MoveKind::within:
                            EXPECT_EQ(sufficient_statistic(out), sufficient_statistic(r));
                            EXPECT_EQ(b, a);
                            break;
                        default: EXPECT_EQ(b, a); break;
                    }
                }
        }
}

TEST(Moves, RandomWalksStayValid) {
    std::mt19937_64 rng(21);
    for (int walk = 0; walk < 40; ++walk) {
        auto reps = enumerate_uec_representatives(5);
        auto r = monomial_rep(reps[rng() % reps.size()]);
        for (int step = 0; step < 50; ++step) {
            auto moves = admissible_moves(r);
            ASSERT_FALSE(moves.empty());
            r = apply(r, moves[rng() % moves.size()]);
            ASSERT_TRUE(is_valid(r));
            ASSERT_TRUE(oracle::is_uec_representative(realize(r)));
        }
    }
}

TEST(Moves, ConnectAllRepresentatives) {
    for (int n = 4; n <= 5; ++n) {
        auto reps = enumerate_uec_representatives(n);
        std::set<std::string> seen{uec_id(reps.front())};
        std::queue<std::string> todo;
        todo.push(uec_id(reps.front()));
        while (!todo.empty()) {
            auto g = graph_from_uec_id(n, todo.front());
            todo.pop();
            for (MoveKind k : kAllMoveKinds)
                for (const auto& id : monomial_neighbors(g, k))
                    if (seen.insert(id).second) todo.push(id);
        }
        EXPECT_EQ(seen.size(), reps.size());
    }
}

TEST(Moves, WithinMovesConnectEachFiberOnFourVertices) {
    std::map<SufficientStatistic, std::set<std::string>> fibers;
    std::map<std::string, MonomialRep> by_key;
    for (const auto& g : enumerate_uec_representatives(4))
        for (const auto& r : all_monomial_reps(g)) {
            fibers[sufficient_statistic(r)].insert(key(r));
            by_key[key(r)] = r;
        }
    for (const auto& [stat, members] : fibers) {
        std::set<std::string> seen{*members.begin()};
        std::queue<std::string> todo;
        todo.push(*members.begin());
        while (!todo.empty()) {
            auto r = by_key.at(todo.front());
            todo.pop();
            for (const auto& m : admissible_moves(r, MoveKind::within)) {
                auto next = apply(r, m);
                if (seen.insert(key(next)).second) todo.push(key(next));
            }
        }
        EXPECT_EQ(seen, members);
    }
}

TEST(Moves, FiberEquivalence) {
    auto a = realize(rep(5, {{0, {1, 2}}, {3, {2, 4}}}));
    auto b = realize(rep(5, {{0, {2, 4}}, {3, {1, 2}}}));
    EXPECT_TRUE(fiber_equivalent(a, b));
    EXPECT_TRUE(fiber_equivalent(a, a));
    EXPECT_FALSE(fiber_equivalent(a, UndirectedGraph(5)));
}

TEST(Moves, KindNamesRoundTrip) {
    for (MoveKind k : kAllMoveKinds) EXPECT_EQ(move_kind_from_string(to_string(k)), k);
    EXPECT_THROW(move_kind_from_string("teleport"), std::invalid_argument);
}
