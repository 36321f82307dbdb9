// Brute-force reference implementations. They share no code with the library
// beyond the graph containers used to pass inputs in.
#ifndef UECMC_TESTS_ORACLES_HPP
#define UECMC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "uecmc/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(const uecmc::UndirectedGraph& g) {
    Matrix a(g.n(), std::vector<int>(g.n(), 0));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

inline bool is_clique(const Matrix& a, std::uint32_t set) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((set >> i & 1) && (set >> j & 1) && !a[i][j]) return false;
    return true;
}

inline int alpha(const uecmc::UndirectedGraph& g) {
    auto a = adjacency(g);
    const int n = g.n();
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool independent = true;
        for (int i = 0; i < n && independent; ++i)
            for (int j = i + 1; j < n; ++j)
                if ((s >> i & 1) && (s >> j & 1) && a[i][j]) {
                    independent = false;
                    break;
                }
        if (independent) best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

/// Maximal cliques by filtering all vertex subsets.
inline std::vector<std::uint32_t> maximal_cliques(const uecmc::UndirectedGraph& g) {
    auto a = adjacency(g);
    const int n = g.n();
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        if (!is_clique(a, s)) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v)
            if (!(s >> v & 1) && is_clique(a, s | (1u << v))) maximal = false;
        if (maximal) out.push_back(s);
    }
    return out;
}

/// Smallest number of cliques covering every edge and every isolated vertex.
/// Some minimum cover always uses maximal cliques only.
inline int delta(const uecmc::UndirectedGraph& g) {
    auto a = adjacency(g);
    const int n = g.n();
    auto cliques = maximal_cliques(g);
    const int k = static_cast<int>(cliques.size());
    int best = 1 << 30;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
        int size = __builtin_popcountll(pick);
        if (size >= best) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            bool isolated = true;
            for (int j = 0; j < n; ++j)
                if (a[i][j]) isolated = false;
            if (isolated) {
                bool hit = false;
                for (int c = 0; c < k; ++c)
                    if ((pick >> c & 1) && (cliques[c] >> i & 1)) hit = true;
                ok = hit;
                continue;
            }
            for (int j = i + 1; j < n && ok; ++j) {
                if (!a[i][j]) continue;
                bool hit = false;
                for (int c = 0; c < k; ++c)
                    if ((pick >> c & 1) && (cliques[c] >> i & 1) && (cliques[c] >> j & 1)) hit = true;
                ok = hit;
            }
        }
        if (ok) best = size;
    }
    return g.n() == 0 ? 0 : best;
}

inline bool is_uec_representative(const uecmc::UndirectedGraph& g) { return alpha(g) == delta(g); }

/// All labelled graphs on n vertices, indexed by pair bitmask in (0,1),(0,2),... order.
inline uecmc::UndirectedGraph graph_from_index(int n, std::uint64_t index) {
    uecmc::UndirectedGraph g(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++k)
            if (index >> k & 1) g.add_edge(i, j);
    return g;
}

/// Ancestors by repeated parent lookup on an edge list; v is its own ancestor.
inline std::vector<std::set<int>> ancestor_sets(const uecmc::Dag& d) {
    const int n = d.n();
    std::vector<std::vector<int>> parents(n);
    for (auto [a, b] : d.edges()) parents[b].push_back(a);
    std::vector<std::set<int>> out(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (!out[v].insert(u).second) continue;
            for (int p : parents[u]) stack.push_back(p);
        }
    }
    return out;
}

/// Trek rule: adjacent iff the ancestor sets intersect.
inline uecmc::UndirectedGraph udg(const uecmc::Dag& d) {
    auto an = ancestor_sets(d);
    uecmc::UndirectedGraph g(d.n());
    for (int i = 0; i < d.n(); ++i)
        for (int j = i + 1; j < d.n(); ++j) {
            bool shared = false;
            for (int x : an[i])
                if (an[j].count(x)) shared = true;
            if (shared) g.add_edge(i, j);
        }
    return g;
}

/// Directed paths from i to j by depth-first enumeration.
inline std::int64_t count_paths(const uecmc::Dag& d, int i, int j) {
    if (i == j) return 1;
    std::int64_t total = 0;
    for (auto [a, b] : d.edges())
        if (a == i) total += count_paths(d, b, j);
    return total;
}

/// Walks i = w0 ... wk = j along DAG edges with no collider w(t-1) -> w(t) <- w(t+1).
/// An acyclic colliderless walk climbs to a single peak and descends, so length is
/// bounded by 2n and enumeration terminates.
inline std::int64_t count_colliderless_walks(const uecmc::Dag& d, int i, int j) {
    const int n = d.n();
    std::int64_t total = 0;
    // state: current vertex, whether the last step went forward (along an arrow)
    std::function<void(int, int, int)> walk = [&](int v, int last, int steps) {
        if (v == j) ++total;
        if (steps >= 2 * n) return;
        for (auto [a, b] : d.edges()) {
            if (b == v) {
                // step backwards to a parent: allowed unless the previous step arrived forwards
                if (last == 1) continue;
                walk(a, -1, steps + 1);
            }
            if (a == v) walk(b, 1, steps + 1);
        }
    };
    walk(i, 0, 0);
    return total;
}

inline uecmc::Dag random_dag(int n, double p, std::mt19937_64& rng) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    uecmc::Dag d(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) d.add_edge(order[i], order[j]);
    return d;
}

inline bool chordal(const Matrix& adj) {
    // Repeatedly strip a simplicial vertex.
    const int n = static_cast<int>(adj.size());
    std::vector<bool> alive(n, true);
    for (int round = 0; round < n; ++round) {
        int pick = -1;
        for (int v = 0; v < n && pick < 0; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (alive[u] && adj[v][u]) nb.push_back(u);
            bool clique = true;
            for (std::size_t i = 0; i < nb.size() && clique; ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) clique = false;
            if (clique) pick = v;
        }
        if (pick < 0) return false;
        alive[pick] = false;
    }
    return true;
}

// Closed neighborhoods of a maximum independent set, found by subset search.
inline std::vector<std::set<int>> representative_cover(const uecmc::UndirectedGraph& g) {
    const int n = g.n();
    auto a = adjacency(g);
    std::uint32_t best = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool independent = true;
        for (int u = 0; u < n && independent; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((s >> u & 1) && (s >> v & 1) && a[u][v]) independent = false;
        if (independent && __builtin_popcount(s) > __builtin_popcount(best)) best = s;
    }
    std::vector<std::set<int>> cover;
    for (int m = 0; m < n; ++m) {
        if (!(best >> m & 1)) continue;
        std::set<int> c{m};
        for (int u = 0; u < n; ++u)
            if (a[m][u]) c.insert(u);
        cover.push_back(c);
    }
    return cover;
}

// Structural conditions on init_cpdag output for a representative g; empty when all hold.
inline std::vector<std::string> cpdag_violations(const uecmc::UndirectedGraph& g, const uecmc::Cpdag& c) {
    const int n = g.n();
    std::vector<std::string> out;
    Matrix und(n, std::vector<int>(n, 0)), dir(n, std::vector<int>(n, 0));
    for (auto [a, b] : c.undirected_edges()) und[a][b] = und[b][a] = 1;
    for (auto [a, b] : c.directed_edges()) dir[a][b] = 1;
    auto adjacent = [&](int a, int b) { return und[a][b] || dir[a][b] || dir[b][a]; };
    auto pair = [](int a, int b) { return std::to_string(a) + "," + std::to_string(b); };

    // (a) no induced v -> u - w
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            for (int w = 0; w < n; ++w)
                if (v != w && dir[v][u] && und[u][w] && !adjacent(v, w))
                    out.push_back("induced v -> u - w at " + pair(v, w));
    // (b) undirected part chordal
    if (!chordal(und)) out.push_back("undirected part not chordal");
    // (c) no partially directed cycle
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!dir[a][b]) continue;
            std::vector<bool> seen(n, false);
            std::vector<int> stack{b};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                if (seen[x]) continue;
                seen[x] = true;
                for (int y = 0; y < n; ++y)
                    if (dir[x][y] || und[x][y]) stack.push_back(y);
            }
            if (seen[a]) out.push_back("partially directed cycle through " + pair(a, b));
        }
    // (d) v-structures exactly where the cover forces them
    auto cover = representative_cover(g);
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w)
            for (int x = 0; x < n; ++x) {
                if (x == v || x == w) continue;
                const bool is_v = dir[v][x] && dir[w][x] && !adjacent(v, w);
                bool c1 = false, c2 = false, all = true;
                for (const auto& cl : cover) {
                    const bool hv = cl.count(v), hw = cl.count(w), hx = cl.count(x);
                    if (hv && hx && !hw) c1 = true;
                    if (hw && hx && !hv) c2 = true;
                    if ((hv || hw) && !hx) all = false;
                }
                if (is_v != (c1 && c2 && all)) out.push_back("v-structure mismatch at " + pair(v, w) + "->" + std::to_string(x));
            }
    // skeleton loses only doubly oriented edges; a -> b iff ne[a] is a proper subset of ne[b]
    auto a_ = adjacency(g);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!a_[a][b] || !adjacent(a, b)) continue;
            bool a_in_b = true, b_in_a = true;
            for (int u = 0; u < n; ++u) {
                const bool ua = u == a || a_[a][u], ub = u == b || a_[b][u];
                if (ua && !ub) a_in_b = false;
                if (ub && !ua) b_in_a = false;
            }
            const bool same = a_in_b && b_in_a;
            if (bool(dir[a][b]) != (a_in_b && !same) || bool(dir[b][a]) != (b_in_a && !same) || bool(und[a][b]) != same)
                out.push_back("edge direction rule fails at " + pair(a, b));
        }
    return out;
}

}  // namespace oracle

#endif  // UECMC_TESTS_ORACLES_HPP
