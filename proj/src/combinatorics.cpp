#include "uecmc/combinatorics.hpp"

#include <algorithm>
#include <sstream>

namespace uecmc {

NotUecRepresentative::NotUecRepresentative(int a, int d)
    : std::invalid_argument("not a UEC-representative: alpha = " + std::to_string(a) +
                            " < delta = " + std::to_string(d)),
      alpha(a),
      delta(d) {}

std::vector<SimplicialGroup> simplicial_groups(const UndirectedGraph& g) {
    std::vector<SimplicialGroup> groups;
    for (int v = 0; v < g.n(); ++v) {
        Mask nb = g.closed_neighborhood(v);
        if (!g.is_clique(nb)) continue;
        bool seen = std::any_of(groups.begin(), groups.end(), [&](const SimplicialGroup& s) { return s.clique == nb; });
        if (!seen) groups.push_back({v, nb});
    }
    return groups;
}

bool is_uec_representative(const UndirectedGraph& g) {
    auto groups = simplicial_groups(g);
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            if (g.has_edge(groups[i].center, groups[j].center)) return false;
    std::vector<Mask> covered(g.n(), 0);
    for (const auto& s : groups)
        for (int v : members(s.clique)) covered[v] |= s.clique;
    for (int v = 0; v < g.n(); ++v)
        if ((covered[v] & bit(v)) == 0 || (g.neighbors(v) & ~covered[v]) != 0) return false;
    return true;
}

namespace {

Mask mis_search(const UndirectedGraph& g, Mask pool) {
    if (pool == 0) return 0;
    // Vertices with no neighbor in the pool are always taken.
    Mask forced = 0;
    for (Mask m = pool; m; m &= m - 1) {
        int v = lowest(m);
        if ((g.neighbors(v) & pool) == 0) forced |= bit(v);
    }
    if (forced) return forced | mis_search(g, pool & ~forced);
    int best_v = -1, best_deg = -1;
    for (Mask m = pool; m; m &= m - 1) {
        int v = lowest(m);
        int d = popcount(g.neighbors(v) & pool);
        if (d > best_deg) best_deg = d, best_v = v;
    }
    Mask with = bit(best_v) | mis_search(g, pool & ~g.closed_neighborhood(best_v));
    Mask without = mis_search(g, pool & ~bit(best_v));
    return popcount(with) >= popcount(without) ? with : without;
}

void bron_kerbosch(const UndirectedGraph& g, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    Mask px = p | x;
    int pivot = lowest(px);
    int best = -1;
    for (Mask m = px; m; m &= m - 1) {
        int u = lowest(m);
        int c = popcount(p & g.neighbors(u));
        if (c > best) best = c, pivot = u;
    }
    for (Mask m = p & ~g.neighbors(pivot); m; m &= m - 1) {
        int v = lowest(m);
        bron_kerbosch(g, r | bit(v), p & g.neighbors(v), x & g.neighbors(v), out);
        p &= ~bit(v);
        x |= bit(v);
    }
}

struct CoverSearch {
    const UndirectedGraph& g;
    const std::vector<Mask>& cliques;
    int best;
    std::vector<Mask> chosen;
    std::vector<Mask> best_cover;

    void run(std::vector<Mask>& uncovered, int used) {
        int a = -1;
        for (int v = 0; v < g.n(); ++v)
            if (uncovered[v]) {
                a = v;
                break;
            }
        if (a < 0) {
            if (used < best) best = used, best_cover = chosen;
            return;
        }
        if (used + 1 >= best) return;
        int b = lowest(uncovered[a]);
        for (Mask c : cliques) {
            if ((c & bit(a)) == 0 || (c & bit(b)) == 0) continue;
            std::vector<Mask> next = uncovered;
            for (int v : members(c)) next[v] &= ~c;
            chosen.push_back(c);
            run(next, used + 1);
            chosen.pop_back();
        }
    }
};

}  // namespace

Mask maximum_independent_set(const UndirectedGraph& g) { return mis_search(g, full_mask(g.n())); }

int independence_number(const UndirectedGraph& g) { return popcount(maximum_independent_set(g)); }

std::vector<Mask> maximal_cliques(const UndirectedGraph& g) {
    std::vector<Mask> out;
    if (g.n() == 0) return out;
    bron_kerbosch(g, 0, full_mask(g.n()), 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Mask> minimum_clique_cover(const UndirectedGraph& g) {
    std::vector<Mask> uncovered(g.n());
    for (int v = 0; v < g.n(); ++v) uncovered[v] = g.neighbors(v);
    auto cliques = maximal_cliques(g);
    CoverSearch search{g, cliques, g.edge_count() + 1, {}, {}};
    search.run(uncovered, 0);
    for (int v = 0; v < g.n(); ++v)
        if (g.neighbors(v) == 0) search.best_cover.push_back(bit(v));
    std::sort(search.best_cover.begin(), search.best_cover.end(),
              [](Mask a, Mask b) { return lowest(a) != lowest(b) ? lowest(a) < lowest(b) : a < b; });
    return search.best_cover;
}

int intersection_number(const UndirectedGraph& g) { return static_cast<int>(minimum_clique_cover(g).size()); }

CliqueCover min_edge_clique_cover(const UndirectedGraph& g) {
    if (!is_uec_representative(g)) throw NotUecRepresentative(independence_number(g), intersection_number(g));
    CliqueCover cover;
    for (const auto& s : simplicial_groups(g)) {
        cover.cliques.push_back(s.clique);
        cover.centers.push_back(s.center);
    }
    return cover;
}

int source_count(const UndirectedGraph& g) { return static_cast<int>(min_edge_clique_cover(g).cliques.size()); }

namespace {

struct CoverEnumerator {
    int n;
    Mask full;
    std::vector<Mask> cands;
    const std::function<bool(const std::vector<Mask>&)>& visit;
    std::vector<Mask> chosen;
    bool stopped = false;

    void run(std::size_t start, Mask once, Mask multi) {
        Mask covered = once | multi;
        if (covered == full) {
            if (!visit(chosen)) stopped = true;
            return;
        }
        int e = lowest(~covered & full);
        for (std::size_t idx = start; idx < cands.size() && !stopped; ++idx) {
            Mask s = cands[idx];
            // Candidates are ordered by lowest element; none later can cover e.
            if (lowest(s) > e) break;
            if ((s & ~covered) == 0) continue;
            Mask next_multi = multi | (s & covered);
            Mask next_once = (once & ~s) | (s & ~covered);
            bool minimal = true;
            for (Mask t : chosen)
                if ((t & next_once) == 0) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            chosen.push_back(s);
            run(idx + 1, next_once, next_multi);
            chosen.pop_back();
        }
    }
};

}  // namespace

void for_each_minimal_cover(int n, std::vector<Mask> candidates,
                            const std::function<bool(const std::vector<Mask>&)>& visit) {
    if (n < 0 || n > 20) throw std::invalid_argument("minimal cover enumeration supports n <= 20");
    if (n == 0) {
        visit({});
        return;
    }
    const Mask full = full_mask(n);
    std::erase_if(candidates, [&](Mask m) { return m == 0 || (m & ~full) != 0; });
    std::sort(candidates.begin(), candidates.end(), [](Mask a, Mask b) {
        int la = lowest(a), lb = lowest(b);
        return la != lb ? la < lb : a < b;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    CoverEnumerator en{n, full, std::move(candidates), visit, {}};
    en.run(0, 0, 0);
}

UndirectedGraph graph_from_cover(int n, const std::vector<Mask>& sets) {
    UndirectedGraph g(n);
    for (Mask s : sets) {
        auto vs = members(s);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) g.add_edge(vs[i], vs[j]);
    }
    return g;
}

std::vector<UndirectedGraph> enumerate_uec_representatives(int n, int limit) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (n > limit)
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limit));
    std::vector<Mask> all;
    for (Mask m = 1; m <= full_mask(n); ++m) all.push_back(m);
    std::vector<UndirectedGraph> out;
    for_each_minimal_cover(n, all, [&](const std::vector<Mask>& sets) {
        out.push_back(graph_from_cover(n, sets));
        return true;
    });
    return out;
}

void canonicalize(MonomialRep& rep) {
    std::sort(rep.terms.begin(), rep.terms.end(),
              [](const MonomialTerm& a, const MonomialTerm& b) { return a.source < b.source; });
}

MonomialRep monomial_rep(const UndirectedGraph& g) {
    CliqueCover cover = min_edge_clique_cover(g);
    MonomialRep rep{g.n(), {}};
    for (std::size_t j = 0; j < cover.cliques.size(); ++j)
        rep.terms.push_back({cover.centers[j], cover.cliques[j] & ~bit(cover.centers[j])});
    canonicalize(rep);
    return rep;
}

std::vector<MonomialRep> all_monomial_reps(const UndirectedGraph& g) {
    CliqueCover cover = min_edge_clique_cover(g);
    const std::size_t k = cover.cliques.size();
    std::vector<std::vector<int>> options(k);
    for (std::size_t j = 0; j < k; ++j) {
        Mask others = 0;
        for (std::size_t l = 0; l < k; ++l)
            if (l != j) others |= cover.cliques[l];
        options[j] = members(cover.cliques[j] & ~others);
    }
    std::vector<MonomialRep> out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        MonomialRep rep{g.n(), {}};
        for (std::size_t j = 0; j < k; ++j) {
            int s = options[j][idx[j]];
            rep.terms.push_back({s, cover.cliques[j] & ~bit(s)});
        }
        canonicalize(rep);
        out.push_back(std::move(rep));
        std::size_t j = 0;
        while (j < k && ++idx[j] == options[j].size()) idx[j++] = 0;
        if (j == k) break;
    }
    return out;
}

UndirectedGraph realize(const MonomialRep& rep) {
    std::vector<Mask> sets;
    for (const auto& t : rep.terms) sets.push_back(t.tail | bit(t.source));
    return graph_from_cover(rep.n, sets);
}

bool is_valid(const MonomialRep& rep) {
    if (rep.n < 0 || rep.n > kMaxVertices) return false;
    const Mask full = full_mask(rep.n);
    Mask sources = 0, tails = 0;
    for (const auto& t : rep.terms) {
        if (t.source < 0 || t.source >= rep.n) return false;
        if (sources & bit(t.source)) return false;
        if (t.tail & ~full) return false;
        sources |= bit(t.source);
        tails |= t.tail;
    }
    if (sources & tails) return false;
    return (sources | tails) == full;
}

void validate(const MonomialRep& rep) {
    if (!is_valid(rep)) throw std::invalid_argument("invalid monomial representation " + to_string(rep));
}

SufficientStatistic sufficient_statistic(const MonomialRep& rep) {
    SufficientStatistic s;
    s.assn.assign(rep.n, 0);
    for (const auto& t : rep.terms) {
        s.sources.push_back(t.source);
        for (int v : members(t.tail)) ++s.assn[v];
    }
    std::sort(s.sources.begin(), s.sources.end());
    return s;
}

std::string to_string(const MonomialRep& rep) {
    std::ostringstream os;
    const bool sep = rep.n > 10;
    for (const auto& t : rep.terms) {
        os << "x_{" << t.source << '|';
        bool first = true;
        for (int v : members(t.tail)) {
            if (sep && !first) os << ',';
            os << v;
            first = false;
        }
        os << '}';
    }
    if (rep.terms.empty()) os << '1';
    return os.str();
}

std::string uec_id(const UndirectedGraph& g) {
    const int n = g.n();
    const int pairs = n * (n - 1) / 2;
    const int digits = std::max(1, (pairs + 3) / 4);
    std::vector<int> nibbles(digits, 0);
    int k = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++k)
            if (g.has_edge(a, b)) nibbles[k / 4] |= 1 << (k % 4);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(digits, '0');
    for (int d = 0; d < digits; ++d) out[digits - 1 - d] = hex[nibbles[d]];
    return out;
}

UndirectedGraph graph_from_uec_id(int n, const std::string& id) {
    const int pairs = n * (n - 1) / 2;
    const int digits = std::max(1, (pairs + 3) / 4);
    if (static_cast<int>(id.size()) != digits)
        throw std::invalid_argument("uec id '" + id + "' has wrong length for n = " + std::to_string(n));
    UndirectedGraph g(n);
    int k = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++k) {
            char c = id[digits - 1 - k / 4];
            int value;
            if (c >= '0' && c <= '9')
                value = c - '0';
            else if (c >= 'a' && c <= 'f')
                value = c - 'a' + 10;
            else
                throw std::invalid_argument("uec id '" + id + "' is not lowercase hex");
            if (value & (1 << (k % 4))) g.add_edge(a, b);
        }
    if (uec_id(g) != id) throw std::invalid_argument("uec id '" + id + "' sets bits beyond the vertex pairs");
    return g;
}

}  // namespace uecmc
