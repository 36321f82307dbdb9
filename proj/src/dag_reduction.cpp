#include "uecmc/dag_reduction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "uecmc/combinatorics.hpp"

namespace uecmc {

int DagReduction::n() const {
    int total = 0;
    for (const auto& node : nodes) total += static_cast<int>(node.size());
    return total;
}

Cpdag init_cpdag(const UndirectedGraph& g) {
    if (!is_uec_representative(g)) throw NotUecRepresentative(independence_number(g), intersection_number(g));
    const int n = g.n();
    // into[b] has bit a when some induced path orients a -> b.
    std::vector<Mask> into(n, 0);
    for (int mid = 0; mid < n; ++mid) {
        auto nb = members(g.neighbors(mid));
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!g.has_edge(nb[i], nb[j])) into[mid] |= bit(nb[i]) | bit(nb[j]);
    }
    Cpdag out(n);
    for (auto [a, b] : g.edges()) {
        const bool ab = (into[b] & bit(a)) != 0;
        const bool ba = (into[a] & bit(b)) != 0;
        if (ab && ba) continue;
        if (ab)
            out.add_directed(a, b);
        else if (ba)
            out.add_directed(b, a);
        else
            out.add_undirected(a, b);
    }
    return out;
}

DagReduction to_dag_reduction(const UndirectedGraph& g) {
    Cpdag cp = init_cpdag(g);
    auto comps = cp.chain_components();
    std::vector<int> owner(g.n(), -1);
    DagReduction d;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        d.nodes.push_back(members(comps[i]));
        for (int v : d.nodes.back()) owner[v] = static_cast<int>(i);
    }
    std::set<Edge> edges;
    for (auto [a, b] : cp.directed_edges()) edges.emplace(owner[a], owner[b]);
    d.edges.assign(edges.begin(), edges.end());
    return d;
}

namespace {

void check_structure(const DagReduction& d) {
    const int n = d.n();
    if (n > kMaxVertices) throw std::invalid_argument("reduction has more than 64 vertices");
    if (d.nodes.size() > static_cast<std::size_t>(kMaxVertices)) throw std::invalid_argument("too many nodes");
    Mask seen = 0;
    int prev_min = -1;
    for (const auto& node : d.nodes) {
        if (node.empty()) throw std::invalid_argument("reduction node is empty");
        if (!std::is_sorted(node.begin(), node.end())) throw std::invalid_argument("reduction node not sorted");
        if (node.front() <= prev_min) throw std::invalid_argument("reduction nodes not ordered by smallest vertex");
        prev_min = node.front();
        for (int v : node) {
            if (v < 0 || v >= n) throw std::invalid_argument("reduction vertex out of range");
            if (seen & bit(v)) throw std::invalid_argument("reduction nodes overlap");
            seen |= bit(v);
        }
    }
    const int k = static_cast<int>(d.nodes.size());
    for (auto [a, b] : d.edges)
        if (a < 0 || a >= k || b < 0 || b >= k || a == b) throw std::invalid_argument("reduction edge out of range");
}

}  // namespace

ReductionView::ReductionView(const DagReduction& d) {
    check_structure(d);
    const int k = static_cast<int>(d.nodes.size());
    vertices.resize(k);
    parents.assign(k, 0);
    children.assign(k, 0);
    for (int i = 0; i < k; ++i) vertices[i] = to_mask(d.nodes[i]);
    for (auto [a, b] : d.edges) {
        children[a] |= bit(b);
        parents[b] |= bit(a);
    }
    for (int i = 0; i < k; ++i)
        if (parents[i] == 0) sources |= bit(i);
    max_ancestors.assign(k, 0);
    for (int i = 0; i < k; ++i) {
        Mask seen = bit(i), frontier = bit(i);
        while (frontier) {
            Mask next = 0;
            for (Mask m = frontier; m; m &= m - 1) next |= parents[lowest(m)];
            frontier = next & ~seen;
            seen |= next;
        }
        max_ancestors[i] = seen & sources;
    }
    // Acyclicity: Kahn on node bitmasks.
    Mask placed = 0;
    for (int round = 0; round < k; ++round) {
        Mask ready = 0;
        for (int i = 0; i < k; ++i)
            if ((placed & bit(i)) == 0 && (parents[i] & ~placed) == 0) ready |= bit(i);
        if (ready == 0) throw std::invalid_argument("reduction has a cycle");
        placed |= ready;
        if (placed == full_mask(k)) break;
    }
}

void validate(const DagReduction& d) {
    ReductionView view(d);
    const int k = view.size();
    for (int i = 0; i < k; ++i) {
        if ((view.sources & bit(i)) == 0 && popcount(view.max_ancestors[i]) < 2)
            throw std::invalid_argument("non-source node with fewer than two maximal ancestors");
        for (int j = i + 1; j < k; ++j)
            if (view.max_ancestors[i] == view.max_ancestors[j])
                throw std::invalid_argument("two nodes share a maximal-ancestor set");
    }
    std::set<Edge> expected;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Mask ma = view.max_ancestors[a], mb = view.max_ancestors[b];
            if (a != b && (ma & ~mb) == 0 && ma != mb) expected.emplace(a, b);
        }
    std::set<Edge> actual(d.edges.begin(), d.edges.end());
    if (actual.size() != d.edges.size()) throw std::invalid_argument("duplicate reduction edges");
    if (actual != expected) throw std::invalid_argument("reduction edges do not follow the maximal-ancestor lattice");
}

UndirectedGraph reconstruct_uec(const DagReduction& d) {
    validate(d);
    ReductionView view(d);
    UndirectedGraph g(d.n());
    const int k = view.size();
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            if ((view.max_ancestors[a] & view.max_ancestors[b]) == 0) continue;
            for (int u : d.nodes[a])
                for (int v : d.nodes[b])
                    if (u != v) g.add_edge(u, v);
        }
    return g;
}

namespace {

/// Mutable DAG on vertex sets used while transcribing the algorithms.
struct Work {
    std::vector<Mask> verts;
    std::set<Edge> edges;

    explicit Work(const DagReduction& d) {
        for (const auto& node : d.nodes) verts.push_back(to_mask(node));
        edges.insert(d.edges.begin(), d.edges.end());
    }

    int add_node(Mask m) {
        verts.push_back(m);
        return static_cast<int>(verts.size()) - 1;
    }

    void remove_node(int i) {
        verts[i] = 0;
        std::erase_if(edges, [i](const Edge& e) { return e.first == i || e.second == i; });
    }

    std::vector<int> children(int i) const {
        std::vector<int> out;
        for (auto [a, b] : edges)
            if (a == i) out.push_back(b);
        return out;
    }
};

/// Recomputes maximal ancestors on the working DAG and rewrites the edges in
/// lattice normal form; throws std::logic_error if the result is not a valid
/// reduction.
DagReduction normalize(const Work& w) {
    const int m = static_cast<int>(w.verts.size());
    std::vector<std::vector<int>> parents(m);
    for (auto [a, b] : w.edges) parents[b].push_back(a);
    std::vector<int> alive;
    for (int i = 0; i < m; ++i)
        if (w.verts[i]) alive.push_back(i);

    // Signature: union of vertex sets of the source nodes above a node.
    std::vector<Mask> sig(m, 0);
    std::vector<int> source_count(m, 0);
    std::vector<int> state(m, 0);
    std::vector<std::set<int>> anc_sources(m);
    auto visit = [&](auto&& self, int i) -> void {
        if (state[i] == 2) return;
        if (state[i] == 1) throw std::logic_error("move produced a cyclic reduction");
        state[i] = 1;
        if (parents[i].empty()) {
            anc_sources[i].insert(i);
        } else {
            for (int p : parents[i]) {
                self(self, p);
                anc_sources[i].insert(anc_sources[p].begin(), anc_sources[p].end());
            }
        }
        state[i] = 2;
    };
    for (int i : alive) {
        visit(visit, i);
        for (int s : anc_sources[i]) sig[i] |= w.verts[s];
        source_count[i] = static_cast<int>(anc_sources[i].size());
    }
    for (int i : alive) {
        if (!parents[i].empty() && source_count[i] < 2)
            throw std::logic_error("move produced a non-source node with one maximal ancestor");
        for (int j : alive)
            if (i < j && sig[i] == sig[j]) throw std::logic_error("move produced duplicate maximal-ancestor sets");
    }

    std::sort(alive.begin(), alive.end(), [&](int a, int b) { return lowest(w.verts[a]) < lowest(w.verts[b]); });
    DagReduction out;
    for (int i : alive) out.nodes.push_back(members(w.verts[i]));
    const int k = static_cast<int>(alive.size());
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Mask sa = sig[alive[a]], sb = sig[alive[b]];
            if (a != b && (sa & ~sb) == 0 && sa != sb) out.edges.emplace_back(a, b);
        }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

bool is_source(const ReductionView& v, int i) { return i >= 0 && i < v.size() && (v.sources & bit(i)); }

}  // namespace

DagReduction merge_move(const DagReduction& d, int s, int s2) {
    ReductionView view(d);
    if (!is_source(view, s) || !is_source(view, s2) || s == s2) throw MoveUnavailable("merge: picks must be two sources");
    if (popcount(view.vertices[s]) != 1 || popcount(view.vertices[s2]) != 1)
        throw MoveUnavailable("merge: sources must be singletons");
    if (view.children[s] != view.children[s2]) throw MoveUnavailable("merge: sources must share their children");
    Work w(d);
    w.verts[s] |= w.verts[s2];
    for (int c : members(view.children[s] & view.children[s2]))
        if (popcount(view.parents[c]) == 2) {
            w.verts[s] |= w.verts[c];
            w.remove_node(c);
        }
    w.remove_node(s2);
    return normalize(w);
}

DagReduction split_move(const DagReduction& d, int s, int v, int wv) {
    ReductionView view(d);
    if (!is_source(view, s)) throw MoveUnavailable("split: pick must be a source");
    const Mask sv = view.vertices[s];
    if (popcount(sv) < 2) throw MoveUnavailable("split: source must have at least two vertices");
    if (v < 0 || v >= kMaxVertices || (sv & bit(v)) == 0) throw MoveUnavailable("split: v must lie in the source");
    if (popcount(sv) == 2 && wv < 0) wv = lowest(sv & ~bit(v));
    if (wv < 0 || wv >= kMaxVertices || (sv & bit(wv)) == 0 || wv == v)
        throw MoveUnavailable("split: w must be a second vertex of the source");
    Work w(d);
    const auto ch = w.children(s);
    const int nv = w.add_node(bit(v));
    w.verts[s] &= ~bit(v);
    if (popcount(w.verts[s]) == 1) {
        for (int c : ch) w.edges.emplace(nv, c);
    } else {
        const int nw = w.add_node(bit(wv));
        w.verts[s] &= ~bit(wv);
        for (int c : ch) w.edges.emplace(nw, c);
        w.edges.emplace(nw, s);
        w.edges.emplace(nv, s);
    }
    return normalize(w);
}

DagReduction algebraic_move(const DagReduction& d, MoveKind fiber, const MovePicks& p) {
    if (fiber != MoveKind::within && fiber != MoveKind::out_add && fiber != MoveKind::out_del)
        throw std::invalid_argument("algebraic move needs within, out_add or out_del");
    ReductionView view(d);
    const int k = view.size();
    const int t = p.t;
    if (t < 0 || t >= k) throw MoveUnavailable("algebraic move: t out of range");
    Mask target;
    if (fiber == MoveKind::out_del) {
        if (view.parents[t] == 0) throw MoveUnavailable("out_del: t must have parents");
        if (p.s < 0 || p.s >= k || (view.max_ancestors[t] & bit(p.s)) == 0)
            throw MoveUnavailable("out_del: s must be a maximal ancestor of t");
        target = view.max_ancestors[t] & ~bit(p.s);
    } else {
        if (!is_source(view, p.s) || !is_source(view, p.s2) || p.s == p.s2)
            throw MoveUnavailable("algebraic move: s and s2 must be distinct sources");
        const Mask only_s = view.children[p.s] & ~view.children[p.s2];
        const bool t_ok = (t == p.s && popcount(view.vertices[t]) >= 2) || (only_s & bit(t));
        if (!t_ok) throw MoveUnavailable("algebraic move: t is not admissible for (s, s2)");
        target = bit(p.s2) | view.max_ancestors[t];
        if (fiber == MoveKind::within) target &= ~bit(p.s);
    }
    if (p.v < 0 || p.v >= kMaxVertices || (view.vertices[t] & bit(p.v)) == 0)
        throw MoveUnavailable("algebraic move: v must lie in t");

    Work w(d);
    int existing = -1;
    for (int i = 0; i < k; ++i)
        if (view.max_ancestors[i] == target) existing = i;
    if (existing >= 0) {
        w.verts[existing] |= bit(p.v);
    } else {
        const int nt = w.add_node(bit(p.v));
        for (int i = 0; i < k; ++i) {
            const Mask ma = view.max_ancestors[i];
            if (ma != target && (ma & ~target) == 0) w.edges.emplace(i, nt);
            if (ma != target && (target & ~ma) == 0) w.edges.emplace(nt, i);
        }
    }
    w.verts[t] &= ~bit(p.v);
    if (w.verts[t] == 0) w.remove_node(t);
    return normalize(w);
}

DagReduction apply_move(const DagReduction& d, const MovePicks& p) {
    switch (p.kind) {
        case MoveKind::merge: return merge_move(d, p.s, p.s2);
        case MoveKind::split: return split_move(d, p.s, p.v, p.w);
        default: return algebraic_move(d, p.kind, p);
    }
}

std::vector<std::pair<int, int>> merge_candidates(const ReductionView& view) {
    std::vector<std::pair<int, int>> out;
    auto src = members(view.sources);
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = i + 1; j < src.size(); ++j) {
            int a = src[i], b = src[j];
            if (popcount(view.vertices[a]) == 1 && popcount(view.vertices[b]) == 1 &&
                view.children[a] == view.children[b])
                out.emplace_back(a, b);
        }
    return out;
}

std::vector<int> split_candidates(const ReductionView& view) {
    std::vector<int> out;
    for (int s : members(view.sources))
        if (popcount(view.vertices[s]) >= 2) out.push_back(s);
    return out;
}

std::vector<int> out_del_targets(const ReductionView& view) {
    std::vector<int> out;
    for (int i = 0; i < view.size(); ++i)
        if (view.parents[i] != 0) out.push_back(i);
    return out;
}

std::vector<std::pair<int, int>> algebraic_pairs(const ReductionView& view) {
    std::vector<std::pair<int, int>> out;
    for (int s : members(view.sources))
        for (int s2 : members(view.sources))
            if (s != s2 && (popcount(view.vertices[s]) >= 2 || (view.children[s] & ~view.children[s2]) != 0))
                out.emplace_back(s, s2);
    return out;
}

std::vector<int> algebraic_targets(const ReductionView& view, int s, int s2) {
    Mask pool = view.children[s] & ~view.children[s2];
    if (popcount(view.vertices[s]) >= 2) pool |= bit(s);
    return members(pool);
}

bool move_available(const ReductionView& view, MoveKind kind) {
    switch (kind) {
        case MoveKind::merge: return !merge_candidates(view).empty();
        case MoveKind::split: return !split_candidates(view).empty();
        case MoveKind::out_del: return !out_del_targets(view).empty();
        case MoveKind::out_add:
        case MoveKind::within: return !algebraic_pairs(view).empty();
    }
    return false;
}

std::vector<WeightedMove> enumerate_moves(const DagReduction& d, MoveKind kind) {
    ReductionView view(d);
    std::vector<WeightedMove> out;
    switch (kind) {
        case MoveKind::merge: {
            auto pairs = merge_candidates(view);
            for (auto [a, b] : pairs) out.push_back({{kind, a, b}, 1.0 / pairs.size()});
            break;
        }
        case MoveKind::split: {
            auto srcs = split_candidates(view);
            for (int s : srcs) {
                auto vs = members(view.vertices[s]);
                const double base = 1.0 / srcs.size() / vs.size() / (vs.size() - 1);
                for (int v : vs)
                    for (int w : vs)
                        if (v != w) out.push_back({{kind, s, -1, -1, v, w}, base});
            }
            break;
        }
        case MoveKind::out_del: {
            auto ts = out_del_targets(view);
            for (int t : ts) {
                auto mas = members(view.max_ancestors[t]);
                auto vs = members(view.vertices[t]);
                const double base = 1.0 / ts.size() / mas.size() / vs.size();
                for (int s : mas)
                    for (int v : vs) out.push_back({{kind, s, -1, t, v}, base});
            }
            break;
        }
        case MoveKind::out_add:
        case MoveKind::within: {
            auto pairs = algebraic_pairs(view);
            for (auto [s, s2] : pairs) {
                auto ts = algebraic_targets(view, s, s2);
                for (int t : ts) {
                    auto vs = members(view.vertices[t]);
                    const double base = 1.0 / pairs.size() / ts.size() / vs.size();
                    for (int v : vs) out.push_back({{kind, s, s2, t, v}, base});
                }
            }
            break;
        }
    }
    return out;
}

TransitionWeights TransitionWeights::parse(const std::string& text) {
    TransitionWeights out;
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ':')) {
        if (i >= 5) throw std::invalid_argument("transitions need exactly five weights m:s:a:d:w");
        std::size_t used = 0;
        double value = 0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty() || !(value >= 0))
            throw std::invalid_argument("bad transition weight '" + item + "'");
        out.weight[i++] = value;
    }
    if (i != 5) throw std::invalid_argument("transitions need exactly five weights m:s:a:d:w");
    double total = 0;
    for (double w : out.weight) total += w;
    if (!(total > 0)) throw std::invalid_argument("transition weights must not all be zero");
    return out;
}

std::string TransitionWeights::str() const {
    std::ostringstream os;
    for (int i = 0; i < 5; ++i) os << (i ? ":" : "") << weight[i];
    return os.str();
}

std::array<double, 5> kind_probabilities(const ReductionView& view, const TransitionWeights& w) {
    std::array<double, 5> p{};
    double total = 0;
    for (MoveKind k : kAllMoveKinds)
        if (w[k] > 0 && move_available(view, k)) {
            p[static_cast<int>(k)] = w[k];
            total += w[k];
        }
    if (total > 0)
        for (double& x : p) x /= total;
    return p;
}

MoveKernel::MoveKernel(TransitionWeights weights, std::size_t cache_limit)
    : weights_(weights), cache_limit_(cache_limit) {}

const std::unordered_map<std::string, double>& MoveKernel::distribution(const DagReduction& d,
                                                                       const std::string& id) {
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
    if (cache_.size() >= cache_limit_) cache_.clear();
    std::unordered_map<std::string, double> dist;
    ReductionView view(d);
    auto kinds = kind_probabilities(view, weights_);
    for (MoveKind k : kAllMoveKinds) {
        const double pk = kinds[static_cast<int>(k)];
        if (pk <= 0) continue;
        for (const auto& wm : enumerate_moves(d, k))
            dist[uec_id(reconstruct_uec(apply_move(d, wm.picks)))] += pk * wm.probability;
    }
    return cache_.emplace(id, std::move(dist)).first->second;
}

namespace {

template <typename T>
std::size_t uniform_index(const std::vector<T>& items, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng);
}

}  // namespace

std::optional<std::pair<MoveProposal, DagReduction>> MoveKernel::propose(const DagReduction& d,
                                                                         const std::string& id,
                                                                         std::mt19937_64& rng) {
    ReductionView view(d);
    auto kinds = kind_probabilities(view, weights_);
    double total = 0;
    for (double p : kinds) total += p;
    if (total <= 0) return std::nullopt;

    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    int chosen = -1;
    for (int i = 0; i < 5; ++i) {
        if (kinds[i] <= 0) continue;
        chosen = i;
        if (u < kinds[i]) break;
        u -= kinds[i];
    }
    const MoveKind kind = static_cast<MoveKind>(chosen);
    MoveProposal prop;
    prop.kind = kind;
    prop.picks.kind = kind;
    double prob = kinds[chosen];

    switch (kind) {
        case MoveKind::merge: {
            auto pairs = merge_candidates(view);
            auto [a, b] = pairs[uniform_index(pairs, rng)];
            prop.picks.s = a;
            prop.picks.s2 = b;
            prob /= pairs.size();
            break;
        }
        case MoveKind::split: {
            auto srcs = split_candidates(view);
            const int s = srcs[uniform_index(srcs, rng)];
            auto vs = members(view.vertices[s]);
            const std::size_t vi = uniform_index(vs, rng);
            std::vector<int> rest;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (i != vi) rest.push_back(vs[i]);
            prop.picks.s = s;
            prop.picks.v = vs[vi];
            prop.picks.w = rest[uniform_index(rest, rng)];
            prob /= static_cast<double>(srcs.size()) * vs.size() * rest.size();
            break;
        }
        case MoveKind::out_del: {
            auto ts = out_del_targets(view);
            const int t = ts[uniform_index(ts, rng)];
            auto mas = members(view.max_ancestors[t]);
            auto vs = members(view.vertices[t]);
            prop.picks.t = t;
            prop.picks.s = mas[uniform_index(mas, rng)];
            prop.picks.v = vs[uniform_index(vs, rng)];
            prob /= static_cast<double>(ts.size()) * mas.size() * vs.size();
            break;
        }
        case MoveKind::out_add:
        case MoveKind::within: {
            auto pairs = algebraic_pairs(view);
            auto [s, s2] = pairs[uniform_index(pairs, rng)];
            auto ts = algebraic_targets(view, s, s2);
            const int t = ts[uniform_index(ts, rng)];
            auto vs = members(view.vertices[t]);
            prop.picks.s = s;
            prop.picks.s2 = s2;
            prop.picks.t = t;
            prop.picks.v = vs[uniform_index(vs, rng)];
            prob /= static_cast<double>(pairs.size()) * ts.size() * vs.size();
            break;
        }
    }
    prop.path_prob = prob;

    DagReduction next = apply_move(d, prop.picks);
    const std::string next_id = uec_id(reconstruct_uec(next));
    {
        const auto& fwd = distribution(d, id);
        auto it = fwd.find(next_id);
        prop.forward_prob = it == fwd.end() ? 0.0 : it->second;
    }
    {
        const auto& rev = distribution(next, next_id);
        auto it = rev.find(id);
        prop.reverse_prob = it == rev.end() ? 0.0 : it->second;
    }
    if (prop.reverse_prob <= 0) ++reverse_violations_;
    return std::make_pair(prop, std::move(next));
}

std::optional<std::pair<MoveProposal, DagReduction>> propose_random_move(const DagReduction& d,
                                                                         const TransitionWeights& w,
                                                                         std::mt19937_64& rng) {
    MoveKernel kernel(w);
    return kernel.propose(d, uec_id(reconstruct_uec(d)), rng);
}

}  // namespace uecmc
