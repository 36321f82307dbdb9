#include "uecmc/graph.hpp"

#include <stdexcept>
#include <string>

namespace uecmc {

std::vector<int> members(Mask m) {
    std::vector<int> out;
    out.reserve(popcount(m));
    for (; m; m &= m - 1) out.push_back(lowest(m));
    return out;
}

Mask to_mask(const std::vector<int>& vertices) {
    Mask m = 0;
    for (int v : vertices) m |= bit(v);
    return m;
}

namespace {

void check_size(int n) {
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("vertex count must be in [0, 64], got " + std::to_string(n));
}

void check_vertex(int v, int n) {
    if (v < 0 || v >= n)
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n = " + std::to_string(n));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("path count overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("path count overflow");
    return r;
}

}  // namespace

// UndirectedGraph

UndirectedGraph::UndirectedGraph(int n) : n_(n) {
    check_size(n);
    adj_.assign(n, 0);
}

UndirectedGraph::UndirectedGraph(int n, const std::vector<Edge>& edges) : UndirectedGraph(n) {
    for (auto [a, b] : edges) add_edge(a, b);
}

UndirectedGraph UndirectedGraph::complete(int n) {
    UndirectedGraph g(n);
    for (int v = 0; v < n; ++v) g.adj_[v] = full_mask(n) & ~bit(v);
    return g;
}

void UndirectedGraph::check_pair(int a, int b) const {
    check_vertex(a, n_);
    check_vertex(b, n_);
    if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
}

void UndirectedGraph::add_edge(int a, int b) {
    check_pair(a, b);
    adj_[a] |= bit(b);
    adj_[b] |= bit(a);
}

void UndirectedGraph::remove_edge(int a, int b) {
    check_pair(a, b);
    adj_[a] &= ~bit(b);
    adj_[b] &= ~bit(a);
}

bool UndirectedGraph::has_edge(int a, int b) const {
    check_vertex(a, n_);
    check_vertex(b, n_);
    return (adj_[a] & bit(b)) != 0;
}

bool UndirectedGraph::is_clique(Mask vertices) const {
    for (Mask m = vertices; m; m &= m - 1) {
        int v = lowest(m);
        if ((vertices & ~bit(v) & ~adj_[v]) != 0) return false;
    }
    return true;
}

std::vector<Edge> UndirectedGraph::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
        for (Mask m = adj_[a] & ~full_mask(a + 1); m; m &= m - 1) out.emplace_back(a, lowest(m));
    return out;
}

int UndirectedGraph::edge_count() const {
    int total = 0;
    for (Mask m : adj_) total += popcount(m);
    return total / 2;
}

// Dag

Dag::Dag(int n) : n_(n) {
    check_size(n);
    children_.assign(n, 0);
    parents_.assign(n, 0);
}

Dag::Dag(int n, const std::vector<Edge>& edges) : Dag(n) {
    for (auto [a, b] : edges) add_edge(a, b);
}

void Dag::add_edge(int parent, int child) {
    check_vertex(parent, n_);
    check_vertex(child, n_);
    if (parent == child) throw std::invalid_argument("self-loop at vertex " + std::to_string(parent));
    children_[parent] |= bit(child);
    parents_[child] |= bit(parent);
}

void Dag::remove_edge(int parent, int child) {
    check_vertex(parent, n_);
    check_vertex(child, n_);
    children_[parent] &= ~bit(child);
    parents_[child] &= ~bit(parent);
}

bool Dag::has_edge(int parent, int child) const {
    check_vertex(parent, n_);
    check_vertex(child, n_);
    return (children_[parent] & bit(child)) != 0;
}

std::vector<Edge> Dag::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
        for (int b : members(children_[a])) out.emplace_back(a, b);
    return out;
}

int Dag::edge_count() const {
    int total = 0;
    for (Mask m : children_) total += popcount(m);
    return total;
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> order;
    order.reserve(n_);
    Mask placed = 0;
    while (static_cast<int>(order.size()) < n_) {
        bool progressed = false;
        for (int v = 0; v < n_; ++v) {
            if ((placed & bit(v)) == 0 && (parents_[v] & ~placed) == 0) {
                order.push_back(v);
                placed |= bit(v);
                progressed = true;
            }
        }
        if (!progressed) throw std::invalid_argument("graph contains a directed cycle");
    }
    return order;
}

bool Dag::is_acyclic() const {
    try {
        topological_order();
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

Mask Dag::ancestors(int v) const {
    check_vertex(v, n_);
    Mask seen = bit(v), frontier = bit(v);
    while (frontier) {
        Mask next = 0;
        for (Mask m = frontier; m; m &= m - 1) next |= parents_[lowest(m)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

Mask Dag::descendants(int v) const {
    check_vertex(v, n_);
    Mask seen = bit(v), frontier = bit(v);
    while (frontier) {
        Mask next = 0;
        for (Mask m = frontier; m; m &= m - 1) next |= children_[lowest(m)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

Mask Dag::sources() const {
    Mask out = 0;
    for (int v = 0; v < n_; ++v)
        if (parents_[v] == 0) out |= bit(v);
    return out;
}

Mask Dag::max_ancestors(int v) const { return ancestors(v) & sources(); }

// Cpdag

Cpdag::Cpdag(int n) : n_(n) {
    check_size(n);
    out_.assign(n, 0);
    und_.assign(n, 0);
}

void Cpdag::add_directed(int a, int b) {
    check_vertex(a, n_);
    check_vertex(b, n_);
    if (a == b) throw std::invalid_argument("self-loop");
    remove_edge(a, b);
    out_[a] |= bit(b);
}

void Cpdag::add_undirected(int a, int b) {
    check_vertex(a, n_);
    check_vertex(b, n_);
    if (a == b) throw std::invalid_argument("self-loop");
    remove_edge(a, b);
    und_[a] |= bit(b);
    und_[b] |= bit(a);
}

void Cpdag::remove_edge(int a, int b) {
    out_[a] &= ~bit(b);
    out_[b] &= ~bit(a);
    und_[a] &= ~bit(b);
    und_[b] &= ~bit(a);
}

bool Cpdag::adjacent(int a, int b) const {
    return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
}

Mask Cpdag::parents(int v) const {
    Mask out = 0;
    for (int u = 0; u < n_; ++u)
        if (out_[u] & bit(v)) out |= bit(u);
    return out;
}

std::vector<Edge> Cpdag::directed_edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
        for (int b : members(out_[a])) out.emplace_back(a, b);
    return out;
}

std::vector<Edge> Cpdag::undirected_edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
        for (Mask m = und_[a] & ~full_mask(a + 1); m; m &= m - 1) out.emplace_back(a, lowest(m));
    return out;
}

UndirectedGraph Cpdag::skeleton() const {
    UndirectedGraph g(n_);
    for (auto [a, b] : directed_edges()) g.add_edge(a, b);
    for (auto [a, b] : undirected_edges()) g.add_edge(a, b);
    return g;
}

std::vector<Mask> Cpdag::chain_components() const {
    std::vector<Mask> comps;
    Mask assigned = 0;
    for (int v = 0; v < n_; ++v) {
        if (assigned & bit(v)) continue;
        Mask comp = bit(v), frontier = bit(v);
        while (frontier) {
            Mask next = 0;
            for (Mask m = frontier; m; m &= m - 1) next |= und_[lowest(m)];
            frontier = next & ~comp;
            comp |= next;
        }
        assigned |= comp;
        comps.push_back(comp);
    }
    return comps;
}

// CountMatrix

CountMatrix::CountMatrix(const std::vector<std::vector<std::int64_t>>& rows)
    : CountMatrix(static_cast<int>(rows.size())) {
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(rows[i].size()) != n_) throw std::invalid_argument("count matrix must be square");
        for (int j = 0; j < n_; ++j) at(i, j) = rows[i][j];
    }
}

// Operations

CountMatrix path_count_matrix(const Dag& dag) {
    const int n = dag.n();
    auto order = dag.topological_order();
    CountMatrix t(n);
    for (int j : order) {
        t.at(j, j) = 1;
        for (int k : members(dag.parents(j)))
            for (int i = 0; i < n; ++i) t.at(i, j) = checked_add(t.at(i, j), t.at(i, k));
    }
    return t;
}

CountMatrix colliderless_walk_counts(const Dag& dag) {
    const int n = dag.n();
    CountMatrix t = path_count_matrix(dag);
    CountMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < n; ++k) s = checked_add(s, checked_mul(t.at(k, i), t.at(k, j)));
            u.at(i, j) = s;
            u.at(j, i) = s;
        }
    return u;
}

Dag transitive_closure(const Dag& dag) {
    dag.topological_order();
    Dag out(dag.n());
    for (int v = 0; v < dag.n(); ++v)
        for (int w : members(dag.descendants(v) & ~bit(v))) out.add_edge(v, w);
    return out;
}

Dag reversal(const Dag& dag) {
    Dag out(dag.n());
    for (auto [a, b] : dag.edges()) out.add_edge(b, a);
    return out;
}

UndirectedGraph moralization(const Dag& dag) {
    UndirectedGraph g(dag.n());
    for (auto [a, b] : dag.edges()) g.add_edge(a, b);
    for (int v = 0; v < dag.n(); ++v) {
        auto pa = members(dag.parents(v));
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j) g.add_edge(pa[i], pa[j]);
    }
    return g;
}

DagOperators dag_operators(const Dag& dag) {
    dag.topological_order();
    return {transitive_closure(dag), reversal(dag), moralization(dag)};
}

UndirectedGraph support_graph(const CountMatrix& m) {
    UndirectedGraph g(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = i + 1; j < m.n(); ++j)
            if (m.at(i, j) != 0) g.add_edge(i, j);
    return g;
}

UndirectedGraph udg(const Dag& dag, UdgMethod method) {
    dag.topological_order();
    const int n = dag.n();
    switch (method) {
        case UdgMethod::ancestors: {
            std::vector<Mask> an(n);
            for (int v = 0; v < n; ++v) an[v] = dag.ancestors(v);
            UndirectedGraph g(n);
            for (int v = 0; v < n; ++v)
                for (int w = v + 1; w < n; ++w)
                    if (an[v] & an[w]) g.add_edge(v, w);
            return g;
        }
        case UdgMethod::max_ancestors: {
            UndirectedGraph g(n);
            for (int m : members(dag.sources())) {
                auto de = members(dag.descendants(m));
                for (std::size_t i = 0; i < de.size(); ++i)
                    for (std::size_t j = i + 1; j < de.size(); ++j) g.add_edge(de[i], de[j]);
            }
            return g;
        }
        case UdgMethod::moral_trans_rev:
            return moralization(transitive_closure(reversal(dag)));
        case UdgMethod::matrix:
            return support_graph(colliderless_walk_counts(dag));
    }
    throw std::invalid_argument("unknown udg method");
}

}  // namespace uecmc
