#ifndef UECMC_GRAPH_HPP
#define UECMC_GRAPH_HPP

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace uecmc {

/// Vertex set over at most 64 vertices, bit v set iff vertex v is a member.
using Mask = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline Mask bit(int v) { return Mask{1} << v; }
inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest(Mask m) { return std::countr_zero(m); }
inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }

/// Vertices of a mask in increasing order.
std::vector<int> members(Mask m);
Mask to_mask(const std::vector<int>& vertices);

using Edge = std::pair<int, int>;

class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(int n);
    UndirectedGraph(int n, const std::vector<Edge>& edges);

    static UndirectedGraph complete(int n);

    int n() const { return n_; }
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    bool has_edge(int a, int b) const;

    Mask neighbors(int v) const { return adj_[v]; }
    Mask closed_neighborhood(int v) const { return adj_[v] | bit(v); }
    bool is_clique(Mask vertices) const;

    /// Edges as (min, max) pairs in lexicographic order.
    std::vector<Edge> edges() const;
    int edge_count() const;

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    void check_pair(int a, int b) const;

    int n_ = 0;
    std::vector<Mask> adj_;
};

class Dag {
public:
    Dag() = default;
    explicit Dag(int n);
    Dag(int n, const std::vector<Edge>& edges);

    int n() const { return n_; }
    void add_edge(int parent, int child);
    void remove_edge(int parent, int child);
    bool has_edge(int parent, int child) const;

    Mask children(int v) const { return children_[v]; }
    Mask parents(int v) const { return parents_[v]; }
    std::vector<Edge> edges() const;
    int edge_count() const;

    bool is_acyclic() const;
    /// Throws std::invalid_argument if the graph has a directed cycle.
    std::vector<int> topological_order() const;

    /// an(v) and de(v); both include v itself.
    Mask ancestors(int v) const;
    Mask descendants(int v) const;
    Mask sources() const;
    /// Source nodes among an(v).
    Mask max_ancestors(int v) const;

    friend bool operator==(const Dag&, const Dag&) = default;

private:
    int n_ = 0;
    std::vector<Mask> children_;
    std::vector<Mask> parents_;
};

class Cpdag {
public:
    Cpdag() = default;
    explicit Cpdag(int n);

    int n() const { return n_; }
    void add_directed(int a, int b);
    void add_undirected(int a, int b);
    void remove_edge(int a, int b);

    bool has_directed(int a, int b) const { return (out_[a] & bit(b)) != 0; }
    bool has_undirected(int a, int b) const { return (und_[a] & bit(b)) != 0; }
    bool adjacent(int a, int b) const;

    Mask children(int v) const { return out_[v]; }
    Mask parents(int v) const;
    Mask undirected_neighbors(int v) const { return und_[v]; }

    std::vector<Edge> directed_edges() const;
    std::vector<Edge> undirected_edges() const;
    UndirectedGraph skeleton() const;
    /// Vertex sets connected by undirected edges, ordered by smallest member.
    std::vector<Mask> chain_components() const;

    friend bool operator==(const Cpdag&, const Cpdag&) = default;

private:
    int n_ = 0;
    std::vector<Mask> out_;
    std::vector<Mask> und_;
};

/// Dense n x n matrix of nonnegative path counts.
class CountMatrix {
public:
    CountMatrix() = default;
    explicit CountMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}
    explicit CountMatrix(const std::vector<std::vector<std::int64_t>>& rows);

    int n() const { return n_; }
    std::int64_t& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    std::int64_t at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }

    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

private:
    int n_ = 0;
    std::vector<std::int64_t> entries_;
};

enum class UdgMethod { ancestors, max_ancestors, moral_trans_rev, matrix };

UndirectedGraph udg(const Dag& dag, UdgMethod method = UdgMethod::ancestors);

/// Entry (i, j) counts directed paths from i to j; throws std::overflow_error on overflow.
CountMatrix path_count_matrix(const Dag& dag);

/// T^T T for the path-count matrix T.
CountMatrix colliderless_walk_counts(const Dag& dag);

Dag transitive_closure(const Dag& dag);
Dag reversal(const Dag& dag);
UndirectedGraph moralization(const Dag& dag);

struct DagOperators {
    Dag transitive_closure;
    Dag reversal;
    UndirectedGraph moralization;
};

DagOperators dag_operators(const Dag& dag);

/// Off-diagonal support of a symmetric count matrix as an undirected graph.
UndirectedGraph support_graph(const CountMatrix& m);

}  // namespace uecmc

#endif  // UECMC_GRAPH_HPP
