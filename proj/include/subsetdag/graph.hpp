#pragma once

// Core graph value types: fully oriented DAGs, partially directed graphs,
// plain undirected graphs and target edge sets. Vertices are dense ids 0..n-1.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "subsetdag/errors.hpp"

namespace subsetdag {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Calls `fn(v)` for every set bit of `bits` in increasing order.
template <typename Fn>
void for_each_bit(const Bitset& bits, Fn&& fn) {
  for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) {
    fn(static_cast<Vertex>(i));
  }
}

inline std::vector<Vertex> bits_to_vector(const Bitset& bits) {
  std::vector<Vertex> out;
  out.reserve(bits.count());
  for_each_bit(bits, [&](Vertex v) { out.push_back(v); });
  return out;
}

/// Directed arc `from -> to`.
struct Arc {
  Vertex from = kNoVertex;
  Vertex to = kNoVertex;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  static Edge of(const Arc& a) { return of(a.from, a.to); }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

inline void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw InputError("vertex id " + std::to_string(v) + " out of range [0, " +
                     std::to_string(n) + ")");
  }
}

template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace detail

/// Kahn's algorithm with smallest-id-first tie-breaking. Throws StructuralError
/// when the arcs contain a directed cycle.
inline std::vector<Vertex> topological_order(int n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<Vertex>> succ(static_cast<std::size_t>(n));
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (const Arc& a : arcs) {
    detail::check_vertex(n, a.from);
    detail::check_vertex(n, a.to);
    succ[a.from].push_back(a.to);
    ++indegree[a.to];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : succ[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw StructuralError("directed cycle detected");
  }
  return order;
}

/// A fully oriented acyclic graph. Immutable once constructed; the
/// constructor rejects self-loops, duplicate or antiparallel arcs and cycles.
class Dag {
 public:
  Dag() = default;

  explicit Dag(int n) : Dag(n, std::vector<Arc>{}) {}

  Dag(int n, std::vector<Arc> arcs) : n_(n) {
    if (n < 0) throw InputError("negative vertex count");
    in_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    out_ = in_;
    parents_.resize(static_cast<std::size_t>(n));
    children_.resize(static_cast<std::size_t>(n));
    for (const Arc& a : arcs) {
      detail::check_vertex(n, a.from);
      detail::check_vertex(n, a.to);
      if (a.from == a.to) {
        throw InputError("self-loop at vertex " + std::to_string(a.from));
      }
      if (out_[a.from].test(a.to) || out_[a.to].test(a.from)) {
        throw InputError("duplicate arc between " + std::to_string(a.from) + " and " +
                         std::to_string(a.to));
      }
      out_[a.from].set(a.to);
      in_[a.to].set(a.from);
    }
    for (Vertex v = 0; v < n; ++v) {
      parents_[v] = bits_to_vector(in_[v]);
      children_[v] = bits_to_vector(out_[v]);
    }
    arc_count_ = arcs.size();
    try {
      (void)subsetdag::topological_order(n, arcs);
    } catch (const StructuralError&) {
      throw InputError("arcs contain a directed cycle");
    }
  }

  int size() const { return n_; }
  std::size_t arc_count() const { return arc_count_; }

  bool has_arc(Vertex u, Vertex v) const { return out_[u].test(v); }
  bool adjacent(Vertex u, Vertex v) const { return out_[u].test(v) || in_[u].test(v); }

  const std::vector<Vertex>& parents(Vertex v) const { return parents_[v]; }
  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  const Bitset& parent_set(Vertex v) const { return in_[v]; }
  const Bitset& child_set(Vertex v) const { return out_[v]; }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : children_[u]) out.push_back({u, v});
    }
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(arc_count_);
    for (const Arc& a : arcs()) out.push_back(Edge::of(a));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The direction this DAG gives to a skeleton edge.
  Arc orient(Edge e) const {
    detail::check_vertex(n_, e.u);
    detail::check_vertex(n_, e.v);
    if (has_arc(e.u, e.v)) return {e.u, e.v};
    if (has_arc(e.v, e.u)) return {e.v, e.u};
    throw InputError("pair {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     "} is not an edge");
  }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  int n_ = 0;
  std::size_t arc_count_ = 0;
  std::vector<Bitset> in_;
  std::vector<Bitset> out_;
  std::vector<std::vector<Vertex>> parents_;
  std::vector<std::vector<Vertex>> children_;
};

inline std::vector<Vertex> topological_order(const Dag& g) {
  return topological_order(g.size(), g.arcs());
}

/// Partially directed graph: every adjacent pair is either one directed arc
/// or one undirected edge. Mutable through orient(); used for essential
/// graphs and intermediate closures.
class Pdag {
 public:
  Pdag() = default;

  explicit Pdag(int n)
      : n_(n),
        in_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))),
        out_(in_),
        und_(in_) {}

  /// Skeleton of `g` with every edge undirected.
  static Pdag skeleton_of(const Dag& g) {
    Pdag p(g.size());
    for (const Arc& a : g.arcs()) p.add_undirected(a.from, a.to);
    return p;
  }

  int size() const { return n_; }

  void add_undirected(Vertex u, Vertex v) {
    check_new_pair(u, v);
    und_[u].set(v);
    und_[v].set(u);
  }

  void add_arc(Vertex u, Vertex v) {
    check_new_pair(u, v);
    out_[u].set(v);
    in_[v].set(u);
  }

  /// Turns the undirected edge u - v into u -> v. No-op if already u -> v.
  void orient(Vertex u, Vertex v) {
    if (out_[u].test(v)) return;
    if (!und_[u].test(v)) {
      throw InputError("cannot orient " + std::to_string(u) + " -> " + std::to_string(v) +
                       ": not an undirected edge");
    }
    und_[u].reset(v);
    und_[v].reset(u);
    out_[u].set(v);
    in_[v].set(u);
  }

  bool adjacent(Vertex u, Vertex v) const {
    return und_[u].test(v) || out_[u].test(v) || in_[u].test(v);
  }
  bool has_arc(Vertex u, Vertex v) const { return out_[u].test(v); }
  bool has_undirected(Vertex u, Vertex v) const { return und_[u].test(v); }

  const Bitset& in(Vertex v) const { return in_[v]; }
  const Bitset& out(Vertex v) const { return out_[v]; }
  const Bitset& undirected(Vertex v) const { return und_[v]; }
  Bitset adjacency(Vertex v) const { return und_[v] | out_[v] | in_[v]; }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (Vertex u = 0; u < n_; ++u) {
      for_each_bit(out_[u], [&](Vertex v) { out.push_back({u, v}); });
    }
    return out;
  }

  std::vector<Edge> undirected_edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u) {
      for_each_bit(und_[u], [&](Vertex v) {
        if (u < v) out.push_back({u, v});
      });
    }
    return out;
  }

  std::size_t undirected_count() const {
    std::size_t twice = 0;
    for (const Bitset& b : und_) twice += b.count();
    return twice / 2;
  }

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.n_ == b.n_ && a.out_ == b.out_ && a.und_ == b.und_;
  }

 private:
  void check_new_pair(Vertex u, Vertex v) const {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v)) {
      throw InputError("pair {" + std::to_string(u) + ", " + std::to_string(v) +
                       "} already present");
    }
  }

  int n_ = 0;
  std::vector<Bitset> in_;
  std::vector<Bitset> out_;
  std::vector<Bitset> und_;
};

/// Simple undirected graph with bitset rows.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(int n)
      : n_(n), adj_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {}

  static UndirectedGraph skeleton_of(const Dag& g) {
    UndirectedGraph u(g.size());
    for (const Arc& a : g.arcs()) u.add_edge(a.from, a.to);
    return u;
  }

  static UndirectedGraph skeleton_of(const Pdag& p) {
    UndirectedGraph u(p.size());
    for (Vertex v = 0; v < p.size(); ++v) u.adj_[v] = p.adjacency(v);
    return u;
  }

  /// The undirected part of a partially directed graph.
  static UndirectedGraph undirected_part(const Pdag& p) {
    UndirectedGraph u(p.size());
    for (Vertex v = 0; v < p.size(); ++v) u.adj_[v] = p.undirected(v);
    return u;
  }

  int size() const { return n_; }

  void add_edge(Vertex u, Vertex v) {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    adj_[u].set(v);
    adj_[v].set(u);
  }

  bool adjacent(Vertex u, Vertex v) const { return adj_[u].test(v); }
  const Bitset& adjacency(Vertex v) const { return adj_[v]; }
  std::vector<Vertex> neighbors(Vertex v) const { return bits_to_vector(adj_[v]); }
  std::size_t degree(Vertex v) const { return adj_[v].count(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u) {
      for_each_bit(adj_[u], [&](Vertex v) {
        if (u < v) out.push_back({u, v});
      });
    }
    return out;
  }

  /// Subgraph induced by `keep`, vertex ids unchanged.
  UndirectedGraph induced(const Bitset& keep) const {
    UndirectedGraph g(n_);
    for (Vertex v = 0; v < n_; ++v) {
      if (keep.test(v)) g.adj_[v] = adj_[v] & keep;
    }
    return g;
  }

 private:
  int n_ = 0;
  std::vector<Bitset> adj_;
};

/// A set of skeleton edges singled out as orientation targets. Normalized,
/// sorted and duplicate-free; membership in a particular graph is checked by
/// the operations that consume it (see require_edges_of).
class TargetEdges {
 public:
  TargetEdges() = default;
  explicit TargetEdges(std::vector<Edge> edges) : edges_(std::move(edges)) {
    for (Edge& e : edges_) e = Edge::of(e.u, e.v);
    detail::sort_unique(edges_);
  }

  /// Builds and validates against `g`.
  TargetEdges(const Dag& g, std::vector<Edge> edges);

  static TargetEdges all_of(const Dag& g) { return TargetEdges(g.edges()); }

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  bool contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge::of(e.u, e.v));
  }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  friend bool operator==(const TargetEdges&, const TargetEdges&) = default;

 private:
  std::vector<Edge> edges_;
};

/// Throws InputError unless every target is a skeleton edge of `g`.
inline void require_edges_of(const Dag& g, const TargetEdges& targets) {
  for (const Edge& e : targets) {
    detail::check_vertex(g.size(), e.u);
    detail::check_vertex(g.size(), e.v);
    if (!g.adjacent(e.u, e.v)) {
      throw InputError("target {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       "} is not an edge of the graph");
    }
  }
}

inline TargetEdges::TargetEdges(const Dag& g, std::vector<Edge> edges)
    : TargetEdges(std::move(edges)) {
  require_edges_of(g, *this);
}

}  // namespace subsetdag
