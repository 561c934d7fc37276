#pragma once

// Transitive reduction of v-structure-free DAGs (a rooted tree per weakly
// connected component) and the intervals of single-vertex interventions that
// orient each target arc.

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/meek.hpp"

namespace subsetdag {

/// Rooted tree over a subset of a graph's vertices. Vectors are indexed by
/// global vertex id; non-members have parent kNoVertex and no children.
struct HasseTree {
  Vertex root = kNoVertex;
  std::vector<Vertex> parent;
  std::vector<std::vector<Vertex>> children;  // ascending ids
  std::vector<Vertex> vertices;               // sorted members

  int graph_size() const { return static_cast<int>(parent.size()); }

  bool contains(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (Vertex v : vertices) {
      if (parent[v] != kNoVertex) out.push_back({parent[v], v});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Root-to-v path, root first.
  std::vector<Vertex> path_to(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex x = v; x != kNoVertex; x = parent[x]) out.push_back(x);
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Is a an ancestor of b (inclusive)? Walks parent pointers.
  bool is_ancestor(Vertex a, Vertex b) const {
    for (Vertex x = b; x != kNoVertex; x = parent[x]) {
      if (x == a) return true;
    }
    return false;
  }

  /// Builds a tree from a parent array over global ids. Members are `members`;
  /// exactly one of them must have no parent, and parents must be members.
  static HasseTree from_parents(int n, const std::vector<Vertex>& members,
                                const std::vector<Vertex>& parent_of) {
    HasseTree t;
    t.parent.assign(static_cast<std::size_t>(n), kNoVertex);
    t.children.assign(static_cast<std::size_t>(n), {});
    t.vertices = members;
    detail::sort_unique(t.vertices);
    for (Vertex v : t.vertices) {
      detail::check_vertex(n, v);
      Vertex p = parent_of[v];
      if (p == kNoVertex) {
        if (t.root != kNoVertex) throw InputError("tree has more than one root");
        t.root = v;
      } else {
        if (!t.contains(p)) throw InputError("parent " + std::to_string(p) + " not in tree");
        t.parent[v] = p;
        t.children[p].push_back(v);
      }
    }
    if (t.root == kNoVertex) throw InputError("tree has no root");
    for (auto& ch : t.children) std::sort(ch.begin(), ch.end());
    // every member must reach the root
    for (Vertex v : t.vertices) {
      int steps = 0;
      for (Vertex x = v; x != t.root; x = t.parent[x]) {
        if (x == kNoVertex || ++steps > n) throw InputError("parent pointers do not form a tree");
      }
    }
    return t;
  }
};

inline std::ostream& operator<<(std::ostream& os, const HasseTree& t) {
  auto rec = [&](auto&& self, Vertex v, int depth) -> void {
    os << std::string(static_cast<std::size_t>(2 * depth), ' ') << v << '\n';
    for (Vertex c : t.children[v]) self(self, c, depth + 1);
  };
  if (t.root != kNoVertex) rec(rec, t.root, 0);
  return os;
}

/// One Hasse tree per weakly connected component, ordered by smallest member.
/// Throws PreconditionError when g has v-structures.
inline std::vector<HasseTree> hasse_diagram(const Dag& g) {
  if (!v_structures(g).empty()) {
    throw PreconditionError(
        "hasse_diagram needs a DAG without v-structures; reduce with oriented_subgraph(g, {}) "
        "first");
  }
  const int n = g.size();
  const auto des = descendant_sets(g);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.children(u)) {
      bool redundant = false;
      for (Vertex c : g.children(u)) {
        if (c != v && des[c].test(v)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
      if (parent[v] != kNoVertex) {
        throw std::logic_error("transitive reduction is not a forest");
      }
      parent[v] = u;
    }
  }
  std::vector<HasseTree> out;
  for (const auto& comp : weak_components(g)) {
    out.push_back(HasseTree::from_parents(n, comp, parent));
  }
  return out;
}

/// V(T_y): y and everything below it.
inline std::vector<Vertex> subtree_vertices(const HasseTree& h, Vertex y) {
  if (y < 0 || y >= h.graph_size() || !h.contains(y)) {
    throw InputError("vertex " + std::to_string(y) + " is not in the tree");
  }
  std::vector<Vertex> out;
  std::vector<Vertex> stack{y};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (Vertex c : h.children[v]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Tree path segment [start, end]; start is an ancestor of end.
struct StabInterval {
  Vertex start = kNoVertex;
  Vertex end = kNoVertex;
  std::optional<Edge> source_edge;

  friend bool operator==(const StabInterval& a, const StabInterval& b) {
    return a.start == b.start && a.end == b.end;
  }
};

/// Index of the tree containing each vertex (-1 if none).
inline std::vector<int> tree_index(const std::vector<HasseTree>& trees, int n) {
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (Vertex v : trees[i].vertices) out[v] = static_cast<int>(i);
  }
  return out;
}

/// For each target arc u -> v not already oriented by E(g), the set of single
/// vertices whose intervention orients it, as the tree interval [w, v].
/// The set is read off the cached closures and must be a contiguous suffix of
/// the root-to-v path starting at an ancestor of u; anything else throws
/// std::logic_error. Identical intervals are reported once, in target order.
inline std::vector<StabInterval> cut_intervals(const Dag& g, const std::vector<HasseTree>& trees,
                                               const TargetEdges& targets,
                                               const SingleVertexClosures& cache) {
  require_edges_of(g, targets);
  const auto essential = essential_graph(g);
  const auto which = tree_index(trees, g.size());
  std::vector<StabInterval> out;
  for (const Edge& e : targets) {
    const Arc arc = g.orient(e);
    if (essential.contains(arc)) continue;
    const HasseTree& t = trees.at(static_cast<std::size_t>(which[arc.to]));
    const auto path = t.path_to(arc.to);
    // Walk up from v while vertices orient the arc; the rest must not.
    std::size_t j = path.size();
    while (j > 0 && cache.orients(path[j - 1], arc)) --j;
    if (j == path.size()) {
      throw std::logic_error("intervening on the head does not orient its own arc");
    }
    const Vertex w = path[j];
    std::size_t count = 0;
    for (Vertex z = 0; z < g.size(); ++z) {
      if (cache.orients(z, arc)) ++count;
    }
    const bool u_on_path = std::find(path.begin(), path.end(), arc.from) != path.end();
    const bool w_above_u = t.is_ancestor(w, arc.from);
    if (count != path.size() - j || !u_on_path || !w_above_u) {
      throw std::logic_error("orienting set of " + std::to_string(arc.from) + " -> " +
                             std::to_string(arc.to) + " is not a tree interval");
    }
    StabInterval iv{w, arc.to, e};
    if (std::find(out.begin(), out.end(), iv) == out.end()) out.push_back(iv);
  }
  return out;
}

}  // namespace subsetdag
