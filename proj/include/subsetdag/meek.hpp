#pragma once

// Meek-rule closure and everything derived from it: essential graphs,
// interventional essential graphs, recovered arc sets and chain components.

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/intervention.hpp"

namespace subsetdag {

namespace detail {

// Would one of R1-R4 orient the undirected edge a - b as a -> b?
inline bool meek_fires(const Pdag& p, Vertex a, Vertex b) {
  const Bitset adj_b = p.adjacency(b);
  // R1: c -> a, c !~ b
  if (!p.in(a).is_subset_of(adj_b)) return true;
  // R2: a -> c -> b
  if (p.out(a).intersects(p.in(b))) return true;
  // R3: a - c -> b, a - d -> b, c !~ d
  const Bitset r3 = p.undirected(a) & p.in(b);
  if (r3.count() >= 2) {
    for (auto c = r3.find_first(); c != Bitset::npos; c = r3.find_next(c)) {
      Bitset others = r3;
      others.reset(c);
      if (!others.is_subset_of(p.adjacency(static_cast<Vertex>(c)))) return true;
    }
  }
  // R4: a - d -> c -> b, a ~ c, b !~ d
  const Bitset r4 = p.adjacency(a) & p.in(b);
  for (auto c = r4.find_first(); c != Bitset::npos; c = r4.find_next(c)) {
    const Bitset ds = p.in(static_cast<Vertex>(c)) & p.undirected(a);
    if (!ds.is_subset_of(adj_b)) return true;
  }
  return false;
}

// Dor-Tarsi: does some DAG extend the pdag without new v-structures?
inline bool has_consistent_extension(const Pdag& p) {
  const int n = p.size();
  Bitset alive(static_cast<std::size_t>(n));
  alive.set();
  for (int removed = 0; removed < n; ++removed) {
    Vertex pick = kNoVertex;
    for (Vertex x = 0; x < n && pick == kNoVertex; ++x) {
      if (!alive.test(x) || (p.out(x) & alive).any()) continue;
      const Bitset und = p.undirected(x) & alive;
      Bitset nbrs = p.adjacency(x) & alive;
      bool ok = true;
      for_each_bit(und, [&](Vertex y) {
        Bitset rest = nbrs;
        rest.reset(y);
        Bitset adj_y = p.adjacency(y);
        if (!rest.is_subset_of(adj_y)) ok = false;
      });
      if (ok) pick = x;
    }
    if (pick == kNoVertex) return false;
    alive.reset(pick);
  }
  return true;
}

}  // namespace detail

/// Applies R1-R4 until nothing changes.
inline Pdag meek_closure(Pdag p) {
#ifndef NDEBUG
  if (p.size() <= 12) assert(detail::has_consistent_extension(p));
#endif
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : p.undirected_edges()) {
      if (!p.has_undirected(e.u, e.v)) continue;
      if (detail::meek_fires(p, e.u, e.v)) {
        p.orient(e.u, e.v);
        changed = true;
      } else if (detail::meek_fires(p, e.v, e.u)) {
        p.orient(e.v, e.u);
        changed = true;
      }
    }
  }
  return p;
}

/// All v-structures u -> v <- w with u < w.
struct VStructure {
  Vertex u, v, w;
  friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

inline std::vector<VStructure> v_structures(const Dag& g) {
  std::vector<VStructure> out;
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto& pa = g.parents(v);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], v, pa[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct OrientationResult {
  Pdag closure;
  std::vector<Arc> recovered;  // sorted; the directed part of closure

  bool contains(const Arc& a) const { return closure.has_arc(a.from, a.to); }
};

namespace detail {

inline OrientationResult finish(Pdag seeded) {
  OrientationResult r;
  r.closure = meek_closure(std::move(seeded));
  r.recovered = r.closure.arcs();
  return r;
}

// Skeleton of g with its v-structure arcs oriented.
inline Pdag observational_seed(const Dag& g) {
  Pdag p = Pdag::skeleton_of(g);
  for (const VStructure& s : v_structures(g)) {
    p.orient(s.u, s.v);
    p.orient(s.w, s.v);
  }
  return p;
}

}  // namespace detail

inline OrientationResult essential_graph(const Dag& g) {
  return detail::finish(detail::observational_seed(g));
}

/// Orients every edge of g with exactly one endpoint in `s`.
inline void orient_cut(const Dag& g, Pdag& p, const Bitset& s) {
  for (Vertex u = 0; u < g.size(); ++u) {
    if (!s.test(u)) continue;
    for (Vertex w : g.children(u)) {
      if (!s.test(w)) p.orient(u, w);
    }
    for (Vertex w : g.parents(u)) {
      if (!s.test(w)) p.orient(w, u);
    }
  }
}

inline Bitset vertex_mask(int n, const std::vector<Vertex>& vs) {
  Bitset b(static_cast<std::size_t>(n));
  for (Vertex v : vs) {
    detail::check_vertex(n, v);
    b.set(v);
  }
  return b;
}

/// E_I(G): v-structures plus every cut edge, closed under Meek rules.
inline OrientationResult recover_interventions(const Dag& g, const InterventionSet& I) {
  Pdag p = detail::observational_seed(g);
  for (const auto& s : I.interventions) orient_cut(g, p, vertex_mask(g.size(), s));
  return detail::finish(std::move(p));
}

inline OrientationResult recover_interventions(const Dag& g,
                                               const std::vector<std::vector<Vertex>>& I) {
  return recover_interventions(g, InterventionSet{I, 1});
}

inline OrientationResult recover_interventions(const Dag& g,
                                               std::initializer_list<std::vector<Vertex>> I) {
  return recover_interventions(g, std::vector<std::vector<Vertex>>(I));
}

/// R(G, S) for an arc set S. Throws InputError on arcs that are not in g.
inline OrientationResult recover_arcs(const Dag& g, const std::vector<Arc>& seeds) {
  Pdag p = detail::observational_seed(g);
  for (const Arc& a : seeds) {
    detail::check_vertex(g.size(), a.from);
    detail::check_vertex(g.size(), a.to);
    if (!g.has_arc(a.from, a.to)) {
      throw InputError("seed arc " + std::to_string(a.from) + " -> " + std::to_string(a.to) +
                       " is not an arc of the graph");
    }
    p.orient(a.from, a.to);
  }
  return detail::finish(std::move(p));
}

/// G^I: the arcs of g that I leaves unrecovered.
inline Dag oriented_subgraph(const Dag& g, const OrientationResult& r) {
  std::vector<Arc> keep;
  for (const Arc& a : g.arcs()) {
    if (!r.contains(a)) keep.push_back(a);
  }
  return Dag(g.size(), keep);
}

inline Dag oriented_subgraph(const Dag& g, const InterventionSet& I) {
  return oriented_subgraph(g, recover_interventions(g, I));
}

/// Connected components of the undirected part; singletons included.
/// Components are listed by smallest member, each sorted.
inline std::vector<std::vector<Vertex>> chain_components(const Pdag& p) {
  const int n = p.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<Vertex> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for_each_bit(p.undirected(v), [&](Vertex w) {
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
      });
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

/// Weakly connected components of a DAG (same ordering convention).
inline std::vector<std::vector<Vertex>> weak_components(const Dag& g) {
  Pdag p = Pdag::skeleton_of(g);
  return chain_components(p);
}

/// Pa_{G,I}(u): parents of u through recovered arcs.
inline std::vector<Vertex> recovered_parents(const OrientationResult& r, Vertex u) {
  return bits_to_vector(r.closure.in(u));
}

/// Edges u - v with Pa(u) \ {v} = Pa(v) \ {u}.
inline std::vector<Edge> covered_edges(const Dag& g) {
  std::vector<Edge> out;
  for (const Arc& a : g.arcs()) {
    Bitset pu = g.parent_set(a.from);
    Bitset pv = g.parent_set(a.to);
    pv.reset(a.from);
    if (pu == pv) out.push_back(Edge::of(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Descendant sets Des[v] (inclusive) of every vertex.
inline std::vector<Bitset> descendant_sets(const Dag& g) {
  const int n = g.size();
  std::vector<Bitset> des(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
  auto order = topological_order(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    des[*it].set(*it);
    for (Vertex c : g.children(*it)) des[*it] |= des[c];
  }
  return des;
}

/// Ancestor sets Anc[v] (inclusive).
inline std::vector<Bitset> ancestor_sets(const Dag& g) {
  const int n = g.size();
  std::vector<Bitset> anc(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
  for (Vertex v : topological_order(g)) {
    anc[v].set(v);
    for (Vertex p : g.parents(v)) anc[v] |= anc[p];
  }
  return anc;
}

/// R(G, {z}) for every vertex z, built eagerly; read-only afterwards.
class SingleVertexClosures {
 public:
  SingleVertexClosures() = default;
  explicit SingleVertexClosures(const Dag& g) {
    const Pdag base = detail::observational_seed(g);
    closures_.reserve(static_cast<std::size_t>(g.size()));
    for (Vertex z = 0; z < g.size(); ++z) {
      Pdag p = base;
      orient_cut(g, p, vertex_mask(g.size(), {z}));
      closures_.push_back(meek_closure(std::move(p)));
    }
  }

  int size() const { return static_cast<int>(closures_.size()); }
  bool orients(Vertex z, const Arc& a) const { return closures_[z].has_arc(a.from, a.to); }
  const Pdag& closure(Vertex z) const { return closures_[z]; }

 private:
  std::vector<Pdag> closures_;
};

}  // namespace subsetdag
