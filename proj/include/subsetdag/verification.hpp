#pragma once

// Subset verifying sets: the atomic optimum, bounded-size grouping and the
// additive-cost objective.

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/hasse.hpp"
#include "subsetdag/intervention.hpp"
#include "subsetdag/interval_stabbing.hpp"
#include "subsetdag/meek.hpp"

namespace subsetdag {

struct CostParams {
  double alpha = 1.0;
  double beta = 0.0;
  std::vector<double> costs;  // per vertex; empty means all 1

  double cost_of(Vertex v) const { return costs.empty() ? 1.0 : costs[v]; }

  void validate(int n) const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw InputError("alpha and beta must be >= 0");
    if (!costs.empty() && static_cast<int>(costs.size()) != n) {
      throw InputError("cost vector has " + std::to_string(costs.size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (double c : costs) {
      if (!(c >= 0.0)) throw InputError("vertex costs must be >= 0");
    }
  }
};

/// alpha * w(I) + beta * |I|, with w summed over every intervention.
inline double objective(const InterventionSet& I, const CostParams& c) {
  double w = 0.0;
  for (const auto& s : I.interventions) {
    for (Vertex v : s) w += c.cost_of(v);
  }
  return c.alpha * w + c.beta * static_cast<double>(I.size());
}

/// T subset of R(G, I)?
inline bool verify_is_verifying(const Dag& g, const TargetEdges& targets,
                                const InterventionSet& I) {
  require_edges_of(g, targets);
  const auto r = recover_interventions(g, I);
  for (const Edge& e : targets) {
    if (!r.contains(g.orient(e))) return false;
  }
  return true;
}

/// Everything about g the verification routines reuse across target sets:
/// E(g), G^0 (its unrecovered arcs), closures of single vertices on G^0 and
/// the Hasse forest of G^0.
class SubsetVerifier {
 public:
  explicit SubsetVerifier(Dag g)
      : g_(std::move(g)),
        essential_(essential_graph(g_)),
        g0_(oriented_subgraph(g_, essential_)),
        cache_(g0_),
        trees_(hasse_diagram(g0_)) {}

  const Dag& graph() const { return g_; }
  const Dag& reduced() const { return g0_; }
  const OrientationResult& essential() const { return essential_; }
  const std::vector<HasseTree>& trees() const { return trees_; }
  const SingleVertexClosures& closures() const { return cache_; }

  /// Targets still unoriented in E(g).
  TargetEdges open_targets(const TargetEdges& targets) const {
    require_edges_of(g_, targets);
    std::vector<Edge> keep;
    for (const Edge& e : targets) {
      if (!essential_.contains(g_.orient(e))) keep.push_back(e);
    }
    return TargetEdges(std::move(keep));
  }

  std::vector<StabInterval> intervals(const TargetEdges& targets) const {
    return cut_intervals(g0_, trees_, open_targets(targets), cache_);
  }

  /// Minimum weight atomic verifying vertex set; `weights` indexed by vertex,
  /// empty for unit weights.
  std::vector<Vertex> stab_vertices(const TargetEdges& targets,
                                    const std::vector<double>& weights = {}) const {
    const auto ivs = intervals(targets);
    const auto which = tree_index(trees_, g_.size());
    std::vector<std::vector<StabInterval>> per_tree(trees_.size());
    for (const auto& iv : ivs) per_tree[which[iv.end]].push_back(iv);
    std::vector<Vertex> out;
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      if (per_tree[t].empty()) continue;
      auto r = solve(trees_[t], per_tree[t], weights);
      out.insert(out.end(), r.stab.begin(), r.stab.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  InterventionSet atomic(const TargetEdges& targets) const {
    auto I = InterventionSet::atomic(stab_vertices(targets));
    self_check(targets, I, "atomic_verifying_set");
    return I;
  }

  /// nu_1(g, T).
  std::size_t nu1(const TargetEdges& targets) const { return stab_vertices(targets).size(); }

  void self_check(const TargetEdges& targets, const InterventionSet& I, const char* who) const {
    if (!verify_is_verifying(g_, targets, I)) {
      throw std::logic_error(std::string(who) + " produced a set that does not orient all targets");
    }
  }

 private:
  Dag g_;
  OrientationResult essential_;
  Dag g0_;
  SingleVertexClosures cache_;
  std::vector<HasseTree> trees_;
};

inline InterventionSet atomic_verifying_set(const Dag& g, const TargetEdges& targets) {
  require_edges_of(g, targets);
  return SubsetVerifier(g).atomic(targets);
}

namespace detail {

// Undirected cycle in the skeleton of `arcs`, as a closed vertex walk without
// the repeated endpoint; empty if the arcs form a forest.
inline std::vector<Vertex> find_cycle(int n, const std::set<Arc>& arcs) {
  UndirectedGraph u(n);
  for (const Arc& a : arcs) u.add_edge(a.from, a.to);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : u.neighbors(v)) {
        if (w == parent[v]) continue;
        if (seen[w]) {
          // v and w both in this tree; cycle = path(v) + path(w) joined at the LCA
          std::vector<Vertex> pv, pw;
          for (Vertex x = v; x != kNoVertex; x = parent[x]) pv.push_back(x);
          for (Vertex x = w; x != kNoVertex; x = parent[x]) pw.push_back(x);
          while (pv.size() > 1 && pw.size() > 1 && pv[pv.size() - 2] == pw[pw.size() - 2]) {
            pv.pop_back();
            pw.pop_back();
          }
          // pv.back() == pw.back() is the LCA
          pw.pop_back();
          std::reverse(pw.begin(), pw.end());
          pv.insert(pv.end(), pw.begin(), pw.end());
          return pv;
        }
        seen[w] = 1;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace detail

/// Shrinks the arc set until its skeleton is a forest by repeatedly replacing,
/// on some cycle with topologically last vertex s, the arc x -> s by x -> y,
/// where x -> y joins the two cycle neighbours of s. Needs g v-structure-free.
inline std::vector<Arc> forest_subset(const Dag& g, const std::vector<Arc>& s) {
  const int n = g.size();
  std::vector<int> pi(static_cast<std::size_t>(n));
  {
    auto order = topological_order(g);
    for (int i = 0; i < n; ++i) pi[order[i]] = i;
  }
  std::set<Arc> arcs;
  for (const Arc& a : s) {
    if (!g.has_arc(a.from, a.to)) throw InputError("forest_subset: arc not in graph");
    arcs.insert(a);
  }
  while (true) {
    auto cyc = detail::find_cycle(n, arcs);
    if (cyc.empty()) break;
    const std::size_t len = cyc.size();
    std::size_t top = 0;
    for (std::size_t i = 1; i < len; ++i) {
      if (pi[cyc[i]] > pi[cyc[top]]) top = i;
    }
    const Vertex sv = cyc[top];
    const Vertex p = cyc[(top + len - 1) % len];
    const Vertex q = cyc[(top + 1) % len];
    Arc link;
    if (g.has_arc(p, q)) {
      link = {p, q};
    } else if (g.has_arc(q, p)) {
      link = {q, p};
    } else {
      throw PreconditionError("forest_subset: graph has a v-structure at " + std::to_string(sv));
    }
    arcs.erase(Arc{link.from, sv});
    arcs.insert(link);
  }
  return {arcs.begin(), arcs.end()};
}

namespace detail {

// Proper 2-colouring of `vertices` w.r.t. the forest `arcs` (BFS, roots get 0,
// roots taken in ascending id), then same-colour vertices packed in ascending
// id into groups of size k.
inline InterventionSet pack_groups(int n, const std::vector<Vertex>& vertices,
                                   const std::vector<Arc>& forest, int k) {
  UndirectedGraph u(n);
  for (const Arc& a : forest) u.add_edge(a.from, a.to);
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (Vertex r : vertices) {
    if (colour[r] != -1) continue;
    colour[r] = 0;
    std::deque<Vertex> q{r};
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex w : u.neighbors(v)) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[v];
          q.push_back(w);
        } else if (colour[w] == colour[v]) {
          throw std::logic_error("forest is not 2-colourable");
        }
      }
    }
  }
  InterventionSet out;
  out.k = k;
  for (int c = 0; c < 2; ++c) {
    std::vector<Vertex> cls;
    for (Vertex v : vertices) {
      if (colour[v] == c) cls.push_back(v);
    }
    for (std::size_t i = 0; i < cls.size(); i += static_cast<std::size_t>(k)) {
      auto end = std::min(cls.size(), i + static_cast<std::size_t>(k));
      out.interventions.emplace_back(cls.begin() + static_cast<long>(i),
                                     cls.begin() + static_cast<long>(end));
    }
  }
  return out;
}

inline InterventionSet group_atomic(const SubsetVerifier& sv, const std::vector<Vertex>& atoms,
                                    int k) {
  if (atoms.empty()) return InterventionSet{{}, k};
  if (k == 1) {
    auto I = InterventionSet::atomic(atoms);
    return I;
  }
  // Only arcs inside the atomic set need separating; arcs leaving it are cut
  // by whichever group holds their inside endpoint.
  const Dag& g0 = sv.reduced();
  Bitset in = vertex_mask(g0.size(), atoms);
  std::vector<Arc> inside;
  for (const Arc& a : g0.arcs()) {
    if (in.test(a.from) && in.test(a.to)) inside.push_back(a);
  }
  return pack_groups(g0.size(), atoms, forest_subset(g0, inside), k);
}

}  // namespace detail

/// At most ceil(l/k) + 1 interventions of size <= k, l = nu_1(g, T).
inline InterventionSet bounded_verifying_set(const SubsetVerifier& sv, const TargetEdges& targets,
                                             int k) {
  if (k < 1) throw InputError("k must be >= 1");
  auto I = detail::group_atomic(sv, sv.stab_vertices(targets), k);
  sv.self_check(targets, I, "bounded_verifying_set");
  return I;
}

inline InterventionSet bounded_verifying_set(const Dag& g, const TargetEdges& targets, int k) {
  require_edges_of(g, targets);
  return bounded_verifying_set(SubsetVerifier(g), targets, k);
}

/// Atomic optimum for per-vertex weight alpha*w(v) + beta/k, grouped as in
/// bounded_verifying_set. Objective is within 2*beta of the bounded optimum.
inline InterventionSet cost_verifying_set(const SubsetVerifier& sv, const TargetEdges& targets,
                                          int k, const CostParams& c) {
  if (k < 1) throw InputError("k must be >= 1");
  c.validate(sv.graph().size());
  std::vector<double> weights(static_cast<std::size_t>(sv.graph().size()));
  for (Vertex v = 0; v < sv.graph().size(); ++v) {
    weights[v] = c.alpha * c.cost_of(v) + c.beta / static_cast<double>(k);
  }
  auto I = detail::group_atomic(sv, sv.stab_vertices(targets, weights), k);
  sv.self_check(targets, I, "cost_verifying_set");
  return I;
}

inline InterventionSet cost_verifying_set(const Dag& g, const TargetEdges& targets, int k,
                                          const CostParams& c) {
  require_edges_of(g, targets);
  return cost_verifying_set(SubsetVerifier(g), targets, k, c);
}

}  // namespace subsetdag
