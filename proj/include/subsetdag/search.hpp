#pragma once

// Adaptive search against an intervention oracle: SubsetSearch with weighted
// clique separators, a random baseline, and the adversary for the clique
// lower-bound instance.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetdag/chordal.hpp"
#include "subsetdag/generate.hpp"
#include "subsetdag/graph.hpp"
#include "subsetdag/intervention.hpp"
#include "subsetdag/meek.hpp"

namespace subsetdag {

template <typename O>
concept InterventionOracle = requires(O o, const O co, const std::vector<Vertex>& s) {
  { co.vertex_count() } -> std::convertible_to<int>;
  { co.current() } -> std::convertible_to<const Pdag&>;
  { o.intervene(s) } -> std::convertible_to<std::vector<Arc>>;
};

namespace detail {

inline void check_query(int n, const std::vector<Vertex>& s) {
  if (s.empty()) throw ProtocolError("empty intervention");
  auto sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ProtocolError("repeated vertex in intervention");
  }
  for (Vertex v : s) {
    if (v < 0 || v >= n) throw ProtocolError("vertex " + std::to_string(v) + " out of range");
  }
}

inline std::vector<Arc> new_arcs(const Pdag& before, const Pdag& after) {
  std::vector<Arc> out;
  for (const Arc& a : after.arcs()) {
    if (!before.has_arc(a.from, a.to)) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// Answers interventions truthfully from a fixed hidden DAG.
class HonestOracle {
 public:
  explicit HonestOracle(Dag truth) : truth_(std::move(truth)), state_(essential_graph(truth_).closure) {}

  int vertex_count() const { return truth_.size(); }
  const Pdag& current() const { return state_; }
  const std::vector<std::vector<Vertex>>& history() const { return history_; }

  std::vector<Arc> intervene(const std::vector<Vertex>& s) {
    detail::check_query(truth_.size(), s);
    history_.push_back(s);
    Pdag next = state_;
    orient_cut(truth_, next, vertex_mask(truth_.size(), s));
    next = meek_closure(std::move(next));
    auto fresh = detail::new_arcs(state_, next);
    state_ = std::move(next);
    return fresh;
  }

 private:
  Dag truth_;
  Pdag state_;
  std::vector<std::vector<Vertex>> history_;
};

static_assert(InterventionOracle<HonestOracle>);

/// Members of H incident to an undirected edge of p[H].
inline std::vector<Vertex> relevant_nodes(const Pdag& p, const Bitset& h) {
  std::vector<Vertex> out;
  for_each_bit(h, [&](Vertex v) {
    if (p.undirected(v).intersects(h)) out.push_back(v);
  });
  return out;
}

inline std::vector<Vertex> relevant_nodes(const Pdag& p, const std::vector<Vertex>& h) {
  return relevant_nodes(p, vertex_mask(p.size(), h));
}

namespace detail {

// Largest component weight of g[keep \ removed].
inline double heaviest_component(const UndirectedGraph& g, const Bitset& keep,
                                 const Bitset& removed, const std::vector<double>& w) {
  Bitset left = keep - removed;
  double best = 0.0;
  while (left.any()) {
    Vertex s = static_cast<Vertex>(left.find_first());
    left.reset(s);
    double sum = w[s];
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      Bitset next = g.adjacency(v) & left;
      for_each_bit(next, [&](Vertex x) {
        left.reset(x);
        sum += w[x];
        stack.push_back(x);
      });
    }
    best = std::max(best, sum);
  }
  return best;
}

// Maximal cliques of a chordal graph from a perfect elimination order.
inline std::vector<Bitset> maximal_cliques(const UndirectedGraph& g, const std::vector<Vertex>& peo) {
  std::vector<int> pos(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < peo.size(); ++i) pos[peo[i]] = static_cast<int>(i);
  std::vector<Bitset> cands;
  for (Vertex v : peo) {
    Bitset c(static_cast<std::size_t>(g.size()));
    c.set(v);
    for_each_bit(g.adjacency(v), [&](Vertex w) {
      if (pos[w] > pos[v]) c.set(w);
    });
    cands.push_back(std::move(c));
  }
  std::vector<Bitset> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cands.size() && !dominated; ++j) {
      if (i != j && cands[i].is_subset_of(cands[j]) &&
          (cands[i] != cands[j] || j < i)) {
        dominated = true;
      }
    }
    if (!dominated) out.push_back(cands[i]);
  }
  return out;
}

}  // namespace detail

/// Clique C of g[keep] such that every component of g[keep] - C weighs at
/// most half the total. Every maximal clique is tried; each valid one is
/// shrunk greedily (largest id dropped first) and the smallest result wins,
/// ties to the lexicographically least. Returns {} when {} already works.
/// Throws PreconditionError if g[keep] is not chordal.
inline std::vector<Vertex> weighted_clique_separator(const UndirectedGraph& g, const Bitset& keep,
                                                     const std::vector<double>& weights) {
  const auto chordal = is_chordal(g, keep);
  if (!chordal.chordal) throw PreconditionError("separator needs a chordal graph");
  double total = 0.0;
  for_each_bit(keep, [&](Vertex v) { total += weights[v]; });
  const double half = total / 2.0;
  const double eps = 1e-9 * std::max(1.0, total);
  auto valid = [&](const Bitset& c) {
    return detail::heaviest_component(g, keep, c, weights) <= half + eps;
  };
  Bitset none(static_cast<std::size_t>(g.size()));
  if (valid(none)) return {};
  std::vector<Vertex> best;
  bool have = false;
  for (const Bitset& clique : detail::maximal_cliques(g, chordal.peo)) {
    if (!valid(clique)) continue;
    Bitset c = clique;
    auto members = bits_to_vector(c);
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
      c.reset(*it);
      if (!valid(c)) c.set(*it);
    }
    auto shrunk = bits_to_vector(c);
    if (!have || shrunk.size() < best.size() || (shrunk.size() == best.size() && shrunk < best)) {
      best = std::move(shrunk);
      have = true;
    }
  }
  if (!have) throw std::logic_error("no maximal clique is a 1/2-separator");
  return best;
}

inline std::vector<Vertex> weighted_clique_separator(const UndirectedGraph& g,
                                                     const std::vector<double>& weights) {
  Bitset all(static_cast<std::size_t>(g.size()));
  all.set();
  return weighted_clique_separator(g, all, weights);
}

/// Groups of Q (size <= k each) such that any two members of Q are split by
/// some group. Member i of sorted Q gets digits d_0 = i mod a and
/// d_x = (floor(i / a^x) + i) mod a for x >= 1, which are distinct over
/// x < ceil(log_a n) and fill every digit value at most ceil(|Q|/a) times.
/// n is the graph's vertex count. Empty and repeated groups are dropped.
inline std::vector<std::vector<Vertex>> bounded_labelled_groups(std::vector<Vertex> q, int k, int n) {
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  const int size = static_cast<int>(q.size());
  if (size < 2 || k < 2) throw InputError("bounded_labelled_groups needs |Q| >= 2 and k >= 2");
  n = std::max(n, size);
  const double kp = std::min(static_cast<double>(k), size / 2.0);
  const int a = std::max(2, static_cast<int>(std::ceil(size / kp - 1e-12)));
  int ell = 0;
  for (std::int64_t p = 1; p < n; p *= a) ++ell;
  ell = std::max(ell, 1);
  std::vector<std::vector<Vertex>> out;
  std::int64_t power = 1;
  for (int x = 0; x < ell; ++x) {
    std::vector<std::vector<Vertex>> by_digit(static_cast<std::size_t>(a));
    for (int i = 0; i < size; ++i) {
      const std::int64_t d = x == 0 ? i % a : (i / power + i) % a;
      by_digit[static_cast<std::size_t>(d)].push_back(q[i]);
    }
    for (auto& grp : by_digit) {
      if (grp.empty()) continue;
      if (std::find(out.begin(), out.end(), grp) == out.end()) out.push_back(std::move(grp));
    }
    power *= a;
  }
  return out;
}

struct SearchStep {
  int round = 0;
  std::vector<Vertex> intervention;
  std::vector<Arc> new_arcs;
};

struct SearchTranscript {
  std::vector<SearchStep> steps;
  int rounds = 0;
  std::vector<int> per_round;  // interventions actually issued each round
  Pdag final_graph;

  std::size_t total_interventions() const { return steps.size(); }
};

struct SearchOptions {
  // Leave a round as soon as `goal` holds instead of issuing the rest of it.
  bool stop_within_round = true;
  // Replaces "p[H] has no undirected edges" as the stopping test when set.
  std::function<bool(const Pdag&)> goal;
};

inline bool induced_oriented(const Pdag& p, const Bitset& h) {
  bool ok = true;
  for_each_bit(h, [&](Vertex v) {
    if (p.undirected(v).intersects(h)) ok = false;
  });
  return ok;
}

inline bool targets_oriented(const Pdag& p, const TargetEdges& t) {
  for (const Edge& e : t) {
    if (p.has_undirected(e.u, e.v)) return false;
  }
  return true;
}

/// SubsetSearch on the node-induced subgraph H.
template <InterventionOracle O>
SearchTranscript subset_search(O& oracle, const std::vector<Vertex>& h_vertices, int k,
                               const SearchOptions& opts = {}) {
  if (k < 1) throw InputError("k must be >= 1");
  const int n = oracle.vertex_count();
  const Bitset h = vertex_mask(n, h_vertices);
  auto done = [&](const Pdag& p) { return opts.goal ? opts.goal(p) : induced_oriented(p, h); };
  SearchTranscript tr;
  while (!done(oracle.current())) {
    const Pdag& p = oracle.current();
    const UndirectedGraph und = UndirectedGraph::undirected_part(p);
    std::vector<Vertex> q;
    for (const auto& comp : chain_components(p)) {
      if (comp.size() < 2) continue;
      const Bitset cmask = vertex_mask(n, comp);
      const auto rel = relevant_nodes(p, cmask & h);
      if (rel.size() < 2) continue;
      std::vector<double> w(static_cast<std::size_t>(n), 0.0);
      for (Vertex v : rel) w[v] = static_cast<double>(n) / static_cast<double>(rel.size());
      auto sep = weighted_clique_separator(und, cmask, w);
      q.insert(q.end(), sep.begin(), sep.end());
    }
    std::sort(q.begin(), q.end());
    if (q.empty()) throw std::logic_error("subset_search: no separator vertices but goal unmet");
    std::vector<std::vector<Vertex>> round;
    if (k == 1 || q.size() == 1) {
      for (Vertex v : q) round.push_back({v});
    } else {
      round = bounded_labelled_groups(q, k, n);
    }
    ++tr.rounds;
    int issued = 0;
    for (const auto& s : round) {
      auto fresh = oracle.intervene(s);
      tr.steps.push_back({tr.rounds, s, std::move(fresh)});
      ++issued;
      if (opts.stop_within_round && done(oracle.current())) break;
    }
    tr.per_round.push_back(issued);
  }
  tr.final_graph = oracle.current();
  return tr;
}

/// Full-graph search stopped once T is oriented.
template <InterventionOracle O>
SearchTranscript full_search_until(O& oracle, const TargetEdges& targets, int k) {
  std::vector<Vertex> all(static_cast<std::size_t>(oracle.vertex_count()));
  for (int v = 0; v < oracle.vertex_count(); ++v) all[v] = v;
  SearchOptions opts;
  opts.goal = [&](const Pdag& p) { return targets_oriented(p, targets); };
  return subset_search(oracle, all, k, opts);
}

/// Subset search on H = endpoints of T, stopped once T is oriented.
template <InterventionOracle O>
SearchTranscript subset_search_targets(O& oracle, const TargetEdges& targets, int k) {
  std::vector<Vertex> h;
  for (const Edge& e : targets) {
    h.push_back(e.u);
    h.push_back(e.v);
  }
  detail::sort_unique(h);
  SearchOptions opts;
  opts.goal = [&](const Pdag& p) { return targets_oriented(p, targets); };
  return subset_search(oracle, h, k, opts);
}

/// Intervene on uniformly random endpoints of unoriented targets until none remain.
template <InterventionOracle O>
SearchTranscript random_search_baseline(O& oracle, const TargetEdges& targets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SearchTranscript tr;
  while (true) {
    std::vector<Vertex> cand;
    for (const Edge& e : targets) {
      if (oracle.current().has_undirected(e.u, e.v)) {
        cand.push_back(e.u);
        cand.push_back(e.v);
      }
    }
    if (cand.empty()) break;
    detail::sort_unique(cand);
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    const Vertex v = cand[pick(rng)];
    ++tr.rounds;
    auto fresh = oracle.intervene({v});
    tr.steps.push_back({tr.rounds, {v}, std::move(fresh)});
    tr.per_round.push_back(1);
  }
  tr.final_graph = oracle.current();
  return tr;
}

/// Adversary for lower_bound_instance(n): clique vertex positions are fixed
/// lazily. Each newly queried clique vertex takes the latest free position;
/// uncommitted vertices sit before every committed one. Atomic queries only.
class AdaptiveAdversary {
 public:
  explicit AdaptiveAdversary(int n)
      : n_(n), instance_(lower_bound_instance(n)), state_(essential_graph(instance_.dag).closure) {}

  int vertex_count() const { return 2 * n_; }
  const Pdag& current() const { return state_; }
  const LowerBoundInstance& instance() const { return instance_; }
  int clique_queries() const { return clique_queries_; }
  const std::vector<std::vector<Vertex>>& history() const { return history_; }
  const std::vector<Pdag>& snapshots() const { return snapshots_; }

  std::vector<Arc> intervene(const std::vector<Vertex>& s) {
    detail::check_query(2 * n_, s);
    if (s.size() != 1) throw ProtocolError("the adversary answers atomic interventions only");
    const Vertex v = s.front();
    if (v < n_) {
      ++clique_queries_;
      if (std::find(committed_.begin(), committed_.end(), v) == committed_.end()) {
        committed_.push_back(v);
      }
    }
    history_.push_back(s);
    Pdag next = recover_interventions(witness(), history_).closure;
    auto fresh = detail::new_arcs(state_, next);
    state_ = std::move(next);
    snapshots_.push_back(state_);
    return fresh;
  }

  /// Clique order: uncommitted ascending, then committed from last to first
  /// commit; pendants afterwards.
  std::vector<Vertex> clique_order() const {
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n_; ++v) {
      if (std::find(committed_.begin(), committed_.end(), v) == committed_.end()) order.push_back(v);
    }
    order.insert(order.end(), committed_.rbegin(), committed_.rend());
    return order;
  }

  Dag witness() const {
    const auto order = clique_order();
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) arcs.push_back({order[i], order[j]});
    }
    for (Vertex i = 0; i < n_; ++i) arcs.push_back({i, n_ + i});
    return Dag(2 * n_, std::move(arcs));
  }

 private:
  int n_;
  LowerBoundInstance instance_;
  Pdag state_;
  std::vector<Vertex> committed_;
  int clique_queries_ = 0;
  std::vector<std::vector<Vertex>> history_;
  std::vector<Pdag> snapshots_;
};

static_assert(InterventionOracle<AdaptiveAdversary>);

struct AdversaryReport {
  std::size_t interventions = 0;
  int clique_interventions = 0;
  // a pendant query n+i learns a subset of what querying i would, so it is
  // charged as a clique query
  int charged_interventions = 0;
  bool targets_oriented = false;
  bool witness_replays = false;  // every answer reproduced on the final witness
  Dag witness;
};

/// Runs `algorithm(adversary, targets)` on lower_bound_instance(n) and checks
/// the final witness against every recorded answer.
template <typename Algorithm>
AdversaryReport adaptive_adversary_session(Algorithm&& algorithm, int n) {
  AdaptiveAdversary adv(n);
  const TargetEdges targets = adv.instance().targets;
  algorithm(adv, targets);
  AdversaryReport rep;
  rep.interventions = adv.history().size();
  rep.clique_interventions = adv.clique_queries();
  rep.charged_interventions = static_cast<int>(adv.history().size());
  rep.targets_oriented = targets_oriented(adv.current(), targets);
  rep.witness = adv.witness();
  rep.witness_replays = true;
  std::vector<std::vector<Vertex>> prefix;
  for (std::size_t i = 0; i < adv.history().size(); ++i) {
    prefix.push_back(adv.history()[i]);
    if (!(recover_interventions(rep.witness, prefix).closure == adv.snapshots()[i])) {
      rep.witness_replays = false;
    }
  }
  if (!(essential_graph(rep.witness).closure == essential_graph(adv.instance().dag).closure)) {
    rep.witness_replays = false;  // witness must share the instance's equivalence class
  }
  return rep;
}

}  // namespace subsetdag
