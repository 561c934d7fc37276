#pragma once

// Minimum-cost interval stabbing on a rooted tree: Euler tour ordering,
// superset pruning, and a DP over (vertex, first unstabbed index) states.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/hasse.hpp"

namespace subsetdag {

/// DFS sequence from the root (children ascending), re-recording the parent
/// after each child. Indices are 0-based; first/last are -1 off the tree.
struct EulerTour {
  std::vector<Vertex> tau;
  std::vector<int> first;
  std::vector<int> last;

  /// u in V(T_v)?
  bool in_subtree(Vertex u, Vertex v) const {
    return first[v] <= first[u] && last[u] <= last[v];
  }
};

inline EulerTour euler_tour(const HasseTree& h) {
  const int n = h.graph_size();
  EulerTour et;
  et.first.assign(static_cast<std::size_t>(n), -1);
  et.last.assign(static_cast<std::size_t>(n), -1);
  if (h.root == kNoVertex) return et;
  auto visit = [&](Vertex v) {
    const int idx = static_cast<int>(et.tau.size());
    et.tau.push_back(v);
    if (et.first[v] < 0) et.first[v] = idx;
    et.last[v] = idx;
  };
  // iterative DFS: (vertex, next child position)
  std::vector<std::pair<Vertex, std::size_t>> stack{{h.root, 0}};
  visit(h.root);
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    if (pos < h.children[v].size()) {
      Vertex c = h.children[v][pos++];
      visit(c);
      stack.push_back({c, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) visit(stack.back().first);
    }
  }
  return et;
}

/// Drops every interval [c,d] for which another kept interval [a,b] has
/// c in Anc[a] and b in Anc[d]. Exact duplicates collapse to their first copy.
/// Result keeps input order.
inline std::vector<StabInterval> prune_supersets(const EulerTour& et,
                                                 const std::vector<StabInterval>& intervals) {
  const std::size_t m = intervals.size();
  std::vector<char> drop(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cd = intervals[i];
    for (std::size_t j = 0; j < m && !drop[i]; ++j) {
      if (i == j) continue;
      const auto& ab = intervals[j];
      const bool contains = et.in_subtree(ab.start, cd.start) && et.in_subtree(cd.end, ab.end);
      if (!contains) continue;
      const bool same = ab.start == cd.start && ab.end == cd.end;
      // for duplicates keep the earliest copy
      if (!same || j < i) drop[i] = 1;
    }
  }
  std::vector<StabInterval> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!drop[i]) out.push_back(intervals[i]);
  }
  return out;
}

/// Tree, pruned and sorted intervals, and the DP's precomputed indices.
/// Index value `none` (= intervals.size()) plays the role of infinity.
struct PreparedInstance {
  HasseTree tree;
  EulerTour tour;
  std::vector<StabInterval> intervals;  // sorted by the Euler-tour order
  std::vector<int> e;                   // e_v: index of the interval ending at v, or -1
  std::vector<int> a;                   // a_y: first index starting inside T_y
  std::vector<int> b;                   // b_y: first index intersecting T_y
  std::vector<double> cost;             // per global vertex id

  int none() const { return static_cast<int>(intervals.size()); }
};

/// [a,b] before [c,d] iff f(a) < f(c), or a == c and l(b) > l(d).
inline bool precedes(const EulerTour& et, const StabInterval& x, const StabInterval& y) {
  if (et.first[x.start] != et.first[y.start]) return et.first[x.start] < et.first[y.start];
  return et.last[x.end] > et.last[y.end];
}

/// Validates intervals against the tree, prunes, sorts and fills indices.
/// `cost` is indexed by global vertex id; empty means unit costs.
inline PreparedInstance prepare(const HasseTree& tree, const std::vector<StabInterval>& intervals,
                                std::vector<double> cost = {}) {
  const int n = tree.graph_size();
  PreparedInstance p;
  p.tree = tree;
  p.tour = euler_tour(tree);
  if (cost.empty()) cost.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<int>(cost.size()) != n) throw InputError("cost vector has the wrong length");
  for (double c : cost) {
    if (!(c >= 0.0)) throw InputError("vertex costs must be nonnegative");
  }
  p.cost = std::move(cost);
  for (const auto& iv : intervals) {
    if (iv.start < 0 || iv.start >= n || iv.end < 0 || iv.end >= n || !tree.contains(iv.start) ||
        !tree.contains(iv.end) || !p.tour.in_subtree(iv.end, iv.start)) {
      throw InputError("[" + std::to_string(iv.start) + ", " + std::to_string(iv.end) +
                       "] is not an interval of the tree");
    }
  }
  p.intervals = prune_supersets(p.tour, intervals);
  std::sort(p.intervals.begin(), p.intervals.end(),
            [&](const StabInterval& x, const StabInterval& y) { return precedes(p.tour, x, y); });
  const int m = p.none();
  p.e.assign(static_cast<std::size_t>(n), -1);
  p.a.assign(static_cast<std::size_t>(n), m);
  p.b.assign(static_cast<std::size_t>(n), m);
  for (int idx = m - 1; idx >= 0; --idx) {
    const auto& iv = p.intervals[idx];
    if (p.e[iv.end] < 0) p.e[iv.end] = idx;
    // start inside T_y: y is an ancestor of start; intersects T_y: y above end
    for (Vertex y = iv.start; y != kNoVertex; y = tree.parent[y]) p.a[y] = idx;
    for (Vertex y = iv.end; y != kNoVertex; y = tree.parent[y]) p.b[y] = idx;
  }
  return p;
}

struct StabResult {
  double cost = 0.0;
  std::vector<Vertex> stab;  // sorted
};

/// Exact optimum by memoised DP with a deterministic backtrace; ties between
/// taking and skipping a vertex go to skipping.
inline StabResult solve(const PreparedInstance& p) {
  StabResult res;
  const int m = p.none();
  if (m == 0 || p.tree.root == kNoVertex) return res;
  const int n = p.tree.graph_size();
  const double unset = -1.0;
  std::vector<double> memo(static_cast<std::size_t>(n) * static_cast<std::size_t>(m + 1), unset);
  auto at = [&](Vertex v, int i) -> double& {
    return memo[static_cast<std::size_t>(v) * static_cast<std::size_t>(m + 1) +
                static_cast<std::size_t>(i)];
  };

  auto dp = [&](auto&& self, Vertex v, int i) -> double {
    if (i >= m) return 0.0;
    double& slot = at(v, i);
    if (slot != unset) return slot;
    double alpha = p.cost[v];
    double beta = 0.0;
    for (Vertex y : p.tree.children[v]) {
      alpha += self(self, y, std::max(p.a[y], i));
      beta += self(self, y, std::max(p.b[y], i));
    }
    slot = (p.e[v] >= i) ? alpha : std::min(alpha, beta);
    return slot;
  };
  res.cost = dp(dp, p.tree.root, 0);

  // backtrace
  std::vector<std::pair<Vertex, int>> stack{{p.tree.root, 0}};
  while (!stack.empty()) {
    auto [v, i] = stack.back();
    stack.pop_back();
    if (i >= m) continue;
    double alpha = p.cost[v];
    double beta = 0.0;
    for (Vertex y : p.tree.children[v]) {
      alpha += dp(dp, y, std::max(p.a[y], i));
      beta += dp(dp, y, std::max(p.b[y], i));
    }
    const bool take = p.e[v] >= i || alpha < beta;
    if (take) res.stab.push_back(v);
    for (Vertex y : p.tree.children[v]) {
      stack.push_back({y, std::max(take ? p.a[y] : p.b[y], i)});
    }
  }
  std::sort(res.stab.begin(), res.stab.end());
  return res;
}

inline StabResult solve(const HasseTree& tree, const std::vector<StabInterval>& intervals,
                        std::vector<double> cost = {}) {
  return solve(prepare(tree, intervals, std::move(cost)));
}

/// Does `stab` hit every interval? Uses parent pointers only.
inline bool stabs_all(const HasseTree& tree, const std::vector<StabInterval>& intervals,
                      const std::vector<Vertex>& stab) {
  std::vector<char> in(static_cast<std::size_t>(tree.graph_size()), 0);
  for (Vertex v : stab) in[v] = 1;
  for (const auto& iv : intervals) {
    bool hit = false;
    for (Vertex x = iv.end; x != kNoVertex; x = tree.parent[x]) {
      if (in[x]) {
        hit = true;
        break;
      }
      if (x == iv.start) break;
    }
    if (!hit) return false;
  }
  return true;
}

inline constexpr int kStabBruteForceMaxVertices = 16;

/// Exhaustive reference: minimum over all subsets of tree vertices, ties to
/// fewer vertices then smaller subset mask. Throws BudgetError above 16 vertices.
inline StabResult solve_bruteforce(const HasseTree& tree,
                                   const std::vector<StabInterval>& intervals,
                                   std::vector<double> cost = {}) {
  const auto& vs = tree.vertices;
  if (static_cast<int>(vs.size()) > kStabBruteForceMaxVertices) {
    throw BudgetError("solve_bruteforce: " + std::to_string(vs.size()) +
                      " vertices exceeds the cap of " +
                      std::to_string(kStabBruteForceMaxVertices));
  }
  if (cost.empty()) cost.assign(static_cast<std::size_t>(tree.graph_size()), 1.0);
  const int k = static_cast<int>(vs.size());
  // interval -> mask of local indices on its path
  std::vector<std::uint32_t> path_mask;
  for (const auto& iv : intervals) {
    std::uint32_t mask = 0;
    bool reached = false;
    for (Vertex x = iv.end; x != kNoVertex; x = tree.parent[x]) {
      auto pos = std::lower_bound(vs.begin(), vs.end(), x) - vs.begin();
      mask |= 1u << pos;
      if (x == iv.start) {
        reached = true;
        break;
      }
    }
    if (!reached) throw InputError("interval start is not an ancestor of its end");
    path_mask.push_back(mask);
  }
  StabResult best;
  best.cost = std::numeric_limits<double>::infinity();
  int best_count = 0;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool ok = true;
    for (std::uint32_t pm : path_mask) {
      if ((pm & mask) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    double c = 0.0;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1u) c += cost[vs[i]];
    }
    const int cnt = __builtin_popcount(mask);
    if (c < best.cost || (c == best.cost && cnt < best_count)) {
      best.cost = c;
      best_count = cnt;
      best_mask = mask;
    }
  }
  for (int i = 0; i < k; ++i) {
    if (best_mask >> i & 1u) best.stab.push_back(vs[i]);
  }
  return best;
}

}  // namespace subsetdag
