#pragma once

#include <algorithm>
#include <vector>

#include "subsetdag/graph.hpp"

namespace subsetdag {

struct ChordalityResult {
  bool chordal = false;
  // Perfect elimination order when chordal (reverse of the MCS visit order);
  // otherwise the reversed MCS order that failed the check.
  std::vector<Vertex> peo;
};

/// Maximum-cardinality search restricted to `keep` (all vertices by default),
/// ties broken by smallest id. Returns the visit order.
inline std::vector<Vertex> mcs_order(const UndirectedGraph& g, const Bitset& keep) {
  const int n = g.size();
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  Bitset done(static_cast<std::size_t>(n));
  std::vector<Vertex> order;
  const auto total = keep.count();
  while (order.size() < total) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      if (!keep.test(v) || done.test(v)) continue;
      if (best == kNoVertex || weight[v] > weight[best]) best = v;
    }
    done.set(best);
    order.push_back(best);
    for_each_bit(g.adjacency(best) & keep, [&](Vertex w) {
      if (!done.test(w)) ++weight[w];
    });
  }
  return order;
}

inline ChordalityResult is_chordal(const UndirectedGraph& g, const Bitset& keep) {
  ChordalityResult r;
  r.peo = mcs_order(g, keep);
  std::reverse(r.peo.begin(), r.peo.end());
  std::vector<int> pos(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < r.peo.size(); ++i) pos[r.peo[i]] = static_cast<int>(i);
  for (Vertex v : r.peo) {
    // later neighbours of v must form a clique; enough to check them against
    // the earliest one
    Vertex first = kNoVertex;
    std::vector<Vertex> later;
    for_each_bit(g.adjacency(v) & keep, [&](Vertex w) {
      if (pos[w] > pos[v]) {
        later.push_back(w);
        if (first == kNoVertex || pos[w] < pos[first]) first = w;
      }
    });
    for (Vertex w : later) {
      if (w != first && !g.adjacent(first, w)) return r;
    }
  }
  r.chordal = true;
  return r;
}

inline ChordalityResult is_chordal(const UndirectedGraph& g) {
  Bitset all(static_cast<std::size_t>(g.size()));
  all.set();
  return is_chordal(g, all);
}

inline ChordalityResult is_chordal(const Dag& g) {
  return is_chordal(UndirectedGraph::skeleton_of(g));
}

inline ChordalityResult is_chordal(const Pdag& p) {
  return is_chordal(UndirectedGraph::skeleton_of(p));
}

}  // namespace subsetdag
