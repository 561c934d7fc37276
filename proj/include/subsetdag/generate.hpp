#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "subsetdag/graph.hpp"

namespace subsetdag {

/// Uniform labelled tree on n vertices from a random Pruefer sequence.
template <typename Rng>
std::vector<Edge> random_tree(int n, Rng& rng) {
  std::vector<Edge> out;
  if (n < 2) return out;
  if (n == 2) return {Edge{0, 1}};
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (int& x : seq) x = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++degree[x];
  for (int x : seq) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    out.push_back(Edge::of(leaf, x));
    --degree[leaf];
    --degree[x];
  }
  int a = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (a < 0) {
        a = v;
      } else {
        out.push_back(Edge::of(a, v));
        break;
      }
    }
  }
  return out;
}

/// Random connected v-structure-free DAG: tree plus G(n,p), oriented by id,
/// then every v-structure u -> v <- w is patched with u -> w until none remain.
inline Dag generate_synthetic(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InputError("generate_synthetic needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const Edge& e : random_tree(n, rng)) adj[e.u][e.v] = 1;
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) adj[u][v] = 1;
    }
  }
  // adj[u][v] with u < v means u -> v
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < v; ++u) {
        if (!adj[u][v]) continue;
        for (int w = u + 1; w < v; ++w) {
          if (adj[w][v] && !adj[u][w]) {
            adj[u][w] = 1;
            changed = true;
          }
        }
      }
    }
  }
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (adj[u][v]) arcs.push_back({u, v});
    }
  }
  return Dag(n, std::move(arcs));
}

struct LowerBoundInstance {
  Dag dag;
  TargetEdges targets;
  int clique_size = 0;
};

/// Clique on 0..n-1 oriented by id, pendant arcs i -> n+i; targets are the pendants.
inline LowerBoundInstance lower_bound_instance(int n) {
  if (n < 1) throw InputError("lower_bound_instance needs n >= 1");
  std::vector<Arc> arcs;
  std::vector<Edge> pendants;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) arcs.push_back({u, v});
  }
  for (int i = 0; i < n; ++i) {
    arcs.push_back({i, n + i});
    pendants.push_back({i, n + i});
  }
  Dag g(2 * n, std::move(arcs));
  return {g, TargetEdges(g, std::move(pendants)), n};
}

}  // namespace subsetdag
