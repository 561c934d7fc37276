#pragma once

// The two synthetic experiments: nu_1 for random target subsets, and search
// cost for orienting an r-hop neighbourhood. Both write CSV.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsetdag/generate.hpp"
#include "subsetdag/graph.hpp"
#include "subsetdag/search.hpp"
#include "subsetdag/verification.hpp"

namespace subsetdag {

inline const char* const kExp1Header = "n,p,seed,m,frac,t_size,nu1_subset,nu1_full";
inline const char* const kExp2Header =
    "n,p,seed,r,target_node,algo,interventions,nu1_full,nu1_subset";

inline const std::vector<std::string> kExp2Algos = {"subsetsearch", "random",
                                                    "fullsearch-early-stop"};

struct ExperimentConfig {
  std::vector<int> n_list = {10, 20, 30, 40, 50};
  std::vector<double> p_list = {0.03, 0.1, 0.3};
  int trials = 20;
  std::vector<double> frac_list = {0.3, 0.5, 0.7, 1.0};
  int r = 1;
  std::vector<std::string> algos = kExp2Algos;
  std::uint64_t seed = 0;

  void validate() const {
    if (trials < 1) throw InputError("trials must be >= 1");
    if (r < 1) throw InputError("r must be >= 1");
    for (int n : n_list) {
      if (n < 1) throw InputError("graph sizes must be >= 1");
    }
    for (double p : p_list) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probabilities must lie in [0, 1]");
    }
    for (double f : frac_list) {
      if (!(f > 0.0 && f <= 1.0)) throw InputError("fractions must lie in (0, 1]");
    }
    for (const auto& a : algos) {
      if (std::find(kExp2Algos.begin(), kExp2Algos.end(), a) == kExp2Algos.end()) {
        throw InputError("unknown algorithm '" + a + "'");
      }
    }
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of one (n, p-index, trial) cell row, derived from the master seed.
inline std::uint64_t row_seed(std::uint64_t master, int n, std::size_t p_index, int trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ static_cast<std::uint64_t>(p_index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

struct Exp1Row {
  int n;
  double p;
  std::uint64_t seed;
  std::size_t m;
  double frac;
  std::size_t t_size;
  std::size_t nu1_subset;
  std::size_t nu1_full;
};

/// Rows for one generated graph. Target sets are nested prefixes of one
/// random permutation of the edges.
inline std::vector<Exp1Row> experiment1_rows(int n, double p, std::uint64_t seed,
                                             const std::vector<double>& fracs) {
  const Dag g = generate_synthetic(n, p, seed);
  const SubsetVerifier sv(g);
  auto edges = g.edges();
  const std::size_t m = edges.size();
  const std::size_t full = sv.nu1(TargetEdges(edges));
  std::mt19937_64 rng(splitmix64(seed ^ 0x5eedULL));
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<Exp1Row> rows;
  for (double f : fracs) {
    auto t_size = static_cast<std::size_t>(std::llround(f * static_cast<double>(m)));
    t_size = std::min(t_size, m);
    TargetEdges t(std::vector<Edge>(edges.begin(), edges.begin() + static_cast<long>(t_size)));
    rows.push_back({n, p, seed, m, f, t_size, sv.nu1(t), full});
  }
  return rows;
}

inline void write_row(std::ostream& out, const Exp1Row& r) {
  out << r.n << ',' << r.p << ',' << r.seed << ',' << r.m << ',' << r.frac << ',' << r.t_size
      << ',' << r.nu1_subset << ',' << r.nu1_full << '\n';
}

inline std::vector<Exp1Row> run_experiment1(const ExperimentConfig& cfg, std::ostream* out = nullptr) {
  cfg.validate();
  std::vector<Exp1Row> all;
  if (out) *out << kExp1Header << '\n';
  for (int n : cfg.n_list) {
    for (std::size_t pi = 0; pi < cfg.p_list.size(); ++pi) {
      for (int t = 0; t < cfg.trials; ++t) {
        for (auto& row : experiment1_rows(n, cfg.p_list[pi], row_seed(cfg.seed, n, pi, t),
                                          cfg.frac_list)) {
          if (out) write_row(*out, row);
          all.push_back(row);
        }
      }
    }
  }
  return all;
}

/// Vertices within skeleton distance r of v, sorted.
inline std::vector<Vertex> r_hop_neighbourhood(const Dag& g, Vertex v, int r) {
  detail::check_vertex(g.size(), v);
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<Vertex> q{v};
  dist[v] = 0;
  std::vector<Vertex> out;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop_front();
    out.push_back(x);
    if (dist[x] == r) continue;
    auto visit = [&](Vertex y) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    };
    for (Vertex y : g.parents(x)) visit(y);
    for (Vertex y : g.children(x)) visit(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edges of g with both endpoints in `h`.
inline TargetEdges induced_edges(const Dag& g, const std::vector<Vertex>& h) {
  const Bitset mask = vertex_mask(g.size(), h);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (mask.test(e.u) && mask.test(e.v)) out.push_back(e);
  }
  return TargetEdges(std::move(out));
}

struct Exp2Row {
  int n;
  double p;
  std::uint64_t seed;
  int r;
  Vertex target_node;
  std::string algo;
  std::size_t interventions;
  std::size_t nu1_full;
  std::size_t nu1_subset;
};

inline std::vector<Exp2Row> experiment2_rows(int n, double p, std::uint64_t seed, int r,
                                             const std::vector<std::string>& algos) {
  const Dag g = generate_synthetic(n, p, seed);
  std::mt19937_64 rng(splitmix64(seed ^ 0x7a26e7ULL));
  const Vertex v = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
  const auto h = r_hop_neighbourhood(g, v, r);
  const TargetEdges t = induced_edges(g, h);
  const SubsetVerifier sv(g);
  const std::size_t full = sv.nu1(TargetEdges(g.edges()));
  const std::size_t sub = sv.nu1(t);
  std::vector<Exp2Row> rows;
  for (const auto& algo : algos) {
    HonestOracle oracle(g);
    SearchTranscript tr;
    if (algo == "subsetsearch") {
      tr = subset_search(oracle, h, 1);
    } else if (algo == "random") {
      tr = random_search_baseline(oracle, t, splitmix64(seed ^ 0x4a4d0ULL));
    } else if (algo == "fullsearch-early-stop") {
      tr = full_search_until(oracle, t, 1);
    } else {
      throw InputError("unknown algorithm '" + algo + "'");
    }
    if (!targets_oriented(tr.final_graph, t)) {
      throw std::logic_error(algo + " stopped with unoriented targets");
    }
    rows.push_back({n, p, seed, r, v, algo, tr.total_interventions(), full, sub});
  }
  return rows;
}

inline void write_row(std::ostream& out, const Exp2Row& r) {
  out << r.n << ',' << r.p << ',' << r.seed << ',' << r.r << ',' << r.target_node << ','
      << r.algo << ',' << r.interventions << ',' << r.nu1_full << ',' << r.nu1_subset << '\n';
}

inline std::vector<Exp2Row> run_experiment2(const ExperimentConfig& cfg, std::ostream* out = nullptr) {
  cfg.validate();
  std::vector<Exp2Row> all;
  if (out) *out << kExp2Header << '\n';
  for (int n : cfg.n_list) {
    for (std::size_t pi = 0; pi < cfg.p_list.size(); ++pi) {
      for (int t = 0; t < cfg.trials; ++t) {
        for (auto& row :
             experiment2_rows(n, cfg.p_list[pi], row_seed(cfg.seed, n, pi, t), cfg.r, cfg.algos)) {
          if (out) write_row(*out, row);
          all.push_back(row);
        }
      }
    }
  }
  return all;
}

}  // namespace subsetdag
