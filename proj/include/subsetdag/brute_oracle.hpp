#pragma once

// Exhaustive reference values for small instances.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/intervention.hpp"
#include "subsetdag/meek.hpp"
#include "subsetdag/verification.hpp"

namespace subsetdag {

struct OracleBudget {
  int max_n = 8;
  int max_k = 3;
};

inline constexpr OracleBudget kAtomicBudget{8, 1};
inline constexpr OracleBudget kBoundedBudget{7, 3};

struct OracleAnswer {
  std::size_t size = 0;
  InterventionSet witness;
};

namespace detail {

inline void check_budget(const Dag& g, int k, const OracleBudget& b, const char* who) {
  if (g.size() > b.max_n) {
    throw BudgetError(std::string(who) + ": n = " + std::to_string(g.size()) +
                      " exceeds the cap of " + std::to_string(b.max_n));
  }
  if (k > b.max_k) {
    throw BudgetError(std::string(who) + ": k = " + std::to_string(k) + " exceeds the cap of " +
                      std::to_string(b.max_k));
  }
}

// Calls fn(indices) for each size-`size` combination of 0..m-1 in lexicographic
// order until fn returns true. Returns whether fn ever did.
inline bool for_each_combination(int m, int size, const std::function<bool(const std::vector<int>&)>& fn) {
  if (size > m) return false;
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return true;
    int i = size - 1;
    while (i >= 0 && idx[i] == m - size + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Bitmask over positions in `targets` recovered by a single intervention s.
inline std::uint64_t target_mask(const Dag& g, const TargetEdges& targets,
                                 const std::vector<Vertex>& s) {
  const auto r = recover_interventions(g, InterventionSet{{s}, static_cast<int>(s.size())});
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (r.contains(g.orient(targets.edges()[i]))) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

// All nonempty vertex subsets of size <= k, by size then lexicographically.
inline std::vector<std::vector<Vertex>> small_subsets(int n, int k) {
  std::vector<std::vector<Vertex>> out;
  for (int s = 1; s <= std::min(k, n); ++s) {
    for_each_combination(n, s, [&](const std::vector<int>& idx) {
      out.emplace_back(idx.begin(), idx.end());
      return false;
    });
  }
  return out;
}

}  // namespace detail

/// Smallest atomic set orienting T, each candidate checked by its own closure.
inline OracleAnswer nu1_bruteforce(const Dag& g, const TargetEdges& targets,
                                   const OracleBudget& budget = kAtomicBudget) {
  detail::check_budget(g, 1, budget, "nu1_bruteforce");
  require_edges_of(g, targets);
  OracleAnswer ans;
  for (int size = 0; size <= g.size(); ++size) {
    const bool found = detail::for_each_combination(g.size(), size, [&](const std::vector<int>& idx) {
      auto I = InterventionSet::atomic(std::vector<Vertex>(idx.begin(), idx.end()));
      if (!verify_is_verifying(g, targets, I)) return false;
      ans.size = static_cast<std::size_t>(size);
      ans.witness = std::move(I);
      return true;
    });
    if (found) return ans;
  }
  throw std::logic_error("nu1_bruteforce: intervening on every vertex did not orient T");
}

/// Fewest interventions of size <= k orienting T. Per-subset recovered sets
/// are combined by union (R of a union of interventions is the union of their
/// R's); the chosen witness is re-checked by a direct closure.
inline OracleAnswer nuk_bruteforce(const Dag& g, const TargetEdges& targets, int k,
                                   const OracleBudget& budget = kBoundedBudget) {
  if (k < 1) throw InputError("k must be >= 1");
  detail::check_budget(g, k, budget, "nuk_bruteforce");
  require_edges_of(g, targets);
  const std::uint64_t full =
      targets.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << targets.size()) - 1;
  const std::uint64_t base = detail::target_mask(g, targets, {});
  OracleAnswer ans;
  ans.witness.k = k;
  if ((base & full) == full) return ans;

  const auto nu1 = nu1_bruteforce(g, targets, OracleBudget{budget.max_n, 1}).size;
  const auto lower = static_cast<int>((nu1 + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k));
  std::vector<std::vector<Vertex>> cand;
  std::vector<std::uint64_t> masks;
  for (auto& s : detail::small_subsets(g.size(), k)) {
    auto m = detail::target_mask(g, targets, s) & ~base;
    if (m == 0) continue;
    cand.push_back(std::move(s));
    masks.push_back(m);
  }
  for (int size = std::max(lower, 1); size <= static_cast<int>(cand.size()); ++size) {
    std::vector<int> hit;
    const bool found = detail::for_each_combination(
        static_cast<int>(cand.size()), size, [&](const std::vector<int>& idx) {
          std::uint64_t m = base;
          for (int i : idx) m |= masks[i];
          if ((m & full) != full) return false;
          hit = idx;
          return true;
        });
    if (found) {
      for (int i : hit) ans.witness.interventions.push_back(cand[i]);
      ans.size = hit.size();
      if (!verify_is_verifying(g, targets, ans.witness)) {
        throw std::logic_error("nuk_bruteforce: union shortcut disagrees with direct closure");
      }
      return ans;
    }
  }
  throw std::logic_error("nuk_bruteforce: no bounded set orients T");
}

struct CostAnswer {
  double objective = 0.0;
  InterventionSet witness;
};

/// Minimum of alpha*w(I) + beta*|I| over intervention sets with sets of size
/// <= k that orient T. Dijkstra over recovered-target masks.
inline CostAnswer min_cost_bounded_bruteforce(const Dag& g, const TargetEdges& targets, int k,
                                              const CostParams& c,
                                              const OracleBudget& budget = kBoundedBudget) {
  if (k < 1) throw InputError("k must be >= 1");
  detail::check_budget(g, k, budget, "min_cost_bounded_bruteforce");
  require_edges_of(g, targets);
  c.validate(g.size());
  const std::uint64_t full =
      targets.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << targets.size()) - 1;
  const std::uint64_t base = detail::target_mask(g, targets, {}) & full;
  std::vector<std::vector<Vertex>> cand;
  std::vector<std::uint64_t> masks;
  std::vector<double> price;
  for (auto& s : detail::small_subsets(g.size(), k)) {
    auto m = detail::target_mask(g, targets, s) & full;
    if ((m & ~base) == 0) continue;
    double w = 0.0;
    for (Vertex v : s) w += c.cost_of(v);
    cand.push_back(std::move(s));
    masks.push_back(m);
    price.push_back(c.alpha * w + c.beta);
  }
  std::map<std::uint64_t, double> dist;
  std::map<std::uint64_t, std::pair<std::uint64_t, int>> prev;
  using Item = std::pair<double, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[base] = 0.0;
  pq.push({0.0, base});
  while (!pq.empty()) {
    auto [d, m] = pq.top();
    pq.pop();
    if (d > dist[m]) continue;
    if (m == full) {
      CostAnswer ans;
      ans.objective = d;
      ans.witness.k = k;
      for (std::uint64_t x = m; x != base; x = prev[x].first) {
        ans.witness.interventions.push_back(cand[prev[x].second]);
      }
      std::reverse(ans.witness.interventions.begin(), ans.witness.interventions.end());
      if (!verify_is_verifying(g, targets, ans.witness)) {
        throw std::logic_error("min_cost_bounded_bruteforce: witness fails direct closure");
      }
      return ans;
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const std::uint64_t nm = m | masks[i];
      if (nm == m) continue;
      const double nd = d + price[i];
      auto it = dist.find(nm);
      if (it == dist.end() || nd < it->second) {
        dist[nm] = nd;
        prev[nm] = {m, static_cast<int>(i)};
        pq.push({nd, nm});
      }
    }
  }
  throw std::logic_error("min_cost_bounded_bruteforce: no bounded set orients T");
}

}  // namespace subsetdag
