#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"

namespace subsetdag {

/// Ordered list of vertex subsets, each of size at most k.
struct InterventionSet {
  std::vector<std::vector<Vertex>> interventions;
  int k = 1;

  static InterventionSet atomic(const std::vector<Vertex>& vertices) {
    InterventionSet out;
    for (Vertex v : vertices) out.interventions.push_back({v});
    return out;
  }

  std::size_t size() const { return interventions.size(); }
  bool empty() const { return interventions.empty(); }

  /// All vertices touched by some intervention, sorted.
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (const auto& s : interventions) out.insert(out.end(), s.begin(), s.end());
    detail::sort_unique(out);
    return out;
  }

  friend bool operator==(const InterventionSet&, const InterventionSet&) = default;
};

/// Checks the structural invariants: nonempty subsets, sizes <= k, valid ids,
/// no duplicated subsets. Throws InputError naming the first violation.
inline void validate(const InterventionSet& I, int n) {
  if (I.k < 1) throw InputError("intervention size bound must be >= 1");
  std::vector<std::vector<Vertex>> seen;
  for (const auto& s : I.interventions) {
    if (s.empty()) throw InputError("empty intervention");
    if (static_cast<int>(s.size()) > I.k) {
      throw InputError("intervention of size " + std::to_string(s.size()) + " exceeds k = " +
                       std::to_string(I.k));
    }
    for (Vertex v : s) detail::check_vertex(n, v);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("repeated vertex inside an intervention");
    }
    seen.push_back(std::move(sorted));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InputError("duplicate intervention");
  }
}

}  // namespace subsetdag
