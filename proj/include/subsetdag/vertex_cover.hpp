#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"

namespace subsetdag {

inline constexpr std::size_t kVertexCoverMaxEndpoints = 25;

/// Exact minimum vertex cover; among minimum covers the lexicographically
/// least sorted vertex list is returned. Throws BudgetError above 25 endpoints.
inline std::vector<Vertex> min_vertex_cover(const std::vector<Edge>& edges) {
  std::vector<Vertex> pts;
  for (const Edge& e : edges) {
    pts.push_back(e.u);
    pts.push_back(e.v);
  }
  detail::sort_unique(pts);
  if (pts.size() > kVertexCoverMaxEndpoints) {
    throw BudgetError("min_vertex_cover: " + std::to_string(pts.size()) +
                      " endpoints exceeds the cap of " +
                      std::to_string(kVertexCoverMaxEndpoints));
  }
  if (edges.empty()) return {};
  const int m = static_cast<int>(pts.size());
  auto index = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), v) - pts.begin());
  };
  std::vector<std::uint32_t> edge_masks;
  for (const Edge& e : edges) {
    edge_masks.push_back((1u << index(e.u)) | (1u << index(e.v)));
  }
  auto covers = [&](std::uint32_t mask) {
    for (std::uint32_t em : edge_masks) {
      if ((em & mask) == 0) return false;
    }
    return true;
  };
  // combinations of each size in lexicographic order of index lists
  for (int size = 1; size <= m; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int i : idx) mask |= 1u << i;
      if (covers(mask)) {
        std::vector<Vertex> out;
        for (int i : idx) out.push_back(pts[i]);
        return out;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return pts;
}

inline std::vector<Vertex> min_vertex_cover(const TargetEdges& t) {
  return min_vertex_cover(t.edges());
}

}  // namespace subsetdag
