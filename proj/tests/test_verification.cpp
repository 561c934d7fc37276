#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace subsetdag;
using namespace testing_support;

namespace {

Dag small6() {
  return Dag(6, {{0, 4}, {0, 5}, {1, 2}, {1, 3}, {4, 1}, {4, 2}, {4, 3}, {4, 5}, {5, 2}});
}

bool is_forest(int n, const std::vector<Arc>& arcs) {
  // union-find on the skeleton
  std::vector<int> up(static_cast<std::size_t>(n));
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const Arc& a : arcs) {
    int x = find(a.from), y = find(a.to);
    if (x == y) return false;
    up[x] = y;
  }
  return true;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

TEST(AtomicVerifyingSet, SmallExample) {
  const Dag g = small6();
  const auto all = atomic_verifying_set(g, TargetEdges::all_of(g));
  EXPECT_EQ(all.size(), 2u);
  EXPECT_EQ(all.size(), nu1_bruteforce(g, TargetEdges::all_of(g)).size);
  EXPECT_TRUE(verify_is_verifying(g, TargetEdges::all_of(g), all));
  const TargetEdges t(g, {{0, 4}, {4, 5}, {1, 3}});
  EXPECT_EQ(atomic_verifying_set(g, t).size(), 2u);
}

TEST(AtomicVerifyingSet, EmptyTargets) {
  EXPECT_TRUE(atomic_verifying_set(small6(), TargetEdges(std::vector<Edge>{})).empty());
  // already oriented by the essential graph
  EXPECT_TRUE(atomic_verifying_set(small6(), TargetEdges({{1, 2}, {2, 5}})).empty());
}

TEST(AtomicVerifyingSet, RootedTreeNeedsOne) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const HasseTree t = random_tree(n, rng);
    const Dag g(n, t.arcs());
    auto T = random_targets(g, 0.5, rng);
    if (T.empty()) T = TargetEdges({g.edges().front()});
    EXPECT_EQ(atomic_verifying_set(g, T).size(), 1u);
    EXPECT_TRUE(verify_is_verifying(g, T, InterventionSet::atomic({t.root})));
  }
}

TEST(AtomicVerifyingSet, RejectsNonEdges) {
  EXPECT_THROW(atomic_verifying_set(small6(), TargetEdges({{0, 1}})), InputError);
}

TEST(AtomicVerifyingSet, MatchesBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Dag g = trial % 2 ? generate_synthetic(n, trial % 4 == 1 ? 0.1 : 0.3, rng())
                            : random_dag(n, 0.45, rng);
    const auto T = random_sized_targets(g, rng);
    const auto I = atomic_verifying_set(g, T);
    ASSERT_EQ(I.size(), nu1_bruteforce(g, T).size) << "trial " << trial;
    ASSERT_TRUE(verify_is_verifying(g, T, I));
    validate(I, n);
  }
}

TEST(AtomicVerifyingSet, FullTargetsIsCoveredEdgeCover) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Dag g = generate_synthetic(1 + static_cast<int>(seed % 15), 0.2, seed);
    EXPECT_EQ(atomic_verifying_set(g, TargetEdges::all_of(g)).size(),
              min_vertex_cover(covered_edges(g)).size());
  }
}

TEST(AtomicVerifyingSet, SubsetNeverNeedsMore) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = generate_synthetic(2 + static_cast<int>(rng() % 12), 0.2, rng());
    const SubsetVerifier sv(g);
    const auto full = sv.nu1(TargetEdges::all_of(g));
    EXPECT_LE(sv.nu1(random_targets(g, 0.5, rng)), full);
  }
}

TEST(AtomicVerifyingSet, ImpliedEdgesAreFree) {
  // adding edges that the optimal set orients anyway keeps nu_1 unchanged
  std::mt19937_64 rng(16);
  int strict = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = generate_synthetic(3 + static_cast<int>(rng() % 10), 0.2, rng());
    const SubsetVerifier sv(g);
    auto T = random_targets(g, 0.3, rng);
    const auto I = sv.atomic(T);
    std::vector<Edge> bigger;
    for (const Arc& a : recover_interventions(g, I).recovered) bigger.push_back(Edge::of(a));
    bigger.insert(bigger.end(), T.begin(), T.end());
    const TargetEdges T2(bigger);
    EXPECT_EQ(sv.nu1(T2), sv.nu1(T));
    if (T2.size() > T.size()) ++strict;
  }
  EXPECT_GT(strict, 0);
}

TEST(VerifyIsVerifying, Examples) {
  const Dag g = small6();
  const TargetEdges t(g, {{0, 4}, {4, 5}, {1, 3}});
  EXPECT_TRUE(verify_is_verifying(g, t, InterventionSet::atomic(min_vertex_cover(t))));
  EXPECT_FALSE(verify_is_verifying(g, t, InterventionSet{}));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Dag h = random_dag(2 + static_cast<int>(rng() % 8), 0.4, rng);
    const auto T = random_targets(h, 0.5, rng);
    EXPECT_TRUE(verify_is_verifying(h, T, InterventionSet::atomic(min_vertex_cover(T))));
  }
}

TEST(ForestSubset, Examples) {
  const Dag tri(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_TRUE(forest_subset(tri, {}).empty());
  const std::vector<Arc> tree{{0, 1}, {1, 2}};
  EXPECT_EQ(forest_subset(tri, tree), tree);
  const auto f = forest_subset(tri, tri.arcs());
  EXPECT_EQ(f.size(), 2u);
  EXPECT_TRUE(is_forest(3, f));
  const auto before = as_set(recover_arcs(tri, tri.arcs()).recovered);
  const auto after = as_set(recover_arcs(tri, f).recovered);
  for (const Arc& a : before) EXPECT_TRUE(after.count(a));
}

TEST(ForestSubset, RandomInvariants) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Dag g = generate_synthetic(n, 0.4, rng());
    std::vector<Arc> s;
    for (const Arc& a : g.arcs()) {
      if (rng() % 2) s.push_back(a);
    }
    const auto f = forest_subset(g, s);
    ASSERT_TRUE(is_forest(n, f));
    const auto rs = as_set(recover_arcs(g, s).recovered);
    const auto rf = as_set(recover_arcs(g, f).recovered);
    for (const Arc& a : rs) ASSERT_TRUE(rf.count(a));
    std::set<Vertex> vs, vf;
    for (const Arc& a : s) vs.insert({a.from, a.to});
    for (const Arc& a : f) vf.insert({a.from, a.to});
    for (Vertex v : vf) ASSERT_TRUE(vs.count(v));
  }
}

TEST(BoundedVerifyingSet, KOneIsAtomic) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Dag g = random_dag(2 + static_cast<int>(rng() % 8), 0.4, rng);
    const auto T = random_targets(g, 0.6, rng);
    EXPECT_EQ(bounded_verifying_set(g, T, 1).interventions, atomic_verifying_set(g, T).interventions);
  }
}

TEST(BoundedVerifyingSet, SizeBoundsAndFeasibility) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 14);
    const Dag g = trial % 2 ? generate_synthetic(n, 0.3, rng()) : random_dag(n, 0.4, rng);
    const auto T = random_targets(g, 0.7, rng);
    const SubsetVerifier sv(g);
    const auto ell = sv.nu1(T);
    for (int k : {2, 3, 5}) {
      const auto I = bounded_verifying_set(sv, T, k);
      validate(I, n);
      ASSERT_TRUE(verify_is_verifying(g, T, I));
      if (ell == 0) {
        ASSERT_TRUE(I.empty());
        continue;
      }
      const auto lo = ceil_div(ell, static_cast<std::size_t>(k));
      ASSERT_GE(I.size(), lo);
      ASSERT_LE(I.size(), lo + 1);
      if (static_cast<std::size_t>(k) >= ell) {
        ASSERT_LE(I.size(), 2u);
      }
    }
  }
}

TEST(BoundedVerifyingSet, LowerBoundHoldsOnSmallInstances) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Dag g = generate_synthetic(n, 0.3, rng());
    const auto T = random_targets(g, 0.7, rng);
    const auto ell = atomic_verifying_set(g, T).size();
    for (int k : {2, 3}) {
      const auto nuk = nuk_bruteforce(g, T, k).size;
      ASSERT_GE(nuk, ceil_div(ell, static_cast<std::size_t>(k)));
      ASSERT_LE(nuk, bounded_verifying_set(g, T, k).size());
    }
  }
}

TEST(CostVerifyingSet, Reductions) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Dag g = random_dag(n, 0.4, rng);
    const auto T = random_targets(g, 0.6, rng);
    const auto ell = atomic_verifying_set(g, T).size();
    EXPECT_EQ(cost_verifying_set(g, T, 1, CostParams{0.0, 1.0, {}}).size(), ell);
    EXPECT_EQ(cost_verifying_set(g, T, 1, CostParams{1.0, 0.0, {}}).size(), ell);
  }
}

TEST(CostVerifyingSet, WithinTwoBetaOfBruteForce) {
  std::mt19937_64 rng(47);
  const double choices[] = {0.0, 0.5, 1.0};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Dag g = trial % 2 ? generate_synthetic(n, 0.3, rng()) : random_dag(n, 0.4, rng);
    const auto T = random_targets(g, 0.7, rng);
    CostParams c{choices[rng() % 3], choices[rng() % 3], {}};
    for (int v = 0; v < n; ++v) c.costs.push_back(static_cast<double>(rng() % 5));
    const auto I = cost_verifying_set(g, T, 2, c);
    ASSERT_TRUE(verify_is_verifying(g, T, I));
    const auto opt = min_cost_bounded_bruteforce(g, T, 2, c);
    ASSERT_LE(objective(I, c), opt.objective + 2 * c.beta + 1e-9);
  }
}

TEST(CostVerifyingSet, RejectsBadParams) {
  const Dag g = small6();
  const auto T = TargetEdges::all_of(g);
  EXPECT_THROW(cost_verifying_set(g, T, 1, CostParams{-1.0, 0.0, {}}), InputError);
  EXPECT_THROW(cost_verifying_set(g, T, 1, CostParams{1.0, 0.0, {1.0}}), InputError);
  EXPECT_THROW(bounded_verifying_set(g, T, 0), InputError);
}

TEST(Objective, Arithmetic) {
  const InterventionSet I{{{0, 1}, {2}}, 2};
  EXPECT_DOUBLE_EQ(objective(I, CostParams{2.0, 3.0, {1.0, 2.0, 4.0}}), 2.0 * 7.0 + 3.0 * 2.0);
  EXPECT_DOUBLE_EQ(objective(I, CostParams{}), 3.0);
}

TEST(InterventionSet, Validate) {
  EXPECT_NO_THROW(validate(InterventionSet{{{0, 1}}, 2}, 3));
  EXPECT_THROW(validate(InterventionSet{{{0, 1}}, 1}, 3), InputError);
  EXPECT_THROW(validate(InterventionSet{{{}}, 1}, 3), InputError);
  EXPECT_THROW(validate(InterventionSet{{{0, 0}}, 2}, 3), InputError);
  EXPECT_THROW(validate(InterventionSet{{{0}, {0}}, 1}, 3), InputError);
  EXPECT_THROW(validate(InterventionSet{{{5}}, 1}, 3), InputError);
}
