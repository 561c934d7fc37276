#include <gtest/gtest.h>

#include <sstream>

#include "subsetdag/io.hpp"
#include "test_support.hpp"

using namespace subsetdag;
using namespace testing_support;

namespace {

std::string data(const std::string& f) { return std::string(SUBSETDAG_DATA_DIR) + "/" + f; }

template <typename Fn>
std::string error_of(Fn&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, DagRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Dag g = random_dag(1 + static_cast<int>(rng() % 12), 0.4, rng);
    std::stringstream s;
    io::write_dag(s, g);
    EXPECT_EQ(io::read_dag(s), g);
  }
}

TEST(Io, TargetsAndAnnotatedRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Dag g = random_dag(2 + static_cast<int>(rng() % 10), 0.4, rng);
    const auto T = random_targets(g, 0.5, rng);
    std::stringstream s;
    io::write_targets(s, T);
    EXPECT_EQ(io::read_targets(s, g).edges(), T.edges());
    const auto p = essential_graph(g).closure;
    std::stringstream q;
    io::write_annotated(q, p);
    EXPECT_EQ(io::read_annotated(q), p);
  }
}

TEST(Io, ErrorsCarryLineNumbers) {
  std::istringstream cyc("3\n0 1\n1 2\n2 0\n");
  EXPECT_NE(error_of([&] { io::read_dag(cyc, "g"); }).find("cycle"), std::string::npos);
  std::istringstream bad("# comment\n3\n0 1\nx 2\n");
  EXPECT_EQ(error_of([&] { io::read_dag(bad, "g"); }).rfind("g:4:", 0), 0u);
  const Dag path(3, {{0, 1}, {1, 2}});
  std::istringstream tgt("0 1\n0 2\n");
  const auto msg = error_of([&] { io::read_targets(tgt, path, "t"); });
  EXPECT_EQ(msg.rfind("t:2:", 0), 0u);
  EXPECT_NE(msg.find("not an edge"), std::string::npos);
  std::istringstream w("1 -2\n");
  EXPECT_NE(error_of([&] { io::read_weights(w, 3, "w"); }).find("nonnegative"), std::string::npos);
  std::istringstream ann("2\n0 1 x\n");
  EXPECT_EQ(error_of([&] { io::read_annotated(ann, "a"); }).rfind("a:2:", 0), 0u);
  std::istringstream stab("3 0\n1 0\n2 1\n2 1\n");
  EXPECT_NE(error_of([&] { io::read_stab(stab, "s"); }).find("not an interval"), std::string::npos);
  EXPECT_THROW(io::load_dag(data("missing.dag")), InputError);
}

TEST(Io, BundledFiles) {
  const Dag g = io::load_dag(data("small6.dag"));
  EXPECT_EQ(g.size(), 6);
  EXPECT_EQ(g.arc_count(), 9u);
  const auto T = io::load_targets(data("small6.tgt"), g);
  EXPECT_EQ(T.edges(), (std::vector<Edge>{{0, 4}, {1, 3}, {4, 5}}));
  EXPECT_EQ(atomic_verifying_set(g, T).size(), 2u);
  const auto w = io::load_weights(data("small6.wts"), 6);
  EXPECT_EQ(w, (std::vector<double>{3, 1, 1, 1, 1, 2}));
  const auto d = io::load_stab(data("tree10.stab"));
  EXPECT_EQ(solve(d.tree, d.intervals).cost, 3.0);
  const auto line = io::load_stab(data("path8.stab"));
  const auto r = solve(line.tree, line.intervals);
  EXPECT_EQ(r.cost, 2.0);
  EXPECT_TRUE(stabs_all(line.tree, line.intervals, {3, 6}));
}

TEST(Seeds, Deterministic) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(row_seed(5, 10, 1, 3), row_seed(5, 10, 1, 3));
  EXPECT_NE(row_seed(5, 10, 1, 3), row_seed(5, 10, 1, 4));
  EXPECT_NE(row_seed(5, 10, 0, 3), row_seed(5, 10, 1, 3));
  EXPECT_EQ(generate_synthetic(20, 0.2, 42), generate_synthetic(20, 0.2, 42));
}

TEST(Experiment1, RowsAndShape) {
  ExperimentConfig cfg;
  cfg.n_list = {10};
  cfg.p_list = {0.1};
  cfg.trials = 2;
  const auto rows = run_experiment1(cfg);
  ASSERT_EQ(rows.size(), 8u);
  for (const auto& r : rows) {
    EXPECT_LE(r.t_size, r.m);
    EXPECT_LE(r.nu1_subset, r.nu1_full);
    if (r.frac == 1.0) {
      EXPECT_EQ(r.nu1_subset, r.nu1_full);
      EXPECT_EQ(r.t_size, r.m);
    }
  }
  // nested prefixes: nu1 never drops as the fraction grows
  for (std::size_t i = 0; i < rows.size(); i += 4) {
    for (std::size_t j = 1; j < 4; ++j) EXPECT_LE(rows[i + j - 1].nu1_subset, rows[i + j].nu1_subset);
  }
}

TEST(Experiment1, NuMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& r : experiment1_rows(7, 0.3, seed, {0.3, 1.0})) {
      const Dag g = generate_synthetic(7, 0.3, seed);
      if (r.frac == 1.0) {
        EXPECT_EQ(r.nu1_full, nu1_bruteforce(g, TargetEdges::all_of(g)).size);
      }
    }
  }
}

TEST(Experiment2, RowsAreSound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rows = experiment2_rows(12, 0.2, seed, 1, kExp2Algos);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
      EXPECT_GE(r.interventions, r.nu1_subset);
      EXPECT_LE(r.nu1_subset, r.nu1_full);
      const Dag g = generate_synthetic(12, 0.2, seed);
      const auto h = r_hop_neighbourhood(g, r.target_node, 1);
      EXPECT_EQ(r.nu1_subset, atomic_verifying_set(g, induced_edges(g, h)).size());
    }
  }
}

TEST(Experiment, CsvIsByteIdentical) {
  ExperimentConfig cfg;
  cfg.n_list = {8, 12};
  cfg.p_list = {0.1, 0.3};
  cfg.trials = 2;
  cfg.seed = 17;
  std::ostringstream a, b, c, d;
  run_experiment1(cfg, &a);
  run_experiment1(cfg, &b);
  run_experiment2(cfg, &c);
  run_experiment2(cfg, &d);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(c.str(), d.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kExp1Header);
  EXPECT_EQ(c.str().substr(0, c.str().find('\n')), kExp2Header);
  // header plus one line per row
  const std::string one = a.str(), two = c.str();
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 1 + 2 * 2 * 2 * 4);
  EXPECT_EQ(std::count(two.begin(), two.end(), '\n'), 1 + 2 * 2 * 2 * 3);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.frac_list = {0.0};
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.p_list = {1.5};
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.algos = {"bogus"};
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_NO_THROW(ExperimentConfig{}.validate());
}

TEST(Neighbourhood, Examples) {
  const Dag path(5, {{0, 1}, {1, 2}, {3, 2}, {3, 4}});
  EXPECT_EQ(r_hop_neighbourhood(path, 2, 0), std::vector<Vertex>{2});
  EXPECT_EQ(r_hop_neighbourhood(path, 2, 1), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(r_hop_neighbourhood(path, 0, 9), (std::vector<Vertex>{0, 1, 2, 3, 4}));
  EXPECT_EQ(induced_edges(path, {1, 2, 3}).edges(), (std::vector<Edge>{{1, 2}, {2, 3}}));
}
