// Command-line front end: generation, verification, oracles, stabbing,
// search and the two experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subsetdag/subsetdag.hpp"

using namespace subsetdag;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string join(const std::vector<Vertex>& vs) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < vs.size(); ++i) ss << (i ? " " : "") << vs[i];
  return ss.str();
}

void print_set(std::ostream& os, const InterventionSet& I) {
  for (const auto& s : I.interventions) os << "  {" << join(s) << "}\n";
}

TargetEdges targets_or_all(const std::string& path, const Dag& g) {
  return path.empty() ? TargetEdges::all_of(g) : io::load_targets(path, g);
}

struct VerifyArgs {
  std::string graph, targets, weights;
  int k = 1;
  double alpha = 1.0, beta = 0.0;
  bool certificate = false;
  bool cost = false;
};

void add_verify_flags(CLI::App* cmd, VerifyArgs& a) {
  cmd->add_option("--graph", a.graph, "ground-truth .dag file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--targets", a.targets, ".tgt file (default: every edge)")->check(CLI::ExistingFile);
  cmd->add_option("--k", a.k, "largest intervention size")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", a.alpha, "weight on total vertex cost")->check(CLI::NonNegativeNumber);
  cmd->add_option("--beta", a.beta, "weight on intervention count")->check(CLI::NonNegativeNumber);
  cmd->add_option("--weights", a.weights, ".wts vertex cost file")->check(CLI::ExistingFile);
}

CostParams cost_params(const VerifyArgs& a, int n) {
  CostParams c{a.alpha, a.beta, {}};
  if (!a.weights.empty()) c.costs = io::load_weights(a.weights, n);
  return c;
}

bool wants_cost(const VerifyArgs& a, const CLI::App* cmd) {
  return a.cost || cmd->count("--alpha") || cmd->count("--beta") || cmd->count("--weights");
}

int run_verify(const VerifyArgs& a, const CLI::App* cmd, Globals& g) {
  const Dag dag = io::load_dag(a.graph);
  const TargetEdges t = targets_or_all(a.targets, dag);
  const SubsetVerifier sv(dag);
  const std::size_t ell = sv.nu1(t);
  const CostParams c = cost_params(a, dag.size());
  InterventionSet I;
  if (wants_cost(a, cmd)) {
    I = cost_verifying_set(sv, t, a.k, c);
  } else {
    I = bounded_verifying_set(sv, t, a.k);
  }
  Sink sink(g.out);
  auto& os = sink.os();
  os << "targets " << t.size() << "\n";
  os << "nu1 " << ell << "\n";
  if (a.k > 1) {
    const std::size_t lo = (ell + static_cast<std::size_t>(a.k) - 1) / static_cast<std::size_t>(a.k);
    os << "bounds " << lo << ' ' << (ell == 0 ? 0 : lo + 1) << "\n";
  }
  os << "size " << I.size() << "\n";
  os << "objective " << objective(I, c) << "\n";
  os << "interventions\n";
  print_set(os, I);
  if (a.certificate) {
    os << "closure\n";
    io::write_annotated(os, recover_interventions(dag, I).closure);
  }
  return 0;
}

int run_oracle(const VerifyArgs& a, const CLI::App* cmd, Globals& g) {
  const Dag dag = io::load_dag(a.graph);
  const TargetEdges t = targets_or_all(a.targets, dag);
  Sink sink(g.out);
  auto& os = sink.os();
  if (wants_cost(a, cmd)) {
    const auto ans = min_cost_bounded_bruteforce(dag, t, a.k, cost_params(a, dag.size()));
    os << "objective " << ans.objective << "\n";
    os << "size " << ans.witness.size() << "\ninterventions\n";
    print_set(os, ans.witness);
  } else if (a.k == 1) {
    const auto ans = nu1_bruteforce(dag, t);
    os << "nu1 " << ans.size << "\ninterventions\n";
    print_set(os, ans.witness);
  } else {
    const auto ans = nuk_bruteforce(dag, t, a.k);
    os << "nuk " << ans.size << "\ninterventions\n";
    print_set(os, ans.witness);
  }
  return 0;
}

std::vector<Vertex> load_nodes(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<Vertex> out;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0 || v >= n) throw InputError(path + ": bad vertex '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError(path + ": no vertices");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset verification and search of interventions on causal DAGs"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--seed", glob.seed, "random seed")->capture_default_str();
  app.add_option("--out", glob.out, "output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic DAG or the lower-bound instance");
  int gen_n = 10;
  double gen_p = 0.1;
  int gen_lb = 0;
  std::string gen_targets;
  gen->add_option("--n", gen_n, "vertex count")->check(CLI::PositiveNumber);
  gen->add_option("--p", gen_p, "extra edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--lower-bound", gen_lb, "emit the clique lower-bound instance of this size")
      ->check(CLI::PositiveNumber);
  gen->add_option("--targets-out", gen_targets, "also write the instance's targets here");

  // verify / oracle
  VerifyArgs va, oa;
  auto* verify = app.add_subcommand("verify", "compute a subset verifying set");
  add_verify_flags(verify, va);
  verify->add_flag("--certificate", va.certificate, "print the resulting closure");
  verify->add_flag("--cost", va.cost, "optimise alpha*w(I) + beta*|I|");
  auto* oracle = app.add_subcommand("oracle", "exhaustive reference values (small graphs)");
  add_verify_flags(oracle, oa);
  oracle->add_flag("--cost", oa.cost, "minimise alpha*w(I) + beta*|I|");

  // stab
  auto* stab = app.add_subcommand("stab", "minimum interval stabbing on a rooted tree");
  std::string stab_file, stab_weights;
  bool stab_brute = false;
  stab->add_option("--file", stab_file, ".stab instance")->required()->check(CLI::ExistingFile);
  stab->add_option("--weights", stab_weights, ".wts vertex cost file")->check(CLI::ExistingFile);
  stab->add_flag("--brute", stab_brute, "use the exhaustive solver");

  // search
  auto* search = app.add_subcommand("search", "adaptive search against a simulated oracle");
  std::string s_graph, s_nodes, s_algo = "subsetsearch";
  int s_hop = 1, s_k = 1;
  std::optional<int> s_target;
  search->add_option("--graph", s_graph, "ground-truth .dag file")->required()->check(CLI::ExistingFile);
  search->add_option("--hop", s_hop, "neighbourhood radius")->check(CLI::PositiveNumber);
  auto* tn = search->add_option("--target-node", s_target, "centre of the neighbourhood");
  auto* nodes = search->add_option("--nodes", s_nodes, "file listing the vertices of H")
                    ->check(CLI::ExistingFile);
  tn->excludes(nodes);
  search->add_option("--k", s_k, "largest intervention size")->check(CLI::PositiveNumber);
  search->add_option("--algo", s_algo, "subsetsearch | random | fullsearch")
      ->check(CLI::IsMember({"subsetsearch", "random", "fullsearch"}));

  // experiments
  ExperimentConfig cfg;
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--n-list", cfg.n_list, "graph sizes")->delimiter(',');
    cmd->add_option("--p-list", cfg.p_list, "edge probabilities")->delimiter(',');
    cmd->add_option("--trials", cfg.trials, "trials per cell")->check(CLI::PositiveNumber);
  };
  auto* exp1 = app.add_subcommand("exp1", "nu_1 for random target subsets (CSV)");
  add_grid(exp1);
  exp1->add_option("--fracs", cfg.frac_list, "target fractions")->delimiter(',');
  auto* exp2 = app.add_subcommand("exp2", "search cost on r-hop neighbourhoods (CSV)");
  add_grid(exp2);
  exp2->add_option("--r", cfg.r, "hop radius")->check(CLI::PositiveNumber);
  exp2->add_option("--algos", cfg.algos, "algorithms")->delimiter(',');

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      Sink sink(glob.out);
      if (gen_lb > 0) {
        auto inst = lower_bound_instance(gen_lb);
        io::write_dag(sink.os(), inst.dag);
        if (!gen_targets.empty()) {
          std::ofstream t(gen_targets);
          if (!t) throw InputError("cannot write " + gen_targets);
          io::write_targets(t, inst.targets);
        }
      } else {
        io::write_dag(sink.os(), generate_synthetic(gen_n, gen_p, glob.seed));
      }
      return 0;
    }
    if (*verify) return run_verify(va, verify, glob);
    if (*oracle) return run_oracle(oa, oracle, glob);
    if (*stab) {
      auto f = io::load_stab(stab_file);
      std::vector<double> w;
      if (!stab_weights.empty()) w = io::load_weights(stab_weights, f.tree.graph_size());
      auto r = stab_brute ? solve_bruteforce(f.tree, f.intervals, w) : solve(f.tree, f.intervals, w);
      Sink sink(glob.out);
      sink.os() << "opt " << r.cost << "\nstab " << join(r.stab) << "\n";
      return 0;
    }
    if (*search) {
      const Dag dag = io::load_dag(s_graph);
      std::vector<Vertex> h;
      if (!s_nodes.empty()) {
        h = load_nodes(s_nodes, dag.size());
      } else {
        std::mt19937_64 rng(glob.seed);
        Vertex v = s_target ? *s_target
                            : std::uniform_int_distribution<Vertex>(0, dag.size() - 1)(rng);
        if (v < 0 || v >= dag.size()) throw InputError("target node out of range");
        h = r_hop_neighbourhood(dag, v, s_hop);
      }
      detail::sort_unique(h);
      const TargetEdges t = induced_edges(dag, h);
      HonestOracle o(dag);
      SearchTranscript tr;
      if (s_algo == "subsetsearch") {
        tr = subset_search(o, h, s_k);
      } else if (s_algo == "random") {
        tr = random_search_baseline(o, t, glob.seed);
      } else {
        tr = full_search_until(o, t, s_k);
      }
      std::cerr << "H " << h.size() << " vertices, " << t.size() << " induced edges\n"
                << "rounds " << tr.rounds << "\ninterventions " << tr.total_interventions()
                << "\noriented " << (targets_oriented(tr.final_graph, t) ? "yes" : "no") << "\n";
      Sink sink(glob.out);
      auto& os = sink.os();
      os << "round,interventions,vertices,new_arcs\n";
      std::size_t step = 0;
      for (int r = 1; r <= tr.rounds; ++r) {
        std::vector<Vertex> vs;
        std::size_t arcs = 0;
        int count = 0;
        for (; step < tr.steps.size() && tr.steps[step].round == r; ++step) {
          vs.insert(vs.end(), tr.steps[step].intervention.begin(), tr.steps[step].intervention.end());
          arcs += tr.steps[step].new_arcs.size();
          ++count;
        }
        os << r << ',' << count << ',' << join(vs) << ',' << arcs << '\n';
      }
      return 0;
    }
    if (*exp1) {
      Sink sink(glob.out);
      cfg.seed = glob.seed;
      run_experiment1(cfg, &sink.os());
      return 0;
    }
    if (*exp2) {
      Sink sink(glob.out);
      cfg.seed = glob.seed;
      run_experiment2(cfg, &sink.os());
      return 0;
    }
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
