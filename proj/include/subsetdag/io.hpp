#pragma once

// Plain-text formats. Blank lines and anything after '#' are ignored.
//   .dag   first line `n`, then `u v` per arc u -> v
//   .tgt   `u v` per target edge, either order
//   .wts   `v cost` per vertex; unlisted vertices cost 1
//   .stab  `n root`, then n-1 lines `child parent`, then `a b [ignored]` intervals
//   annotated dump: .dag header then `u v d` (directed) or `u v u` (undirected)

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "subsetdag/graph.hpp"
#include "subsetdag/hasse.hpp"

namespace subsetdag::io {

namespace detail {

struct LineReader {
  std::istream& in;
  std::string name;
  int lineno = 0;

  // Next non-blank line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(name + ":" + std::to_string(lineno) + ": " + what);
  }

  long long integer(const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  double real(const std::string& tok) const {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("expected a number, got '" + tok + "'");
    }
    if (used != tok.size()) fail("expected a number, got '" + tok + "'");
    return v;
  }

  void arity(const std::vector<std::string>& tokens, std::size_t lo, std::size_t hi) const {
    if (tokens.size() < lo || tokens.size() > hi) {
      fail("expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
           " fields, got " + std::to_string(tokens.size()));
    }
  }
};

}  // namespace detail

inline Dag read_dag(std::istream& in, const std::string& name = "<dag>") {
  detail::LineReader r{in, name};
  std::vector<std::string> tok;
  if (!r.next(tok)) r.fail("missing vertex count");
  r.arity(tok, 1, 1);
  const long long n = r.integer(tok[0]);
  if (n < 1 || n > 1'000'000) r.fail("vertex count out of range");
  std::vector<Arc> arcs;
  while (r.next(tok)) {
    r.arity(tok, 2, 2);
    arcs.push_back({static_cast<Vertex>(r.integer(tok[0])), static_cast<Vertex>(r.integer(tok[1]))});
  }
  try {
    return Dag(static_cast<int>(n), std::move(arcs));
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
}

inline TargetEdges read_targets(std::istream& in, const Dag& g, const std::string& name = "<tgt>") {
  detail::LineReader r{in, name};
  std::vector<std::string> tok;
  std::vector<Edge> edges;
  while (r.next(tok)) {
    r.arity(tok, 2, 2);
    const auto u = r.integer(tok[0]);
    const auto v = r.integer(tok[1]);
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size()) r.fail("vertex out of range");
    if (u == v || !g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      r.fail("{" + tok[0] + ", " + tok[1] + "} is not an edge of the graph");
    }
    edges.push_back(Edge::of(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  }
  return TargetEdges(g, std::move(edges));
}

inline std::vector<double> read_weights(std::istream& in, int n, const std::string& name = "<wts>") {
  detail::LineReader r{in, name};
  std::vector<std::string> tok;
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  while (r.next(tok)) {
    r.arity(tok, 2, 2);
    const auto v = r.integer(tok[0]);
    if (v < 0 || v >= n) r.fail("vertex out of range");
    const double c = r.real(tok[1]);
    if (!(c >= 0.0)) r.fail("cost must be nonnegative");
    w[static_cast<std::size_t>(v)] = c;
  }
  return w;
}

struct StabFile {
  HasseTree tree;
  std::vector<StabInterval> intervals;
};

inline StabFile read_stab(std::istream& in, const std::string& name = "<stab>") {
  detail::LineReader r{in, name};
  std::vector<std::string> tok;
  if (!r.next(tok)) r.fail("missing header `n root`");
  r.arity(tok, 2, 2);
  const long long n = r.integer(tok[0]);
  const long long root = r.integer(tok[1]);
  if (n < 1 || n > 1'000'000) r.fail("vertex count out of range");
  if (root < 0 || root >= n) r.fail("root out of range");
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoVertex);
  for (long long i = 0; i + 1 < n; ++i) {
    if (!r.next(tok)) r.fail("expected " + std::to_string(n - 1) + " parent lines");
    r.arity(tok, 2, 2);
    const auto c = r.integer(tok[0]);
    const auto p = r.integer(tok[1]);
    if (c < 0 || c >= n || p < 0 || p >= n) r.fail("vertex out of range");
    if (c == root) r.fail("the root cannot have a parent");
    if (parent[static_cast<std::size_t>(c)] != kNoVertex) r.fail("vertex given two parents");
    parent[static_cast<std::size_t>(c)] = static_cast<Vertex>(p);
  }
  std::vector<Vertex> members(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) members[v] = v;
  StabFile f;
  try {
    f.tree = HasseTree::from_parents(static_cast<int>(n), members, parent);
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
  while (r.next(tok)) {
    r.arity(tok, 2, 3);
    const auto a = r.integer(tok[0]);
    const auto b = r.integer(tok[1]);
    if (a < 0 || a >= n || b < 0 || b >= n) r.fail("vertex out of range");
    if (!f.tree.is_ancestor(static_cast<Vertex>(a), static_cast<Vertex>(b))) {
      r.fail("[" + tok[0] + ", " + tok[1] + "] is not an interval of the tree");
    }
    f.intervals.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), std::nullopt});
  }
  return f;
}

inline void write_dag(std::ostream& out, const Dag& g) {
  out << g.size() << '\n';
  for (const Arc& a : g.arcs()) out << a.from << ' ' << a.to << '\n';
}

inline void write_targets(std::ostream& out, const TargetEdges& t) {
  for (const Edge& e : t) out << e.u << ' ' << e.v << '\n';
}

/// Directed arcs first (sorted), then undirected edges (sorted).
inline void write_annotated(std::ostream& out, const Pdag& p) {
  out << p.size() << '\n';
  for (const Arc& a : p.arcs()) out << a.from << ' ' << a.to << " d\n";
  for (const Edge& e : p.undirected_edges()) out << e.u << ' ' << e.v << " u\n";
}

inline Pdag read_annotated(std::istream& in, const std::string& name = "<pdag>") {
  detail::LineReader r{in, name};
  std::vector<std::string> tok;
  if (!r.next(tok)) r.fail("missing vertex count");
  r.arity(tok, 1, 1);
  const long long n = r.integer(tok[0]);
  if (n < 1 || n > 1'000'000) r.fail("vertex count out of range");
  Pdag p(static_cast<int>(n));
  while (r.next(tok)) {
    r.arity(tok, 3, 3);
    const auto u = r.integer(tok[0]);
    const auto v = r.integer(tok[1]);
    if (u < 0 || u >= n || v < 0 || v >= n) r.fail("vertex out of range");
    try {
      if (tok[2] == "d") {
        p.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } else if (tok[2] == "u") {
        p.add_undirected(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } else {
        r.fail("edge kind must be 'd' or 'u'");
      }
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind(name, 0) == 0) throw;
      r.fail(e.what());
    }
  }
  return p;
}

template <typename Fn>
auto with_file(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return fn(in, path);
}

inline Dag load_dag(const std::string& path) {
  return with_file(path, [](std::istream& in, const std::string& p) { return read_dag(in, p); });
}

inline TargetEdges load_targets(const std::string& path, const Dag& g) {
  return with_file(path,
                   [&](std::istream& in, const std::string& p) { return read_targets(in, g, p); });
}

inline std::vector<double> load_weights(const std::string& path, int n) {
  return with_file(path,
                   [&](std::istream& in, const std::string& p) { return read_weights(in, n, p); });
}

inline StabFile load_stab(const std::string& path) {
  return with_file(path, [](std::istream& in, const std::string& p) { return read_stab(in, p); });
}

}  // namespace subsetdag::io
