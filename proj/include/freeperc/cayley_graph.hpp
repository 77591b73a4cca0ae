#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace freeperc {

/// Finite vertex-transitive graph rooted at vertex 0, stored as an edge
/// multiset (parallel edges allowed, no self-loops).
///
/// Only degree-regularity is verified, a cheap necessary condition for
/// transitivity; supplying a genuinely transitive graph is the caller's
/// responsibility.
struct FiniteCayleyGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  int degree = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }

  /// Cycle on m vertices; the order-2 case is two vertices joined by a
  /// double edge (the generator and its inverse each contribute an edge).
  static FiniteCayleyGraph cycle(int m) {
    if (m < 2) throw Error(errc::invalid_argument, "cycle needs at least 2 vertices");
    FiniteCayleyGraph g;
    g.vertex_count = m;
    if (m == 2) {
      g.edges = {{0, 1}, {0, 1}};
    } else {
      for (int i = 0; i < m; ++i) g.edges.emplace_back(i, (i + 1) % m);
    }
    g.finish_validate();
    return g;
  }

  /// Circulant graph on Z_k: one edge {i, i+s} per vertex per listed step.
  /// Repeated or self-paired steps yield parallel edges, matching the
  /// generator-with-inverse multiplicity convention.
  static FiniteCayleyGraph circulant(int k, const std::vector<int>& steps) {
    if (k < 2 || steps.empty()) throw Error(errc::invalid_argument, "circulant needs k >= 2 and steps");
    FiniteCayleyGraph g;
    g.vertex_count = k;
    for (int s : steps) {
      if (s % k == 0) throw Error(errc::invalid_argument, "circulant step must be nonzero mod k");
      for (int i = 0; i < k; ++i) g.edges.emplace_back(i, (i + s) % k);
    }
    g.finish_validate();
    return g;
  }

  static FiniteCayleyGraph parse(std::istream& in) {
    FiniteCayleyGraph g;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "header line", "empty graph description");
    std::istringstream head(line);
    std::string kw_vertices, kw_origin, kw_degree;
    int n = 0, origin = -1, declared_degree = -1;
    if (!(head >> kw_vertices >> n >> kw_origin >> origin >> kw_degree >> declared_degree) ||
        kw_vertices != "vertices" || kw_origin != "origin" || kw_degree != "degree") {
      throw ParseError(0, "\"vertices <k> origin 0 degree <d>\"", "malformed graph header: " + line);
    }
    if (origin != 0) throw ParseError(0, "origin 0", "graph origin must be vertex 0");
    if (n < 1) throw ParseError(0, "positive vertex count", "graph needs at least one vertex");
    g.vertex_count = n;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      int u, v;
      if (!(ls >> u)) continue;  // blank line
      long multiplicity = 1;
      if (!(ls >> v)) throw ParseError(lineno, "\"u v [multiplicity]\"", "malformed edge line: " + line);
      ls >> multiplicity;
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ParseError(lineno, "vertex ids in range", "edge endpoint out of range: " + line);
      if (u == v) throw ParseError(lineno, "distinct endpoints", "self-loops are not allowed: " + line);
      if (multiplicity < 1) throw ParseError(lineno, "positive multiplicity", "bad multiplicity: " + line);
      for (long t = 0; t < multiplicity; ++t) g.edges.emplace_back(u, v);
    }
    g.finish_validate();
    if (declared_degree != g.degree) {
      throw ParseError(0, "consistent degree", "declared degree " + std::to_string(declared_degree) +
                                                   " but computed " + std::to_string(g.degree));
    }
    return g;
  }

  static FiniteCayleyGraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "vertices " << vertex_count << " origin 0 degree " << degree << "\n";
    for (const auto& [u, v] : edges) os << u << " " << v << "\n";
    return os.str();
  }

  /// Recomputes the degree and enforces the structural invariants.
  void finish_validate() {
    std::vector<int> deg(vertex_count, 0);
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
        throw Error(errc::invalid_argument, "edge endpoint out of range");
      if (u == v) throw Error(errc::invalid_argument, "self-loops are not allowed");
      ++deg[u];
      ++deg[v];
    }
    if (vertex_count > 1 && edges.empty()) throw Error(errc::disconnected_graph, "graph has no edges");
    degree = deg.empty() ? 0 : deg[0];
    for (int d : deg) {
      if (d != degree) throw Error(errc::not_degree_regular, "graph is not degree-regular");
    }
    // Connectivity from the origin.
    std::vector<std::vector<int>> adj(vertex_count);
    for (const auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
          stack.push_back(y);
        }
      }
    }
    if (reached != vertex_count) throw Error(errc::disconnected_graph, "graph is not connected");
  }
};

}  // namespace freeperc
