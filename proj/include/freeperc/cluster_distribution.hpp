#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cayley_graph.hpp"
#include "errors.hpp"
#include "group_factor.hpp"
#include "polynomial.hpp"

namespace freeperc {

/// Exact distribution of the origin cluster size in a finite factor graph:
/// q(n) is the probability, as a polynomial in the bond probability p, that
/// the open component of the origin has exactly n vertices.
struct ClusterSizeDistribution {
  std::vector<RationalPolynomial> by_size;  // by_size[n-1] = q(n), n = 1..max_size

  int max_size() const { return static_cast<int>(by_size.size()); }

  const RationalPolynomial& q(int n) const {
    if (n < 1 || n > max_size()) throw Error(errc::invalid_argument, "cluster size out of range");
    return by_size[static_cast<std::size_t>(n - 1)];
  }

  /// Sum of all q(n); identically 1 for a valid distribution.
  RationalPolynomial total() const {
    RationalPolynomial s;
    for (const auto& f : by_size) s += f;
    return s;
  }

  /// Sum of n*q(n): the expected cluster size as a polynomial.
  RationalPolynomial mean_polynomial() const {
    RationalPolynomial s;
    for (std::size_t i = 0; i < by_size.size(); ++i) s += Rational(i + 1) * by_size[i];
    return s;
  }
};

namespace detail {

// Union-find on a handful of vertices, no allocation.
struct SmallDSU {
  std::array<std::int8_t, 64> parent{};
  void reset(int n) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(b);
    return true;
  }
};

inline std::vector<RationalPolynomial> closed_probability_powers(int max_power) {
  // (1-p)^j for j = 0..max_power
  std::vector<RationalPolynomial> pw;
  pw.reserve(static_cast<std::size_t>(max_power) + 1);
  pw.push_back(RationalPolynomial::one());
  RationalPolynomial q{Rational(1), Rational(-1)};
  for (int j = 1; j <= max_power; ++j) pw.push_back(pw.back() * q);
  return pw;
}

/// Origin-cluster distribution by summation over vertex sets containing the
/// origin: the all-terminal connectedness polynomial of the induced
/// sub-multigraph times the closed-boundary weight.
inline ClusterSizeDistribution distribution_by_subset_enumeration(const FiniteCayleyGraph& g, int edge_cap) {
  const int V = g.vertex_count;
  const int E = g.edge_count();
  if (E > edge_cap) {
    throw Error(errc::enumeration_cap_exceeded,
                "graph has " + std::to_string(E) + " edges, enumeration cap is " + std::to_string(edge_cap));
  }
  if (V > 31) throw Error(errc::enumeration_cap_exceeded, "graph has too many vertices for subset enumeration");

  ClusterSizeDistribution dist;
  dist.by_size.assign(static_cast<std::size_t>(V), RationalPolynomial());
  auto closed_pw = closed_probability_powers(E);

  SmallDSU dsu;
  std::vector<int> induced;  // edge indices of the current vertex set
  for (std::uint32_t w = 1; w < (1u << V); w += 2) {  // always contains vertex 0
    induced.clear();
    int boundary = 0;
    for (int e = 0; e < E; ++e) {
      bool in_u = (w >> g.edges[static_cast<std::size_t>(e)].first) & 1u;
      bool in_v = (w >> g.edges[static_cast<std::size_t>(e)].second) & 1u;
      if (in_u && in_v) {
        induced.push_back(e);
      } else if (in_u || in_v) {
        ++boundary;
      }
    }
    int size = __builtin_popcount(w);
    if (size == 1) {
      dist.by_size[0] += closed_pw[static_cast<std::size_t>(boundary)];
      continue;
    }
    // Skip vertex sets whose induced graph cannot span them.
    dsu.reset(V);
    int components = size;
    for (int e : induced) {
      if (dsu.unite(g.edges[static_cast<std::size_t>(e)].first, g.edges[static_cast<std::size_t>(e)].second))
        --components;
    }
    if (components != 1) continue;

    // Spanning-connected counts by number of open edges.
    const int k = static_cast<int>(induced.size());
    std::vector<std::uint64_t> count(static_cast<std::size_t>(k) + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      dsu.reset(V);
      int comp = size;
      std::uint32_t rest = mask;
      while (rest != 0) {
        int b = __builtin_ctz(rest);
        rest &= rest - 1;
        const auto& ed = g.edges[static_cast<std::size_t>(induced[static_cast<std::size_t>(b)])];
        if (dsu.unite(ed.first, ed.second)) --comp;
      }
      if (comp == 1) ++count[static_cast<std::size_t>(__builtin_popcount(mask))];
    }
    RationalPolynomial reliability;
    for (int open = 0; open <= k; ++open) {
      if (count[static_cast<std::size_t>(open)] == 0) continue;
      reliability += Rational(count[static_cast<std::size_t>(open)]) *
                     RationalPolynomial::monomial(Rational(1), static_cast<std::size_t>(open)) *
                     closed_pw[static_cast<std::size_t>(k - open)];
    }
    dist.by_size[static_cast<std::size_t>(size - 1)] +=
        reliability * closed_pw[static_cast<std::size_t>(boundary)];
  }
  return dist;
}

}  // namespace detail

/// Exact cluster-size distribution of a finite factor.
///
/// Cyclic factors use the arc closed forms q(n) = n(1-p)^2 p^{n-1} for n < m
/// and q(m) = (m(1-p)+p) p^{m-1}; explicit graphs are enumerated (subject to
/// the edge cap).
inline ClusterSizeDistribution cluster_distribution(const GroupFactor& factor, int edge_cap = 20) {
  if (!factor.is_finite())
    throw Error(errc::invalid_argument, "cluster distribution is only defined for finite factors");
  if (factor.kind() == FactorKind::explicit_finite) {
    return detail::distribution_by_subset_enumeration(factor.graph(), edge_cap);
  }
  const int m = factor.order();
  ClusterSizeDistribution dist;
  dist.by_size.reserve(static_cast<std::size_t>(m));
  RationalPolynomial closed2 = RationalPolynomial{Rational(1), Rational(-1)} * RationalPolynomial{Rational(1), Rational(-1)};
  for (int n = 1; n < m; ++n) {
    dist.by_size.push_back(Rational(n) * closed2 * RationalPolynomial::monomial(Rational(1), static_cast<std::size_t>(n - 1)));
  }
  // q(m) = (m(1-p)+p) p^{m-1}
  RationalPolynomial last = RationalPolynomial{Rational(m), Rational(1 - m)} *
                            RationalPolynomial::monomial(Rational(1), static_cast<std::size_t>(m - 1));
  dist.by_size.push_back(last);
  return dist;
}

/// Expected origin-cluster size of a finite graph at exact rational p by full
/// enumeration of edge configurations. Independent of the distribution and
/// closed-form routes; intended as their oracle.
inline Rational chi_exact_oracle(const FiniteCayleyGraph& g, const Rational& p, int edge_cap = 24) {
  const int V = g.vertex_count;
  const int E = g.edge_count();
  if (E > edge_cap) {
    throw Error(errc::enumeration_cap_exceeded,
                "graph has " + std::to_string(E) + " edges, oracle cap is " + std::to_string(edge_cap));
  }
  if (V > 32) throw Error(errc::enumeration_cap_exceeded, "graph has too many vertices for the oracle");

  // count[n-1][k]: configurations with k open edges whose origin component has n vertices.
  std::vector<std::vector<std::uint64_t>> count(static_cast<std::size_t>(V),
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(E) + 1, 0));
  detail::SmallDSU dsu;
  for (std::uint64_t mask = 0; mask < (1ull << E); ++mask) {
    dsu.reset(V);
    std::uint64_t rest = mask;
    while (rest != 0) {
      int b = __builtin_ctzll(rest);
      rest &= rest - 1;
      dsu.unite(g.edges[static_cast<std::size_t>(b)].first, g.edges[static_cast<std::size_t>(b)].second);
    }
    int root = dsu.find(0);
    int n = 0;
    for (int v = 0; v < V; ++v) {
      if (dsu.find(v) == root) ++n;
    }
    ++count[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(__builtin_popcountll(mask))];
  }
  std::vector<Rational> popen(static_cast<std::size_t>(E) + 1), pclosed(static_cast<std::size_t>(E) + 1);
  popen[0] = 1;
  pclosed[0] = 1;
  for (int k = 1; k <= E; ++k) {
    popen[static_cast<std::size_t>(k)] = popen[static_cast<std::size_t>(k - 1)] * p;
    pclosed[static_cast<std::size_t>(k)] = pclosed[static_cast<std::size_t>(k - 1)] * (1 - p);
  }
  Rational chi(0);
  for (int n = 1; n <= V; ++n) {
    for (int k = 0; k <= E; ++k) {
      std::uint64_t c = count[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
      if (c != 0) chi += Rational(n) * Rational(c) * popen[static_cast<std::size_t>(k)] * pclosed[static_cast<std::size_t>(E - k)];
    }
  }
  return chi;
}

}  // namespace freeperc
