#pragma once

#include <limits>
#include <string>
#include <utility>

#include "cayley_graph.hpp"
#include "errors.hpp"

namespace freeperc {

enum class FactorKind { cyclic, explicit_finite, integers, free_group };

/// One factor of a free product: a finite cyclic group, an explicitly given
/// finite Cayley graph, the integers, or a free group of rank n, with the
/// attributes its percolation primitives need.
class GroupFactor {
public:
  static GroupFactor cyclic(int order) {
    if (order < 2) throw Error(errc::invalid_argument, "cyclic factor needs order >= 2");
    GroupFactor f;
    f.kind_ = FactorKind::cyclic;
    f.param_ = order;
    f.graph_ = FiniteCayleyGraph::cycle(order);
    f.label_ = "C" + std::to_string(order);
    return f;
  }

  static GroupFactor explicit_finite(FiniteCayleyGraph graph, std::string label = "") {
    graph.finish_validate();
    if (graph.vertex_count < 2) throw Error(errc::invalid_argument, "finite factor needs at least 2 vertices");
    GroupFactor f;
    f.kind_ = FactorKind::explicit_finite;
    f.param_ = graph.vertex_count;
    f.graph_ = std::move(graph);
    f.label_ = label.empty() ? "G" + std::to_string(f.param_) : std::move(label);
    return f;
  }

  static GroupFactor integers() {
    GroupFactor f;
    f.kind_ = FactorKind::integers;
    f.label_ = "Z";
    return f;
  }

  static GroupFactor free_group(int rank) {
    if (rank < 2) throw Error(errc::invalid_argument, "free factor needs rank >= 2");
    GroupFactor f;
    f.kind_ = FactorKind::free_group;
    f.param_ = rank;
    f.label_ = "F" + std::to_string(rank);
    return f;
  }

  FactorKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  bool is_finite() const { return kind_ == FactorKind::cyclic || kind_ == FactorKind::explicit_finite; }

  /// Group order for finite kinds.
  int order() const {
    if (!is_finite()) throw Error(errc::invalid_argument, "infinite factor has no order");
    return param_;
  }

  int rank() const {
    if (kind_ != FactorKind::free_group) throw Error(errc::invalid_argument, "factor is not a free group");
    return param_;
  }

  const FiniteCayleyGraph& graph() const {
    if (!is_finite()) throw Error(errc::invalid_argument, "infinite factor has no stored graph");
    return graph_;
  }

  /// Degree of the origin, generators counted with multiplicity.
  int origin_degree() const {
    switch (kind_) {
      case FactorKind::cyclic:
      case FactorKind::explicit_finite:
        return graph_.degree;
      case FactorKind::integers:
        return 2;
      case FactorKind::free_group:
        return 2 * param_;
    }
    return 0;
  }

  /// Number of generators, inverses not counted. Involution-free pairing is
  /// assumed for explicit graphs (half the origin degree, rounded up).
  int generator_count() const {
    switch (kind_) {
      case FactorKind::cyclic:
        return 1;
      case FactorKind::integers:
        return 1;
      case FactorKind::free_group:
        return param_;
      case FactorKind::explicit_finite:
        return (graph_.degree + 1) / 2;
    }
    return 0;
  }

  /// Supremum of p with finite expected cluster size in this factor alone.
  double chi_divergence_point() const {
    if (kind_ == FactorKind::free_group) return 1.0 / (2.0 * param_ - 1.0);
    return 1.0;
  }

  /// Critical probability of the factor's own Cayley graph.
  double factor_pc() const {
    if (kind_ == FactorKind::free_group) return 1.0 / (2.0 * param_ - 1.0);
    return 1.0;  // finite graphs and the line percolate only at p = 1
  }

private:
  GroupFactor() = default;

  FactorKind kind_ = FactorKind::cyclic;
  int param_ = 0;  // order for finite kinds, rank for free groups
  FiniteCayleyGraph graph_;
  std::string label_;
};

}  // namespace freeperc
