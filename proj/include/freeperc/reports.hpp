#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "errors.hpp"
#include "free_product.hpp"
#include "group_factor.hpp"

namespace freeperc {

/// Half-up rounding to 4 decimals, the table's presentation convention.
inline double round4(double v) { return std::floor(v * 10000.0 + 0.5) / 10000.0; }

inline std::string format4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", round4(v));
  return buf;
}

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Column spec for the p_c table: a cyclic order, or nullopt for the
/// infinite cyclic group ("inf").
using TableAxis = std::vector<std::optional<int>>;

inline GroupFactor table_factor(const std::optional<int>& order) {
  return order ? GroupFactor::cyclic(*order) : GroupFactor::integers();
}

inline std::string axis_label(const std::optional<int>& order) {
  return order ? std::to_string(*order) : "inf";
}

/// CSV grid of critical probabilities of C_m * C_n (rows m, columns n;
/// "inf" denotes Z), rounded half-up to 4 decimals.
inline std::string pc_table_csv(const TableAxis& rows, const TableAxis& cols, double tol = 1e-9) {
  std::ostringstream os;
  os << "m\\n";
  for (const auto& c : cols) os << "," << axis_label(c);
  os << "\n";
  for (const auto& r : rows) {
    os << axis_label(r);
    for (const auto& c : cols) {
      FreeProduct product(table_factor(r), table_factor(c));
      os << "," << format4(pc_numeric(product, tol));
    }
    os << "\n";
  }
  return os.str();
}

inline TableAxis default_table_rows() { return {2, 4, 10}; }
inline TableAxis default_table_cols() { return {2, 3, 4, 5, 10, 100, std::nullopt}; }

/// CSV samples of h(t) = g2(p, g1(p,t)) - t for each p on the grid: the
/// fixed-point landscape whose positive root is the survival probability.
inline std::string fixed_point_curve_csv(const FreeProduct& product, const std::vector<double>& p_grid,
                                         const std::vector<double>& t_grid, int edge_cap = 20) {
  if (product.size() != 2)
    throw Error(errc::invalid_argument, "the fixed-point curve is defined for two-factor products");
  std::ostringstream os;
  os << "p,t,h\n";
  for (double p : p_grid) {
    WalkThroughEvaluator g1(product.factors[0], p, edge_cap);
    WalkThroughEvaluator g2(product.factors[1], p, edge_cap);
    for (double t : t_grid) {
      os << format_double(p) << "," << format_double(t) << "," << format_double(g2(g1(t)) - t) << "\n";
    }
  }
  return os.str();
}

inline std::string theta_curve_csv(const FreeProduct& product, const std::vector<double>& p_grid,
                                   double tol = 1e-9) {
  std::ostringstream os;
  os << "p,theta\n";
  for (double p : p_grid) os << format_double(p) << "," << format_double(theta(product, p, tol).theta) << "\n";
  return os.str();
}

inline std::string expected_cluster_curve_csv(const FreeProduct& product, const std::vector<double>& p_grid) {
  std::ostringstream os;
  os << "p,expected_cluster_size\n";
  for (double p : p_grid)
    os << format_double(p) << "," << format_double(expected_cluster_size(product, p)) << "\n";
  return os.str();
}

inline std::string approximation_csv(const ApproximationResult& result) {
  std::ostringstream os;
  os << "j,pc_j,delta_j\n";
  for (const auto& row : result.rows)
    os << row.j << "," << format_double(row.pc_j) << "," << format_double(row.delta_j) << "\n";
  os << "# fit slope=" << format_double(result.slope) << " r2=" << format_double(result.r_squared)
     << " points=" << result.points_used << " pc_limit=" << format_double(result.pc_limit) << "\n";
  return os.str();
}

}  // namespace freeperc
