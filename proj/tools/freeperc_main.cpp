// Command-line front end: parses product specs, dispatches the solvers and
// the simulator, and emits machine-readable JSON/CSV. Data goes to stdout,
// diagnostics to stderr.
//
// Exit codes: 0 success, 2 spec/argument parse error, 3 exact mode
// unsupported for the given factors (enumeration cap), 4 degenerate product
// for bounds, 1 other runtime failures.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <freeperc/freeperc.hpp>

namespace {

using nlohmann::json;

std::vector<double> parse_grid(const std::string& text) {
  // Either "a,b,c" or "lo:hi:count" (inclusive linspace).
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double lo, hi;
    int count;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
      throw freeperc::ParseError(0, "lo:hi:count", "bad grid spec: " + text);
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
    return grid;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      grid.push_back(std::stod(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw freeperc::ParseError(pos, "number", "bad grid value in: " + text);
    }
    pos = next + 1;
  }
  if (grid.empty()) throw freeperc::ParseError(0, "nonempty grid", "empty grid spec");
  return grid;
}

freeperc::TableAxis parse_axis(const std::vector<std::string>& items) {
  freeperc::TableAxis axis;
  for (const auto& s : items) {
    if (s == "inf" || s == "Z") {
      axis.push_back(std::nullopt);
    } else {
      try {
        int v = std::stoi(s);
        if (v < 2) throw std::invalid_argument("order");
        axis.push_back(v);
      } catch (const std::exception&) {
        throw freeperc::ParseError(0, "cyclic order or \"inf\"", "bad table axis entry: " + s);
      }
    }
  }
  return axis;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FREEPERC_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Percolation characteristics of free products of groups"};
  app.require_subcommand(1);

  std::string spec;
  double tol = 1e-9;
  bool exact = false;
  auto* cmd_pc = app.add_subcommand("pc", "Critical probability of a product");
  cmd_pc->add_option("spec", spec, "Product spec, e.g. C2*C3")->required();
  cmd_pc->add_option("--tol", tol, "Root tolerance");
  cmd_pc->add_flag("--exact", exact, "Also emit the integer polynomial and a certified bracket");

  std::vector<std::string> row_args{"2", "4", "10"};
  std::vector<std::string> col_args{"2", "3", "4", "5", "10", "100", "inf"};
  auto* cmd_table = app.add_subcommand("table", "CSV grid of pc for C_m*C_n (inf = Z)");
  cmd_table->add_option("--rows", row_args, "Row orders")->delimiter(',');
  cmd_table->add_option("--cols", col_args, "Column orders")->delimiter(',');
  cmd_table->add_option("--tol", tol, "Root tolerance");

  std::string quantity = "theta";
  std::string p_grid_arg;
  std::string t_grid_arg = "0:1:101";
  auto* cmd_curve = app.add_subcommand("curve", "CSV curve samples");
  cmd_curve->add_option("spec", spec, "Product spec")->required();
  cmd_curve->add_option("--quantity", quantity, "theta | ec | fixedpoint-h")
      ->check(CLI::IsMember({"theta", "ec", "fixedpoint-h"}));
  cmd_curve->add_option("--p-grid", p_grid_arg, "Grid: comma list or lo:hi:count");
  cmd_curve->add_option("--t-grid", t_grid_arg, "Grid for fixedpoint-h");
  cmd_curve->add_option("--tol", tol, "Fixed-point tolerance");

  double sim_p = 0.5;
  std::uint64_t trials = 10000, size_cap = 100000, seed = default_seed();
  auto* cmd_sim = app.add_subcommand("simulate", "Seeded Monte Carlo estimates");
  cmd_sim->add_option("spec", spec, "Product spec")->required();
  cmd_sim->add_option("--p", sim_p, "Bond probability")->required();
  cmd_sim->add_option("--trials", trials, "Number of trials");
  cmd_sim->add_option("--seed", seed, "Base seed (default: FREEPERC_SEED or 0)");
  cmd_sim->add_option("--size-cap", size_cap, "Max explored vertices per trial");

  auto* cmd_bounds = app.add_subcommand("bounds", "General pc bounds / strictness report");
  cmd_bounds->add_option("spec", spec, "Product spec")->required();

  std::string family = "C";
  std::vector<int> j_list;
  auto* cmd_approx = app.add_subcommand("approx", "Quotient approximation sweep");
  cmd_approx->add_option("spec", spec, "Target product spec (Z factors get approximated)")->required();
  cmd_approx->add_option("--family", family, "Approximant family (C: Z -> C_j)")
      ->check(CLI::IsMember({"C"}));
  cmd_approx->add_option("--j", j_list, "Approximation indices")->delimiter(',')->required();
  cmd_approx->add_option("--tol", tol, "Root tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_pc->parsed()) {
    auto product = freeperc::parse_product_spec(spec);
    json out;
    out["spec"] = product.label();
    out["pc"] = freeperc::pc_numeric(product, tol);
    out["tol"] = tol;
    if (exact) {
      freeperc::RationalPolynomial poly;
      try {
        poly = freeperc::pc_polynomial(product);
      } catch (const freeperc::Error& e) {
        std::cerr << "exact mode unsupported: " << e.what() << "\n";
        return 3;
      }
      out["polynomial"] = poly.to_string();
      json coeffs = json::array();
      for (const auto& c : poly.integer_coefficients()) coeffs.push_back(c.convert_to<long long>());
      out["coefficients_ascending"] = coeffs;
      auto roots = freeperc::isolate_roots_01(poly, tol);
      if (roots.empty()) {
        out["bracket"] = nullptr;  // pc sits on the boundary (order-2 pair)
      } else {
        out["bracket"] = {roots.front().bracket_low.convert_to<std::string>(),
                          roots.front().bracket_high.convert_to<std::string>()};
        out["pc"] = roots.front().refined_value;
      }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (cmd_table->parsed()) {
    std::cout << freeperc::pc_table_csv(parse_axis(row_args), parse_axis(col_args), tol);
    return 0;
  }

  if (cmd_curve->parsed()) {
    auto product = freeperc::parse_product_spec(spec);
    if (quantity == "fixedpoint-h") {
      if (p_grid_arg.empty()) p_grid_arg = "0.25,0.3,0.35,0.4,0.45,0.5";
      std::cout << freeperc::fixed_point_curve_csv(product, parse_grid(p_grid_arg), parse_grid(t_grid_arg));
    } else if (quantity == "theta") {
      if (p_grid_arg.empty()) p_grid_arg = "0:1:101";
      std::cout << freeperc::theta_curve_csv(product, parse_grid(p_grid_arg), tol);
    } else {
      if (p_grid_arg.empty()) p_grid_arg = "0:1:101";
      std::cout << freeperc::expected_cluster_curve_csv(product, parse_grid(p_grid_arg));
    }
    return 0;
  }

  if (cmd_sim->parsed()) {
    auto product = freeperc::parse_product_spec(spec);
    freeperc::SimulationConfig config;
    config.p = sim_p;
    config.trials = trials;
    config.size_cap = size_cap;
    config.base_seed = seed;
    freeperc::ClusterSimulator sim(product);
    auto mean_est = sim.mean_cluster_unchecked(config);
    auto theta_est = sim.estimate_theta(config);
    json out;
    out["spec"] = product.label();
    out["p"] = config.p;
    out["trials"] = config.trials;
    out["size_cap"] = config.size_cap;
    out["seed"] = config.base_seed;
    out["mean_cluster"] = {{"mean", mean_est.mean}, {"std_error", mean_est.std_error}};
    out["theta"] = {{"mean", theta_est.mean}, {"std_error", theta_est.std_error}};
    out["truncated_fraction"] = mean_est.truncated_fraction;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (cmd_bounds->parsed()) {
    auto product = freeperc::parse_product_spec(spec);
    if (product.is_two_copies_of_c2()) {
      std::cerr << "bounds are undefined for the order-2 pair (virtually cyclic, pc = 1)\n";
      return 4;
    }
    json out;
    out["spec"] = product.label();
    out["lower_est1"] = freeperc::lower_bound_est1(product);
    bool two_cyclic = product.size() == 2 &&
                      product.factors[0].kind() == freeperc::FactorKind::cyclic &&
                      product.factors[1].kind() == freeperc::FactorKind::cyclic;
    if (two_cyclic) {
      auto report =
          freeperc::cheeger_strictness_check(product.factors[0].order(), product.factors[1].order());
      out["cheeger_upper_bound_on_h"] = report.cheeger_upper_bound_on_h;
      out["upper_est2_from_bound"] = report.upper_est2_from_bound;
      out["pc"] = report.pc;
      out["strict_lower"] = report.strict_lower;
      out["strict_upper"] = report.strict_upper;
    } else {
      double pc = freeperc::pc_numeric(product, 1e-12);
      out["pc"] = pc;
      out["cheeger_upper_bound_on_h"] = nullptr;
      out["upper_est2_from_bound"] = nullptr;
      out["strict_lower"] = freeperc::lower_bound_est1(product) + 1e-6 < pc;
      out["strict_upper"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (cmd_approx->parsed()) {
    auto product = freeperc::parse_product_spec(spec);
    auto result = freeperc::approximation_experiment(product, j_list, tol);
    std::cout << freeperc::approximation_csv(result);
    if (result.points_used < 2)
      std::cerr << "note: most deltas sit below 10x the root tolerance; fit is degenerate\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const freeperc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << " (expected " << e.expected() << ")\n";
    return 2;
  } catch (const freeperc::Error& e) {
    switch (e.code()) {
      case freeperc::errc::enumeration_cap_exceeded:
        std::cerr << "unsupported for exact/enumerated mode: " << e.what() << "\n";
        return 3;
      case freeperc::errc::degenerate_product:
      case freeperc::errc::parameter_out_of_range:
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 4;
      default:
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
