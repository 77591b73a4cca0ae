// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its numeric tolerance and a wall-clock
// budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <freeperc/freeperc.hpp>

namespace {

using namespace freeperc;

struct Checker {
  std::ostringstream log;
  bool ok = true;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      log << (log.tellp() > 0 ? "; " : "") << what;
    }
  }
};

struct Criterion {
  std::string name;
  double time_budget_seconds;
  std::function<void(Checker&)> body;
};

FreeProduct cyc(int m, int n) { return FreeProduct(GroupFactor::cyclic(m), GroupFactor::cyclic(n)); }

void criterion_psl2_polynomial(Checker& c) {
  RationalPolynomial f = pc_polynomial(cyc(2, 3));
  RationalPolynomial expected =
      RationalPolynomial::from_coefficients({Rational(-1), Rational(0), Rational(4), Rational(2), Rational(-6), Rational(2)});
  c.require(f == expected, "polynomial is not 2p^5-6p^4+2p^3+4p^2-1");
  auto roots = isolate_roots_01(f, 1e-10);
  c.require(roots.size() == 1, "expected exactly one root in (0,1)");
  if (roots.size() == 1) {
    c.require(std::abs(roots[0].refined_value - 0.51992) <= 5e-5,
              "root " + std::to_string(roots[0].refined_value) + " not within 5e-5 of 0.51992");
  }
}

void criterion_table(Checker& c) {
  const double reference[3][7] = {
      {1.0, .5199, .4613, .4414, .4271, .4268, .4268},
      {.4613, .3754, .3539, .3468, .3427, .3426, .3426},
      {.4271, .3605, .3427, .3367, .3334, .3334, .3334},
  };
  std::string csv = pc_table_csv(default_table_rows(), default_table_cols());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  int r = 0;
  int checked = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');  // row label
    int col = 0;
    while (std::getline(ls, field, ',')) {
      double value = std::stod(field);
      if (std::abs(value - reference[r][col]) > 1e-4 + 1e-12) {
        c.require(false, "cell (" + std::to_string(r) + "," + std::to_string(col) + ") = " + field +
                             " vs reference " + std::to_string(reference[r][col]));
      }
      ++checked;
      ++col;
    }
    ++r;
  }
  c.require(checked == 21, "expected 21 table entries, saw " + std::to_string(checked));
}

void criterion_free_group_limit(Checker& c) {
  FreeProduct zz(GroupFactor::integers(), GroupFactor::integers());
  double pc = pc_numeric(zz, 1e-12);
  c.require(std::abs(pc - 1.0 / 3.0) <= 1e-9, "pc(Z*Z) = " + std::to_string(pc) + " not 1/3 within 1e-9");
  double lower = lower_bound_est1(zz);
  c.require(lower == 1.0 / 3.0, "generator bound is not exactly 1/3");
  c.require(std::abs(pc - lower) <= 1e-9, "equality case of the generator bound fails");
}

void criterion_oracle_equivalence(Checker& c) {
  std::mt19937_64 rng(271828);
  for (int m = 2; m <= 6; ++m) {
    GroupFactor factor = GroupFactor::cyclic(m);
    for (int k = 0; k < 10; ++k) {
      Rational p(static_cast<long>(rng() % 211), 211);
      auto lhs = chi_exact(factor, p);
      Rational rhs = chi_exact_oracle(factor.graph(), p);
      if (!lhs || *lhs != rhs) {
        c.require(false, "chi mismatch for C" + std::to_string(m));
        return;
      }
    }
  }
}

void criterion_normalization(Checker& c) {
  for (int m = 2; m <= 10; ++m) {
    if (cluster_distribution(GroupFactor::cyclic(m)).total() != RationalPolynomial::one()) {
      c.require(false, "sum of q(n) is not 1 for C" + std::to_string(m));
    }
  }
  // Five seeded vertex-transitive multigraphs with at most 18 edges.
  std::mt19937_64 rng(1618);
  const std::vector<std::pair<int, std::vector<int>>> pool = {
      {4, {1, 1}}, {5, {1, 2}}, {6, {1, 2}}, {6, {1, 3}}, {7, {1, 2}},
      {8, {1, 2}}, {9, {1, 3}}, {8, {1, 4}}, {9, {2, 3}}, {6, {1, 1, 2}},
  };
  int done = 0;
  std::vector<char> used(pool.size(), 0);
  while (done < 5) {
    std::size_t pick = rng() % pool.size();
    if (used[pick]) continue;
    used[pick] = 1;
    auto g = FiniteCayleyGraph::circulant(pool[pick].first, pool[pick].second);
    if (g.edge_count() > 18) continue;
    ++done;
    auto dist = cluster_distribution(GroupFactor::explicit_finite(g));
    if (dist.total() != RationalPolynomial::one()) {
      c.require(false, "sum of q(n) is not 1 for a circulant on " + std::to_string(pool[pick].first));
    }
  }
}

void criterion_branching_consistency(Checker& c) {
  std::mt19937_64 rng(112358);
  auto pick = [&]() {
    int r = static_cast<int>(rng() % 10);
    return r == 9 ? GroupFactor::integers() : GroupFactor::cyclic(2 + r);
  };
  int done = 0;
  while (done < 10) {
    FreeProduct pr(pick(), pick());
    if (pr.is_two_copies_of_c2()) continue;
    ++done;
    double pc = pc_numeric(pr, 1e-12);
    auto generation = [&](double p) {
      return (chi(pr.factors[0], p) - 1.0) * (chi(pr.factors[1], p) - 1.0) - 1.0;
    };
    if (!(generation(pc - 1e-9) < 0.0 && generation(pc + 1e-9) > 0.0)) {
      c.require(false, "no sign change at pc +- 1e-9 for " + pr.label());
    }
  }
}

void criterion_monte_carlo(Checker& c) {
  FreeProduct pr = cyc(2, 3);
  ClusterSimulator sim(pr);
  for (double p : {0.2, 0.35}) {
    SimulationConfig config;
    config.p = p;
    config.trials = 100000;
    config.size_cap = 100000;
    config.base_seed = 60221023;
    auto est = sim.estimate_mean_cluster(pr, config);
    double exact = expected_cluster_size(pr, p);
    std::ostringstream what;
    what << "mean at p=" << p << ": " << est.mean << " vs " << exact << " (se " << est.std_error << ")";
    c.require(std::abs(est.mean - exact) <= 3.0 * est.std_error, what.str());
  }
  // Survival-to-cap carries a one-sided cap bias (finite clusters larger
  // than size_cap count as infinite); 2e-3 is a generous allowance for it
  // at these p, which sit far above pc + 0.05.
  const double cap_bias_allowance = 2e-3;
  for (double p : {0.6, 0.8}) {
    SimulationConfig config;
    config.p = p;
    config.trials = 100000;
    config.size_cap = 100000;
    config.base_seed = 16180339;
    auto est = sim.estimate_theta(config);
    double exact = theta(pr, p, 1e-11).theta;
    std::ostringstream what;
    what << "theta at p=" << p << ": " << est.mean << " vs " << exact << " (se " << est.std_error << ")";
    c.require(std::abs(est.mean - exact) <= 3.0 * est.std_error + cap_bias_allowance, what.str());
  }
}

void criterion_approximation(Checker& c) {
  FreeProduct target(GroupFactor::integers(), GroupFactor::cyclic(2));
  auto result = approximation_experiment(target, {5, 10, 20, 40, 80}, 1e-9, 130);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    c.require(result.rows[i].delta_j >= 0.0, "delta below zero at j=" + std::to_string(result.rows[i].j));
    if (i > 0) {
      c.require(result.rows[i].delta_j <= result.rows[i - 1].delta_j,
                "delta not nonincreasing at j=" + std::to_string(result.rows[i].j));
    }
  }
  c.require(result.rows.back().delta_j <= 1e-4,
            "final delta " + std::to_string(result.rows.back().delta_j) + " exceeds 1e-4");
  c.require(result.slope < 0.0, "log-delta slope is not negative");
  c.require(result.r_squared > 0.9, "fit R^2 = " + std::to_string(result.r_squared) + " <= 0.9");
}

void criterion_strict_bounds(Checker& c) {
  for (auto [m, n] : {std::pair{2, 3}, {2, 4}, {3, 3}, {4, 10}}) {
    auto report = cheeger_strictness_check(m, n);
    std::string label = "C" + std::to_string(m) + "*C" + std::to_string(n);
    c.require(1.0 / 3.0 + 1e-6 < report.pc, "lower bound not strict for " + label);
    c.require(report.pc + 1e-6 < report.upper_est2_from_bound, "upper bound not strict for " + label);
  }
}

void criterion_left_derivative(Checker& c) {
  FreeProduct pr = cyc(2, 3);
  double d = einv_left_derivative_at_pc(pr);
  c.require(d < 0.0, "left derivative is not negative");
  double pc = pc_numeric(pr, 1e-13);
  auto inv_e = [&](double p) { return 1.0 / expected_cluster_size(pr, p); };
  double x = pc - 1e-4;
  double h = 1e-6;
  double fd = (inv_e(x + h) - inv_e(x - h)) / (2.0 * h);
  c.require(std::abs(fd - d) / std::abs(d) <= 1e-3,
            "finite difference " + std::to_string(fd) + " vs formula " + std::to_string(d));
  // (pc - p) E_p|C| approaches the positive constant -1/d along p = pc - 2^-k.
  double last = 0.0;
  bool positive = true;
  for (int k = 5; k <= 20; ++k) {
    double p = pc - std::ldexp(1.0, -k);
    last = (pc - p) * expected_cluster_size(pr, p);
    if (!(last > 0.0)) positive = false;
  }
  c.require(positive, "(pc - p) E_p|C| not positive along the dyadic approach");
  c.require(std::abs(last * (-d) - 1.0) <= 1e-3,
            "limit " + std::to_string(last) + " is not -1/derivative = " + std::to_string(-1.0 / d));
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"PSL2(Z) polynomial and its root", 1.0, criterion_psl2_polynomial},
      {"reference p_c grid reproduced to 1e-4", 10.0, criterion_table},
      {"free-group limit pc(Z*Z) = 1/3 with bound equality", 1.0, criterion_free_group_limit},
      {"chi equals the full-enumeration oracle exactly", 30.0, criterion_oracle_equivalence},
      {"cluster-size distributions sum to 1 exactly", 60.0, criterion_normalization},
      {"branching product crosses 1 exactly at pc", 5.0, criterion_branching_consistency},
      {"Monte Carlo matches the closed forms", 300.0, criterion_monte_carlo},
      {"quotient approximation converges exponentially", 30.0, criterion_approximation},
      {"strict generator and isoperimetric bounds", 5.0, criterion_strict_bounds},
      {"mean-field left derivative of 1/E at pc", 5.0, criterion_left_derivative},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].body(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checker.require(elapsed < criteria[i].time_budget_seconds,
                    "runtime " + std::to_string(elapsed) + "s exceeds budget");
    if (!checker.ok) ++failures;
    std::printf("[%s] %2zu. %s (%.2fs)%s%s\n", checker.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), elapsed, checker.ok ? "" : " -- ",
                checker.ok ? "" : checker.log.str().c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
