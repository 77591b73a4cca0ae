#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <freeperc/free_product.hpp>
#include <freeperc/simulate.hpp>

using freeperc::ClusterSimulator;
using freeperc::FreeProduct;
using freeperc::GroupFactor;
using freeperc::SimulationConfig;

namespace {

FreeProduct c2c3() { return FreeProduct(GroupFactor::cyclic(2), GroupFactor::cyclic(3)); }

SimulationConfig config_for(double p, std::uint64_t trials, std::uint64_t size_cap = 100000,
                            std::uint64_t seed = 9001) {
  SimulationConfig c;
  c.p = p;
  c.trials = trials;
  c.size_cap = size_cap;
  c.base_seed = seed;
  return c;
}

// Reduced alternating words of syllable length exactly L in a two-factor
// product with a and b nonidentity elements per factor.
double words_of_length(int L, int a, int b) {
  auto count = [&](int first, int second) {
    double f = std::pow(first, (L + 1) / 2);
    double s = std::pow(second, L / 2);
    return f * s;
  };
  if (L == 0) return 1.0;
  return count(a, b) + count(b, a);
}

}  // namespace

TEST_CASE("degenerate probabilities", "[simulator]") {
  ClusterSimulator sim(c2c3());
  auto zero = sim.explore(config_for(0.0, 1), 0);
  CHECK(zero.visited_count == 1);
  CHECK(!zero.truncated);
  CHECK(zero.max_radius == 0);

  auto one = sim.explore(config_for(1.0, 1, 5000), 0);
  CHECK(one.truncated);
  CHECK(one.visited_count == 5000);

  auto est0 = freeperc::estimate_mean_cluster(c2c3(), config_for(0.0, 500));
  CHECK(est0.mean == 1.0);
  CHECK(est0.std_error == 0.0);
  CHECK(freeperc::estimate_theta(c2c3(), config_for(0.0, 500)).mean == 0.0);
  CHECK(freeperc::estimate_theta(c2c3(), config_for(1.0, 200, 2000)).mean == 1.0);
}

TEST_CASE("trace invariant", "[simulator]") {
  ClusterSimulator sim(c2c3());
  SimulationConfig c = config_for(0.7, 1, 300);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    auto trace = sim.explore(c, trial);
    if (trace.truncated) {
      CHECK((trace.visited_count == c.size_cap || trace.max_radius == c.radius_cap));
    } else {
      CHECK(trace.visited_count < c.size_cap);
    }
  }
}

TEST_CASE("deterministic across worker counts", "[simulator]") {
  FreeProduct pr(GroupFactor::integers(), GroupFactor::cyclic(3));
  SimulationConfig c = config_for(0.3, 4001, 10000, 424242);
  ClusterSimulator sim(pr);
  auto m1 = sim.estimate_mean_cluster(pr, c, 1);
  auto m2 = sim.estimate_mean_cluster(pr, c, 2);
  auto m4 = sim.estimate_mean_cluster(pr, c, 4);
  CHECK(m1.mean == m2.mean);
  CHECK(m1.std_error == m2.std_error);
  CHECK(m1.truncated_fraction == m2.truncated_fraction);
  CHECK(m1.mean == m4.mean);
  CHECK(m1.std_error == m4.std_error);
  auto t1 = sim.estimate_theta(c, 1);
  auto t3 = sim.estimate_theta(c, 3);
  CHECK(t1.mean == t3.mean);
  // Same trial, same trace.
  auto a = sim.explore(c, 1234);
  auto b = sim.explore(c, 1234);
  CHECK(a.visited_count == b.visited_count);
  CHECK(a.max_radius == b.max_radius);
}

TEST_CASE("threshold coupling is monotone in p", "[simulator]") {
  for (const auto& pr :
       {c2c3(), FreeProduct(GroupFactor::integers(), GroupFactor::free_group(2))}) {
    ClusterSimulator sim(pr);
    SimulationConfig lo = config_for(0.18, 1, 5000, 77);
    SimulationConfig hi = config_for(0.27, 1, 5000, 77);
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
      CHECK(sim.explore(lo, trial).visited_count <= sim.explore(hi, trial).visited_count);
    }
  }
}

TEST_CASE("no vertex is visited twice", "[simulator]") {
  ClusterSimulator sim(c2c3());
  SimulationConfig c = config_for(0.65, 1, 4000, 5);
  std::vector<std::uint64_t> addrs;
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    auto trace = sim.explore(c, trial, addrs);
    std::set<std::uint64_t> unique(addrs.begin(), addrs.end());
    CHECK(unique.size() == addrs.size());
    CHECK(trace.visited_count == addrs.size());
  }
}

TEST_CASE("full balls match the reduced-word count", "[simulator]") {
  // At p = 1 the cluster is the whole graph; with a radius cap the explored
  // set is exactly the ball of reduced words of bounded syllable length.
  struct Case {
    FreeProduct pr;
    int a, b;
  };
  std::vector<Case> cases = {
      {FreeProduct(GroupFactor::cyclic(3), GroupFactor::cyclic(4)), 2, 3},
      {FreeProduct(GroupFactor::cyclic(2), GroupFactor::cyclic(3)), 1, 2},
      {FreeProduct(GroupFactor::explicit_finite(freeperc::FiniteCayleyGraph::circulant(5, {1, 2})),
                   GroupFactor::cyclic(2)),
       4, 1},
  };
  for (auto& cs : cases) {
    for (std::uint32_t radius : {1u, 2u, 4u, 6u}) {
      SimulationConfig c = config_for(1.0, 1, 100000000ull, 3);
      c.radius_cap = radius;
      ClusterSimulator sim(cs.pr);
      auto trace = sim.explore(c, 0);
      double expected = 0.0;
      for (std::uint32_t L = 0; L <= radius; ++L) expected += words_of_length(static_cast<int>(L), cs.a, cs.b);
      CHECK(static_cast<double>(trace.visited_count) == expected);
      CHECK(trace.max_radius == radius);
      CHECK(trace.truncated);  // the ball boundary was cut by the radius cap
    }
  }
}

TEST_CASE("subcritical mean matches the exact formula", "[simulator]") {
  SECTION("C2*C3 at p = 0.3") {
    auto est = freeperc::estimate_mean_cluster(c2c3(), config_for(0.3, 20000, 10000, 1001));
    double exact = freeperc::expected_cluster_size(c2c3(), 0.3);
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);
    CHECK(est.truncated_fraction == 0.0);
  }
  SECTION("Z*Z at p = 0.25: exact mean 5") {
    FreeProduct zz(GroupFactor::integers(), GroupFactor::integers());
    CHECK(freeperc::expected_cluster_size(zz, 0.25) == Catch::Approx(5.0).margin(1e-10));
    auto est = freeperc::estimate_mean_cluster(zz, config_for(0.25, 20000, 100000, 7));
    CHECK(std::abs(est.mean - 5.0) <= 3.0 * est.std_error);
  }
  SECTION("C10*C10 at p = 0.2") {
    FreeProduct pr(GroupFactor::cyclic(10), GroupFactor::cyclic(10));
    auto est = freeperc::estimate_mean_cluster(pr, config_for(0.2, 20000, 10000, 21));
    CHECK(std::abs(est.mean - freeperc::expected_cluster_size(pr, 0.2)) <= 3.0 * est.std_error);
  }
  SECTION("mixed explicit and free factors") {
    FreeProduct pr(GroupFactor::explicit_finite(freeperc::FiniteCayleyGraph::circulant(4, {1, 1})),
                   GroupFactor::free_group(2));
    double p = 0.08;
    auto est = freeperc::estimate_mean_cluster(pr, config_for(p, 20000, 100000, 19));
    CHECK(std::abs(est.mean - freeperc::expected_cluster_size(pr, p)) <= 3.0 * est.std_error);
  }
}

TEST_CASE("survival estimate matches the fixed point", "[simulator]") {
  SECTION("C2*C3 at p = 0.6") {
    auto est = freeperc::estimate_theta(c2c3(), config_for(0.6, 10000, 10000, 31));
    double exact = freeperc::theta(c2c3(), 0.6, 1e-11).theta;
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error + 2e-3);
  }
  SECTION("C3*C5 at p = 0.45") {
    FreeProduct pr(GroupFactor::cyclic(3), GroupFactor::cyclic(5));
    auto est = freeperc::estimate_theta(pr, config_for(0.45, 10000, 20000, 47));
    double exact = freeperc::theta(pr, 0.45, 1e-11).theta;
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error + 2e-3);
  }
  SECTION("extended three-factor system against the simulator") {
    FreeProduct triple({GroupFactor::cyclic(2), GroupFactor::cyclic(2), GroupFactor::cyclic(2)});
    double p = 0.45;  // pc is about 0.293
    auto est = freeperc::estimate_theta(triple, config_for(p, 10000, 20000, 53));
    auto report = freeperc::theta(triple, p, 1e-11);
    CHECK(report.extended);
    CHECK(std::abs(est.mean - report.theta) <= 3.0 * est.std_error + 2e-3);
  }
}

TEST_CASE("subcritical truncation is negligible", "[simulator]") {
  // p sits 0.06 below pc; with a 10^4 cap the truncated fraction is tiny.
  auto est = freeperc::estimate_mean_cluster(c2c3(), config_for(0.46, 10000, 10000, 99));
  CHECK(est.truncated_fraction < 1e-3);
}

TEST_CASE("supercritical mean requests are rejected", "[simulator]") {
  CHECK_THROWS_MATCHES(freeperc::estimate_mean_cluster(c2c3(), config_for(0.6, 100)), freeperc::Error,
                       Catch::Matchers::Predicate<freeperc::Error>([](const freeperc::Error& e) {
                         return e.code() == freeperc::errc::supercritical_request;
                       }));
  CHECK_THROWS_AS(freeperc::explore_cluster(c2c3(), config_for(1.5, 1), 0), freeperc::Error);
}
