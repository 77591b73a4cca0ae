#pragma once

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "free_product.hpp"
#include "group_factor.hpp"

namespace freeperc {

/// Seeded Monte Carlo parameters. The same config yields bit-identical
/// estimates regardless of how trials are scheduled across workers.
struct SimulationConfig {
  double p = 0.0;
  std::uint64_t trials = 10000;
  std::uint64_t size_cap = 100000;        // max explored vertices per trial
  std::uint32_t radius_cap = 0xFFFFFFFFu; // max word length (syllables)
  std::uint64_t base_seed = 0;
};

struct SimulationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double truncated_fraction = 0.0;
  std::uint64_t trials = 0;
};

struct ClusterTrace {
  std::uint64_t visited_count = 0;
  std::uint32_t max_radius = 0;
  bool truncated = false;
};

namespace simrng {

// splitmix64 finalizer; counter-style inputs come out well distributed.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kOriginAddress = 0x5ced90cb9f7a3d11ull;
constexpr std::uint64_t kCopySalt = 0xA24BAED4963EE407ull;
constexpr std::uint64_t kVertexSalt = 0x9FB21C651E98DF25ull;
constexpr std::uint64_t kEdgeSalt = 0x285D1A6A2C6B65C3ull;

inline std::uint64_t trial_key(std::uint64_t base_seed, std::uint64_t trial_index) {
  return mix64(mix64(base_seed + kGolden) + trial_index * kGolden);
}

/// Uniform in [0,1) keyed by (trial, structural slot); random access, so
/// exploration order never disturbs the sample and raising p only opens more
/// edges (threshold coupling).
inline double uniform(std::uint64_t trial_key, std::uint64_t slot) {
  return static_cast<double>(mix64(trial_key ^ slot) >> 11) * 0x1.0p-53;
}

/// Integer threshold with u < p exactly equivalent to draw < threshold for
/// the 53-bit draws above.
inline std::uint64_t open_threshold(double p) {
  return static_cast<std::uint64_t>(std::ceil(p * 9007199254740992.0));  // p * 2^53
}

inline bool edge_open(std::uint64_t trial_key, std::uint64_t slot, std::uint64_t threshold) {
  return (mix64(trial_key ^ slot) >> 11) < threshold;
}

inline std::uint64_t copy_address(std::uint64_t vertex, std::uint64_t factor_index) {
  return mix64(vertex + kCopySalt + factor_index * kGolden);
}

inline std::uint64_t element_address(std::uint64_t copy, std::uint64_t element) {
  return mix64(copy + kVertexSalt + element * kGolden);
}

/// Edge slots stay unmixed: scope addresses are already mix64 outputs and the
/// uniform applies the finalizer, so one mix per draw suffices.
inline std::uint64_t edge_slot(std::uint64_t scope, std::uint64_t index) {
  return scope + kEdgeSalt + index * kGolden;
}

}  // namespace simrng

/// Lazy cluster exploration on the free-product Cayley graph.
///
/// Vertices are identified with reduced alternating words; gate vertices of
/// the tree-graded copy structure are discovered exactly once, so word
/// deduplication reduces to never re-entering a copy. Addresses are 64-bit
/// hashes derived structurally from the copy tree, which keeps every edge's
/// uniform draw attached to its position in the graph rather than to
/// discovery order.
class ClusterSimulator {
public:
  explicit ClusterSimulator(const FreeProduct& product, int edge_cap = 20) {
    for (const auto& f : product.factors) {
      FactorCtx ctx;
      switch (f.kind()) {
        case FactorKind::cyclic:
          ctx.kind = FactorKind::cyclic;
          ctx.order = f.order();
          break;
        case FactorKind::explicit_finite: {
          const auto& g = f.graph();
          if (g.edge_count() > 64 || g.vertex_count > 64)
            throw Error(errc::enumeration_cap_exceeded, "explicit factor too large for the simulator");
          (void)edge_cap;
          ctx.kind = FactorKind::explicit_finite;
          ctx.order = g.vertex_count;
          ctx.edge_count = g.edge_count();
          ctx.adjacency.resize(static_cast<std::size_t>(g.vertex_count));
          for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges[static_cast<std::size_t>(e)];
            ctx.adjacency[static_cast<std::size_t>(u)].push_back({v, e});
            ctx.adjacency[static_cast<std::size_t>(v)].push_back({u, e});
          }
          break;
        }
        case FactorKind::integers:
          ctx.kind = FactorKind::integers;
          break;
        case FactorKind::free_group:
          ctx.kind = FactorKind::free_group;
          ctx.gens = 2 * f.rank();
          break;
      }
      factors_.push_back(std::move(ctx));
    }
  }

  ClusterTrace explore(const SimulationConfig& config, std::uint64_t trial_index) const {
    Scratch scratch;
    return explore_impl(config, trial_index, scratch, nullptr);
  }

  /// Exploration that also reports the visited vertex addresses (test hook).
  ClusterTrace explore(const SimulationConfig& config, std::uint64_t trial_index,
                       std::vector<std::uint64_t>& visited_addresses) const {
    Scratch scratch;
    return explore_impl(config, trial_index, scratch, &visited_addresses);
  }

  /// Fraction of trials whose exploration hit a cap: the survival-to-cap
  /// proxy for theta, with binomial standard error. One-sided cap bias:
  /// finite clusters larger than size_cap count as infinite.
  SimulationEstimate estimate_theta(const SimulationConfig& config, unsigned threads = 0) const {
    Totals t = run_trials(config, threads);
    SimulationEstimate est;
    est.trials = config.trials;
    double f = static_cast<double>(t.truncated) / static_cast<double>(config.trials);
    est.mean = f;
    est.truncated_fraction = f;
    if (config.trials > 1) est.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(config.trials));
    return est;
  }

  /// Sample mean of explored cluster sizes; subcritical use only.
  SimulationEstimate estimate_mean_cluster(const FreeProduct& product, const SimulationConfig& config,
                                           unsigned threads = 0) const {
    double pc = pc_numeric(product, 1e-12);
    if (config.p >= pc)
      throw Error(errc::supercritical_request,
                  "mean cluster size diverges at p >= pc; requested p is not subcritical");
    return mean_cluster_unchecked(config, threads);
  }

  /// The raw visited-count statistics without the subcritical guard.
  SimulationEstimate mean_cluster_unchecked(const SimulationConfig& config, unsigned threads = 0) const {
    Totals t = run_trials(config, threads);
    SimulationEstimate est;
    est.trials = config.trials;
    const double n = static_cast<double>(config.trials);
    est.mean = static_cast<double>(t.sum) / n;
    if (config.trials > 1) {
      long double sum = static_cast<long double>(t.sum);
      long double ss = static_cast<long double>(t.sum_squares) - sum * sum / static_cast<long double>(n);
      if (ss < 0) ss = 0;
      est.std_error = static_cast<double>(std::sqrt(static_cast<double>(ss) / (n - 1.0) / n));
    }
    est.truncated_fraction = static_cast<double>(t.truncated) / n;
    return est;
  }

private:
  struct FactorCtx {
    FactorKind kind = FactorKind::cyclic;
    int order = 0;       // cyclic order / explicit vertex count
    int edge_count = 0;  // explicit only
    int gens = 0;        // free: 2 * rank
    std::vector<std::vector<std::pair<int, int>>> adjacency;  // explicit: (neighbor, edge index)
  };

  struct Pending {
    std::uint64_t addr;
    std::uint32_t depth;
    std::uint32_t skip;
  };

  struct TreeNode {
    std::uint64_t addr;
    std::uint32_t banned;  // generator index leading back toward the copy root
  };

  struct Scratch {
    std::vector<Pending> queue;
    std::vector<TreeNode> tree;
  };

  struct Totals {
    std::uint64_t sum = 0;
    unsigned __int128 sum_squares = 0;
    std::uint64_t truncated = 0;
  };

  std::vector<FactorCtx> factors_;

  static void validate(const SimulationConfig& config) {
    if (!(config.p >= 0.0 && config.p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
    if (config.trials < 1) throw Error(errc::invalid_argument, "need at least one trial");
    if (config.size_cap < 1) throw Error(errc::invalid_argument, "size cap must be positive");
  }

  Totals run_trials(const SimulationConfig& config, unsigned threads) const {
    validate(config);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));
    std::vector<Totals> partial(threads);
    auto worker = [&](unsigned w) {
      Scratch scratch;
      std::uint64_t begin = config.trials * w / threads;
      std::uint64_t end = config.trials * (w + 1) / threads;
      Totals& t = partial[w];
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        ClusterTrace trace = explore_impl(config, trial, scratch, nullptr);
        t.sum += trace.visited_count;
        t.sum_squares += static_cast<unsigned __int128>(trace.visited_count) * trace.visited_count;
        if (trace.truncated) ++t.truncated;
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }
    Totals total;
    for (const auto& t : partial) {
      total.sum += t.sum;
      total.sum_squares += t.sum_squares;
      total.truncated += t.truncated;
    }
    return total;
  }

  ClusterTrace explore_impl(const SimulationConfig& config, std::uint64_t trial_index, Scratch& scratch,
                            std::vector<std::uint64_t>* collector) const {
    validate(config);
    const double p = config.p;
    const std::uint64_t open_thr = simrng::open_threshold(p);
    const std::uint64_t key = simrng::trial_key(config.base_seed, trial_index);
    const std::uint32_t nfac = static_cast<std::uint32_t>(factors_.size());

    ClusterTrace trace;
    trace.visited_count = 1;
    if (collector) {
      collector->clear();
      collector->push_back(simrng::kOriginAddress);
    }
    auto& queue = scratch.queue;
    queue.clear();
    queue.reserve(std::min<std::uint64_t>(config.size_cap, 1 << 22));
    if (trace.visited_count >= config.size_cap) {
      trace.truncated = true;
      return trace;
    }
    queue.push_back({simrng::kOriginAddress, 0, nfac});

    bool stop = false;
    std::size_t head = 0;
    while (head < queue.size() && !stop) {
      Pending cur = queue[head++];
      const std::uint32_t depth = cur.depth + 1;

      // Records one newly discovered vertex; false stops the whole trial.
      auto yield = [&](std::uint64_t vaddr, std::uint32_t factor) -> bool {
        ++trace.visited_count;
        if (collector) collector->push_back(vaddr);
        if (depth > trace.max_radius) trace.max_radius = depth;
        if (trace.visited_count >= config.size_cap) {
          trace.truncated = true;
          return false;
        }
        if (depth >= config.radius_cap) {
          trace.truncated = true;  // counted, not expanded
          return true;
        }
        queue.push_back({vaddr, depth, factor});
        return true;
      };

      for (std::uint32_t i = 0; i < nfac && !stop; ++i) {
        if (i == cur.skip) continue;
        const FactorCtx& fc = factors_[i];
        const std::uint64_t copy = simrng::copy_address(cur.addr, i);
        switch (fc.kind) {
          case FactorKind::cyclic: {
            const int m = fc.order;
            if (m == 2) {
              // Double edge between the two elements.
              if (simrng::edge_open(key, simrng::edge_slot(copy, 0), open_thr) ||
                  simrng::edge_open(key, simrng::edge_slot(copy, 1), open_thr)) {
                if (!yield(simrng::element_address(copy, 1), i)) stop = true;
              }
              break;
            }
            // Walk the cycle both ways from the entry vertex; edge j joins
            // vertices j and j+1 (mod m).
            int right = 0;
            while (right < m - 1 &&
                   simrng::edge_open(key, simrng::edge_slot(copy, static_cast<std::uint64_t>(right)), open_thr)) {
              ++right;
              if (!yield(simrng::element_address(copy, static_cast<std::uint64_t>(right)), i)) {
                stop = true;
                break;
              }
            }
            if (stop) break;
            int left = 0;
            while (left < m - 1 - right &&
                   simrng::edge_open(key, simrng::edge_slot(copy, static_cast<std::uint64_t>(m - 1 - left)),
                                     open_thr)) {
              ++left;
              if (!yield(simrng::element_address(copy, static_cast<std::uint64_t>(m - left)), i)) {
                stop = true;
                break;
              }
            }
            break;
          }
          case FactorKind::explicit_finite: {
            // Sample the whole copy once, then take the open component of the entry.
            std::uint64_t open = 0;
            for (int e = 0; e < fc.edge_count; ++e) {
              if (simrng::edge_open(key, simrng::edge_slot(copy, static_cast<std::uint64_t>(e)), open_thr))
                open |= 1ull << e;
            }
            std::uint64_t seen = 1ull;  // entry vertex is element 0
            std::uint64_t frontier = 1ull;
            while (frontier != 0 && !stop) {
              int v = __builtin_ctzll(frontier);
              frontier &= frontier - 1;
              for (const auto& [nbr, eidx] : fc.adjacency[static_cast<std::size_t>(v)]) {
                if (((open >> eidx) & 1ull) == 0) continue;
                std::uint64_t bit = 1ull << nbr;
                if (seen & bit) continue;
                seen |= bit;
                frontier |= bit;
                if (!yield(simrng::element_address(copy, static_cast<std::uint64_t>(nbr)), i)) {
                  stop = true;
                  break;
                }
              }
            }
            break;
          }
          case FactorKind::integers: {
            // Open runs to the right and left of the entry; edge k joins
            // offsets k and k+1.
            std::int64_t k = 0;
            while (simrng::edge_open(key, simrng::edge_slot(copy, static_cast<std::uint64_t>(k)), open_thr)) {
              ++k;
              if (!yield(simrng::element_address(copy, static_cast<std::uint64_t>(k)), i)) {
                stop = true;
                break;
              }
            }
            if (stop) break;
            k = -1;
            while (simrng::edge_open(key, simrng::edge_slot(copy, static_cast<std::uint64_t>(k)), open_thr)) {
              if (!yield(simrng::element_address(copy, static_cast<std::uint64_t>(k)), i)) {
                stop = true;
                break;
              }
              --k;
            }
            break;
          }
          case FactorKind::free_group: {
            // Breadth-first over the copy's tree; generator g and g^1 are
            // mutual inverses, and the edge toward the root is never re-drawn.
            auto& tree = scratch.tree;
            tree.clear();
            tree.push_back({copy, 0xFFFFFFFFu});
            std::size_t thead = 0;
            while (thead < tree.size() && !stop) {
              TreeNode node = tree[thead++];
              for (std::uint32_t g = 0; g < static_cast<std::uint32_t>(fc.gens); ++g) {
                if (g == node.banned) continue;
                if (!simrng::edge_open(key, simrng::edge_slot(node.addr, g), open_thr)) continue;
                std::uint64_t child = simrng::element_address(node.addr, g + 1);
                if (!yield(child, i)) {
                  stop = true;
                  break;
                }
                tree.push_back({child, g ^ 1u});
              }
            }
            break;
          }
        }
      }
    }
    return trace;
  }
};

inline ClusterTrace explore_cluster(const FreeProduct& product, const SimulationConfig& config,
                                    std::uint64_t trial_index) {
  return ClusterSimulator(product).explore(config, trial_index);
}

inline SimulationEstimate estimate_theta(const FreeProduct& product, const SimulationConfig& config,
                                         unsigned threads = 0) {
  return ClusterSimulator(product).estimate_theta(config, threads);
}

inline SimulationEstimate estimate_mean_cluster(const FreeProduct& product, const SimulationConfig& config,
                                                unsigned threads = 0) {
  ClusterSimulator sim(product);
  return sim.estimate_mean_cluster(product, config, threads);
}

}  // namespace freeperc
