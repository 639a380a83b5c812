#include "ewens/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "ewens/concentration.hpp"
#include "ewens/partition.hpp"

namespace ewens {

std::int64_t VerifyReport::violation_count() const {
  std::int64_t c = 0;
  for (const auto& row : rows) c += row.violation ? 1 : 0;
  return c;
}

int thread_count() {
  if (const char* env = std::getenv("EWENS_LDP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? int(hw) : 1;
}

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // 97.5th normal percentile

void wilson_interval(std::int64_t hits, std::int64_t reps, double* lower,
                     double* upper) {
  const double nn = double(reps);
  const double p = double(hits) / nn;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  *lower = std::max(0.0, (center - half) / denom);
  *upper = std::min(1.0, (center + half) / denom);
}

}  // namespace

McEstimate mc_tail(const ModelParams& params, std::int64_t n, double x,
                   std::int64_t reps, std::uint64_t seed, int threads) {
  if (n < 1) throw std::domain_error("mc_tail: n must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("mc_tail: x must lie in (0,1)");
  if (reps < 1) throw std::domain_error("mc_tail: reps must be >= 1");

  // Same threshold convention as exact_tail.
  const double nx = double(n) * x;
  const double rounded = std::round(nx);
  const std::int64_t kc =
      std::max<std::int64_t>(1, (std::abs(nx - rounded) <= 1e-9 * std::max(1.0, nx))
                                    ? std::int64_t(rounded)
                                    : std::int64_t(std::ceil(nx)));

  const int workers =
      std::max(1, std::min<int>(threads > 0 ? threads : thread_count(),
                                int(std::min<std::int64_t>(reps, 256))));
  std::vector<std::int64_t> hits_per_worker(size_t(workers), 0);
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::int64_t local = 0;
      for (std::int64_t rep = w; rep < reps; rep += workers)
        if (crp_sample(params, n, seed, std::uint64_t(rep)).k_n >= kc) ++local;
      hits_per_worker[size_t(w)] = local;
    });
  }
  for (auto& th : pool) th.join();
  std::int64_t hits = 0;
  for (auto h : hits_per_worker) hits += h;

  McEstimate est;
  est.p_hat = double(hits) / double(reps);
  est.reps = reps;
  est.seed = seed;
  wilson_interval(hits, reps, &est.ci_lower_95, &est.ci_upper_95);
  return est;
}

VerifyReport verify_bound(const ModelParams& params, std::int64_t n,
                          const std::vector<double>& xs, std::int64_t reps,
                          std::uint64_t seed, int threads) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report{params, n, reps, seed, 0.0, {}};
  report.rows.reserve(xs.size());

  std::optional<KnDistribution> dist;
  if (n <= 100000) dist = kn_distribution(params, n);

  for (const double x : xs) {
    VerifyRow row{x, mc_tail(params, n, x, reps, seed, threads), std::nullopt,
                  concentration_bound(params, n, x), std::nullopt, false};
    if (dist) row.exact_tail = exact_tail(*dist, x);
    row.exact_chernoff = exact_chernoff(params, n, x);
    row.violation = row.mc.ci_lower_95 > row.rate_bound;
    report.rows.push_back(row);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace ewens
