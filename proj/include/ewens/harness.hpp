#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ewens/params.hpp"

namespace ewens {

// Default seed used by the CLI when none is given.
inline constexpr std::uint64_t kDefaultSeed = 0x45574E53ULL;

struct McEstimate {
  double p_hat;
  std::int64_t reps;
  double ci_lower_95;
  double ci_upper_95;
  std::uint64_t seed;
};

struct VerifyRow {
  double x;
  McEstimate mc;
  std::optional<double> exact_tail;
  double rate_bound;  // closed-form concentration bound
  std::optional<double> exact_chernoff;
  // True when the Monte Carlo evidence contradicts the bound, i.e. the
  // Wilson lower endpoint exceeds it; must stay false up to CI coverage.
  bool violation;
};

struct VerifyReport {
  ModelParams params;
  std::int64_t n;
  std::int64_t reps;
  std::uint64_t seed;
  double wall_seconds;
  std::vector<VerifyRow> rows;

  std::int64_t violation_count() const;
};

// Worker count: EWENS_LDP_THREADS when set, hardware concurrency otherwise.
int thread_count();

// Monte Carlo estimate of P(K_n/n >= x): reps independent chains with
// substreams keyed (seed, replicate), so the result does not depend on the
// worker count. Confidence endpoints are the 95% Wilson score interval.
McEstimate mc_tail(const ModelParams& params, std::int64_t n, double x,
                   std::int64_t reps, std::uint64_t seed, int threads = 0);

// Per-x rows combining the Monte Carlo estimate, the exact tail (when n is
// within the exact-distribution guard), the closed-form bound, and the
// finite-n Chernoff bound.
VerifyReport verify_bound(const ModelParams& params, std::int64_t n,
                          const std::vector<double>& xs, std::int64_t reps,
                          std::uint64_t seed, int threads = 0);

// CLI entry point; returns the process exit code (0 success, 1 usage,
// 2 domain error, 3 numeric error).
int run_cli(int argc, char** argv);

}  // namespace ewens
