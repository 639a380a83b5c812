#pragma once

#include <cstdint>
#include <optional>

#include "ewens/mittag.hpp"
#include "ewens/params.hpp"
#include "ewens/partition.hpp"

namespace ewens {

struct BoundReport {
  double x;
  std::int64_t n;
  double rate_bound;
  std::optional<double> exact_tail;
  std::optional<double> exact_chernoff;
};

// The closed-form tail bound P_n c_n / alpha * exp(-n I_alpha(x)) on
// P(K_n/n >= x). Requires alpha > 0 and x in (0,1); the value may exceed 1.
double concentration_bound(const ModelParams& params, std::int64_t n, double x);
double log_concentration_bound(const ModelParams& params, std::int64_t n,
                               double x);

// P(K_n >= ceil(n x)) from the exact distribution of K_n; x in (0,1].
// Thresholds within 1e-9 of an integer are snapped to it, so gridded x
// values keep their intended event.
double exact_tail(const ModelParams& params, std::int64_t n, double x);
double exact_tail(const KnDistribution& dist, double x);

// inf_{t>0} exp(-n x t) m_n(t), minimized by golden section over log t.
// Always >= the exact tail.
double exact_chernoff(const ModelParams& params, std::int64_t n, double x,
                      const SeriesConfig& cfg = {});

}  // namespace ewens
