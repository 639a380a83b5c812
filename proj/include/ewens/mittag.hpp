#pragma once

#include <cstdint>

#include "ewens/common.hpp"

namespace ewens {

struct SeriesConfig {
  double rel_tol = 1e-14;
  std::int64_t max_terms = 1000000;
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_subdivisions = 2000;
  int laguerre_nodes = 200;
};

// Value of a positive sum carried in log form, with the number of series
// terms consumed.
struct LogSeriesValue {
  double log_value;
  std::int64_t terms;
};

// One-parameter Mittag-Leffler function E_a(z) = sum_l z^l / Gamma(a l + 1),
// alpha in (0,1]. Terms are summed in log-magnitude/sign form; stops once
// the terms are decreasing and below rel_tol times the partial sum.
double ml_series(double alpha, double z, const SeriesConfig& cfg = {});

// log E_a(z) for z >= 0; safe far beyond the overflow range of ml_series.
LogSeriesValue ml_series_log(double alpha, double z,
                             const SeriesConfig& cfg = {});

// Integrand kernel of the tail integral: (1/(pi a)) exp(-x^{1/a}) y
// sin(pi a) / (x^2 - 2 x y cos(pi a) + y^2), for x,y > 0, alpha in (0,1).
double ml_kernel_g(double alpha, double x, double y);

// int_0^inf G_a(x,y) dx. The tail x >= max(4y,1) is integrated after the
// substitution u = x^{1/a}, which trades the stretched exponential for e^{-u}.
double g_tail_integral(double alpha, double y, const QuadratureConfig& quad = {});

// E_a(z) through the representation (1/a) exp(z^{1/a}) - tail integral,
// valid for real z > 0.
double ml_integral(double alpha, double z, const QuadratureConfig& quad = {});

// Three-parameter Mittag-Leffler function
// E^g_{a,b}(z) = sum_l (g)^(l) z^l / (l! Gamma(a l + b)).
double ml3_series(double alpha, double beta, double gamma, double z,
                  const SeriesConfig& cfg = {});
LogSeriesValue ml3_series_log(double alpha, double beta, double gamma,
                              double z, const SeriesConfig& cfg = {});

}  // namespace ewens
