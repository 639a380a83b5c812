#include "ewens/mittag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ewens/core.hpp"
#include "ewens/quadrature.hpp"

namespace ewens {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Sums a series whose l-th term has log magnitude log_term(l), all terms
// positive, rising at most polynomially before geometric decay.
LogSeriesValue sum_log_series(const SeriesConfig& cfg,
                              double (*log_term)(std::int64_t, const double*),
                              const double* ctx) {
  LogSumExp acc;
  const double log_tol = std::log(cfg.rel_tol);
  double prev = kInf;
  for (std::int64_t l = 0; l < cfg.max_terms; ++l) {
    const double lt = log_term(l, ctx);
    acc.add(lt);
    if (lt < prev && lt < log_tol + acc.log_value())
      return {acc.log_value(), l + 1};
    prev = lt;
  }
  throw numeric_error("series did not converge within max_terms",
                      cfg.max_terms);
}

double ml_log_term(std::int64_t l, const double* ctx) {
  const double alpha = ctx[0], log_z = ctx[1];
  return double(l) * log_z - std::lgamma(alpha * double(l) + 1.0);
}

double ml3_log_term(std::int64_t l, const double* ctx) {
  const double alpha = ctx[0], log_z = ctx[1], beta = ctx[2], gamma = ctx[3];
  return log_rising(gamma, l) - std::lgamma(double(l) + 1.0) +
         double(l) * log_z - std::lgamma(alpha * double(l) + beta);
}

// Alternating-series summation for z < 0 in plain arithmetic; the guard on
// the term magnitude catches the cancellation blow-up at large |z|.
double sum_alternating(const SeriesConfig& cfg,
                       double (*log_term)(std::int64_t, const double*),
                       const double* ctx) {
  double sum = 0.0, comp = 0.0;
  double prev_mag = kInf;
  for (std::int64_t l = 0; l < cfg.max_terms; ++l) {
    const double lt = log_term(l, ctx);
    if (lt > 690.0)
      throw numeric_error("alternating series: term overflow", l);
    const double mag = std::exp(lt);
    const double term = (l % 2 == 0) ? mag : -mag;
    // Kahan update
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (mag < prev_mag && mag < cfg.rel_tol * std::max(std::abs(sum), 1e-300))
      return sum;
    prev_mag = mag;
  }
  throw numeric_error("alternating series did not converge within max_terms",
                      cfg.max_terms);
}

}  // namespace

LogSeriesValue ml_series_log(double alpha, double z, const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("ml_series: alpha must lie in (0,1]");
  if (z < 0.0) throw std::domain_error("ml_series_log: z must be >= 0");
  if (z == 0.0) return {0.0, 1};
  const double ctx[2] = {alpha, std::log(z)};
  return sum_log_series(cfg, ml_log_term, ctx);
}

double ml_series(double alpha, double z, const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("ml_series: alpha must lie in (0,1]");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return std::exp(ml_series_log(alpha, z, cfg).log_value);
  const double ctx[2] = {alpha, std::log(-z)};
  return sum_alternating(cfg, ml_log_term, ctx);
}

double ml_kernel_g(double alpha, double x, double y) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ml_kernel_g: alpha must lie in (0,1)");
  if (!(x > 0.0) || !(y > 0.0))
    throw std::domain_error("ml_kernel_g: x and y must be > 0");
  const double s = std::sin(kPi * alpha), c = std::cos(kPi * alpha);
  // Completed-square denominator, bounded below by (y sin(pi a))^2.
  const double dx = x - y * c;
  const double denom = dx * dx + y * y * s * s;
  return std::exp(-std::pow(x, 1.0 / alpha)) * y * s / (kPi * alpha * denom);
}

double g_tail_integral(double alpha, double y, const QuadratureConfig& quad) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("g_tail_integral: alpha must lie in (0,1)");
  if (!(y > 0.0)) throw std::domain_error("g_tail_integral: y must be > 0");

  const double s = std::sin(kPi * alpha), c = std::cos(kPi * alpha);
  const double inv_alpha = 1.0 / alpha;

  auto integrand_x = [&](double x) {
    if (x <= 0.0) return y * s / (kPi * alpha * y * y);  // x -> 0 limit
    const double dx = x - y * c;
    return std::exp(-std::pow(x, inv_alpha)) * y * s /
           (kPi * alpha * (dx * dx + y * y * s * s));
  };
  // After u = x^{1/alpha}: (1/pi) e^{-u} u^{alpha-1} y s / denom(u^alpha).
  auto integrand_u = [&](double u) {
    const double xa = std::pow(u, alpha);
    const double dx = xa - y * c;
    return std::exp(-u) * std::pow(u, alpha - 1.0) * y * s /
           (kPi * (dx * dx + y * y * s * s));
  };

  // Everything beyond x_cut is below the smallest positive double.
  const double x_cut = std::pow(745.0, alpha);
  const double x_switch = std::min(std::max(4.0 * y, 1.0), x_cut);

  // Seed breakpoints around the near-pole region x ~ y cos(pi a) (width
  // ~ y sin(pi a)) so the adaptive pass cannot step over a narrow peak.
  std::vector<double> knots = {0.0, x_switch};
  auto push = [&](double v) {
    if (v > 0.0 && v < x_switch) knots.push_back(v);
  };
  push(y);
  push(4.0 * y);
  if (c > 0.0) {
    push(y * c - 3.0 * y * s);
    push(y * c + 3.0 * y * s);
  }
  std::sort(knots.begin(), knots.end());

  const double piece_tol = quad.abs_tol / double(knots.size() + 1);
  double total = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    total += adaptive_simpson(integrand_x, knots[i], knots[i + 1], piece_tol,
                              quad.max_subdivisions);

  if (x_switch < x_cut) {
    const double u0 = std::pow(x_switch, inv_alpha);
    const double u1 = std::min(u0 + 80.0, 745.0);
    if (u1 > u0)
      total += adaptive_simpson(integrand_u, u0, u1, piece_tol,
                                quad.max_subdivisions);
  }
  return total;
}

double ml_integral(double alpha, double z, const QuadratureConfig& quad) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ml_integral: alpha must lie in (0,1)");
  if (!(z > 0.0)) throw std::domain_error("ml_integral: z must be > 0");
  return std::exp(std::pow(z, 1.0 / alpha)) / alpha -
         g_tail_integral(alpha, z, quad);
}

LogSeriesValue ml3_series_log(double alpha, double beta, double gamma,
                              double z, const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ml3_series: alpha must lie in (0,1)");
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw std::domain_error("ml3_series: beta and gamma must be > 0");
  if (z < 0.0) throw std::domain_error("ml3_series_log: z must be >= 0");
  if (z == 0.0) return {-std::lgamma(beta), 1};
  const double ctx[4] = {alpha, std::log(z), beta, gamma};
  return sum_log_series(cfg, ml3_log_term, ctx);
}

double ml3_series(double alpha, double beta, double gamma, double z,
                  const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("ml3_series: alpha must lie in (0,1)");
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw std::domain_error("ml3_series: beta and gamma must be > 0");
  if (z == 0.0) return std::exp(-std::lgamma(beta));
  if (z > 0.0)
    return std::exp(ml3_series_log(alpha, beta, gamma, z, cfg).log_value);
  const double ctx[4] = {alpha, std::log(-z), beta, gamma};
  return sum_alternating(cfg, ml3_log_term, ctx);
}

}  // namespace ewens
