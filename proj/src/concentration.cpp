#include "ewens/concentration.hpp"

#include <cmath>
#include <stdexcept>

#include "ewens/common.hpp"
#include "ewens/core.hpp"
#include "ewens/ldp.hpp"
#include "ewens/mgf.hpp"

namespace ewens {

namespace {

// ceil(n x) with near-integer snapping: K_n >= n x is an event on integers,
// so a threshold within 1e-9 of an integer means that integer.
std::int64_t tail_threshold(std::int64_t n, double x) {
  const double nx = double(n) * x;
  const double rounded = std::round(nx);
  if (std::abs(nx - rounded) <= 1e-9 * std::max(1.0, std::abs(nx)))
    return std::int64_t(rounded);
  return std::int64_t(std::ceil(nx));
}

}  // namespace

double log_concentration_bound(const ModelParams& params, std::int64_t n,
                               double x) {
  if (!params.has_discount())
    throw std::domain_error("concentration_bound: alpha must be > 0");
  if (n < 1) throw std::domain_error("concentration_bound: n must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("concentration_bound: x must lie in (0,1)");
  const RateResult rate = rate_alpha(params.alpha(), x);
  return log_p_prefactor(params, n) + log_c_factor(params, n) -
         std::log(params.alpha()) - double(n) * rate.rate;
}

double concentration_bound(const ModelParams& params, std::int64_t n,
                           double x) {
  return std::exp(log_concentration_bound(params, n, x));
}

double exact_tail(const KnDistribution& dist, double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw std::domain_error("exact_tail: x must lie in (0,1]");
  const std::int64_t kc = std::max<std::int64_t>(tail_threshold(dist.n, x), 1);
  double tail = 0.0;
  for (std::int64_t k = dist.n; k >= kc; --k) tail += dist.prob(k);
  return tail;
}

double exact_tail(const ModelParams& params, std::int64_t n, double x) {
  return exact_tail(kn_distribution(params, n), x);
}

double exact_chernoff(const ModelParams& params, std::int64_t n, double x,
                      const SeriesConfig& cfg) {
  if (!params.has_discount())
    throw std::domain_error("exact_chernoff: alpha must be > 0");
  if (n < 1) throw std::domain_error("exact_chernoff: n must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("exact_chernoff: x must lie in (0,1)");

  auto objective = [&](double log_t) {
    const double t = std::exp(log_t);
    return mgf_series_general(params, n, t, cfg).log_value -
           double(n) * x * t;
  };

  // The minimizer sits near the Legendre point t_x, where the limit log-MGF
  // slope equals x; bracket generously around it.
  const double t_x = rate_alpha(params.alpha(), x).t_x;
  double lo = std::log(1e-8);
  double hi = std::log(std::max(8.0 * t_x, 4.0));

  // Golden-section: the objective is convex in t (log-MGF convexity plus a
  // linear term), hence unimodal in log t as well on the bracketed range.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = objective(c), fd = objective(d);
  int iters = 0;
  while (hi - lo > 1e-10) {
    if (++iters > 400)
      throw numeric_error("exact_chernoff: golden-section failed to converge");
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective(d);
    }
  }
  const double best = std::min(fc, fd);
  // The infimum over t > 0 cannot exceed the t -> 0 limit m_n(0) = 1.
  return std::exp(std::min(best, 0.0));
}

}  // namespace ewens
