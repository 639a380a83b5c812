#include "ewens/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ewens {

double log_rising(double a, std::int64_t n) {
  if (n < 0) throw std::domain_error("log_rising: n must be nonnegative");
  if (n == 0) return 0.0;
  if (!(a > 0.0)) throw std::domain_error("log_rising: base must be positive");
  // Direct product for short runs; lgamma differences cancel badly there
  // when a is close to 0.
  if (n <= 8) {
    double s = 0.0;
    for (std::int64_t i = 0; i < n; ++i) s += std::log(a + double(i));
    return s;
  }
  return std::lgamma(a + double(n)) - std::lgamma(a);
}

double log_a_factor(const ModelParams& params, std::int64_t n) {
  if (n < 1) throw std::domain_error("log_a_factor: n must be >= 1");
  const double theta = params.theta();
  // log Gamma(n) + log Gamma(theta+1) - log Gamma(n+theta)
  return std::lgamma(double(n)) + std::lgamma(theta + 1.0) -
         std::lgamma(double(n) + theta);
}

double a_factor(const ModelParams& params, std::int64_t n) {
  return std::exp(log_a_factor(params, n));
}

double log_c_factor(const ModelParams& params, std::int64_t n) {
  if (n < 1) throw std::domain_error("log_c_factor: n must be >= 1");
  return log_a_factor(params, n) - std::lgamma(params.theta_alpha() + 1.0);
}

double c_factor(const ModelParams& params, std::int64_t n) {
  return std::exp(log_c_factor(params, n));
}

double log_p_prefactor(const ModelParams& params, std::int64_t n) {
  if (n < 1) throw std::domain_error("log_p_prefactor: n must be >= 1");
  if (params.theta() <= 0.0) return 0.0;
  const double ta = params.theta_alpha();
  return ta * std::log(std::floor(ta) + double(n));
}

double p_prefactor(const ModelParams& params, std::int64_t n) {
  return std::exp(log_p_prefactor(params, n));
}

double log_martingale_weight(const ModelParams& params, std::int64_t n,
                             std::int64_t k) {
  if (k < 1 || k > n)
    throw std::domain_error("log_martingale_weight: k must lie in [1,n]");
  const double ta = params.theta_alpha();
  // Gamma(theta_alpha+k)/(Gamma(theta_alpha+1)Gamma(k)) =
  // (theta_alpha+1)^(k-1)/(k-1)!, with base theta_alpha+1 > 0 on the whole
  // parameter domain.
  return log_a_factor(params, n) + log_rising(ta + 1.0, k - 1) -
         std::lgamma(double(k));
}

double martingale_weight(const ModelParams& params, std::int64_t n,
                         std::int64_t k) {
  return std::exp(log_martingale_weight(params, n, k));
}

}  // namespace ewens
