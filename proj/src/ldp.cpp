#include "ewens/ldp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ewens/common.hpp"

namespace ewens {

namespace {

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error(std::string(who) + ": alpha must lie in (0,1)");
}

// (1 - e^{-t})^{1/alpha} computed through logs; exact to the ulp level for
// both t -> 0 and t -> inf.
double w_pow(double alpha, double t) {
  // log w = log1p(-e^{-t})
  return std::exp(std::log1p(-std::exp(-t)) / alpha);
}

}  // namespace

double decay_factor(double alpha, double t) {
  check_alpha(alpha, "decay_factor");
  if (t <= 0.0) return 1.0;
  // 1 - w^{1/alpha} without cancellation near t -> inf.
  return -std::expm1(std::log1p(-std::exp(-t)) / alpha);
}

double limit_log_mgf(double alpha, double t) {
  check_alpha(alpha, "limit_log_mgf");
  if (t <= 0.0) return 0.0;
  return -std::log1p(-w_pow(alpha, t));
}

double limit_log_mgf_deriv(double alpha, double t) {
  check_alpha(alpha, "limit_log_mgf_deriv");
  if (t <= 0.0) return 0.0;
  const double log_w = std::log1p(-std::exp(-t));
  // (1/a) w^{1/a - 1} e^{-t} / (1 - w^{1/a})
  const double numer =
      std::exp((1.0 / alpha - 1.0) * log_w - t) / alpha;
  const double denom = -std::expm1(log_w / alpha);
  return numer / denom;
}

RateResult rate_alpha(double alpha, double x, const RateEvalConfig& cfg) {
  check_alpha(alpha, "rate_alpha");
  if (!(x >= 0.0)) throw std::domain_error("rate_alpha: x must be >= 0");
  if (x == 0.0) return {0.0, 0.0, 0.0, 0};
  if (x == 1.0) return {1.0, kInf, std::log(1.0 / alpha), 0};
  if (x > 1.0) return {x, kInf, kInf, 0};

  int iters = 0;
  double t_root;
  if (x <= 0.999) {
    // Bracket the root of L'(t) = x, then bisect; L' is strictly increasing.
    double lo = 0.0, hi = 1.0;
    while (limit_log_mgf_deriv(alpha, hi) < x) {
      lo = hi;
      hi *= 2.0;
      if (++iters > cfg.max_iter)
        throw numeric_error("rate_alpha: bracket expansion failed");
    }
    while (hi - lo > cfg.tol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (limit_log_mgf_deriv(alpha, mid) < x)
        lo = mid;
      else
        hi = mid;
      if (++iters > cfg.max_iter)
        throw numeric_error("rate_alpha: bisection failed to converge");
    }
    t_root = 0.5 * (lo + hi);
  } else {
    // Near x = 1 work in s = e^{-t} with geometric bisection; the root
    // wanders off to t -> inf as x -> 1. L'(-log s) decreases from 1 to 0
    // as s runs from 0 to 1, so pushing s_hi toward 1 always brackets.
    double s_lo = 1e-300, s_hi = 0.5;
    while (limit_log_mgf_deriv(alpha, -std::log(s_hi)) > x) {
      s_hi = std::sqrt(s_hi);
      if (++iters > cfg.max_iter)
        throw numeric_error("rate_alpha: bracket expansion failed");
    }
    while (std::log(s_hi / s_lo) > cfg.tol) {
      const double s_mid = std::sqrt(s_lo * s_hi);
      if (limit_log_mgf_deriv(alpha, -std::log(s_mid)) > x)
        s_lo = s_mid;
      else
        s_hi = s_mid;
      if (++iters > cfg.max_iter)
        throw numeric_error("rate_alpha: bisection failed to converge");
    }
    t_root = -std::log(std::sqrt(s_lo * s_hi));
  }
  const double rate = x * t_root - limit_log_mgf(alpha, t_root);
  return {x, t_root, rate, iters};
}

double rate_ewens(double theta, double x) {
  if (!(theta > 0.0)) throw std::domain_error("rate_ewens: theta must be > 0");
  if (x < 0.0) throw std::domain_error("rate_ewens: x must be >= 0");
  if (x == 0.0) return theta;
  return x * std::log(x / theta) - x + theta;
}

}  // namespace ewens
