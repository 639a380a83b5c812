#include "ewens/mgf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ewens/common.hpp"
#include "ewens/core.hpp"
#include "ewens/ldp.hpp"
#include "ewens/partition.hpp"
#include "ewens/quadrature.hpp"

namespace ewens {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_n(std::int64_t n, std::int64_t min_n, const char* who) {
  if (n < min_n)
    throw std::domain_error(std::string(who) + ": n too small");
}

// log(1 - e^{-t}) for t > 0.
double log_w(double t) { return std::log1p(-std::exp(-t)); }

MgfResult make_result(double log_value, MgfMethod method, std::int64_t terms,
                      std::optional<double> remainder = std::nullopt) {
  return MgfResult{std::exp(log_value), log_value, method, terms, remainder};
}

// Shared summation loop: all terms positive, rising at most polynomially
// before the geometric factor takes over, so stop only once terms decrease.
template <class LogTerm>
LogSeriesValue sum_positive_series(const SeriesConfig& cfg, LogTerm&& lt) {
  LogSumExp acc;
  const double log_tol = std::log(cfg.rel_tol);
  double prev = kInf;
  for (std::int64_t l = 0; l < cfg.max_terms; ++l) {
    const double v = lt(l);
    acc.add(v);
    if (v < prev && v < log_tol + acc.log_value()) return {acc.log_value(), l + 1};
    prev = v;
  }
  throw numeric_error("mgf series did not converge within max_terms",
                      cfg.max_terms);
}

}  // namespace

const char* mgf_method_name(MgfMethod m) {
  switch (m) {
    case MgfMethod::Series: return "series";
    case MgfMethod::MlIntegral: return "mlintegral";
    case MgfMethod::Sharp: return "sharp";
    case MgfMethod::GfCoeff: return "gfcoeff";
    case MgfMethod::Enumeration: return "enum";
  }
  return "?";
}

MgfResult mgf_series_theta0(double alpha, std::int64_t n, double t,
                            const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_series_theta0: alpha must lie in (0,1)");
  check_n(n, 1, "mgf_series_theta0");
  if (t < 0.0)
    throw std::domain_error("mgf_series_theta0: series requires t >= 0");
  if (t == 0.0) return make_result(0.0, MgfMethod::Series, 0);

  const double lw = log_w(t);
  const double lg_n = std::lgamma(double(n));
  auto term = [&](std::int64_t l) {
    const double al = alpha * double(l);
    return double(l) * lw + std::lgamma(double(n) + al) - std::lgamma(al + 1.0);
  };
  const auto sum = sum_positive_series(cfg, term);
  return make_result(sum.log_value - lg_n, MgfMethod::Series, sum.terms);
}

double mgf_series_theta0_deriv(double alpha, std::int64_t n, double t,
                               const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_series_theta0_deriv: alpha must lie in (0,1)");
  check_n(n, 1, "mgf_series_theta0_deriv");
  if (!(t > 0.0))
    throw std::domain_error("mgf_series_theta0_deriv: t must be > 0");
  const double lw = log_w(t);
  const double lg_n = std::lgamma(double(n));
  // d/dt w^l = l w^{l-1} e^{-t}
  auto term = [&](std::int64_t l) {
    if (l == 0) return kNegInf;
    const double al = alpha * double(l);
    return std::log(double(l)) + double(l - 1) * lw - t +
           std::lgamma(double(n) + al) - std::lgamma(al + 1.0);
  };
  const auto sum = sum_positive_series(cfg, term);
  return std::exp(sum.log_value - lg_n);
}

namespace {

// log of int_0^inf y^s e^{-y} Phi(w y^a) dy for a positive function Phi with
// a power series in its argument, 0 < w < 1. Two routes:
//  - moderate s: substitute u = y^a, where the fractional powers y^{a l} of
//    the series become polynomial, and integrate adaptively in plain
//    arithmetic (the u-integrand is smooth away from a high-order endpoint
//    zero);
//  - large s or values beyond double range: generalized Gauss-Laguerre with
//    log-domain weights; the steep y^s damping makes the endpoint behavior
//    irrelevant there.
// evals receives the number of Phi evaluations.
template <class PhiLin, class PhiLog>
double log_ml_weighted_integral(double s, double alpha, double w,
                                PhiLin&& phi, PhiLog&& log_phi,
                                const QuadratureConfig& quad,
                                std::int64_t* evals) {
  const double d = -std::expm1(std::log(w) / alpha);  // 1 - w^{1/a}
  const double y_peak = std::max(s, 1.0) / d;
  const double decay_max = s * std::log(y_peak) - d * y_peak;
  double y_cut = y_peak + 60.0 / d;
  while (s * std::log(y_cut) - d * y_cut > decay_max - 60.0) y_cut *= 1.25;

  // log of the envelope (1/a) Gamma(s+1) d^{-(s+1)} of the integral.
  const double log_scale =
      std::lgamma(s + 1.0) - (s + 1.0) * std::log(d) - std::log(alpha);
  const bool linear_ok =
      s <= 100.0 && log_scale < 680.0 && (1.0 - d) * y_cut < 650.0;

  if (linear_ok) {
    const double p = (s + 1.0) / alpha - 1.0;  // u-power after y = u^{1/a}
    auto f = [&](double u) {
      if (u <= 0.0) return 0.0;
      ++*evals;
      const double y = std::pow(u, 1.0 / alpha);
      return std::exp(p * std::log(u) - y) * phi(w * u) / alpha;
    };
    const double u_cut = std::pow(y_cut, alpha);
    const double u_peak = std::pow(y_peak, alpha);
    const double tol = 0.25e-12 * std::exp(log_scale);
    const double knots[5] = {0.0, 0.25 * u_peak, u_peak,
                             std::min(2.0 * u_peak, u_cut), u_cut};
    // The endpoint factors u^p and e^{-u^{1/a}} have unbounded higher
    // derivatives at 0; grade them away on the first panel with u = v^kappa.
    const double kappa = std::max(1.0, 4.0 / (p + 1.0));
    auto f0 = [&](double v) {
      if (v <= 0.0) return 0.0;
      return f(std::pow(v, kappa)) * kappa * std::pow(v, kappa - 1.0);
    };
    const int budget = 4 * quad.max_subdivisions;  // master panels
    double total = adaptive_simpson(f0, 0.0, std::pow(knots[1], 1.0 / kappa),
                                    tol, budget);
    for (int i = 1; i + 1 < 5; ++i)
      if (knots[i + 1] > knots[i])
        total += adaptive_simpson(f, knots[i], knots[i + 1], tol, budget);
    return std::log(total);
  }

  // y = v/d aligns the rule's weight v^s e^{-v} with the true peak of
  // y^s e^{-y} Phi: Phi grows like exp((1-d) y), so the residual function
  // of v below is slowly varying.
  const auto& rule = laguerre_rule(quad.laguerre_nodes, s);
  const double growth = 1.0 - 1.0 / d;
  LogSumExp acc;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    ++*evals;
    const double v = rule.nodes[i];
    acc.add(rule.log_weights[i] + growth * v +
            log_phi(w * std::pow(v / d, alpha)));
  }
  return acc.log_value() - (s + 1.0) * std::log(d);
}

}  // namespace

MgfResult mgf_ml_form_theta0(double alpha, std::int64_t n, double t,
                             const QuadratureConfig& quad) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_ml_form_theta0: alpha must lie in (0,1)");
  check_n(n, 1, "mgf_ml_form_theta0");
  if (t < 0.0) throw std::domain_error("mgf_ml_form_theta0: t must be >= 0");
  if (t == 0.0) return make_result(0.0, MgfMethod::MlIntegral, 0);

  const double w = -std::expm1(-t);
  std::int64_t evals = 0;
  const double log_integral = log_ml_weighted_integral(
      double(n - 1), alpha, w,
      [&](double z) { return ml_series(alpha, z); },
      [&](double z) { return ml_series_log(alpha, z).log_value; }, quad,
      &evals);
  return make_result(log_integral - std::lgamma(double(n)),
                     MgfMethod::MlIntegral, evals);
}

MgfResult mgf_sharp_theta0(double alpha, std::int64_t n, double t,
                           const QuadratureConfig& quad) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_sharp_theta0: alpha must lie in (0,1)");
  check_n(n, 2, "mgf_sharp_theta0");
  if (!(t > 0.0)) throw std::domain_error("mgf_sharp_theta0: t must be > 0");

  const double w = -std::expm1(-t);
  const double log_main =
      -std::log(alpha) - double(n) * std::log(decay_factor(alpha, t));

  // R_n(t): outer Gauss-Laguerre in y (weight y^{n-1} e^{-y}), inner tail
  // integral at (1-e^{-t}) y^a.
  const auto& rule = laguerre_rule(quad.laguerre_nodes, double(n - 1));
  LogSumExp acc;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = w * std::pow(rule.nodes[i], alpha);
    const double tail = g_tail_integral(alpha, z, quad);
    if (tail <= 0.0) continue;
    acc.add(rule.log_weights[i] + std::log(tail));
  }
  const double log_r = acc.log_value() - std::lgamma(double(n));
  const double log_value = log_main + std::log1p(-std::exp(log_r - log_main));
  return make_result(log_value, MgfMethod::Sharp, quad.laguerre_nodes,
                     std::exp(log_r));
}

namespace {

// Correction factor of the closed-form bracket:
// n^{1-a} Gamma(1+a) d(t)^n / ((n-a) pi sin(pi a) (1-e^{-t})).
double sandwich_correction(double alpha, std::int64_t n, double t) {
  const double w = -std::expm1(-t);
  const double d = decay_factor(alpha, t);
  return std::exp((1.0 - alpha) * std::log(double(n)) +
                  std::lgamma(1.0 + alpha) + double(n) * std::log(d)) /
         ((double(n) - alpha) * kPi * std::sin(kPi * alpha) * w);
}

}  // namespace

MgfBounds mgf_sandwich_theta0(double alpha, std::int64_t n, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_sandwich_theta0: alpha must lie in (0,1)");
  check_n(n, 2, "mgf_sandwich_theta0");
  if (!(t > 0.0)) throw std::domain_error("mgf_sandwich_theta0: t must be > 0");

  const double log_upper =
      -std::log(alpha) - double(n) * std::log(decay_factor(alpha, t));
  const double correction = sandwich_correction(alpha, n, t);
  const double upper = std::exp(log_upper);
  const double lower = correction < 1.0
                           ? std::exp(log_upper + std::log1p(-correction))
                           : upper * (1.0 - correction);
  return MgfBounds{lower, upper};
}

MgfLogBounds mgf_sandwich_log_theta0(double alpha, std::int64_t n, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("mgf_sandwich_log_theta0: alpha must lie in (0,1)");
  check_n(n, 2, "mgf_sandwich_log_theta0");
  if (!(t > 0.0))
    throw std::domain_error("mgf_sandwich_log_theta0: t must be > 0");

  const double log_upper =
      -std::log(alpha) - double(n) * std::log(decay_factor(alpha, t));
  const double correction = sandwich_correction(alpha, n, t);
  const double log_lower =
      correction < 1.0 ? log_upper + std::log1p(-correction) : kNegInf;
  return MgfLogBounds{log_lower, log_upper};
}

MgfResult mgf_series_general(const ModelParams& params, std::int64_t n,
                             double t, const SeriesConfig& cfg) {
  if (!params.has_discount())
    throw std::domain_error("mgf_series_general: alpha must be > 0");
  check_n(n, 1, "mgf_series_general");
  if (t < 0.0)
    throw std::domain_error("mgf_series_general: series requires t >= 0");
  if (t == 0.0) return make_result(0.0, MgfMethod::Series, 0);

  const double alpha = params.alpha();
  const double theta = params.theta();
  const double ta = params.theta_alpha();
  const double lw = log_w(t);
  const double log_pref =
      std::lgamma(theta + 1.0) - t * ta - std::lgamma(double(n) + theta);
  auto term = [&](std::int64_t l) {
    const double al = alpha * double(l);
    return log_rising(ta + 1.0, l) - std::lgamma(double(l) + 1.0) +
           double(l) * lw + std::lgamma(double(n) + theta + al) -
           std::lgamma(theta + al + 1.0);
  };
  const auto sum = sum_positive_series(cfg, term);
  return make_result(log_pref + sum.log_value, MgfMethod::Series, sum.terms);
}

MgfResult mgf_integral_general(const ModelParams& params, std::int64_t n,
                               double t, const QuadratureConfig& quad) {
  if (!params.has_discount())
    throw std::domain_error("mgf_integral_general: alpha must be > 0");
  check_n(n, 1, "mgf_integral_general");
  if (t < 0.0) throw std::domain_error("mgf_integral_general: t must be >= 0");
  if (t == 0.0) return make_result(0.0, MgfMethod::MlIntegral, 0);

  const double alpha = params.alpha();
  const double theta = params.theta();
  const double ta = params.theta_alpha();
  const double w = -std::expm1(-t);
  const double log_pref =
      std::lgamma(theta + 1.0) - t * ta - std::lgamma(double(n) + theta);

  std::int64_t evals = 0;
  const double log_integral = log_ml_weighted_integral(
      double(n) + theta - 1.0, alpha, w,
      [&](double z) { return ml3_series(alpha, theta + 1.0, ta + 1.0, z); },
      [&](double z) {
        return ml3_series_log(alpha, theta + 1.0, ta + 1.0, z).log_value;
      },
      quad, &evals);
  return make_result(log_pref + log_integral, MgfMethod::MlIntegral, evals);
}

MgfBounds mgf_bounds_general(const ModelParams& params, std::int64_t n,
                             double t) {
  check_n(n, 1, "mgf_bounds_general");
  if (t <= 0.0) {
    // Jensen bracket exp(t E K_n) <= m_n(t) <= exp(t), from K_n >= 1.
    const double mean = expected_blocks(params, n);
    return MgfBounds{std::exp(t * mean), std::exp(t)};
  }
  if (!params.has_discount())
    throw std::domain_error("mgf_bounds_general: alpha must be > 0 for t > 0");
  const double log_i0 =
      mgf_series_theta0(params.alpha(), n, t).log_value;
  const double log_c = log_c_factor(params, n);
  if (params.theta() >= 0.0) {
    return MgfBounds{std::exp(log_c + log_i0),
                     std::exp(log_c + log_p_prefactor(params, n) + log_i0)};
  }
  const double ta = params.theta_alpha();
  return MgfBounds{std::exp(log_c + ta * std::log(double(n)) + log_i0),
                   std::exp(log_c + log_i0)};
}

double mgf_transfer_sum(const ModelParams& params, std::int64_t n, double t) {
  if (!params.has_discount())
    throw std::domain_error("mgf_transfer_sum: alpha must be > 0");
  check_n(n, 1, "mgf_transfer_sum");
  const double ta = params.theta_alpha();
  const ModelParams base(params.alpha(), 0.0);
  const KnDistribution dist = kn_distribution(base, n);
  LogSumExp acc;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double p = dist.prob(k);
    if (p <= 0.0) continue;
    acc.add(std::log(p) + t * double(k) + std::lgamma(ta + double(k)) -
            std::lgamma(double(k)));
  }
  return std::exp(acc.log_value());
}

MgfResult mgf_from_distribution(const ModelParams& params, std::int64_t n,
                                double t) {
  const KnDistribution dist = kn_distribution(params, n);
  LogSumExp acc;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double p = dist.prob(k);
    if (p <= 0.0) continue;
    acc.add(std::log(p) + t * double(k));
  }
  return make_result(acc.log_value(), MgfMethod::Enumeration, n);
}

double gf_radius(double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("gf_radius: alpha must lie in (0,1)");
  // |(e^t-1)/e^t|^{1/a} = |1-e^{-t}|^{1/a}
  return 1.0 + std::pow(std::abs(-std::expm1(-t)), 1.0 / alpha);
}

double gf_closed_form(double alpha, double t, double z) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("gf_closed_form: alpha must lie in (0,1)");
  if (!(std::abs(z) < gf_radius(alpha, t)))
    throw std::domain_error("gf_closed_form: |z| outside the radius bound");
  if (z >= 1.0)
    throw std::domain_error("gf_closed_form: real evaluation requires z < 1");
  const double w = -std::expm1(-t);  // (e^t-1)/e^t
  const double pow_term = std::pow(1.0 - z, alpha);
  return (1.0 - w / (w - pow_term)) / (1.0 - z);
}

std::vector<double> gf_taylor_coeff(double alpha, double t, int n_max,
                                    const SeriesConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("gf_taylor_coeff: alpha must lie in (0,1)");
  if (n_max < 1 || n_max > 30)
    throw std::domain_error("gf_taylor_coeff: n_max must lie in [1,30]");
  if (!(t > 0.0)) throw std::domain_error("gf_taylor_coeff: t must be > 0");

  const double lw = log_w(t);
  std::vector<double> out;
  out.reserve(size_t(n_max));
  double m = std::exp(t);  // m_1
  out.push_back(m);
  for (int n = 1; n < n_max; ++n) {
    // mF_n = (1/n!) sum_{k>=1} w^k (a k)^(n); the k = 0 term vanishes.
    auto term = [&](std::int64_t k_minus_1) {
      const std::int64_t k = k_minus_1 + 1;
      const double ak = alpha * double(k);
      return double(k) * lw + std::lgamma(ak + double(n)) - std::lgamma(ak) -
             std::lgamma(double(n) + 1.0);
    };
    const auto sum = sum_positive_series(cfg, term);
    m += std::exp(sum.log_value);
    out.push_back(m);
  }
  return out;
}

}  // namespace ewens
