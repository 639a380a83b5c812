#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ewens/mittag.hpp"
#include "ewens/params.hpp"

namespace ewens {

enum class MgfMethod { Series, MlIntegral, Sharp, GfCoeff, Enumeration };

const char* mgf_method_name(MgfMethod m);

// Value of m_n(t) = E[exp(t K_n)] with evaluation metadata. value is
// exp(log_value), which saturates to +inf once the log exceeds the double
// range; log_value is always finite.
struct MgfResult {
  double value;
  double log_value;
  MgfMethod method;
  std::int64_t terms_used;
  std::optional<double> remainder;  // set by the sharp-expansion engine only
};

struct MgfBounds {
  double lower;
  double upper;
};

// Log-scale bracket; log_lower is -inf when the closed-form lower bound is
// not positive.
struct MgfLogBounds {
  double log_lower;
  double log_upper;
};

// --- theta = 0 engines -----------------------------------------------------

// Rising-factorial-moment series
// (1/(n-1)!) sum_l ((e^t-1)/e^t)^l Gamma(n+al)/Gamma(al+1), t > 0.
MgfResult mgf_series_theta0(double alpha, std::int64_t n, double t,
                            const SeriesConfig& cfg = {});

// Termwise derivative d m_n / dt of the series above.
double mgf_series_theta0_deriv(double alpha, std::int64_t n, double t,
                               const SeriesConfig& cfg = {});

// Gauss-Laguerre evaluation of
// (1/(n-1)!) int_0^inf y^{n-1} e^{-y} E_a((1-e^{-t}) y^a) dy.
MgfResult mgf_ml_form_theta0(double alpha, std::int64_t n, double t,
                             const QuadratureConfig& quad = {});

// Sharp expansion (1/a) d(t)^{-n} - R_n(t) with the remainder evaluated by
// nested quadrature; requires n >= 2.
MgfResult mgf_sharp_theta0(double alpha, std::int64_t n, double t,
                           const QuadratureConfig& quad = {});

// Closed-form bracket around m_n(t) for n >= 2, t > 0; the lower bound may
// be negative for small n and is reported as computed.
MgfBounds mgf_sandwich_theta0(double alpha, std::int64_t n, double t);

// Same bracket on the log scale; stays finite when d(t)^{-n} overflows.
MgfLogBounds mgf_sandwich_log_theta0(double alpha, std::int64_t n, double t);

// --- general-theta engines -------------------------------------------------

// Series engine for theta > -alpha; coincides with mgf_series_theta0 at
// theta = 0.
MgfResult mgf_series_general(const ModelParams& params, std::int64_t n,
                             double t, const SeriesConfig& cfg = {});

// Generalized Gauss-Laguerre (weight y^{n+theta-1} e^{-y}) with the
// three-parameter Mittag-Leffler function at the nodes.
MgfResult mgf_integral_general(const ModelParams& params, std::int64_t n,
                               double t, const QuadratureConfig& quad = {});

// Bounds on m_n(t): change-of-measure bracket for t > 0 (Wendel/Gautschi
// prefactors around the theta = 0 value), Jensen bracket for t <= 0.
MgfBounds mgf_bounds_general(const ModelParams& params, std::int64_t n,
                             double t);

// I_n(t) = sum_k P_{a,0}(K_n=k) e^{tk} Gamma(theta_alpha+k)/Gamma(k); the
// change-of-measure sum with m_n(t) = c_n I_n(t).
double mgf_transfer_sum(const ModelParams& params, std::int64_t n, double t);

// Exact m_n(t) from the distribution of K_n; works for every real t,
// n within the kn_distribution guard.
MgfResult mgf_from_distribution(const ModelParams& params, std::int64_t n,
                                double t);

// --- generating function ---------------------------------------------------

// Radius bound 1 + |(e^t-1)/e^t|^{1/a} used as the domain gate for the
// closed form below.
double gf_radius(double alpha, double t);

// F(t,z) = (1/(1-z)) (1 - (e^t-1)/((e^t-1) - e^t (1-z)^a)); real z < 1
// (the real power (1-z)^a), |z| < gf_radius.
double gf_closed_form(double alpha, double t, double z);

// First n_max Taylor coefficients m_1(t)..m_{n_max}(t) of F(t,.) computed
// from the double series and the prefix-sum relation m_{n+1} = m_n + mF_n.
// n_max <= 30.
std::vector<double> gf_taylor_coeff(double alpha, double t, int n_max,
                                    const SeriesConfig& cfg = {});

}  // namespace ewens
