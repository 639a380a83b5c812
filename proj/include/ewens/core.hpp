#pragma once

#include <cstdint>

#include "ewens/params.hpp"

namespace ewens {

// log of the rising factorial (a)^(n) = a(a+1)...(a+n-1); 0 when n = 0.
// Requires a > 0 when n >= 1.
double log_rising(double a, std::int64_t n);

// a_n = Gamma(n)Gamma(theta+1)/Gamma(n+theta), the product of k/(k+theta)
// over k = 1..n-1.
double log_a_factor(const ModelParams& params, std::int64_t n);
double a_factor(const ModelParams& params, std::int64_t n);

// c_n = Gamma(n)Gamma(theta+1) / (Gamma(theta_alpha+1)Gamma(n+theta)).
// Requires alpha > 0.
double log_c_factor(const ModelParams& params, std::int64_t n);
double c_factor(const ModelParams& params, std::int64_t n);

// P_n = (floor(theta_alpha)+n)^theta_alpha when theta > 0, and 1 when
// theta <= 0. Requires alpha > 0.
double log_p_prefactor(const ModelParams& params, std::int64_t n);
double p_prefactor(const ModelParams& params, std::int64_t n);

// Change-of-measure weight a_n Gamma(theta_alpha+k)/(Gamma(theta_alpha+1)
// Gamma(k)) evaluated at block count k, computed through the cancelled
// rising-factorial form so no gamma of a negative argument appears.
// Requires alpha > 0 and 1 <= k <= n.
double log_martingale_weight(const ModelParams& params, std::int64_t n,
                             std::int64_t k);
double martingale_weight(const ModelParams& params, std::int64_t n,
                         std::int64_t k);

}  // namespace ewens
