#pragma once

namespace ewens {

struct RateEvalConfig {
  double tol = 1e-12;
  int max_iter = 200;
};

// Output of the Legendre-Fenchel transform at a point x: the optimizer t_x
// and the rate value x t_x - L(t_x).
struct RateResult {
  double x;
  double t_x;
  double rate;
  int iterations;
};

// Scaled limit of the log moment-generating function of the block count:
// L_a(t) = -log(1 - (1 - e^{-t})^{1/a}) for t > 0, and 0 for t <= 0.
double limit_log_mgf(double alpha, double t);

// d(t) = 1 - (1 - e^{-t})^{1/a} = exp(-L_a(t)).
double decay_factor(double alpha, double t);

// Closed-form derivative of L_a; strictly increasing from 0 to 1 on (0,inf).
double limit_log_mgf_deriv(double alpha, double t);

// Legendre-Fenchel transform I_a(x) = sup_t { x t - L_a(t) } for x in [0,1),
// solved through the unique root of L'(t) = x. Conventions outside the open
// interval: x = 0 gives rate 0 at t = 0; x = 1 returns the supremum limit
// log(1/a) with t_x = +inf; x > 1 returns +inf.
RateResult rate_alpha(double alpha, double x, const RateEvalConfig& cfg = {});

// Rate function of the alpha = 0 model: x log(x/theta) - x + theta for x > 0
// and theta at x = 0. Requires theta > 0, x >= 0.
double rate_ewens(double theta, double x);

}  // namespace ewens
