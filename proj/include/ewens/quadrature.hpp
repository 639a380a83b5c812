#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ewens/common.hpp"

namespace ewens {

// Gauss-Laguerre rule for the weight y^exponent e^{-y} on (0, inf).
// Weights are stored in log form so large exponents (the factor Gamma(s+1)
// in the zeroth moment) never overflow.
struct LaguerreRule {
  double exponent;
  std::vector<double> nodes;
  std::vector<double> log_weights;
};

// Cached, thread-safe accessor. exponent > -1, 1 <= n <= 1000.
const LaguerreRule& laguerre_rule(int n, double exponent = 0.0);

namespace detail {

inline double simpson_panel(double a, double fa, double fm, double b,
                            double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F& f, double a, double fa, double m, double fm,
                            double b, double fb, double whole, double tol,
                            int depth, int& budget) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(a, fa, flm, m, fm);
  const double right = simpson_panel(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || --budget <= 0) {
    if (std::abs(delta) > 15.0 * tol)
      throw numeric_error("adaptive_simpson: subdivision budget exhausted");
    return left + right + delta / 15.0;
  }
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, lm, flm, m, fm, left, 0.5 * tol,
                              depth - 1, budget) +
         adaptive_simpson_rec(f, m, fm, rm, frm, b, fb, right, 0.5 * tol,
                              depth - 1, budget);
}

}  // namespace detail

// Adaptive Simpson integration of f over [a,b] to absolute tolerance abs_tol.
// The subdivision budget is shared across the whole call; exhausting it
// before the tolerance is met raises numeric_error.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_subdivisions = 2000) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = detail::simpson_panel(a, fa, fm, b, fb);
  int budget = max_subdivisions;
  return detail::adaptive_simpson_rec(f, a, fa, m, fm, b, fb, whole, abs_tol,
                                      60, budget);
}

}  // namespace ewens
