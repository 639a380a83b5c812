#pragma once

#include <cmath>
#include <stdexcept>

namespace ewens {

// Parameter pair (alpha, theta) with alpha in [0,1) and theta > -alpha.
// alpha = 0 is the one-parameter (Ewens) model, which then requires theta > 0.
class ModelParams {
 public:
  ModelParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
    if (!(std::isfinite(alpha) && std::isfinite(theta)))
      throw std::domain_error("ModelParams: alpha and theta must be finite");
    if (!(alpha >= 0.0 && alpha < 1.0))
      throw std::domain_error("ModelParams: alpha must lie in [0,1)");
    if (!(theta > -alpha))
      throw std::domain_error("ModelParams: theta must exceed -alpha");
  }

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  bool has_discount() const { return alpha_ > 0.0; }

  // theta/alpha, defined only for alpha > 0; always > -1 on the valid domain.
  double theta_alpha() const {
    if (alpha_ == 0.0)
      throw std::domain_error("ModelParams: theta_alpha undefined at alpha=0");
    return theta_ / alpha_;
  }

 private:
  double alpha_;
  double theta_;
};

}  // namespace ewens
