#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ewens {

// Thrown when an iterative scheme (series, quadrature, optimizer) fails to
// reach its tolerance within the configured budget.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, std::int64_t terms_used = -1)
      : std::runtime_error(what), terms_used_(terms_used) {}
  std::int64_t terms_used() const { return terms_used_; }

 private:
  std::int64_t terms_used_;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp accumulator for sums of positive terms given in log
// form. Rescales on the fly so the partial sum never overflows.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = (max_ == kNegInf) ? 1.0 : sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  // log of the accumulated sum; -inf when empty.
  double log_value() const {
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_);
  }
  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace ewens
