#include "ewens/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "ewens/common.hpp"
#include "ewens/core.hpp"
#include "ewens/rng.hpp"

namespace ewens {

PartitionCounts::PartitionCounts(std::int64_t n_,
                                 std::vector<std::int64_t> multiplicity)
    : n(n_), block_multiplicity(std::move(multiplicity)) {
  if (n < 1) throw std::domain_error("PartitionCounts: n must be >= 1");
  if (std::int64_t(block_multiplicity.size()) != n)
    throw std::domain_error("PartitionCounts: multiplicity vector must have length n");
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (block_multiplicity[size_t(i)] < 0)
      throw std::domain_error("PartitionCounts: multiplicities must be >= 0");
    total += (i + 1) * block_multiplicity[size_t(i)];
  }
  if (total != n)
    throw std::domain_error("PartitionCounts: sizes must sum to n");
}

std::int64_t PartitionCounts::block_count() const {
  std::int64_t k = 0;
  for (auto c : block_multiplicity) k += c;
  return k;
}

double KnDistribution::mean() const {
  double m = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) m += double(k) * probs[size_t(k - 1)];
  return m;
}

double eppf_log_prob(const ModelParams& params, const PartitionCounts& counts) {
  const double alpha = params.alpha();
  const double theta = params.theta();
  const std::int64_t n = counts.n;
  const std::int64_t big_k = counts.block_count();

  double lp = std::lgamma(double(n) + 1.0);
  for (std::int64_t j = 1; j < big_k; ++j)
    lp += std::log(theta + double(j) * alpha);
  lp -= log_rising(theta + 1.0, n - 1);
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t ki = counts.block_multiplicity[size_t(i - 1)];
    if (ki == 0) continue;
    lp += double(ki) * (log_rising(1.0 - alpha, i - 1) - std::lgamma(double(i) + 1.0));
    lp -= std::lgamma(double(ki) + 1.0);
  }
  return lp;
}

namespace {

void emit_partitions(std::int64_t remaining, std::int64_t max_part,
                     std::vector<std::int64_t>& multiplicity, std::int64_t n,
                     std::vector<PartitionCounts>& out) {
  if (remaining == 0) {
    out.emplace_back(n, multiplicity);
    return;
  }
  for (std::int64_t part = std::min(max_part, remaining); part >= 1; --part) {
    ++multiplicity[size_t(part - 1)];
    emit_partitions(remaining - part, part, multiplicity, n, out);
    --multiplicity[size_t(part - 1)];
  }
}

}  // namespace

std::vector<PartitionCounts> enumerate_partitions(std::int64_t n) {
  if (n < 1 || n > 25)
    throw std::domain_error("enumerate_partitions: n must lie in [1,25]");
  std::vector<PartitionCounts> out;
  std::vector<std::int64_t> multiplicity(size_t(n), 0);
  emit_partitions(n, n, multiplicity, n, out);
  return out;
}

KnDistribution kn_distribution(const ModelParams& params, std::int64_t n) {
  if (n < 1 || n > 100000)
    throw std::domain_error("kn_distribution: n must lie in [1,100000]");
  const double alpha = params.alpha();
  const double theta = params.theta();

  std::vector<double> p(size_t(n) + 1, 0.0);
  p[1] = 1.0;
  std::int64_t hi = 1;
  for (std::int64_t m = 1; m < n; ++m) {
    const double denom = theta + double(m);
    const std::int64_t new_hi = std::min<std::int64_t>(hi + 1, m + 1);
    for (std::int64_t k = new_hi; k >= 1; --k) {
      const double q_k = (theta + alpha * double(k)) / denom;
      double v = p[size_t(k)] * (1.0 - q_k);
      if (k >= 2) {
        const double q_km1 = (theta + alpha * double(k - 1)) / denom;
        v += p[size_t(k - 1)] * q_km1;
      }
      p[size_t(k)] = v;
    }
    hi = new_hi;
    // The upper tail underflows long before k reaches m; dropping exact
    // zeros keeps the sweep linear in the effective support.
    while (hi > 1 && p[size_t(hi)] < 1e-320) p[size_t(hi--)] = 0.0;
  }
  return KnDistribution{n, std::vector<double>(p.begin() + 1, p.end())};
}

double expected_blocks(const ModelParams& params, std::int64_t n) {
  if (n < 1) throw std::domain_error("expected_blocks: n must be >= 1");
  const double alpha = params.alpha();
  const double theta = params.theta();
  if (alpha == 0.0) {
    double s = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) s += theta / (theta + double(i - 1));
    return s;
  }
  if (theta == 0.0) {
    // Gamma(n+alpha)/(Gamma(alpha+1)Gamma(n))
    return std::exp(std::lgamma(double(n) + alpha) - std::lgamma(alpha + 1.0) -
                    std::lgamma(double(n)));
  }
  // (theta/alpha)((theta+alpha)^(n)/(theta)^(n) - 1), written with rising
  // factorials of positive base theta+alpha and log_rising for the ratio.
  const double log_ratio =
      log_rising(theta + alpha, n) -
      (std::log(std::abs(theta)) + log_rising(theta + 1.0, n - 1));
  // (theta)^(n) = theta (theta+1)^(n-1); theta may be negative here, in which
  // case the ratio and the theta/alpha prefactor are both negative and the
  // signs cancel.
  const double ratio = std::exp(log_ratio);
  if (theta > 0.0) return (theta / alpha) * (ratio - 1.0);
  return (theta / alpha) * (-ratio - 1.0);
}

SampleResult crp_sample(const ModelParams& params, std::int64_t n,
                        std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::domain_error("crp_sample: n must be >= 1");
  const double alpha = params.alpha();
  const double theta = params.theta();
  CounterRng rng(seed, stream);
  std::int64_t k = 1;
  for (std::int64_t m = 1; m < n; ++m) {
    const double q = (theta + alpha * double(k)) / (theta + double(m));
    if (rng.next_unit() < q) ++k;
  }
  return SampleResult{k, std::nullopt, seed};
}

SampleResult ewens_bernoulli_sample(double theta, std::int64_t n,
                                    std::uint64_t seed, std::uint64_t stream) {
  if (!(theta > 0.0))
    throw std::domain_error("ewens_bernoulli_sample: theta must be > 0");
  if (n < 1) throw std::domain_error("ewens_bernoulli_sample: n must be >= 1");
  CounterRng rng(seed, stream);
  std::int64_t k = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double p = theta / (theta + double(i - 1));
    if (rng.next_unit() < p) ++k;
  }
  return SampleResult{k, std::nullopt, seed};
}

double exact_log_mgf_enumeration(const ModelParams& params, std::int64_t n,
                                 double t) {
  if (n < 1 || n > 12)
    throw std::domain_error("exact_mgf_enumeration: n must lie in [1,12]");
  LogSumExp acc;
  for (const auto& counts : enumerate_partitions(n))
    acc.add(t * double(counts.block_count()) + eppf_log_prob(params, counts));
  return acc.log_value();
}

double exact_mgf_enumeration(const ModelParams& params, std::int64_t n,
                             double t) {
  return std::exp(exact_log_mgf_enumeration(params, n, t));
}

}  // namespace ewens
