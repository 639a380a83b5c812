#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ewens/params.hpp"

namespace ewens {

// A partition of n recorded by block-size multiplicities:
// block_multiplicity[i-1] = number of blocks of size i.
struct PartitionCounts {
  std::int64_t n;
  std::vector<std::int64_t> block_multiplicity;

  PartitionCounts(std::int64_t n_, std::vector<std::int64_t> multiplicity);

  // Total number of blocks, in [1, n].
  std::int64_t block_count() const;
};

// Exact probability vector of the block count: probs[k-1] = P(K_n = k).
struct KnDistribution {
  std::int64_t n;
  std::vector<double> probs;

  double prob(std::int64_t k) const { return probs.at(size_t(k - 1)); }
  double mean() const;
};

struct SampleResult {
  std::int64_t k_n;
  std::optional<PartitionCounts> counts;  // not populated by the K-chain samplers
  std::uint64_t seed;
};

// log probability that the partition has the given block-size multiplicities.
// Uses the cancelled form prod_{j=1}^{K-1}(theta + j alpha) / (theta+1)^(n-1),
// which is finite for every theta > -alpha including theta = 0, and covers
// the alpha = 0 limit (Ewens sampling formula) with the same expression.
double eppf_log_prob(const ModelParams& params, const PartitionCounts& counts);

// All integer partitions of n as multiplicity vectors, each exactly once,
// largest part first. Requires 1 <= n <= 25.
std::vector<PartitionCounts> enumerate_partitions(std::int64_t n);

// Exact law of K_n by forward recursion on the block-creation probability
// q_m(k) = (theta + alpha k)/(theta + m). Requires 1 <= n <= 100000.
KnDistribution kn_distribution(const ModelParams& params, std::int64_t n);

// Expected block count, closed form; agrees with kn_distribution's mean.
double expected_blocks(const ModelParams& params, std::int64_t n);

// Simulates the K_n chain: start at 1, increment at step m with probability
// q_m(K_m). O(n), deterministic given (seed, stream); distinct streams give
// independent replicates of the same seed.
SampleResult crp_sample(const ModelParams& params, std::int64_t n,
                        std::uint64_t seed, std::uint64_t stream = 0);

// alpha = 0 representation: sum of independent Bernoulli(theta/(theta+i-1)).
// Requires theta > 0.
SampleResult ewens_bernoulli_sample(double theta, std::int64_t n,
                                    std::uint64_t seed,
                                    std::uint64_t stream = 0);

// E[exp(t K_n)] by exhaustive summation over all partitions of n; the
// ground-truth oracle for the generating-function engines. Requires n <= 12.
double exact_mgf_enumeration(const ModelParams& params, std::int64_t n,
                             double t);
double exact_log_mgf_enumeration(const ModelParams& params, std::int64_t n,
                                 double t);

}  // namespace ewens
