#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "ewens/partition.hpp"

using namespace ewens;

namespace {

// Reference partition counter p(n) by recursion, independent of the
// enumeration code path.
std::int64_t partition_count(std::int64_t n, std::int64_t max_part) {
  if (n == 0) return 1;
  if (max_part == 0) return 0;
  std::int64_t total = 0;
  for (std::int64_t part = std::min(n, max_part); part >= 1; --part)
    total += partition_count(n - part, part);
  return total;
}

}  // namespace

TEST_CASE("PartitionCounts validates its invariants") {
  CHECK_NOTHROW(PartitionCounts(3, {3, 0, 0}));
  CHECK_NOTHROW(PartitionCounts(3, {1, 1, 0}));
  CHECK_THROWS_AS(PartitionCounts(3, {2, 1, 0}), std::domain_error);
  CHECK_THROWS_AS(PartitionCounts(3, {1, 1}), std::domain_error);
  CHECK_THROWS_AS(PartitionCounts(3, {4, -1, 1}), std::domain_error);
  CHECK(PartitionCounts(4, {0, 2, 0, 0}).block_count() == 2);
}

TEST_CASE("enumerate_partitions sizes and uniqueness") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(3).size() == 3);
  CHECK(enumerate_partitions(5).size() == 7);
  CHECK(enumerate_partitions(25).size() == 1958);
  for (std::int64_t n : {2, 4, 6, 9, 12})
    CHECK(std::int64_t(enumerate_partitions(n).size()) ==
          partition_count(n, n));
  // no duplicates
  const auto parts = enumerate_partitions(9);
  std::map<std::vector<std::int64_t>, int> seen;
  for (const auto& p : parts) ++seen[p.block_multiplicity];
  for (const auto& [key, count] : seen) CHECK(count == 1);
  CHECK_THROWS_AS(enumerate_partitions(0), std::domain_error);
  CHECK_THROWS_AS(enumerate_partitions(26), std::domain_error);
}

TEST_CASE("eppf reference values") {
  // single point mass at n = 1
  for (double alpha : {0.0, 0.3, 0.8}) {
    for (double theta : {0.5, 2.0}) {
      CHECK(eppf_log_prob(ModelParams(alpha, theta), PartitionCounts(1, {1})) ==
            doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  // second customer joins the first table with probability (1-a)/(1+theta)
  for (double alpha : {0.2, 0.5}) {
    for (double theta : {-0.1, 0.0, 1.5}) {
      if (!(theta > -alpha)) continue;
      const double lp = eppf_log_prob(ModelParams(alpha, theta),
                                      PartitionCounts(2, {0, 1}));
      CHECK(lp == doctest::Approx(std::log((1.0 - alpha) / (1.0 + theta)))
                      .epsilon(1e-13));
    }
  }
  // three singletons at alpha = 1/2, theta = 0
  CHECK(eppf_log_prob(ModelParams(0.5, 0.0), PartitionCounts(3, {3, 0, 0})) ==
        doctest::Approx(std::log(0.25)).epsilon(1e-13));
}

TEST_CASE("eppf normalizes over all partitions") {
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    for (double theta : {-0.1, 0.0, 0.5, 1.0}) {
      if (!(theta > -alpha)) continue;
      if (alpha == 0.0 && theta <= 0.0) continue;
      const ModelParams p(alpha, theta);
      for (std::int64_t n = 1; n <= 10; ++n) {
        double total = 0.0;
        for (const auto& pc : enumerate_partitions(n))
          total += std::exp(eppf_log_prob(p, pc));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("kn_distribution reference values") {
  const ModelParams p(0.5, 0.0);
  const auto d2 = kn_distribution(p, 2);
  CHECK(d2.prob(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d2.prob(2) == doctest::Approx(0.5).epsilon(1e-15));
  const auto d3 = kn_distribution(p, 3);
  CHECK(d3.prob(1) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(d3.prob(2) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(d3.prob(3) == doctest::Approx(0.25).epsilon(1e-15));
  const auto d1 = kn_distribution(ModelParams(0.3, 2.0), 1);
  CHECK(d1.prob(1) == 1.0);
}

TEST_CASE("kn_distribution matches the enumeration marginal") {
  for (double alpha : {0.0, 0.3, 0.6}) {
    for (double theta : {-0.2, 0.0, 0.8}) {
      if (!(theta > -alpha)) continue;
      if (alpha == 0.0 && theta <= 0.0) continue;
      const ModelParams p(alpha, theta);
      for (std::int64_t n : {4, 7, 10}) {
        std::vector<double> marginal(size_t(n), 0.0);
        for (const auto& pc : enumerate_partitions(n))
          marginal[size_t(pc.block_count() - 1)] +=
              std::exp(eppf_log_prob(p, pc));
        const auto dist = kn_distribution(p, n);
        for (std::int64_t k = 1; k <= n; ++k)
          CHECK(dist.prob(k) ==
                doctest::Approx(marginal[size_t(k - 1)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("kn_distribution sums to one and matches the closed-form mean") {
  for (double alpha : {0.0, 0.35, 0.5, 0.8}) {
    for (double theta : {-0.3, 0.0, 1.2}) {
      if (!(theta > -alpha)) continue;
      if (alpha == 0.0 && theta <= 0.0) continue;
      const ModelParams p(alpha, theta);
      for (std::int64_t n : {1, 17, 200, 1500}) {
        const auto dist = kn_distribution(p, n);
        double total = 0.0;
        for (double v : dist.probs) {
          CHECK(v >= 0.0);
          total += v;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dist.mean() ==
              doctest::Approx(expected_blocks(p, n)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("alpha = 0 law equals the independent-Bernoulli sum") {
  for (double theta : {0.4, 1.0, 3.0}) {
    const std::int64_t n = 40;
    // Poisson-binomial DP over success probabilities theta/(theta+i-1),
    // written independently of the kn recursion.
    std::vector<double> dp(size_t(n) + 1, 0.0);
    dp[0] = 1.0;
    for (std::int64_t i = 1; i <= n; ++i) {
      const double pi = theta / (theta + double(i - 1));
      for (std::int64_t k = i; k >= 1; --k)
        dp[size_t(k)] = dp[size_t(k)] * (1.0 - pi) + dp[size_t(k - 1)] * pi;
      dp[0] *= (1.0 - pi);
    }
    const auto dist = kn_distribution(ModelParams(0.0, theta), n);
    CHECK(dp[0] == 0.0);  // first draw always succeeds
    for (std::int64_t k = 1; k <= n; ++k)
      CHECK(dist.prob(k) == doctest::Approx(dp[size_t(k)]).epsilon(1e-12));
  }
}

TEST_CASE("mean growth at theta = 0 approaches n^alpha / (alpha Gamma(alpha))") {
  for (double alpha : {0.3, 0.5, 0.7}) {
    const auto dist = kn_distribution(ModelParams(alpha, 0.0), 10000);
    const double scaled = dist.mean() / std::pow(10000.0, alpha);
    const double limit = 1.0 / (alpha * std::tgamma(alpha));
    CHECK(std::abs(scaled - limit) <= 0.05);
  }
}

TEST_CASE("crp_sample determinism and range") {
  const ModelParams p(0.5, 0.0);
  CHECK(crp_sample(p, 1, 123).k_n == 1);
  const auto a = crp_sample(p, 500, 42);
  const auto b = crp_sample(p, 500, 42);
  CHECK(a.k_n == b.k_n);
  CHECK(a.k_n >= 1);
  CHECK(a.k_n <= 500);
  // distinct streams decorrelate
  CHECK(crp_sample(p, 500, 42, 1).k_n >= 1);
}

TEST_CASE("crp_sample empirical pmf matches the exact law at n = 4") {
  const ModelParams p(0.5, 0.0);
  const std::int64_t reps = 200000;
  std::vector<std::int64_t> hist(5, 0);
  for (std::int64_t i = 0; i < reps; ++i)
    ++hist[size_t(crp_sample(p, 4, 2024, std::uint64_t(i)).k_n)];
  const auto dist = kn_distribution(p, 4);
  for (std::int64_t k = 1; k <= 4; ++k) {
    const double expect = dist.prob(k);
    const double sigma = std::sqrt(expect * (1.0 - expect) / double(reps));
    CHECK(std::abs(double(hist[size_t(k)]) / double(reps) - expect) <=
          4.0 * sigma);
  }
}

TEST_CASE("ewens_bernoulli_sample agrees with theory") {
  CHECK(ewens_bernoulli_sample(1.0, 1, 9).k_n == 1);
  CHECK_THROWS_AS(ewens_bernoulli_sample(0.0, 5, 1), std::domain_error);
  // P(K_2 = 2) = 1/2 at theta = 1
  std::int64_t twos = 0;
  const std::int64_t reps = 100000;
  for (std::int64_t i = 0; i < reps; ++i) {
    const auto s = ewens_bernoulli_sample(1.0, 2, 77, std::uint64_t(i));
    CHECK(s.k_n >= 1);
    CHECK(s.k_n <= 2);
    if (s.k_n == 2) ++twos;
  }
  CHECK(std::abs(double(twos) / double(reps) - 0.5) <=
        4.0 * std::sqrt(0.25 / double(reps)));
  // mean of K_4 at theta = 1 is 1 + 1/2 + 1/3 + 1/4
  double total = 0.0;
  for (std::int64_t i = 0; i < reps; ++i)
    total += double(ewens_bernoulli_sample(1.0, 4, 5, std::uint64_t(i)).k_n);
  const double mean = total / double(reps);
  const double expect = 25.0 / 12.0;
  // variance of the Bernoulli sum: sum p_i (1 - p_i)
  double var = 0.0;
  for (std::int64_t i = 1; i <= 4; ++i) {
    const double pi = 1.0 / double(i);
    var += pi * (1.0 - pi);
  }
  CHECK(std::abs(mean - expect) <= 4.0 * std::sqrt(var / double(reps)));
}

TEST_CASE("exact_mgf_enumeration oracle values") {
  const ModelParams p(0.5, 0.0);
  CHECK(exact_mgf_enumeration(p, 5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact_mgf_enumeration(p, 1, 1.3) ==
        doctest::Approx(std::exp(1.3)).epsilon(1e-13));
  CHECK(exact_mgf_enumeration(p, 2, 1.0) ==
        doctest::Approx(0.5 * std::exp(2.0) + 0.5 * std::exp(1.0)).epsilon(1e-13));
  CHECK_THROWS_AS(exact_mgf_enumeration(p, 13, 1.0), std::domain_error);
}
