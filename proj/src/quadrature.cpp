#include "ewens/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ewens {

namespace {

// Implicit-shift QL eigensolver for a symmetric tridiagonal matrix,
// accumulating only the first row of the eigenvector matrix (tql2 variant).
// d: diagonal (in/out, eigenvalues on exit); e: subdiagonal, e[0..n-2];
// z: first components of the eigenvectors on exit.
void tridiag_eigen_first_row(std::vector<double>& d, std::vector<double>& e,
                             std::vector<double>& z) {
  const int n = int(d.size());
  z.assign(size_t(n), 0.0);
  if (n == 0) return;
  z[0] = 1.0;
  if (n == 1) return;
  e.resize(size_t(n), 0.0);  // e[n-1] used as scratch

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[size_t(m)]) + std::abs(d[size_t(m + 1)]);
        if (std::abs(e[size_t(m)]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 60)
          throw numeric_error("laguerre_rule: eigenvalue iteration failed");
        double g = (d[size_t(l + 1)] - d[size_t(l)]) / (2.0 * e[size_t(l)]);
        double r = std::hypot(g, 1.0);
        g = d[size_t(m)] - d[size_t(l)] +
            e[size_t(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[size_t(i)];
          const double b = c * e[size_t(i)];
          r = std::hypot(f, g);
          e[size_t(i + 1)] = r;
          if (r == 0.0) {
            d[size_t(i + 1)] -= p;
            e[size_t(m)] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[size_t(i + 1)] - p;
          r = (d[size_t(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[size_t(i + 1)] = g + p;
          g = c * r - b;
          f = z[size_t(i + 1)];
          z[size_t(i + 1)] = s * z[size_t(i)] + c * f;
          z[size_t(i)] = c * z[size_t(i)] - s * f;
        }
        if (underflow) continue;
        d[size_t(l)] -= p;
        e[size_t(l)] = g;
        e[size_t(m)] = 0.0;
      }
    } while (m != l);
  }
}

LaguerreRule build_laguerre_rule(int n, double exponent) {
  // Jacobi matrix of the generalized Laguerre polynomials: diagonal
  // 2i+s+1, subdiagonal sqrt(i(i+s)).
  const size_t nn = size_t(n);
  std::vector<double> d(nn), e(nn, 0.0), z;
  for (int i = 0; i < n; ++i) d[size_t(i)] = 2.0 * i + exponent + 1.0;
  for (int i = 1; i < n; ++i)
    e[size_t(i - 1)] = std::sqrt(double(i) * (double(i) + exponent));
  tridiag_eigen_first_row(d, e, z);

  std::vector<size_t> order(nn);
  std::iota(order.begin(), order.end(), size_t(0));
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return d[a] < d[b]; });

  LaguerreRule rule;
  rule.exponent = exponent;
  rule.nodes.resize(size_t(n));
  rule.log_weights.resize(size_t(n));
  const double log_mu0 = std::lgamma(exponent + 1.0);
  for (int j = 0; j < n; ++j) {
    rule.nodes[size_t(j)] = d[order[size_t(j)]];
    const double zj = z[order[size_t(j)]];
    rule.log_weights[size_t(j)] =
        log_mu0 + 2.0 * std::log(std::max(std::abs(zj), 1e-320));
  }
  return rule;
}

}  // namespace

const LaguerreRule& laguerre_rule(int n, double exponent) {
  if (n < 1 || n > 1000)
    throw std::domain_error("laguerre_rule: node count must lie in [1,1000]");
  if (!(exponent > -1.0))
    throw std::domain_error("laguerre_rule: exponent must exceed -1");
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::unique_ptr<LaguerreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, exponent}];
  if (!slot) slot = std::make_unique<LaguerreRule>(build_laguerre_rule(n, exponent));
  return *slot;
}

}  // namespace ewens
