#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: plain Monte Carlo with its own Cholesky and Box-Muller normals.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gsmt/matrix.hpp"
#include "generators.hpp"

namespace oracle {

/// Unpivoted Cholesky written independently of the library's version.
inline gsmt::Matrix cholesky(const gsmt::Matrix& a) {
  const int n = a.rows();
  gsmt::Matrix l(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        l(i, i) = s > 0.0 ? std::sqrt(s) : 0.0;
      } else {
        l(i, j) = l(j, j) > 0.0 ? s / l(j, j) : 0.0;
      }
    }
  }
  return l;
}

struct McEstimate {
  double value = 0.0;
  double se = 0.0;
};

namespace detail {
inline bool union_crossed(std::span<const double> bounds, const gsmt::Matrix& l,
                          std::uint64_t seed, long rep, std::vector<double>& g) {
  const int d = static_cast<int>(bounds.size());
  gen::Rng r(seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(rep + 1)));
  for (int i = 0; i < d; i += 2) {
    // Box-Muller keeps the oracle independent of the quantile code
    const double u1 = std::max(r.uniform(), 1e-300);
    const double u2 = r.uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    g[i] = mag * std::cos(6.283185307179586 * u2);
    if (i + 1 < d) g[i + 1] = mag * std::sin(6.283185307179586 * u2);
  }
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += l(i, j) * g[j];
    if (acc >= bounds[i]) return true;
  }
  return false;
}
}  // namespace detail

/// P(union of {Z_d >= b_d}) by plain Monte Carlo; per-draw counter seeding
/// so the result does not depend on the thread count.
inline McEstimate mc_union_probability(std::span<const double> bounds, const gsmt::Matrix& corr,
                                       long n_draws, std::uint64_t seed) {
  const gsmt::Matrix l = cholesky(corr);
  long count = 0;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<double> g(bounds.size());
    long local = 0;
#pragma omp for schedule(static)
    for (long rep = 0; rep < n_draws; ++rep)
      if (detail::union_crossed(bounds, l, seed, rep, g)) ++local;
#pragma omp critical
    count += local;
  }
#else
  std::vector<double> g(bounds.size());
  for (long rep = 0; rep < n_draws; ++rep)
    if (detail::union_crossed(bounds, l, seed, rep, g)) ++count;
#endif
  McEstimate est;
  est.value = static_cast<double>(count) / static_cast<double>(n_draws);
  est.se = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n_draws));
  return est;
}

}  // namespace oracle
