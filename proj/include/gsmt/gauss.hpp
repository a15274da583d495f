#pragma once

namespace gsmt {

/// Standard normal CDF, Phi(x). Accurate to ~1e-16 relative via erfc.
double normal_cdf(double x);

/// Upper tail, P(Z >= x) = Phi(-x). Avoids cancellation for large x.
double normal_tail(double x);

/// Standard normal quantile, Phi^{-1}(p) for p in (0, 1).
/// Throws std::invalid_argument at p <= 0 or p >= 1.
double normal_quantile(double p);

/// Bivariate standard normal CDF, P(X <= h, Y <= k) with correlation rho.
/// Absolute error below 5e-15 over rho in [-1, 1].
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace gsmt
