#include "gsmt/mvn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "gsmt/errors.hpp"
#include "gsmt/gauss.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsmt {

namespace detail {

std::vector<double> jacobi_eigen(const Matrix& a, Matrix* vectors) {
  const int n = a.rows();
  Matrix m = a;
  Matrix v(n, n, 0.0);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-28 * n * n) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double mip = m(i, p), miq = m(i, q);
          m(i, p) = c * mip - s * miq;
          m(i, q) = s * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const double mpi = m(p, i), mqi = m(q, i);
          m(p, i) = c * mpi - s * mqi;
          m(q, i) = s * mpi + c * mqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m(i, i);
  if (vectors) {
    // sort eigenpairs ascending
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return eig[x] < eig[y]; });
    Matrix vs(n, n, 0.0);
    std::vector<double> es(n);
    for (int k = 0; k < n; ++k) {
      es[k] = eig[order[k]];
      for (int i = 0; i < n; ++i) vs(i, k) = v(i, order[k]);
    }
    *vectors = std::move(vs);
    return es;
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

Matrix cholesky_psd(const Matrix& a) {
  const int n = a.rows();
  Matrix l(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    double d = a(i, i);
    for (int k = 0; k < i; ++k) d -= l(i, k) * l(i, k);
    if (d < -1e-8) throw numeric_error("cholesky: matrix is not positive semidefinite");
    if (d <= 1e-12) {
      l(i, i) = 0.0;  // singular direction; residual column is ~0 for PSD input
      continue;
    }
    l(i, i) = std::sqrt(d);
    for (int j = i + 1; j < n; ++j) {
      double s = a(j, i);
      for (int k = 0; k < i; ++k) s -= l(j, k) * l(i, k);
      l(j, i) = s / l(i, i);
    }
  }
  return l;
}

namespace {

constexpr double kPsdRejectTol = -1e-9;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

constexpr int kShifts = 8;
constexpr long kFirstStagePoints = 1024;
constexpr long kMaxPointsPerShift = 1 << 17;

// Rank-1 Korobov lattices z = (1, a, a^2, ...) mod n, with the generator a
// chosen by a deterministic search minimizing the order-2 worst-case error
// criterion. Vectors are cached per (n, dim); the search is the standard
//   P_2(a) = -1 + (1/n) sum_k prod_j (1 + 2 pi^2 B_2(frac(k z_j / n)))
// with B_2 the second Bernoulli polynomial.
double korobov_p2(long a, long n, int dim) {
  std::vector<long> z(dim);
  z[0] = 1;
  for (int j = 1; j < dim; ++j) z[j] = (z[j - 1] * a) % n;
  const double c = 19.739208802178716;  // 2 pi^2
  double total = 0.0;
  for (long k = 0; k < n; ++k) {
    double prod = 1.0;
    for (int j = 0; j < dim; ++j) {
      const double x = static_cast<double>((k * z[j]) % n) / static_cast<double>(n);
      prod *= 1.0 + c * (x * x - x + 1.0 / 6.0);
    }
    total += prod;
  }
  return total / static_cast<double>(n) - 1.0;
}

const std::vector<long>& korobov_vector(long n, int dim) {
  static std::map<std::pair<long, int>, std::vector<long>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, dim});
  if (it != cache.end()) return it->second;

  std::uint64_t state = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(n) ^
                        (static_cast<std::uint64_t>(dim) << 40);
  long best = 1;
  double best_v = std::numeric_limits<double>::infinity();
  const int candidates = n <= (1 << 14) ? 96 : 48;
  for (int i = 0; i < candidates; ++i) {
    long a = static_cast<long>(splitmix64(state) % static_cast<std::uint64_t>(n)) | 1;
    if (a <= 1) a = 3;
    const double v = korobov_p2(a, n, dim);
    if (v < best_v) {
      best_v = v;
      best = a;
    }
  }
  std::vector<long> z(dim);
  z[0] = 1;
  for (int j = 1; j < dim; ++j) z[j] = (z[j - 1] * best) % n;
  return cache.emplace(std::make_pair(n, dim), std::move(z)).first->second;
}

// Integrand of the Genz transform: sequential conditional probabilities
// along the Cholesky factor, sampling each variable inside its box.
double transformed_integrand(std::span<const double> u, std::span<const double> bounds,
                             const Matrix& l, std::vector<double>& y) {
  const int d = static_cast<int>(bounds.size());
  double p = 1.0;
  for (int i = 0; i < d; ++i) {
    double num = bounds[i];
    for (int k = 0; k < i; ++k) num -= l(i, k) * y[k];
    double e;
    if (l(i, i) > 0.0) {
      e = normal_cdf(num / l(i, i));
    } else {
      e = num >= 0.0 ? 1.0 : 0.0;
    }
    p *= e;
    if (p <= 0.0) return 0.0;
    if (i + 1 < d) {
      double t = u[i] * e;
      t = std::min(std::max(t, 1e-300), 0.99999999999999989);
      y[i] = normal_quantile(t);
    }
  }
  return p;
}

struct ShiftState {
  std::vector<double> delta;  // random shift per coordinate
  double mean = 0.0;
};

// One full lattice pass for one shift; serial by construction so the
// result is independent of how shifts are scheduled across threads. The
// tent map periodizes the integrand, which is where lattice rules earn
// their convergence rate.
void run_shift(ShiftState& st, long n, std::span<const long> z, std::span<const double> bounds,
               const Matrix& l) {
  const int d = static_cast<int>(bounds.size());
  const int lat_dim = d - 1;
  std::vector<double> u(lat_dim), y(d);
  std::vector<long> acc(lat_dim, 0);
  double sum = 0.0;
  for (long k = 0; k < n; ++k) {
    for (int j = 0; j < lat_dim; ++j) {
      double x = static_cast<double>(acc[j]) / static_cast<double>(n) + st.delta[j];
      if (x >= 1.0) x -= 1.0;
      u[j] = std::fabs(2.0 * x - 1.0);
      acc[j] += z[j];
      if (acc[j] >= n) acc[j] -= n;
    }
    sum += transformed_integrand(u, bounds, l, y);
  }
  st.mean = sum / static_cast<double>(n);
}

}  // namespace

namespace {

// Cholesky with Gibson-Glasbey-Elston variable reordering: at each step,
// pivot in the variable with the smallest conditional probability (its
// truncated expectation stands in for the integration variable). Cuts the
// variance of the transformed integrand sharply when correlations are high.
void reorder_cholesky(std::vector<double>& b, Matrix& r, Matrix& l) {
  const int d = static_cast<int>(b.size());
  std::vector<double> y(d, 0.0);
  for (int i = 0; i < d; ++i) {
    int best = -1;
    double best_s = 0.0, best_p = 2.0;
    for (int j = i; j < d; ++j) {
      double num = b[j], den = r(j, j);
      for (int k = 0; k < i; ++k) {
        num -= l(j, k) * y[k];
        den -= l(j, k) * l(j, k);
      }
      const double s = den > 1e-14 ? num / std::sqrt(den) : (num >= 0.0 ? 38.0 : -38.0);
      const double p = normal_cdf(s);
      if (p < best_p) {
        best_p = p;
        best_s = s;
        best = j;
      }
    }
    if (best != i) {
      std::swap(b[i], b[best]);
      for (int k = 0; k < d; ++k) {
        const double tmp = r(i, k);
        r(i, k) = r(best, k);
        r(best, k) = tmp;
      }
      for (int k = 0; k < d; ++k) {
        const double tmp = r(k, i);
        r(k, i) = r(k, best);
        r(k, best) = tmp;
      }
      for (int k = 0; k < i; ++k) {
        const double tmp = l(i, k);
        l(i, k) = l(best, k);
        l(best, k) = tmp;
      }
    }

    double dpiv = r(i, i);
    for (int k = 0; k < i; ++k) dpiv -= l(i, k) * l(i, k);
    if (dpiv < -1e-8) throw numeric_error("cholesky: matrix is not positive semidefinite");
    if (dpiv <= 1e-12) {
      l(i, i) = 0.0;
      y[i] = best_s >= 0.0 ? 0.0 : best_s;  // degenerate direction
      continue;
    }
    l(i, i) = std::sqrt(dpiv);
    for (int j = i + 1; j < d; ++j) {
      double s = r(j, i);
      for (int k = 0; k < i; ++k) s -= l(j, k) * l(i, k);
      l(j, i) = s / l(i, i);
    }
    // expected value of a standard normal truncated to (-inf, best_s)
    const double den = normal_cdf(best_s);
    const double phi = std::exp(-0.5 * best_s * best_s) * 0.39894228040143268;
    y[i] = den > 1e-300 ? -phi / den : best_s;
  }
}

}  // namespace

double mvn_cdf_qmc(std::span<const double> bounds, const Matrix& corr, const MvnSettings& settings,
                   double* error_bound) {
  const int d = static_cast<int>(bounds.size());
  std::vector<double> b(bounds.begin(), bounds.end());
  Matrix r = corr;
  Matrix l(d, d, 0.0);
  reorder_cholesky(b, r, l);

  if (d == 1) {
    if (error_bound) *error_bound = 4e-16;
    return normal_cdf(b[0]);
  }

  std::uint64_t rng = settings.seed;
  std::vector<ShiftState> shifts(kShifts);
  for (auto& st : shifts) {
    st.delta.resize(d - 1);
    for (auto& x : st.delta) x = uniform01(rng);
  }

  double est = 0.0, err = std::numeric_limits<double>::infinity();
  long n = kFirstStagePoints;
  while (true) {
    const std::vector<long>& z = korobov_vector(n, d - 1);
#ifdef _OPENMP
    if (settings.parallel) {
#pragma omp parallel for schedule(static)
      for (int s = 0; s < kShifts; ++s) run_shift(shifts[s], n, z, b, l);
    } else {
      for (int s = 0; s < kShifts; ++s) run_shift(shifts[s], n, z, b, l);
    }
#else
    for (int s = 0; s < kShifts; ++s) run_shift(shifts[s], n, z, b, l);
#endif

    double mean = 0.0;
    for (const auto& st : shifts) mean += st.mean;
    mean /= kShifts;
    double var = 0.0;
    for (const auto& st : shifts) var += (st.mean - mean) * (st.mean - mean);
    var /= (kShifts - 1);
    est = mean;
    err = 3.0 * std::sqrt(var / kShifts);
    if (err <= settings.tol || n >= kMaxPointsPerShift) break;
    n = std::min(n * 4, static_cast<long>(kMaxPointsPerShift));
  }

  if (error_bound) *error_bound = err;
  return std::min(1.0, std::max(0.0, est));
}

}  // namespace detail

CorrelationMatrix CorrelationMatrix::validated(Matrix m) {
  const int n = m.rows();
  if (n < 1 || m.cols() != n)
    throw std::invalid_argument("correlation: matrix must be square and non-empty");
  for (int i = 0; i < n; ++i) {
    if (std::fabs(m(i, i) - 1.0) > 1e-12)
      throw std::invalid_argument("correlation: diagonal must be 1");
    for (int j = i + 1; j < n; ++j) {
      if (std::fabs(m(i, j) - m(j, i)) > 1e-12)
        throw std::invalid_argument("correlation: matrix must be symmetric");
      const double avg = 0.5 * (m(i, j) + m(j, i));
      if (!(avg >= -1.0 - 1e-12) || !(avg <= 1.0 + 1e-12))
        throw std::invalid_argument("correlation: entries must be in [-1,1]");
      const double clipped = std::min(1.0, std::max(-1.0, avg));
      m(i, j) = clipped;
      m(j, i) = clipped;
    }
    m(i, i) = 1.0;
  }

  Matrix vecs;
  std::vector<double> eig = detail::jacobi_eigen(m, &vecs);
  if (eig.front() < detail::kPsdRejectTol)
    throw std::invalid_argument("correlation: matrix is not positive semidefinite");
  if (eig.front() < 0.0) {
    // Rounding-noise repair: clip eigenvalues at zero, renormalize diagonal.
    Matrix repaired(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
          const double lk = std::max(0.0, eig[k]);
          s += vecs(i, k) * lk * vecs(j, k);
        }
        repaired(i, j) = s;
        repaired(j, i) = s;
      }
    }
    for (int i = 0; i < n; ++i) {
      const double di = std::sqrt(repaired(i, i));
      for (int j = 0; j < n; ++j) repaired(i, j) /= di;
      for (int j = 0; j < n; ++j) repaired(j, i) /= di;
      repaired(i, i) = 1.0;
    }
    m = std::move(repaired);
  }
  return CorrelationMatrix(std::move(m));
}

TailProbability union_crossing_probability(std::span<const double> bounds,
                                           const CorrelationMatrix& corr,
                                           const MvnSettings& settings) {
  if (static_cast<int>(bounds.size()) != corr.dim())
    throw std::invalid_argument("union_crossing_probability: bounds length must equal dimension");
  if (!(settings.tol > 0.0))
    throw std::invalid_argument("union_crossing_probability: tol must be positive");

  std::vector<int> keep;
  for (int i = 0; i < corr.dim(); ++i) {
    const double b = bounds[i];
    if (std::isnan(b)) throw std::invalid_argument("union_crossing_probability: NaN bound");
    if (b == -std::numeric_limits<double>::infinity()) return {1.0, 0.0};
    if (b != std::numeric_limits<double>::infinity()) keep.push_back(i);
  }
  const int d = static_cast<int>(keep.size());
  if (d == 0) return {0.0, 0.0};
  if (d > settings.max_dim)
    throw std::invalid_argument("union_crossing_probability: dimension exceeds mvn.max_dim");

  std::vector<double> b(d);
  double tail_sum = 0.0, tail_max = 0.0;
  for (int i = 0; i < d; ++i) {
    b[i] = bounds[keep[i]];
    const double t = normal_tail(b[i]);
    tail_sum += t;
    tail_max = std::max(tail_max, t);
  }

  TailProbability out;
  if (d == 1) {
    out.value = normal_tail(b[0]);
    out.error_bound = 4e-16;
  } else if (d == 2) {
    const double rho = corr(keep[0], keep[1]);
    out.value = 1.0 - bivariate_normal_cdf(b[0], b[1], rho);
    out.error_bound = 5e-15;
  } else {
    Matrix sub(d, d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sub(i, j) = corr(keep[i], keep[j]);
    double err = 0.0;
    const double cdf = detail::mvn_cdf_qmc(b, sub, settings, &err);
    out.value = 1.0 - cdf;
    out.error_bound = err;
  }

  // Bonferroni envelope holds for the exact value; clamping the estimate
  // into it can only reduce error.
  out.value = std::max(out.value, tail_max);
  out.value = std::min({out.value, tail_sum, 1.0});
  return out;
}

}  // namespace gsmt
