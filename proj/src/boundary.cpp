#include "gsmt/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsmt/errors.hpp"
#include "gsmt/gauss.hpp"

namespace gsmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZBracketLo = -10.0;
constexpr double kZBracketHi = 10.0;
// Bracket width giving ~1e-8 probability-space resolution (density <= 0.4).
constexpr double kZBracketTol = 2.5e-8;

// Integration request inside root-finds, and the error bound beyond which
// a root is reported as unresolvable. Root accuracy is integration-limited:
// lattice rules deliver ~1e-5..1e-6 absolute at dimension 4-6 within an
// interactive budget, two orders below any reported quantity.
constexpr double kRootMvnTol = 3e-5;
constexpr double kRootMvnCeiling = 2e-4;

// P(all Z_d < b_d) with the integration error checked against the ceiling.
double lower_cdf(std::span<const double> bounds, const CorrelationMatrix& corr,
                 const MvnSettings& mvn) {
  const TailProbability u = union_crossing_probability(bounds, corr, mvn);
  if (u.error_bound > kRootMvnCeiling)
    throw numeric_error("mvn: integration error bound exceeds the root-finder tolerance");
  return 1.0 - u.value;
}

}  // namespace

const char* method_name(Method m) { return m == Method::bonferroni ? "bonferroni" : "wpgsd"; }

Method method_from_name(const std::string& name) {
  if (name == "bonferroni") return Method::bonferroni;
  if (name == "wpgsd") return Method::wpgsd;
  throw std::invalid_argument("method: must be 'bonferroni' or 'wpgsd'");
}

namespace detail {

Matrix within_hypothesis_corr(const DesignSchedule& schedule, int j) {
  const int kk = schedule.analyses();
  Matrix r(kk, kk, 0.0);
  for (int k1 = 0; k1 < kk; ++k1) {
    r(k1, k1) = 1.0;
    for (int k2 = k1 + 1; k2 < kk; ++k2) {
      const double v = std::sqrt(schedule.t(j, k1) / schedule.t(j, k2));
      r(k1, k2) = v;
      r(k2, k1) = v;
    }
  }
  return r;
}

}  // namespace detail

BoundarySet bonferroni_bounds(const SubsetIndex& J, double mu, std::span<const double> weights,
                              const DesignSchedule& schedule, const SpendingSpec& spending,
                              const MvnSettings& mvn) {
  if (!(mu > 0.0) || !(mu < 1.0))
    throw std::invalid_argument("bonferroni_bounds: mu must be in (0,1)");
  if (static_cast<int>(weights.size()) != J.size())
    throw std::invalid_argument("bonferroni_bounds: weight count must match subset size");

  const int kk = schedule.analyses();
  BoundarySet out;
  out.method = Method::bonferroni;
  out.subset = J;
  out.mu = mu;
  out.z_bounds = Matrix(J.size(), kk, kInf);

  MvnSettings root_mvn = mvn;
  root_mvn.tol = kRootMvnTol;

  for (int a = 0; a < J.size(); ++a) {
    const int j = J.members()[a];
    if (j >= schedule.hypotheses())
      throw std::invalid_argument("bonferroni_bounds: subset index out of range");
    const double w = weights[a];
    if (w <= 0.0) continue;  // zero allocation: bounds stay +inf

    std::vector<double> fractions(kk);
    for (int k = 0; k < kk; ++k) fractions[k] = schedule.t(j, k);
    const std::vector<double> inc = spend_increments(spending, fractions, w * mu);
    const CorrelationMatrix corr =
        CorrelationMatrix::validated(detail::within_hypothesis_corr(schedule, j));

    std::vector<double> b(kk, kInf);
    if (inc[0] > 0.0) b[0] = normal_quantile(1.0 - inc[0]);
    for (int k = 1; k < kk; ++k) {
      if (inc[k] <= detail::kRootProbTol) continue;  // numerically zero spend

      Matrix sub(k + 1, k + 1, 0.0);
      for (int i = 0; i <= k; ++i)
        for (int l = 0; l <= k; ++l) sub(i, l) = corr(i, l);
      const CorrelationMatrix head_corr = CorrelationMatrix::validated(std::move(sub));

      std::vector<double> stacked(b.begin(), b.begin() + k);
      stacked.push_back(kInf);
      double c_prev = 1.0;
      if (k >= 1) {
        Matrix prior(k, k, 0.0);
        for (int i = 0; i < k; ++i)
          for (int l = 0; l < k; ++l) prior(i, l) = corr(i, l);
        c_prev = lower_cdf(std::span<const double>(b.data(), k),
                           CorrelationMatrix::validated(std::move(prior)), root_mvn);
      }

      // P(no crossing before k, Z_k >= x) = c_prev - cdf(b_0..b_{k-1}, x),
      // decreasing in x; bisect for the spend increment.
      double lo = kZBracketLo, hi = kZBracketHi;
      int iter = 0;
      while (hi - lo > kZBracketTol) {
        if (++iter > detail::kMaxRootIter)
          throw numeric_error("bonferroni_bounds: bound root-finder did not converge");
        const double mid = 0.5 * (lo + hi);
        stacked[k] = mid;
        const double cross = c_prev - lower_cdf(stacked, head_corr, root_mvn);
        if (cross > inc[k]) {
          lo = mid;  // bound too low, spending too much
        } else {
          hi = mid;
        }
      }
      b[k] = 0.5 * (lo + hi);
    }
    for (int k = 0; k < kk; ++k) out.z_bounds(a, k) = b[k];
  }
  return out;
}

BoundarySet wpgsd_bounds(const SubsetIndex& J, double mu, std::span<const double> weights,
                         const DesignSchedule& schedule, const SpendingSpec& spending,
                         const CorrelationMatrix& ccs, const MvnSettings& mvn) {
  if (!(mu > 0.0) || !(mu < 1.0)) throw std::invalid_argument("wpgsd_bounds: mu must be in (0,1)");
  if (static_cast<int>(weights.size()) != J.size())
    throw std::invalid_argument("wpgsd_bounds: weight count must match subset size");
  const int m = schedule.hypotheses();
  const int kk = schedule.analyses();
  if (ccs.dim() != m * kk)
    throw std::invalid_argument("wpgsd_bounds: correlation dimension mismatch");
  for (int j : J.members())
    if (j >= m) throw std::invalid_argument("wpgsd_bounds: subset index out of range");

  BoundarySet out;
  out.method = Method::wpgsd;
  out.subset = J;
  out.mu = mu;
  out.z_bounds = Matrix(J.size(), kk, kInf);
  out.inflation.assign(kk, 0.0);

  const int js = J.size();
  double wmax = 0.0;
  for (double w : weights) wmax = std::max(wmax, w);

  // Spending targets at the minimum information fraction across the subset.
  std::vector<double> targets(kk);
  for (int k = 0; k < kk; ++k) {
    double tmin = 1.0;
    for (int j : J.members()) tmin = std::min(tmin, schedule.t(j, k));
    targets[k] = cumulative_spend(spending, tmin, mu);
  }

  MvnSettings root_mvn = mvn;
  root_mvn.tol = kRootMvnTol;

  std::vector<double> stacked;  // analysis-major bounds over members, grows with k
  for (int k = 0; k < kk; ++k) {
    const double t_prev = k == 0 ? 0.0 : targets[k - 1];
    stacked.resize(static_cast<std::size_t>(js) * (k + 1), kInf);
    if (targets[k] - t_prev <= detail::kRootProbTol) continue;  // no resolvable spend

    if (wmax <= 0.0)
      throw numeric_error("wpgsd_bounds: spend target unreachable (all weights zero)");

    const CorrelationMatrix sub = subset_ccs(ccs, m, J, k + 1);
    const auto set_bounds = [&](double xi) {
      for (int a = 0; a < js; ++a) {
        const double x = xi * weights[a];
        double bnd;
        if (x <= 0.0) {
          bnd = kInf;
        } else if (x >= 1.0) {
          bnd = -kInf;
        } else {
          bnd = normal_quantile(1.0 - x);
        }
        stacked[static_cast<std::size_t>(k) * js + a] = bnd;
      }
    };
    const auto union_at = [&](double xi) {
      set_bounds(xi);
      return union_crossing_probability(stacked, sub, root_mvn);
    };

    double lo = 0.0, hi = 1.0 / wmax;
    const TailProbability top = union_at(hi);
    if (top.error_bound > kRootMvnCeiling)
      throw numeric_error("mvn: integration error bound exceeds the requested tolerance");
    if (top.value < targets[k])
      throw numeric_error("wpgsd_bounds: spend target unreachable with nominal levels <= 1");
    const double xtol = detail::kRootProbTol;  // d(union)/d(xi) <= sum of weights <= 1
    int iter = 0;
    while (hi - lo > xtol) {
      if (++iter > detail::kMaxRootIter)
        throw numeric_error("wpgsd_bounds: inflation root-finder did not converge");
      const double mid = 0.5 * (lo + hi);
      const TailProbability u = union_at(mid);
      if (u.error_bound > kRootMvnCeiling)
        throw numeric_error("mvn: integration error bound exceeds the requested tolerance");
      if (u.value < targets[k]) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double xi = 0.5 * (lo + hi);
    set_bounds(xi);
    // Reported relative to the analysis increment, so 1 marks the
    // Bonferroni-equivalent allocation and values above 1 quantify the
    // correlation credit.
    out.inflation[k] = xi / (targets[k] - t_prev);
    for (int a = 0; a < js; ++a)
      out.z_bounds(a, k) = stacked[static_cast<std::size_t>(k) * js + a];
  }
  return out;
}

}  // namespace gsmt
