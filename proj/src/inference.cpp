#include "gsmt/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gsmt/errors.hpp"
#include "gsmt/gauss.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMuLo = 1e-10;
constexpr double kMuHi = 1.0 - 1e-10;
constexpr double kMuTol = 1e-6;
// Integration request on the indicator path, and the error bound beyond
// which the indicator is unreliable. Threshold comparisons shift the found
// level by roughly the integration error, well inside the 1e-6 resolution
// of the mu bisection times the reporting granularity.
constexpr double kIndicatorMvnTol = 3e-5;
constexpr double kIndicatorMvnCeiling = 2e-4;

double lower_cdf(std::span<const double> bounds, const CorrelationMatrix& corr,
                 const MvnSettings& mvn) {
  const TailProbability u = union_crossing_probability(bounds, corr, mvn);
  if (u.error_bound > kIndicatorMvnCeiling)
    throw numeric_error("mvn: integration error bound exceeds the requested tolerance");
  return 1.0 - u.value;
}

void require_statistics(const ObservedStatistics& obs, const std::vector<int>& members, int k) {
  for (int j : members)
    for (int a = 0; a < k; ++a)
      if (!obs.has(j, a))
        throw std::invalid_argument("observed: statistic missing for hypothesis " +
                                    std::to_string(j + 1) + " at analysis " + std::to_string(a + 1));
}

// Per-member state for the weighted Bonferroni indicator: the hypothesis'
// own spending recursion at level w*mu, evaluated through monotone
// threshold comparisons instead of re-rooting every bound.
struct BonferroniMember {
  int j = 0;
  double w = 0.0;
  std::vector<double> fractions;
  std::vector<CorrelationMatrix> corr_through;  // depth 2..k blocks, index depth-2
};

struct EvalContext {
  const Design& design;
  Method method;
  SubsetIndex J;
  int k;  // number of analyses in scope (1-based count)
  const ObservedStatistics& obs;
  std::vector<double> weights;

  std::vector<BonferroniMember> members;  // positive-weight members only

  // wpgsd caches
  double wmax = 0.0;
  std::vector<double> tmin;     // per analysis
  std::vector<double> xi_star;  // per analysis
  std::vector<CorrelationMatrix> ccs_through;  // subset ccs through a+1 analyses
  std::vector<std::pair<double, double>> xi0_cache;  // (xi, union), union increasing
  double union_at_star0 = -1.0;

  MvnSettings ind_mvn;

  EvalContext(const Design& d, Method meth, SubsetIndex subset, int analyses,
              const ObservedStatistics& o, std::vector<double> w)
      : design(d), method(meth), J(std::move(subset)), k(analyses), obs(o), weights(std::move(w)) {
    if (k < 1 || k > d.schedule.analyses())
      throw std::invalid_argument("analysis index out of range");
    require_statistics(obs, J.members(), k);
    ind_mvn = d.mvn;
    ind_mvn.tol = kIndicatorMvnTol;

    if (method == Method::bonferroni) {
      for (int a = 0; a < J.size(); ++a) {
        if (weights[a] <= 0.0) continue;
        BonferroniMember mref;
        mref.j = J.members()[a];
        mref.w = weights[a];
        mref.fractions.resize(d.schedule.analyses());
        for (int i = 0; i < d.schedule.analyses(); ++i)
          mref.fractions[i] = d.schedule.t(mref.j, i);
        const Matrix full = detail::within_hypothesis_corr(d.schedule, mref.j);
        for (int depth = 2; depth <= k; ++depth) {
          Matrix sub(depth, depth, 0.0);
          for (int x = 0; x < depth; ++x)
            for (int y = 0; y < depth; ++y) sub(x, y) = full(x, y);
          mref.corr_through.push_back(CorrelationMatrix::validated(std::move(sub)));
        }
        members.push_back(std::move(mref));
      }
    } else {
      const int m = d.schedule.hypotheses();
      for (double x : weights) wmax = std::max(wmax, x);
      tmin.resize(k);
      xi_star.resize(k);
      for (int a = 0; a < k; ++a) {
        double t = 1.0;
        for (int j : J.members()) t = std::min(t, d.schedule.t(j, a));
        tmin[a] = t;
        double star = kInf;
        for (int p = 0; p < J.size(); ++p) {
          if (weights[p] <= 0.0) continue;
          star = std::min(star, obs.nominal_p(J.members()[p], a) / weights[p]);
        }
        xi_star[a] = star;
      }
      if (wmax > 0.0) {
        for (int a = 0; a < k; ++a) ccs_through.push_back(subset_ccs(d.ccs, m, J, a + 1));
      }
    }
  }

  // Bounds Q(1 - xi*w) per member at one analysis slot, written into
  // `stacked` (zero weights give +inf, x >= 1 gives -inf).
  void fill_wpgsd_slot(std::vector<double>& stacked, int a, double xi) const {
    for (int p = 0; p < J.size(); ++p) {
      const double x = xi * weights[p];
      double bnd;
      if (x <= 0.0) {
        bnd = kInf;
      } else if (x >= 1.0) {
        bnd = -kInf;
      } else {
        bnd = normal_quantile(1.0 - x);
      }
      stacked[static_cast<std::size_t>(a) * J.size() + p] = bnd;
    }
  }

  double union_analysis1(double xi) {
    std::vector<double> b(J.size());
    // analysis-0 slot only
    for (int p = 0; p < J.size(); ++p) {
      const double x = xi * weights[p];
      b[p] = x <= 0.0 ? kInf : (x >= 1.0 ? -kInf : normal_quantile(1.0 - x));
    }
    return union_crossing_probability(b, ccs_through[0], ind_mvn).value;
  }

  // xi_0(mu) solves union(analysis-0 bounds at xi) = target. The function is
  // mu-free, so evaluations are cached and shared across the bisection.
  double invert_xi0(double target) {
    if (target <= detail::kRootProbTol) return 0.0;
    int positive = 0;
    double wpos = 0.0;
    for (double x : weights)
      if (x > 0.0) {
        ++positive;
        wpos = x;
      }
    if (positive == 1) return std::min(target / wpos, 1.0 / wmax);

    double lo = 0.0, hi = 1.0 / wmax;
    for (const auto& [x, u] : xi0_cache) {
      if (u <= target) {
        lo = std::max(lo, x);
      } else {
        hi = std::min(hi, x);
      }
    }
    int iter = 0;
    while (hi - lo > detail::kRootProbTol) {
      if (++iter > detail::kMaxRootIter)
        throw numeric_error("sequential_p: inflation root-finder did not converge");
      const double mid = 0.5 * (lo + hi);
      const double u = union_analysis1(mid);
      auto it = std::lower_bound(xi0_cache.begin(), xi0_cache.end(), std::make_pair(mid, 0.0));
      xi0_cache.insert(it, {mid, u});
      if (u < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  // xi_a(mu) for a >= 1, given earlier analyses' bounds already in
  // `stacked`; plain bisection (the function depends on mu through them).
  double solve_xi(std::vector<double>& stacked, int a, double target, double prev_target) {
    if (target - prev_target <= detail::kRootProbTol) {
      fill_wpgsd_slot(stacked, a, 0.0);
      return 0.0;
    }
    double lo = 0.0, hi = 1.0 / wmax;
    int iter = 0;
    while (hi - lo > detail::kRootProbTol) {
      if (++iter > detail::kMaxRootIter)
        throw numeric_error("sequential_p: inflation root-finder did not converge");
      const double mid = 0.5 * (lo + hi);
      fill_wpgsd_slot(stacked, a, mid);
      const double u = union_crossing_probability(stacked, ccs_through[a], ind_mvn).value;
      if (u < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double xi = 0.5 * (lo + hi);
    fill_wpgsd_slot(stacked, a, xi);
    return xi;
  }

  bool indicator_bonferroni(double mu) const {
    for (const auto& mref : members) {
      const std::vector<double> inc =
          spend_increments(design.spending, mref.fractions, mref.w * mu);
      if (inc[0] > 0.0 && obs.nominal_p(mref.j, 0) <= inc[0]) return true;
      if (k == 1) continue;

      std::vector<double> bounds;
      bounds.push_back(inc[0] > 0.0 ? normal_quantile(1.0 - inc[0]) : kInf);
      double spent = inc[0];
      for (int a = 1; a < k; ++a) {
        if (inc[a] > detail::kRootProbTol) {
          // Z_{j,a} >= root of the increment equation  <=>
          // P(no earlier crossing, Z_a >= z_obs) <= increment.
          std::vector<double> stacked(bounds);
          stacked.push_back(obs.z(mref.j, a));
          const double c_at_obs = lower_cdf(stacked, mref.corr_through[a - 1], ind_mvn);
          const double c_prev = 1.0 - spent;
          if (c_prev - c_at_obs <= inc[a]) return true;
        }
        if (a + 1 < k) {
          bounds.push_back(solve_member_bound(mref, bounds, a, inc[a], 1.0 - spent));
          if (std::isfinite(bounds.back())) spent += inc[a];
        }
      }
    }
    return false;
  }

  double solve_member_bound(const BonferroniMember& mref, const std::vector<double>& prior, int a,
                            double inc_a, double c_prev) const {
    if (inc_a <= detail::kRootProbTol) return kInf;
    std::vector<double> stacked(prior);
    stacked.push_back(0.0);
    double lo = -10.0, hi = 10.0;
    int iter = 0;
    while (hi - lo > 2.5e-8) {
      if (++iter > detail::kMaxRootIter)
        throw numeric_error("sequential_p: bound root-finder did not converge");
      const double mid = 0.5 * (lo + hi);
      stacked.back() = mid;
      const double cross = c_prev - lower_cdf(stacked, mref.corr_through[a - 1], ind_mvn);
      if (cross > inc_a) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  bool indicator_wpgsd(double mu) {
    if (wmax <= 0.0) return false;  // nothing can be allocated
    std::vector<double> targets(k);
    for (int a = 0; a < k; ++a) targets[a] = cumulative_spend(design.spending, tmin[a], mu);

    // analysis 1: the union at the data's own inflation level is mu-free
    if (targets[0] > detail::kRootProbTol && xi_star[0] <= 1.0 / wmax) {
      if (union_at_star0 < 0.0) union_at_star0 = union_analysis1(xi_star[0]);
      if (union_at_star0 <= targets[0]) return true;
    }
    if (k == 1) return false;

    std::vector<double> stacked(static_cast<std::size_t>(J.size()) * k, kInf);
    for (int a = 1; a < k; ++a) {
      // earlier analyses' bounds at their mu-roots
      if (a == 1) {
        fill_wpgsd_slot(stacked, 0, invert_xi0(targets[0]));
      } else {
        solve_xi_upto(stacked, a - 1, targets);
      }
      if (targets[a] - targets[a - 1] <= detail::kRootProbTol) continue;
      if (!(xi_star[a] <= 1.0 / wmax)) continue;  // observed levels out of reach
      std::vector<double> test(stacked.begin(),
                               stacked.begin() + static_cast<std::size_t>(J.size()) * (a + 1));
      for (int p = 0; p < J.size(); ++p) {
        const double x = xi_star[a] * weights[p];
        test[static_cast<std::size_t>(a) * J.size() + p] =
            x <= 0.0 ? kInf : (x >= 1.0 ? -kInf : normal_quantile(1.0 - x));
      }
      const double u = union_crossing_probability(test, ccs_through[a], ind_mvn).value;
      // xi_a(mu) >= xi_star[a]  <=>  union at xi_star meets the target
      if (u <= targets[a]) return true;
    }
    return false;
  }

  // Fill stacked bounds for analysis index `upto` (0-based), assuming
  // analyses < upto are already at their roots.
  void solve_xi_upto(std::vector<double>& stacked, int upto, const std::vector<double>& targets) {
    std::vector<double> head(stacked.begin(),
                             stacked.begin() + static_cast<std::size_t>(J.size()) * (upto + 1));
    solve_xi(head, upto, targets[upto], upto == 0 ? 0.0 : targets[upto - 1]);
    std::copy(head.begin(), head.end(), stacked.begin());
  }

  bool indicator(double mu) {
    return method == Method::bonferroni ? indicator_bonferroni(mu) : indicator_wpgsd(mu);
  }
};

double bisect_mu(EvalContext& ctx, InferenceDiagnostics* diag) {
  long iters = 0;
  double p;
  if (!ctx.indicator(kMuHi)) {
    p = 1.0;
  } else if (ctx.indicator(kMuLo)) {
    p = kMuLo;
  } else {
    double lo = kMuLo, hi = kMuHi;
    while (hi - lo > kMuTol) {
      ++iters;
      const double mid = 0.5 * (lo + hi);
      if (ctx.indicator(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    p = hi;  // smallest level known to reject
  }
  if (diag) {
    diag->bisection_iterations += iters + 2;
    diag->mvn_error_ceiling = std::max(diag->mvn_error_ceiling, kIndicatorMvnTol);
  }
  return p;
}

}  // namespace

Design make_design(HypothesisSet hypotheses, WeightingStrategy weighting, DesignSchedule schedule,
                   SpendingSpec spending, CorrelationMatrix ccs, MvnSettings mvn) {
  const int m = hypotheses.size();
  if (!weighting.validated) weighting = validate_strategy(weighting, hypotheses);
  if (schedule.hypotheses() != m)
    throw std::invalid_argument("schedule: fraction rows must match hypothesis count");
  const int kk = schedule.analyses();
  if (kk < 1) throw std::invalid_argument("schedule: at least one analysis required");
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < kk; ++k) {
      const double t = schedule.t(j, k);
      if (!(t > 0.0) || t > 1.0)
        throw std::invalid_argument("schedule: fractions must be in (0,1]");
      if (k > 0 && t <= schedule.t(j, k - 1))
        throw std::invalid_argument("schedule: fractions must be strictly increasing");
    }
    if (schedule.t(j, kk - 1) != 1.0)
      throw std::invalid_argument("schedule: final fraction must be 1");
  }
  validate_spending(spending);
  if (ccs.dim() != m * kk)
    throw std::invalid_argument("correlation: dimension must equal hypotheses x analyses");
  if (!(mvn.tol > 0.0)) throw std::invalid_argument("mvn.tol: must be positive");
  if (mvn.max_dim < 1) throw std::invalid_argument("mvn.max_dim: must be positive");
  return Design{std::move(hypotheses), std::move(weighting), std::move(schedule),
                std::move(spending),   std::move(ccs),       mvn};
}

ObservedStatistics ObservedStatistics::from_z(Matrix z, std::vector<std::vector<char>> available) {
  const int m = z.rows(), kk = z.cols();
  if (m < 1 || kk < 1) throw std::invalid_argument("observed: empty statistics matrix");
  ObservedStatistics out;
  if (available.empty()) available.assign(m, std::vector<char>(kk, 1));
  if (static_cast<int>(available.size()) != m)
    throw std::invalid_argument("observed: availability mask shape mismatch");
  for (int j = 0; j < m; ++j) {
    if (static_cast<int>(available[j].size()) != kk)
      throw std::invalid_argument("observed: availability mask shape mismatch");
    for (int k = 0; k < kk; ++k)
      if (available[j][k] && !std::isfinite(z(j, k)))
        throw std::invalid_argument("observed.z[" + std::to_string(j) + "][" + std::to_string(k) +
                                    "]: must be finite");
  }
  out.z_ = std::move(z);
  out.available_ = std::move(available);
  return out;
}

ObservedStatistics ObservedStatistics::from_p(const Matrix& p,
                                              std::vector<std::vector<char>> available) {
  const int m = p.rows(), kk = p.cols();
  if (m < 1 || kk < 1) throw std::invalid_argument("observed: empty statistics matrix");
  if (available.empty()) available.assign(m, std::vector<char>(kk, 1));
  Matrix z(m, kk, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < kk; ++k) {
      if (static_cast<int>(available.size()) == m &&
          static_cast<int>(available[j].size()) == kk && !available[j][k])
        continue;
      const double pv = p(j, k);
      if (!(pv > 0.0) || !(pv < 1.0))
        throw std::invalid_argument("observed.p[" + std::to_string(j) + "][" + std::to_string(k) +
                                    "]: must be in (0,1)");
      z(j, k) = -normal_quantile(pv);
    }
  }
  return from_z(std::move(z), std::move(available));
}

double ObservedStatistics::z(int j, int k) const {
  if (j < 0 || j >= hypotheses() || k < 0 || k >= analyses() || !available_[j][k])
    throw std::invalid_argument("observed: statistic not available");
  return z_(j, k);
}

double ObservedStatistics::nominal_p(int j, int k) const { return normal_tail(z(j, k)); }

double sequential_p_intersection(const Design& design, Method method, const SubsetIndex& J, int k,
                                 const ObservedStatistics& obs, InferenceDiagnostics* diag) {
  for (int j : J.members())
    if (j >= design.hypotheses.size())
      throw std::invalid_argument("sequential_p: subset index out of range");
  EvalContext ctx(design, method, J, k, obs, subset_weights(design.weighting, J));
  return bisect_mu(ctx, diag);
}

double sequential_p_elementary(const Design& design, Method method, int j, int k,
                               const ObservedStatistics& obs, InferenceDiagnostics* diag) {
  if (j < 0 || j >= design.hypotheses.size())
    throw std::invalid_argument("sequential_p: hypothesis index out of range");
  EvalContext ctx(design, method, SubsetIndex::singleton(j), k, obs, {1.0});
  return bisect_mu(ctx, diag);
}

AdjustedP adjusted_sequential_p(const Design& design, Method method, int j, int k,
                                const ObservedStatistics& obs, InferenceDiagnostics* diag) {
  if (j < 0 || j >= design.hypotheses.size())
    throw std::invalid_argument("adjusted_sequential_p: hypothesis index out of range");
  AdjustedP best;
  best.p = -1.0;
  for (const auto& J : enumerate_closure(design.hypotheses)) {
    if (!J.contains(j)) continue;
    const double p = sequential_p_intersection(design, method, J, k, obs, diag);
    if (p > best.p) {  // canonical order: first max has the largest cardinality
      best.p = p;
      best.argmax = J;
    }
  }
  return best;
}

InferenceReport closed_test_report(const Design& design, Method method, int k, double alpha,
                                   const ObservedStatistics& obs,
                                   const std::vector<int>* prior_rejected) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha: must be in (0,1)");
  const int m = design.hypotheses.size();
  const auto closure = enumerate_closure(design.hypotheses);
  const int n_subsets = static_cast<int>(closure.size());

  InferenceReport report;
  report.analysis = k;
  report.method = method;
  report.alpha = alpha;
  report.intersections.resize(n_subsets);

  std::vector<InferenceDiagnostics> diags(n_subsets);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < n_subsets; ++i) {
    report.intersections[i].subset = closure[i];
    report.intersections[i].p =
        sequential_p_intersection(design, method, closure[i], k, obs, &diags[i]);
  }
  for (const auto& d : diags) {
    report.diagnostics.bisection_iterations += d.bisection_iterations;
    report.diagnostics.mvn_error_ceiling =
        std::max(report.diagnostics.mvn_error_ceiling, d.mvn_error_ceiling);
  }

  report.elementary.resize(m);
  for (int j = 0; j < m; ++j) {
    ElementaryResult& e = report.elementary[j];
    e.hypothesis = j;
    e.sequential_p = sequential_p_elementary(design, method, j, k, obs, &report.diagnostics);
    e.repeated_p = repeated_p_value(design, j, k, obs, &report.diagnostics);
    e.adjusted_p = -1.0;
    for (int i = 0; i < n_subsets; ++i) {
      if (!closure[i].contains(j)) continue;
      if (report.intersections[i].p > e.adjusted_p) {
        e.adjusted_p = report.intersections[i].p;
        e.argmax = closure[i];
      }
    }
    e.rejected = e.adjusted_p <= alpha;
    if (prior_rejected &&
        std::find(prior_rejected->begin(), prior_rejected->end(), j) != prior_rejected->end()) {
      e.rejected = true;
      e.carried_forward = true;
    }
    if (e.rejected) report.rejected.push_back(j);
  }
  return report;
}

std::vector<int> bonferroni_shortcut(const Design& design, int k, double alpha,
                                     const ObservedStatistics& obs) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha: must be in (0,1)");
  const int m = design.hypotheses.size();

  // Elementary sequential p-values are weight-free; scale comparisons do
  // the per-iteration "recompute at the current allocation".
  std::vector<double> p_elem(m);
  for (int j = 0; j < m; ++j)
    p_elem[j] = sequential_p_elementary(design, Method::bonferroni, j, k, obs);

  WeightingStrategy current = design.weighting;
  std::vector<int> index_map(m);
  for (int j = 0; j < m; ++j) index_map[j] = j;
  std::vector<int> rejected;

  while (!index_map.empty()) {
    int hit = -1;
    for (std::size_t a = 0; a < index_map.size(); ++a) {
      const double w = current.initial_weights[a];
      if (w > 0.0 && p_elem[index_map[a]] <= w * alpha) {
        hit = static_cast<int>(a);
        break;
      }
    }
    if (hit < 0) break;
    rejected.push_back(index_map[hit]);
    if (index_map.size() == 1) break;
    std::vector<int> keep;
    current = update_after_rejection(current, hit, &keep);
    std::vector<int> next;
    next.reserve(keep.size());
    for (int pos : keep) next.push_back(index_map[pos]);
    index_map = std::move(next);
  }
  std::sort(rejected.begin(), rejected.end());
  return rejected;
}

double repeated_p_value(const Design& design, int j, int k, const ObservedStatistics& obs,
                        InferenceDiagnostics* diag) {
  if (j < 0 || j >= design.hypotheses.size())
    throw std::invalid_argument("repeated_p_value: hypothesis index out of range");
  if (k < 1 || k > design.schedule.analyses())
    throw std::invalid_argument("repeated_p_value: analysis index out of range");
  if (!obs.has(j, k - 1))
    throw std::invalid_argument("repeated_p_value: statistic not available at this analysis");

  EvalContext ctx(design, Method::bonferroni, SubsetIndex::singleton(j), k, obs, {1.0});
  const BonferroniMember& mref = ctx.members.front();

  const auto indicator = [&](double mu) {
    const std::vector<double> inc = spend_increments(design.spending, mref.fractions, mu);
    if (k == 1) return inc[0] > 0.0 && obs.nominal_p(j, 0) <= inc[0];
    if (inc[k - 1] <= detail::kRootProbTol) return false;

    std::vector<double> bounds;
    bounds.push_back(inc[0] > 0.0 ? normal_quantile(1.0 - inc[0]) : kInf);
    double spent = inc[0];
    for (int a = 1; a + 1 < k; ++a) {
      bounds.push_back(ctx.solve_member_bound(mref, bounds, a, inc[a], 1.0 - spent));
      if (std::isfinite(bounds.back())) spent += inc[a];
    }
    std::vector<double> stacked(bounds);
    stacked.push_back(obs.z(j, k - 1));
    const double c_at_obs = lower_cdf(stacked, mref.corr_through[k - 2], ctx.ind_mvn);
    return (1.0 - spent) - c_at_obs <= inc[k - 1];
  };

  long iters = 0;
  double p;
  if (!indicator(kMuHi)) {
    p = 1.0;
  } else if (indicator(kMuLo)) {
    p = kMuLo;
  } else {
    double lo = kMuLo, hi = kMuHi;
    while (hi - lo > kMuTol) {
      ++iters;
      const double mid = 0.5 * (lo + hi);
      if (indicator(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    p = hi;
  }
  if (diag) {
    diag->bisection_iterations += iters + 2;
    diag->mvn_error_ceiling = std::max(diag->mvn_error_ceiling, kIndicatorMvnTol);
  }
  return p;
}

namespace detail {

bool rejects_at_level(const Design& design, Method method, const SubsetIndex& J,
                      std::span<const double> weights, int k, const ObservedStatistics& obs,
                      double mu) {
  EvalContext ctx(design, method, J, k, obs,
                  std::vector<double>(weights.begin(), weights.end()));
  return ctx.indicator(mu);
}

}  // namespace detail

}  // namespace gsmt
