#include "gsmt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gsmt/errors.hpp"
#include "gsmt/gauss.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsmt {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based per-replication stream: reproducible and independent of
// how replications are scheduled across threads.
inline std::uint64_t rep_stream(std::uint64_t seed, long rep) {
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(rep + 1));
  return splitmix64(s);
}

inline double uniform01(std::uint64_t& state) {
  const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;
}

struct SubsetBounds {
  std::uint32_t mask = 0;
  std::vector<std::pair<int, double>> finite;  // (statistic index k*m+j, bound)
};

struct SimSetup {
  int m = 0;
  int kk = 0;
  Matrix chol;                       // of the full CCS
  std::vector<double> means;         // flattened k*m+j
  std::vector<SubsetBounds> bounds;  // one per closure subset
};

SimSetup prepare(const Design& design, const SimulationPlan& plan) {
  if (plan.n_reps < 1) throw std::invalid_argument("simulate: n_reps must be at least 1");
  if (!(plan.alpha > 0.0) || !(plan.alpha < 1.0))
    throw std::invalid_argument("simulate: alpha must be in (0,1)");
  const int m = design.hypotheses.size();
  const int kk = design.schedule.analyses();

  SimSetup s;
  s.m = m;
  s.kk = kk;
  s.chol = detail::cholesky_psd(design.ccs.entries());
  s.means.assign(static_cast<std::size_t>(m) * kk, 0.0);
  if (!plan.means.empty()) {
    if (plan.means.rows() != m || plan.means.cols() != kk)
      throw std::invalid_argument("simulate: means must be hypotheses x analyses");
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < kk; ++k) {
        if (!std::isfinite(plan.means(j, k)))
          throw std::invalid_argument("simulate: means must be finite");
        s.means[ccs_index(m, j, k)] = plan.means(j, k);
      }
  }

  for (const auto& J : enumerate_closure(design.hypotheses)) {
    const std::vector<double> w = subset_weights(design.weighting, J);
    const BoundarySet bs =
        plan.method == Method::bonferroni
            ? bonferroni_bounds(J, plan.alpha, w, design.schedule, design.spending, design.mvn)
            : wpgsd_bounds(J, plan.alpha, w, design.schedule, design.spending, design.ccs,
                           design.mvn);
    SubsetBounds sb;
    sb.mask = J.mask();
    for (int a = 0; a < J.size(); ++a)
      for (int k = 0; k < kk; ++k)
        if (std::isfinite(bs.bound(a, k)))
          sb.finite.push_back({ccs_index(m, J.members()[a], k), bs.bound(a, k)});
    s.bounds.push_back(std::move(sb));
  }
  return s;
}

// One replication: draw the statistic vector, mark crossed intersections,
// apply the closed-test rule. Returns the per-hypothesis rejection mask.
std::uint32_t run_rep(const SimSetup& s, std::uint64_t seed, long rep) {
  const int dim = s.m * s.kk;
  std::uint64_t state = rep_stream(seed, rep);
  std::vector<double> g(dim), z(dim);
  for (int i = 0; i < dim; ++i) g[i] = normal_quantile(uniform01(state));
  for (int i = 0; i < dim; ++i) {
    double acc = s.means[i];
    for (int j = 0; j <= i; ++j) acc += s.chol(i, j) * g[j];
    z[i] = acc;
  }

  std::uint32_t reject_all = (1u << s.m) - 1u;
  std::uint32_t rejected = reject_all;
  for (const auto& sb : s.bounds) {
    bool crossed = false;
    for (const auto& [idx, b] : sb.finite) {
      if (z[idx] >= b) {
        crossed = true;
        break;
      }
    }
    if (!crossed) rejected &= ~sb.mask;  // members of J cannot all be rejected
    if (rejected == 0) break;
  }
  return rejected;
}

SimulationResult finalize(const Design& design, const SimulationPlan& plan, long any_count,
                          const std::vector<long>& per_hyp) {
  const int m = design.hypotheses.size();
  const double n = static_cast<double>(plan.n_reps);
  SimulationResult r;
  r.n_reps = plan.n_reps;
  r.seed = plan.seed;
  r.method = plan.method;
  r.alpha = plan.alpha;
  r.any_rejection_rate = static_cast<double>(any_count) / n;
  r.any_rejection_se =
      std::sqrt(r.any_rejection_rate * (1.0 - r.any_rejection_rate) / n);
  r.rejection_rate.resize(m);
  r.rejection_se.resize(m);
  for (int j = 0; j < m; ++j) {
    r.rejection_rate[j] = static_cast<double>(per_hyp[j]) / n;
    r.rejection_se[j] = std::sqrt(r.rejection_rate[j] * (1.0 - r.rejection_rate[j]) / n);
  }
  return r;
}

}  // namespace

SimulationResult simulate(const Design& design, const SimulationPlan& plan) {
  const SimSetup s = prepare(design, plan);
  const int m = s.m;
  long any_count = 0;
  std::vector<long> per_hyp(m, 0);

#ifdef _OPENMP
#pragma omp parallel
  {
    long local_any = 0;
    std::vector<long> local_hyp(m, 0);
#pragma omp for schedule(static)
    for (long rep = 0; rep < plan.n_reps; ++rep) {
      const std::uint32_t rej = run_rep(s, plan.seed, rep);
      if (rej) ++local_any;
      for (int j = 0; j < m; ++j)
        if ((rej >> j) & 1u) ++local_hyp[j];
    }
#pragma omp critical
    {
      any_count += local_any;
      for (int j = 0; j < m; ++j) per_hyp[j] += local_hyp[j];
    }
  }
#else
  for (long rep = 0; rep < plan.n_reps; ++rep) {
    const std::uint32_t rej = run_rep(s, plan.seed, rep);
    if (rej) ++any_count;
    for (int j = 0; j < m; ++j)
      if ((rej >> j) & 1u) ++per_hyp[j];
  }
#endif
  return finalize(design, plan, any_count, per_hyp);
}

SimulationResult simulate_serial(const Design& design, const SimulationPlan& plan) {
  const SimSetup s = prepare(design, plan);
  const int m = s.m;
  long any_count = 0;
  std::vector<long> per_hyp(m, 0);
  for (long rep = 0; rep < plan.n_reps; ++rep) {
    const std::uint32_t rej = run_rep(s, plan.seed, rep);
    if (rej) ++any_count;
    for (int j = 0; j < m; ++j)
      if ((rej >> j) & 1u) ++per_hyp[j];
  }
  return finalize(design, plan, any_count, per_hyp);
}

}  // namespace gsmt
