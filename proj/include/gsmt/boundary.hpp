#pragma once

#include <span>
#include <vector>

#include "gsmt/correlation.hpp"
#include "gsmt/graph.hpp"
#include "gsmt/matrix.hpp"
#include "gsmt/mvn.hpp"
#include "gsmt/spending.hpp"

namespace gsmt {

enum class Method { bonferroni, wpgsd };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

/// Group-sequential Z efficacy bounds for the members of one intersection
/// hypothesis at probe level mu. +infinity marks analyses a hypothesis
/// cannot reject at (zero weight or un-resolvable spend increment).
struct BoundarySet {
  Method method = Method::bonferroni;
  SubsetIndex subset{std::vector<int>{0}};
  double mu = 0.0;
  Matrix z_bounds;                // |J| x K, rows follow subset member order
  std::vector<double> inflation;  // xi_k, wpgsd only

  double bound(int member_pos, int k) const { return z_bounds(member_pos, k); }
};

/// Each member hypothesis gets its own univariate spending recursion at
/// total level w_j(J) * mu; no cross-hypothesis correlation enters.
BoundarySet bonferroni_bounds(const SubsetIndex& J, double mu, std::span<const double> weights,
                              const DesignSchedule& schedule, const SpendingSpec& spending,
                              const MvnSettings& mvn);

/// Weighted parametric bounds: at each analysis k the nominal levels are
/// xi_k(J) * w_j(J), with the scalar xi_k chosen so the joint crossing
/// probability through k (under the subset CCS) equals the cumulative spend
/// at the minimum information fraction, cumulative_spend(t_min_k(J), mu).
BoundarySet wpgsd_bounds(const SubsetIndex& J, double mu, std::span<const double> weights,
                         const DesignSchedule& schedule, const SpendingSpec& spending,
                         const CorrelationMatrix& ccs, const MvnSettings& mvn);

namespace detail {
/// Root-finding tolerance in probability space for xi and Z-bound roots.
inline constexpr double kRootProbTol = 1e-8;
inline constexpr int kMaxRootIter = 200;

/// Within-hypothesis correlation sqrt(t_k1 / t_k2) over analyses 0..K-1.
Matrix within_hypothesis_corr(const DesignSchedule& schedule, int j);
}  // namespace detail

}  // namespace gsmt
