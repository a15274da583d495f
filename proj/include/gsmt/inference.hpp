#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsmt/boundary.hpp"
#include "gsmt/correlation.hpp"
#include "gsmt/graph.hpp"
#include "gsmt/matrix.hpp"
#include "gsmt/mvn.hpp"
#include "gsmt/spending.hpp"

namespace gsmt {

/// Everything the inference engine needs about the trial design. Built via
/// make_design, which cross-validates the pieces; immutable afterwards.
struct Design {
  HypothesisSet hypotheses;
  WeightingStrategy weighting;
  DesignSchedule schedule;
  SpendingSpec spending;
  CorrelationMatrix ccs;
  MvnSettings mvn;
};

Design make_design(HypothesisSet hypotheses, WeightingStrategy weighting, DesignSchedule schedule,
                   SpendingSpec spending, CorrelationMatrix ccs, MvnSettings mvn);

/// Observed Z statistics per hypothesis per analysis, with an availability
/// mask. Nominal p-values convert through Z = Phi^{-1}(1 - p).
class ObservedStatistics {
 public:
  static ObservedStatistics from_z(Matrix z, std::vector<std::vector<char>> available = {});
  static ObservedStatistics from_p(const Matrix& p, std::vector<std::vector<char>> available = {});

  int hypotheses() const { return z_.rows(); }
  int analyses() const { return z_.cols(); }
  bool has(int j, int k) const { return available_[j][k] != 0; }
  double z(int j, int k) const;
  double nominal_p(int j, int k) const;  // 1 - Phi(z)

 private:
  ObservedStatistics() = default;
  Matrix z_;
  std::vector<std::vector<char>> available_;
};

struct InferenceDiagnostics {
  long bisection_iterations = 0;
  double mvn_error_ceiling = 0.0;  // largest integration tolerance enforced
};

struct IntersectionPValue {
  SubsetIndex subset{std::vector<int>{0}};
  double p = 1.0;
};

struct ElementaryResult {
  int hypothesis = 0;
  double sequential_p = 1.0;           // own-design (weight 1) sequential p
  double adjusted_p = 1.0;             // max over intersections containing it
  SubsetIndex argmax{std::vector<int>{0}};
  double repeated_p = 1.0;
  bool rejected = false;
  bool carried_forward = false;        // rejected at an earlier analysis
};

struct InferenceReport {
  int analysis = 1;  // 1-based in reports
  Method method = Method::bonferroni;
  double alpha = 0.025;
  std::vector<IntersectionPValue> intersections;  // canonical order
  std::vector<ElementaryResult> elementary;       // by hypothesis index
  std::vector<int> rejected;                      // sorted hypothesis indices
  InferenceDiagnostics diagnostics;
};

/// Sequential p-value of the intersection hypothesis H_J through analysis k
/// (1-based): the smallest family-wise level at which some member statistic
/// at some analysis <= k meets its boundary. Bisection on the level, 1e-6.
double sequential_p_intersection(const Design& design, Method method, const SubsetIndex& J, int k,
                                 const ObservedStatistics& obs,
                                 InferenceDiagnostics* diag = nullptr);

/// Eq.-(2)-style elementary sequential p-value: the hypothesis tested by its
/// own full-level (weight 1) spending design.
double sequential_p_elementary(const Design& design, Method method, int j, int k,
                               const ObservedStatistics& obs,
                               InferenceDiagnostics* diag = nullptr);

struct AdjustedP {
  double p = 1.0;
  SubsetIndex argmax{std::vector<int>{0}};
};

/// Maximum sequential p over all intersections containing j; ties keep the
/// largest-cardinality subset.
AdjustedP adjusted_sequential_p(const Design& design, Method method, int j, int k,
                                const ObservedStatistics& obs,
                                InferenceDiagnostics* diag = nullptr);

/// Full closed test at analysis k: every intersection's sequential p-value
/// (computed once and shared), adjusted values, and the rejection set
/// {j : p_aseq <= alpha} plus any carried-forward prior rejections.
InferenceReport closed_test_report(const Design& design, Method method, int k, double alpha,
                                   const ObservedStatistics& obs,
                                   const std::vector<int>* prior_rejected = nullptr);

/// Consonance shortcut for the weighted Bonferroni method: iterative
/// reject/reallocate/reduce on the graph using elementary sequential
/// p-values. Equals the closed-test rejection set.
std::vector<int> bonferroni_shortcut(const Design& design, int k, double alpha,
                                     const ObservedStatistics& obs);

/// Repeated p-value at (j, k): smallest level whose weight-1 design bound at
/// analysis k alone is met by Z_{j,k}.
double repeated_p_value(const Design& design, int j, int k, const ObservedStatistics& obs,
                        InferenceDiagnostics* diag = nullptr);

namespace detail {
/// Rejection indicator for H_J through analysis k at family-wise level mu
/// (the quantity the sequential-p bisection scans). Exposed for the
/// indicator-equivalence and grid-search oracle tests.
bool rejects_at_level(const Design& design, Method method, const SubsetIndex& J,
                      std::span<const double> weights, int k, const ObservedStatistics& obs,
                      double mu);
}  // namespace detail

}  // namespace gsmt
