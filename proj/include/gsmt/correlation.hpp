#pragma once

#include <vector>

#include "gsmt/graph.hpp"
#include "gsmt/matrix.hpp"
#include "gsmt/mvn.hpp"

namespace gsmt {

/// Cumulative event counts per hypothesis per analysis, plus pairwise
/// overlap counts per analysis. Overlaps at mixed analyses follow the
/// earlier of the two: overlap(i1,k1,i2,k2) = overlap(i1,i2,min(k1,k2)),
/// and overlap(i,i,k1,k2) = counts(i, min(k1,k2)).
class EventTable {
 public:
  /// counts: m x K (strictly increasing along each row, positive);
  /// pair_overlap[i][j]: K overlap counts for hypotheses i < j.
  EventTable(Matrix counts, std::vector<std::vector<std::vector<double>>> pair_overlap);

  int hypotheses() const { return counts_.rows(); }
  int analyses() const { return counts_.cols(); }
  double count(int i, int k) const { return counts_(i, k); }
  double overlap(int i1, int k1, int i2, int k2) const;

 private:
  Matrix counts_;
  std::vector<std::vector<std::vector<double>>> pair_overlap_;
};

/// Information fractions per hypothesis per analysis, t[j][K-1] = 1.
struct DesignSchedule {
  Matrix fractions;  // m x K
  int hypotheses() const { return fractions.rows(); }
  int analyses() const { return fractions.cols(); }
  double t(int j, int k) const { return fractions(j, k); }
};

/// Complete correlation structure of all hypothesis-by-analysis statistics:
/// entry ((k1,i1),(k2,i2)) = overlap / sqrt(n_{i1,k1} n_{i2,k2}), laid out
/// analysis-major (index = k*m + i).
CorrelationMatrix build_ccs(const EventTable& events);

/// Principal sub-matrix of the CCS for the statistics {Z_{j,k'} : j in J,
/// k' <= through_k}, analysis-major, hypothesis order following J.
CorrelationMatrix subset_ccs(const CorrelationMatrix& ccs, int m, const SubsetIndex& J,
                             int through_k);

/// t[j][k] = n[j][k] / n[j][K-1].
DesignSchedule info_fractions(const EventTable& events);

/// Fractions recovered from an explicitly supplied CCS: t[j][k] =
/// Corr(Z_{j,k}, Z_{j,K-1})^2. Validated increasing with final value 1.
DesignSchedule schedule_from_ccs(const CorrelationMatrix& ccs, int m);

/// Flat index of statistic (hypothesis j, analysis k) inside the CCS.
inline int ccs_index(int m, int j, int k) { return k * m + j; }

}  // namespace gsmt
