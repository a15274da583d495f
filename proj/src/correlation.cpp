#include "gsmt/correlation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsmt {

EventTable::EventTable(Matrix counts, std::vector<std::vector<std::vector<double>>> pair_overlap)
    : counts_(std::move(counts)), pair_overlap_(std::move(pair_overlap)) {
  const int m = counts_.rows();
  const int kk = counts_.cols();
  if (m < 1 || kk < 1) throw std::invalid_argument("events.counts: must be non-empty");
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < kk; ++k) {
      const double n = counts_(i, k);
      if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("events.counts[" + std::to_string(i) + "][" +
                                    std::to_string(k) + "]: must be positive");
      if (k > 0 && n <= counts_(i, k - 1))
        throw std::invalid_argument("events.counts[" + std::to_string(i) + "][" +
                                    std::to_string(k) + "]: must be strictly increasing");
    }
  }
  if (static_cast<int>(pair_overlap_.size()) != m)
    throw std::invalid_argument("events.overlap: one row per hypothesis required");
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(pair_overlap_[i].size()) != m)
      throw std::invalid_argument("events.overlap: must be m x m");
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const auto& o = pair_overlap_[i][j];
      if (static_cast<int>(o.size()) != kk)
        throw std::invalid_argument("events.overlap[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "]: one count per analysis required");
      for (int k = 0; k < kk; ++k) {
        if (o[k] != pair_overlap_[j][i][k])
          throw std::invalid_argument("events.overlap: must be symmetric in the pair");
        const double cap = std::min(counts_(i, k), counts_(j, k));
        if (!(o[k] >= 0.0) || o[k] > cap + 1e-9)
          throw std::invalid_argument("events.overlap[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "][" + std::to_string(k) +
                                      "]: must be between 0 and the smaller marginal count");
      }
    }
  }
}

double EventTable::overlap(int i1, int k1, int i2, int k2) const {
  const int k = std::min(k1, k2);
  if (i1 == i2) return counts_(i1, k);
  return pair_overlap_[i1][i2][k];
}

CorrelationMatrix build_ccs(const EventTable& events) {
  const int m = events.hypotheses();
  const int kk = events.analyses();
  const int dim = m * kk;
  Matrix ccs(dim, dim, 0.0);
  for (int k1 = 0; k1 < kk; ++k1) {
    for (int i1 = 0; i1 < m; ++i1) {
      const int a = ccs_index(m, i1, k1);
      for (int k2 = 0; k2 < kk; ++k2) {
        for (int i2 = 0; i2 < m; ++i2) {
          const int b = ccs_index(m, i2, k2);
          if (b < a) continue;
          const double o = events.overlap(i1, k1, i2, k2);
          // o/n1 and o/n2 are scale-free ratios, so scaled tables
          // reproduce the matrix bit for bit.
          const double r =
              std::sqrt((o / events.count(i1, k1)) * (o / events.count(i2, k2)));
          ccs(a, b) = r;
          ccs(b, a) = r;
        }
      }
    }
  }
  return CorrelationMatrix::validated(std::move(ccs));
}

CorrelationMatrix subset_ccs(const CorrelationMatrix& ccs, int m, const SubsetIndex& J,
                             int through_k) {
  const int kk = ccs.dim() / m;
  if (ccs.dim() != m * kk) throw std::invalid_argument("subset_ccs: dimension mismatch");
  if (through_k < 1 || through_k > kk)
    throw std::invalid_argument("subset_ccs: analysis index out of range");
  for (int j : J.members())
    if (j >= m) throw std::invalid_argument("subset_ccs: subset index out of range");

  std::vector<int> idx;
  for (int k = 0; k < through_k; ++k)
    for (int j : J.members()) idx.push_back(ccs_index(m, j, k));
  const int d = static_cast<int>(idx.size());
  Matrix sub(d, d, 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) sub(a, b) = ccs(idx[a], idx[b]);
  return CorrelationMatrix::validated(std::move(sub));
}

DesignSchedule info_fractions(const EventTable& events) {
  const int m = events.hypotheses();
  const int kk = events.analyses();
  Matrix t(m, kk, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < kk; ++k) t(j, k) = events.count(j, k) / events.count(j, kk - 1);
    t(j, kk - 1) = 1.0;
  }
  return DesignSchedule{std::move(t)};
}

DesignSchedule schedule_from_ccs(const CorrelationMatrix& ccs, int m) {
  if (m < 1 || ccs.dim() % m != 0)
    throw std::invalid_argument("correlation: dimension must be a multiple of the family size");
  const int kk = ccs.dim() / m;
  Matrix t(m, kk, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < kk; ++k) {
      const double r = ccs(ccs_index(m, j, k), ccs_index(m, j, kk - 1));
      if (!(r > 0.0))
        throw std::invalid_argument(
            "correlation: within-hypothesis entries must be positive to recover fractions");
      t(j, k) = r * r;
      if (k > 0 && t(j, k) <= t(j, k - 1))
        throw std::invalid_argument("correlation: implied fractions must be strictly increasing");
    }
    t(j, kk - 1) = 1.0;
  }
  return DesignSchedule{std::move(t)};
}

}  // namespace gsmt
