#include "gsmt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace gsmt {

namespace {
constexpr double kWeightTol = 1e-12;
}

HypothesisSet::HypothesisSet(std::vector<std::string> labels, int closure_cap)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("hypotheses: at least one label required");
  if (static_cast<int>(labels_.size()) > closure_cap)
    throw std::invalid_argument("hypotheses: count exceeds closure cap of " +
                                std::to_string(closure_cap));
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("hypotheses: empty label");
    if (!seen.insert(l).second)
      throw std::invalid_argument("hypotheses: duplicate label '" + l + "'");
  }
}

SubsetIndex::SubsetIndex(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("subset: must be non-empty");
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const int j = members_[i];
    if (j < 0 || j >= 32) throw std::invalid_argument("subset: index out of range");
    if (i > 0 && j == members_[i - 1]) throw std::invalid_argument("subset: duplicate index");
    mask_ |= 1u << j;
  }
}

SubsetIndex SubsetIndex::from_mask(std::uint32_t mask) {
  if (mask == 0) throw std::invalid_argument("subset: must be non-empty");
  SubsetIndex s;
  s.mask_ = mask;
  for (int j = 0; j < 32; ++j)
    if ((mask >> j) & 1u) s.members_.push_back(j);
  return s;
}

SubsetIndex SubsetIndex::full(int m) {
  if (m < 1 || m > 31) throw std::invalid_argument("subset: invalid family size");
  return from_mask((1u << m) - 1u);
}

bool canonical_subset_less(const SubsetIndex& a, const SubsetIndex& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.members() < b.members();
}

namespace {

// One Bretz-style removal step on (w, G) restricted to `alive`.
void remove_index(std::vector<double>& w, Matrix& g, std::vector<char>& alive, int rem) {
  const int m = static_cast<int>(w.size());
  for (int j = 0; j < m; ++j) {
    if (j != rem && alive[j]) w[j] += w[rem] * g(rem, j);
  }
  w[rem] = 0.0;

  Matrix g2(m, m, 0.0);
  for (int l = 0; l < m; ++l) {
    if (!alive[l] || l == rem) continue;
    const double loop = g(l, rem) * g(rem, l);
    for (int j = 0; j < m; ++j) {
      if (!alive[j] || j == rem || j == l) continue;
      if (loop < 1.0 - kWeightTol) {
        g2(l, j) = (g(l, j) + g(l, rem) * g(rem, j)) / (1.0 - loop);
      }
    }
  }
  g = std::move(g2);
  alive[rem] = 0;
}

void check_weight_vector(const std::vector<double>& w, const std::string& what) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || x > 1.0 + kWeightTol)
      throw std::invalid_argument(what + ": weights must be in [0,1]");
    sum += x;
  }
  if (sum > 1.0 + kWeightTol) throw std::invalid_argument(what + ": weights must sum to at most 1");
}

}  // namespace

WeightingStrategy validate_strategy(WeightingStrategy strategy, const HypothesisSet& hyps) {
  const int m = hyps.size();
  if (static_cast<int>(strategy.initial_weights.size()) != m)
    throw std::invalid_argument("weighting.initial_weights: length must equal hypothesis count");
  check_weight_vector(strategy.initial_weights, "weighting.initial_weights");

  if (strategy.transition.rows() != m || strategy.transition.cols() != m)
    throw std::invalid_argument("weighting.transition: must be m x m");
  for (int i = 0; i < m; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m; ++j) {
      const double g = strategy.transition(i, j);
      if (!(g >= 0.0) || g > 1.0 + kWeightTol)
        throw std::invalid_argument("weighting.transition: entries must be in [0,1]");
      rowsum += g;
    }
    if (strategy.transition(i, i) != 0.0)
      throw std::invalid_argument("weighting.transition: diagonal must be zero");
    if (rowsum > 1.0 + kWeightTol)
      throw std::invalid_argument("weighting.transition: row sums must be at most 1");
  }

  if (!strategy.subset_table.empty()) {
    // Explicit tables replace the derivation wholesale: full coverage required.
    const std::uint32_t full = (1u << m) - 1u;
    std::map<std::uint32_t, std::vector<double>> normalized;
    for (const auto& [mask, w] : strategy.subset_table) {
      if (mask == 0 || mask > full)
        throw std::invalid_argument("weighting.subset_weights: subset outside the family");
      const SubsetIndex J = SubsetIndex::from_mask(mask);
      if (static_cast<int>(w.size()) != J.size())
        throw std::invalid_argument(
            "weighting.subset_weights: weight count must match subset size");
      check_weight_vector(w, "weighting.subset_weights");
      normalized.emplace(mask, w);
    }
    if (normalized.size() != full)
      throw std::invalid_argument(
          "weighting.subset_weights: table must cover every non-empty subset");
    strategy.subset_table = std::move(normalized);
  }

  strategy.validated = true;

  // Consonance diagnostic: w_j(J) <= w_j(J \ {i}) for every J, i, j. Stepwise
  // monotonicity implies the full condition by induction on removals.
  const auto closure = enumerate_closure(m, m);  // cap already enforced by HypothesisSet
  std::vector<std::vector<double>> closure_w(1u << m);
  for (const auto& J : closure) {
    closure_w[J.mask()] = subset_weights(strategy, J);
  }
  bool consonant = true;
  for (const auto& J : closure) {
    if (J.size() < 2) continue;
    const auto& wj = closure_w[J.mask()];
    for (int drop : J.members()) {
      const std::uint32_t sub = J.mask() & ~(1u << drop);
      const auto& wsub = closure_w[sub];
      const auto subm = SubsetIndex::from_mask(sub).members();
      for (std::size_t a = 0; a < subm.size(); ++a) {
        // position of subm[a] inside J
        const auto& jm = J.members();
        const std::size_t pos =
            std::lower_bound(jm.begin(), jm.end(), subm[a]) - jm.begin();
        if (wj[pos] > wsub[a] + kWeightTol) consonant = false;
      }
    }
  }
  strategy.consonant = consonant;
  return strategy;
}

namespace detail {

std::vector<double> subset_weights_ordered(const WeightingStrategy& strategy, const SubsetIndex& J,
                                           const std::vector<int>& removal_order) {
  const int m = static_cast<int>(strategy.initial_weights.size());
  std::vector<double> w = strategy.initial_weights;
  Matrix g = strategy.transition;
  std::vector<char> alive(m, 1);
  for (int rem : removal_order) remove_index(w, g, alive, rem);
  std::vector<double> out;
  out.reserve(J.members().size());
  for (int j : J.members()) out.push_back(w[j]);
  return out;
}

}  // namespace detail

std::vector<double> subset_weights(const WeightingStrategy& strategy, const SubsetIndex& J) {
  const int m = static_cast<int>(strategy.initial_weights.size());
  for (int j : J.members())
    if (j >= m) throw std::invalid_argument("subset_weights: subset index out of range");

  if (!strategy.subset_table.empty()) {
    const auto it = strategy.subset_table.find(J.mask());
    if (it != strategy.subset_table.end()) return it->second;
    throw std::invalid_argument("subset_weights: subset missing from explicit table");
  }

  if (J.mask() == (m >= 32 ? 0u : (1u << m) - 1u)) return strategy.initial_weights;

  std::vector<int> removal;
  for (int j = 0; j < m; ++j)
    if (!J.contains(j)) removal.push_back(j);
  return detail::subset_weights_ordered(strategy, J, removal);
}

WeightingStrategy update_after_rejection(const WeightingStrategy& strategy, int j,
                                         std::vector<int>* remaining) {
  const int m = static_cast<int>(strategy.initial_weights.size());
  if (j < 0 || j >= m) throw std::invalid_argument("update_after_rejection: index out of range");
  if (m < 2)
    throw std::invalid_argument("update_after_rejection: cannot remove the last hypothesis");

  std::vector<double> w = strategy.initial_weights;
  Matrix g = strategy.transition;
  std::vector<char> alive(m, 1);
  remove_index(w, g, alive, j);

  WeightingStrategy out;
  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (alive[i]) keep.push_back(i);
  const int mr = static_cast<int>(keep.size());
  out.initial_weights.resize(mr);
  out.transition = Matrix(mr, mr, 0.0);
  for (int a = 0; a < mr; ++a) {
    out.initial_weights[a] = w[keep[a]];
    for (int b = 0; b < mr; ++b) out.transition(a, b) = g(keep[a], keep[b]);
  }
  out.validated = strategy.validated;
  if (remaining) *remaining = keep;
  return out;
}

std::vector<SubsetIndex> enumerate_closure(int m, int closure_cap) {
  if (m < 1) throw std::invalid_argument("enumerate_closure: family must be non-empty");
  if (m > closure_cap)
    throw std::invalid_argument("enumerate_closure: family size exceeds closure cap of " +
                                std::to_string(closure_cap));
  std::vector<SubsetIndex> out;
  out.reserve((1u << m) - 1u);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) out.push_back(SubsetIndex::from_mask(mask));
  std::sort(out.begin(), out.end(), canonical_subset_less);
  return out;
}

std::vector<SubsetIndex> enumerate_closure(const HypothesisSet& hyps) {
  return enumerate_closure(hyps.size());
}

}  // namespace gsmt
