#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsmt/matrix.hpp"

namespace gsmt {

inline constexpr int kDefaultClosureCap = 16;

/// The family of elementary hypotheses. Labels are unique and non-empty;
/// the count is capped so the 2^m - 1 closure stays enumerable.
class HypothesisSet {
 public:
  explicit HypothesisSet(std::vector<std::string> labels, int closure_cap = kDefaultClosureCap);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int j) const { return labels_.at(static_cast<std::size_t>(j)); }

 private:
  std::vector<std::string> labels_;
};

/// A non-empty subset of hypothesis indices (0-based), kept sorted.
/// The bitmask doubles as the canonical map key.
class SubsetIndex {
 public:
  explicit SubsetIndex(std::vector<int> members);
  static SubsetIndex from_mask(std::uint32_t mask);
  static SubsetIndex full(int m);
  static SubsetIndex singleton(int j) { return SubsetIndex(std::vector<int>{j}); }

  const std::vector<int>& members() const { return members_; }
  std::uint32_t mask() const { return mask_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int j) const { return (mask_ >> j) & 1u; }

  bool operator==(const SubsetIndex& o) const { return mask_ == o.mask_; }

 private:
  SubsetIndex() = default;
  std::vector<int> members_;
  std::uint32_t mask_ = 0;
};

/// Orders subsets by descending cardinality, then lexicographically by
/// member list; the deterministic order used everywhere downstream.
bool canonical_subset_less(const SubsetIndex& a, const SubsetIndex& b);

/// Initial weights plus transition matrix, with an optional explicit
/// per-subset weight table that overrides the graph derivation. The table,
/// when present, must cover every non-empty subset.
struct WeightingStrategy {
  std::vector<double> initial_weights;                       // w_j(I)
  Matrix transition;                                         // G, zero diagonal
  std::map<std::uint32_t, std::vector<double>> subset_table; // mask -> weights over members
  bool validated = false;
  bool consonant = false;  // diagnostic, set by validate_strategy
};

/// Checks all strategy invariants (dimensions, nonnegative weights, weight
/// sum <= 1, row sums <= 1, zero diagonal, explicit table coverage), and
/// records the consonance diagnostic. Throws std::invalid_argument.
WeightingStrategy validate_strategy(WeightingStrategy strategy, const HypothesisSet& hyps);

/// Weights w_j(J) over the members of J, either from the explicit table or
/// by removing each index outside J from (w, G) in ascending order. The
/// result is independent of removal order.
std::vector<double> subset_weights(const WeightingStrategy& strategy, const SubsetIndex& J);

/// Removes hypothesis j from the graph ("reject, reallocate, reduce").
/// The returned strategy lives on the reduced index set; `remaining` gets
/// the surviving original indices in ascending order.
WeightingStrategy update_after_rejection(const WeightingStrategy& strategy, int j,
                                         std::vector<int>* remaining = nullptr);

/// All 2^m - 1 non-empty subsets in canonical order.
std::vector<SubsetIndex> enumerate_closure(const HypothesisSet& hyps);
std::vector<SubsetIndex> enumerate_closure(int m, int closure_cap = kDefaultClosureCap);

namespace detail {
/// Graph-derived weights with a caller-chosen removal order (order
/// invariance is property-tested through this entry point).
std::vector<double> subset_weights_ordered(const WeightingStrategy& strategy, const SubsetIndex& J,
                                           const std::vector<int>& removal_order);
}  // namespace detail

}  // namespace gsmt
