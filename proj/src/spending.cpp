#include "gsmt/spending.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsmt {

void validate_spending(const SpendingSpec& spec) {
  if (spec.family != SpendingFamily::hsd)
    throw std::invalid_argument("spending.family: unsupported family");
  if (!std::isfinite(spec.gamma)) throw std::invalid_argument("spending.gamma: must be finite");
  if (spec.gamma == 0.0) throw std::invalid_argument("spending.gamma: must be nonzero");
}

double cumulative_spend(const SpendingSpec& spec, double t, double level) {
  validate_spending(spec);
  if (!(t > 0.0) || t > 1.0)
    throw std::invalid_argument("cumulative_spend: t must be in (0,1]");
  if (!(level >= 0.0) || level > 1.0)
    throw std::invalid_argument("cumulative_spend: level must be in [0,1]");
  if (t == 1.0) return level;  // full spend at the final analysis
  const double g = spec.gamma;
  return level * std::expm1(-g * t) / std::expm1(-g);
}

std::vector<double> spend_increments(const SpendingSpec& spec, std::span<const double> fractions,
                                     double level) {
  if (fractions.empty()) throw std::invalid_argument("spend_increments: empty fraction list");
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (!(fractions[k] > 0.0) || fractions[k] > 1.0)
      throw std::invalid_argument("spend_increments: fractions must be in (0,1]");
    if (k > 0 && fractions[k] <= fractions[k - 1])
      throw std::invalid_argument("spend_increments: fractions must be strictly increasing");
  }
  if (fractions.back() != 1.0)
    throw std::invalid_argument("spend_increments: final fraction must be 1");

  std::vector<double> inc(fractions.size());
  double prior = 0.0;
  for (std::size_t k = 0; k + 1 < fractions.size(); ++k) {
    const double cum = cumulative_spend(spec, fractions[k], level);
    inc[k] = std::max(0.0, cum - prior);
    prior = cum;
  }
  inc.back() = std::max(0.0, level - prior);  // kills rounding drift
  return inc;
}

}  // namespace gsmt
