#pragma once

#include <span>
#include <vector>

namespace gsmt {

enum class SpendingFamily { hsd };

/// Cumulative alpha-spending specification. Only the Hwang-Shih-DeCani
/// family is implemented; the enum leaves room for others.
struct SpendingSpec {
  SpendingFamily family = SpendingFamily::hsd;
  double gamma = -4.0;
};

/// Validates the spec (finite, nonzero gamma for hsd). Throws std::invalid_argument.
void validate_spending(const SpendingSpec& spec);

/// Cumulative spend f(t; level, gamma) = level * (1 - exp(-gamma t)) / (1 - exp(-gamma)).
/// Requires t in (0, 1], level in [0, 1]. Strictly increasing in t, linear in
/// level, f(1) = level.
double cumulative_spend(const SpendingSpec& spec, double t, double level);

/// First differences of cumulative_spend over a strictly increasing fraction
/// sequence ending at 1. The last increment is computed as level minus the
/// prior cumulative so the increments sum to level exactly.
std::vector<double> spend_increments(const SpendingSpec& spec, std::span<const double> fractions,
                                     double level);

}  // namespace gsmt
