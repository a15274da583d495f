#pragma once

#include <stdexcept>

namespace gsmt {

/// Numerical failure (root-finder non-convergence, integration tolerance
/// breach). Distinct from std::invalid_argument so the CLI can map
/// validation problems to exit code 1 and numerical ones to exit code 2.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsmt
