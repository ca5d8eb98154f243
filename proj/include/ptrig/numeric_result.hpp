#pragma once

namespace ptrig {

/// Value of a numerical kernel together with its convergence diagnostics.
struct NumericResult {
  double value = 0.0;
  double err_estimate = 0.0;  // absolute, >= 0
  int iterations = 0;
  bool converged = false;
};

}  // namespace ptrig
