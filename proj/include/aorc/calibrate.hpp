#pragma once

#include <vector>

#include "aorc/curves.hpp"

namespace aorc {

// Finite-n calibration of the beta-adjusted curve: find the smallest
// adjustment beta such that the step-up procedure with critical values
// i*alpha / (n + beta - i(1-alpha)) controls the FDR at alpha for every
// Dirac-uniform configuration — i.e. exactly, for every independent model.

struct CalibrationTracePoint {
  double beta = 0.0;
  double max_fdr = 0.0;
  int argmax_n0 = 0;
};

struct CalibrationResult {
  int n = 0;
  double alpha = 0.0;
  double beta_star = 0.0;        // certified: max_du_fdr(beta_star) <= alpha
  double achieved_max_fdr = 0.0; // worst-case FDR at beta_star
  int argmax_n0 = 0;
  std::vector<CalibrationTracePoint> trace;  // every evaluation, in order
};

// Worst-case exact DU FDR of the beta-adjusted step-up procedure over all n0.
// Returns {max FDR, argmax n0}.
CalibrationTracePoint max_du_fdr(double beta, int n, double alpha);

// Bracketing + bisection on beta. The worst-case FDR is nonincreasing in beta
// (larger beta shrinks every critical value); the trace is checked for that
// monotonicity and a violation throws DomainError with the offending pair.
// Terminates when the bracket width drops below tol and returns the upper
// (feasible) end, so the result always carries a control certificate.
// n = 1 has the closed form beta_star = 1 - alpha.
CalibrationResult calibrate_beta(int n, double alpha, double tol = 1e-3);

// The curve calibrated by the result, ready for critical_values().
RejectionCurve calibrated_curve(const CalibrationResult& result);

}  // namespace aorc
