#include "aorc/calibrate.hpp"

#include <cmath>
#include <string>

#include "aorc/errors.hpp"
#include "aorc/exact_du.hpp"

namespace aorc {

namespace {

void check_inputs(int n, double alpha) {
  if (n < 1) {
    throw DomainError("n must be >= 1");
  }
  if (n > kMaxExactN) {
    throw SizeCapError("calibration capped at n <= " + std::to_string(kMaxExactN));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
}

void check_trace_monotone(const std::vector<CalibrationTracePoint>& trace) {
  // Worst-case FDR must be nonincreasing in beta (every critical value
  // shrinks). Tolerate only rounding noise; a real violation means the exact
  // engine and the search disagree and the certificate would be worthless.
  for (const auto& a : trace) {
    for (const auto& b : trace) {
      if (a.beta < b.beta && b.max_fdr > a.max_fdr + 1e-9) {
        throw DomainError(
            "calibration trace not monotone: max FDR " + std::to_string(a.max_fdr) +
            " at beta=" + std::to_string(a.beta) + " but " + std::to_string(b.max_fdr) +
            " at beta=" + std::to_string(b.beta));
      }
    }
  }
}

}  // namespace

CalibrationTracePoint max_du_fdr(double beta, int n, double alpha) {
  check_inputs(n, alpha);
  const RejectionCurve curve = beta_adjusted_curve(alpha, beta, n);
  const ScanResult scan = worst_case_scan(curve, n);
  return {beta, scan.max_fdr, scan.argmax_n0};
}

CalibrationResult calibrate_beta(int n, double alpha, double tol) {
  check_inputs(n, alpha);
  if (!(tol > 0.0)) {
    throw DomainError("tol must be positive");
  }

  CalibrationResult result;
  result.n = n;
  result.alpha = alpha;

  if (n == 1) {
    // Single test: the only critical value is alpha/(1+beta-(1-alpha)) and the
    // worst case is the one-uniform configuration, so FDR = c_1 = alpha
    // exactly at beta = 1 - alpha.
    result.beta_star = 1.0 - alpha;
    const CalibrationTracePoint at = max_du_fdr(result.beta_star, n, alpha);
    result.trace.push_back(at);
    result.achieved_max_fdr = at.max_fdr;
    result.argmax_n0 = at.argmax_n0;
    return result;
  }

  auto probe = [&](double beta) {
    const CalibrationTracePoint p = max_du_fdr(beta, n, alpha);
    result.trace.push_back(p);
    return p;
  };

  double lo = 0.0;
  if (probe(lo).max_fdr <= alpha) {
    // Already controlled without adjustment (cannot happen for n >= 1 with
    // the raw curve, but keep the search honest).
    check_trace_monotone(result.trace);
    result.beta_star = 0.0;
    result.achieved_max_fdr = result.trace.front().max_fdr;
    result.argmax_n0 = result.trace.front().argmax_n0;
    return result;
  }

  double hi = 1.0;
  while (probe(hi).max_fdr > alpha) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) {
      throw DomainError("calibration failed to bracket beta");
    }
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid).max_fdr <= alpha) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  check_trace_monotone(result.trace);
  // Return the feasible end of the bracket so the result is certified:
  // max_du_fdr(beta_star) <= alpha by construction.
  result.beta_star = hi;
  const CalibrationTracePoint at = max_du_fdr(hi, n, alpha);
  result.achieved_max_fdr = at.max_fdr;
  result.argmax_n0 = at.argmax_n0;
  return result;
}

RejectionCurve calibrated_curve(const CalibrationResult& result) {
  return beta_adjusted_curve(result.alpha, result.beta_star, result.n);
}

}  // namespace aorc
