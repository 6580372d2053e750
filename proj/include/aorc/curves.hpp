#pragma once

#include <string>
#include <vector>

namespace aorc {

// Rejection-curve families built around f_alpha(t) = t / (t(1-alpha) + alpha).
//
// A curve is used in two equivalent forms:
//   * the threshold generator rho: [0,1] -> [0,1], whose values at i/n give the
//     critical values c_i = rho(i/n) of a stepwise procedure, and
//   * the rejection curve r = rho^{-1} (generalized inverse), against which the
//     ecdf of the p-values is compared.
enum class CurveFamily {
  kSimes,         // rho(x) = alpha * x
  kAorc,          // rho(x) = f_alpha^{-1}(x); the curve itself is f_alpha
  kAdjustedH1,    // tangent continuation of f_alpha at kappa
  kAdjustedH2,    // secant (chordal) continuation of f_alpha at kappa
  kTruncated,     // rho(x) = min(f_alpha^{-1}(x), kappa)
  kBetaAdjusted,  // rho(x) = x*alpha / (1 + beta/n - x(1-alpha))
};

struct RejectionCurve {
  CurveFamily family;
  double alpha;
  double kappa = 0.0;  // AdjustedH1/H2, Truncated
  double beta = 0.0;   // BetaAdjusted
  int n = 0;           // BetaAdjusted (the adjustment scales with 1/n)
};

// Factories validate parameters once; everything downstream assumes a valid curve.
RejectionCurve simes_curve(double alpha);
RejectionCurve aorc_curve(double alpha);
RejectionCurve adjusted_h1_curve(double alpha, double kappa);
RejectionCurve adjusted_h2_curve(double alpha, double kappa);
RejectionCurve truncated_curve(double alpha, double kappa);
RejectionCurve beta_adjusted_curve(double alpha, double beta, int n);

std::string family_name(CurveFamily family);

// f_alpha(t) = t / (t(1-alpha) + alpha) on [0,1] and its inverse
// f_alpha^{-1}(x) = alpha x / (1 - x(1-alpha)) = 1 - f_alpha(1-x).
double f_alpha(double t, double alpha);
double f_alpha_inv(double x, double alpha);

// Threshold generator rho(x) for x in [0,1].
double eval_rho(const RejectionCurve& curve, double x);

// Rejection curve r(t) = inf{ x : rho(x) >= t }, the generalized inverse of rho.
// Returns +infinity for t above the attained maximum rho(1) (curves that stop
// short of 1 reject nothing at larger thresholds).
double eval_curve(const RejectionCurve& curve, double t);

// Threshold-to-level ratio q(x) = rho(x)/x, continuously extended to q(0).
// Nondecreasing q is the structural condition under which the Dirac-uniform
// upper bound below is sharp for step-up procedures.
double eval_q(const RejectionCurve& curve, double x);

// Nondecreasing majorant q_bar(x) = sup_{u <= x} q(u). Differs from q only for
// the truncated curve, whose ratio decays past f_alpha(kappa).
double eval_q_bar(const RejectionCurve& curve, double x);

bool q_nondecreasing(const RejectionCurve& curve);

// Upper end of the curve's support: x_star = rho(1), the largest critical value
// any finite procedure from this curve can use.
double x_star(const RejectionCurve& curve);

// Inverse design helper for the adjusted families: the kappa for which the
// continuation reaches rho(1) = xstar. Requires alpha < xstar <= 1.
double kappa_for_xstar(CurveFamily family, double alpha, double xstar);

struct CriticalValues {
  int n = 0;
  std::vector<double> values;  // c_1 <= ... <= c_n, each in [0,1]
};

// c_i = rho(i/n), i = 1..n.
CriticalValues critical_values(const RejectionCurve& curve, int n);

// Wraps an externally supplied vector (must be nondecreasing, within [0,1]).
CriticalValues critical_values_from(std::vector<double> values);

}  // namespace aorc
