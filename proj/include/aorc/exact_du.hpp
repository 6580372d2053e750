#pragma once

#include <vector>

#include "aorc/curves.hpp"

namespace aorc {

// Exact finite-n step-up analysis under Dirac-uniform configurations:
// n0 p-values are iid uniform on [0,1], the remaining n1 = n - n0 are
// identically zero. For curves with nondecreasing threshold ratio this is the
// least favorable independent configuration for a step-up procedure, so the
// worst case over n0 is the exact worst-case FDR.
//
// Sizes are capped: exact computations refuse n > kMaxExactN (cubic cost).
inline constexpr int kMaxExactN = 2000;

struct DuConfig {
  int n = 0;
  int n0 = 0;  // number of true nulls, 0 <= n0 <= n
};

struct RejectionPmf {
  DuConfig config;
  CriticalValues critvals;
  std::vector<double> probs;  // P(R = r), r = 0..n; zero below n - n0
};

// P(U_(j) > d_j for all j): probability that the order statistics of m iid
// uniforms never reach down to the nondecreasing bounds d_1 <= ... <= d_m.
// Equivalently no step-up cascade starts. Building block of everything below.
double noncrossing_prob(const std::vector<double>& bounds);

// Exact distribution of the number of rejections of the step-up procedure
// under config. Under Dirac-uniform, R = n1 + I with
// I = max{ i : U_(i) <= c_{n1+i} } (max of empty set = 0).
RejectionPmf su_rejection_pmf(const CriticalValues& critvals, DuConfig config);

// Exact FDR = E[V / max(R,1)] of the step-up procedure under config.
// V = R - n1 here: the n1 zeros are always rejected when anything is.
double exact_du_fdr_su(const CriticalValues& critvals, DuConfig config);

// Upper bound for the step-up FDR at config with n0 >= 1:
//   (n0/n) * E[ q_bar(R'/n) ]
// where R' is the rejection count of the same critical values under the
// shifted configuration (n0-1 uniforms, n1+1 zeros). Coincides with the exact
// FDR whenever the curve's threshold ratio q is nondecreasing; may sit
// strictly above it otherwise (truncated curve).
double fdr_upper_bound(const CriticalValues& critvals, const RejectionCurve& curve,
                       DuConfig config);

struct ScanResult {
  int n = 0;
  std::vector<double> fdr;    // index n0 = 0..n (fdr[0] = 0)
  std::vector<double> bound;  // upper bound, bound[0] = 0
  int argmax_n0 = 0;
  double max_fdr = 0.0;
  // True when the curve's threshold ratio is nondecreasing, i.e. when the
  // Dirac-uniform scan provably covers all independent configurations.
  bool du_least_favorable = false;
};

// Exact FDR and upper bound over every n0 = 0..n for critical values drawn
// from the given curve. Shares one inner DP table across all n0, so a full
// scan costs about as much as the single hardest configuration.
ScanResult worst_case_scan(const RejectionCurve& curve, int n);

}  // namespace aorc
