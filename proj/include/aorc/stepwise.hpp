#pragma once

#include <cstdint>
#include <vector>

#include "aorc/curves.hpp"

namespace aorc {

// Stepwise multiple-test procedures driven by a nondecreasing vector of
// critical values c_1 <= ... <= c_n.
//
// The general form is step-up-down with crossing parameter lambda in [0,1]:
// let k = lambda_index(c, lambda). If the k-th smallest p-value is <= c_k the
// procedure continues upward (step-down beyond k): m is the largest index
// reachable from k through consecutive order statistics below the curve.
// Otherwise it falls back downward (step-up below k): m is the largest j <= k
// with p_(j) <= c_j, or zero. Everything at or below c_m is rejected.
// lambda = 0 gives pure step-down, lambda = 1 pure step-up (for curves that
// reach 1; see lambda_index).
enum class ProcedureKind {
  kStepUp,
  kStepDown,
  kStepUpDown,
};

struct Decision {
  int n = 0;
  int num_rejections = 0;         // R
  int m_index = 0;                // m; 0 means nothing rejected
  double threshold = 0.0;         // c_m; NaN when m_index == 0
  std::vector<std::uint8_t> rejected;  // per input index, 1 = rejected
};

// First index whose critical value reaches lambda:
// min{ j : c_j >= lambda }, or n if the curve stays below lambda.
int lambda_index(const CriticalValues& critvals, double lambda);

// Run the procedure on raw (unsorted) p-values; ties at the final threshold
// are all rejected. p-values must lie in [0,1]; lambda only matters for
// kStepUpDown.
Decision decide(const std::vector<double>& pvalues, const CriticalValues& critvals,
                ProcedureKind kind, double lambda = 0.5);

// Points where the p-value ecdf crosses the rejection curve from above:
// sorted distinct p-values t with n*F_hat(t) >= n*r(t) that are either the
// largest such point or followed by a non-crossing one. The largest crossing
// point is the step-up threshold in ecdf form.
std::vector<double> crossing_points(const std::vector<double>& pvalues,
                                    const RejectionCurve& curve);

// False discovery proportion V / max(R,1) of a decision against ground truth
// (truth[i] != 0 means index i is a true null).
double fdp(const Decision& decision, const std::vector<std::uint8_t>& is_null);

// Proportion of false nulls rejected: (R - V) / max(#false nulls, 1).
double power_proportion(const Decision& decision, const std::vector<std::uint8_t>& is_null);

}  // namespace aorc
