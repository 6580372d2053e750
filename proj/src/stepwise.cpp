#include "aorc/stepwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aorc/errors.hpp"

namespace aorc {

namespace {

void check_pvalues(const std::vector<double>& p) {
  if (p.empty()) {
    throw DomainError("p-value vector is empty");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw DomainError("p-value at index " + std::to_string(i) +
                        " outside [0,1]");
    }
  }
}

}  // namespace

int lambda_index(const CriticalValues& critvals, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1]");
  }
  for (int j = 0; j < critvals.n; ++j) {
    if (critvals.values[j] >= lambda) return j + 1;
  }
  return critvals.n;  // curve never reaches lambda: scan from the top
}

Decision decide(const std::vector<double>& pvalues, const CriticalValues& critvals,
                ProcedureKind kind, double lambda) {
  check_pvalues(pvalues);
  const int n = critvals.n;
  if (static_cast<int>(pvalues.size()) != n) {
    throw DomainError("decide: " + std::to_string(pvalues.size()) +
                      " p-values but " + std::to_string(n) + " critical values");
  }

  std::vector<double> sorted(pvalues);
  std::sort(sorted.begin(), sorted.end());
  const std::vector<double>& c = critvals.values;

  int start = n;  // kStepUp
  if (kind == ProcedureKind::kStepDown) {
    start = 1;
  } else if (kind == ProcedureKind::kStepUpDown) {
    start = lambda_index(critvals, lambda);
  }

  // Example-3.1 scan: continue upward from the start index while the order
  // statistics stay below the curve, otherwise fall back to the largest index
  // below it that does.
  int m = 0;
  if (sorted[start - 1] <= c[start - 1]) {
    m = start;
    while (m < n && sorted[m] <= c[m]) ++m;
  } else {
    for (int j = start - 1; j >= 1; --j) {
      if (sorted[j - 1] <= c[j - 1]) {
        m = j;
        break;
      }
    }
  }

  Decision d;
  d.n = n;
  d.m_index = m;
  d.rejected.assign(n, 0);
  if (m == 0) {
    d.threshold = std::numeric_limits<double>::quiet_NaN();
    return d;
  }
  d.threshold = c[m - 1];
  for (int i = 0; i < n; ++i) {
    if (pvalues[i] <= d.threshold) {
      d.rejected[i] = 1;
      ++d.num_rejections;
    }
  }
  return d;
}

std::vector<double> crossing_points(const std::vector<double>& pvalues,
                                    const RejectionCurve& curve) {
  check_pvalues(pvalues);
  const int n = static_cast<int>(pvalues.size());
  std::vector<double> sorted(pvalues);
  std::sort(sorted.begin(), sorted.end());

  // ecdf value at the i-th order statistic = rank of its last duplicate / n
  std::vector<double> ecdf(n);
  for (int i = 0; i < n; ++i) {
    int j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    ecdf[i] = static_cast<double>(j + 1) / n;
  }

  // tolerate one part in 1e12 so exact-boundary cases (ecdf touching the
  // curve) classify as crossings despite rounding in eval_curve
  auto crosses = [&](int i) {
    return ecdf[i] >= eval_curve(curve, sorted[i]) - 1e-12;
  };

  std::vector<double> cps;
  for (int i = 0; i < n; ++i) {
    if (!crosses(i)) continue;
    if (i + 1 == n || !crosses(i + 1)) {
      if (cps.empty() || cps.back() != sorted[i]) cps.push_back(sorted[i]);
    }
  }
  return cps;
}

namespace {

void check_truth(const Decision& decision, const std::vector<std::uint8_t>& is_null) {
  if (static_cast<int>(is_null.size()) != decision.n) {
    throw DomainError("truth vector length does not match decision");
  }
}

}  // namespace

double fdp(const Decision& decision, const std::vector<std::uint8_t>& is_null) {
  check_truth(decision, is_null);
  int v = 0;
  for (int i = 0; i < decision.n; ++i) {
    if (decision.rejected[i] && is_null[i]) ++v;
  }
  return static_cast<double>(v) / std::max(decision.num_rejections, 1);
}

double power_proportion(const Decision& decision, const std::vector<std::uint8_t>& is_null) {
  check_truth(decision, is_null);
  int true_rejections = 0;
  int n1 = 0;
  for (int i = 0; i < decision.n; ++i) {
    if (!is_null[i]) {
      ++n1;
      if (decision.rejected[i]) ++true_rejections;
    }
  }
  return static_cast<double>(true_rejections) / std::max(n1, 1);
}

}  // namespace aorc
