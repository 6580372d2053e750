// Shared helpers for the test suite: tolerance checks and independent oracles
// implemented differently from the library code they validate.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "aorc/curves.hpp"
#include "aorc/stepwise.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace testsupport {

// Determinant-based oracle for the probability that uniform order statistics
// stay above nondecreasing bounds: P(U_(i) > d_i for all i) equals
// m! * det[ (1-d_j)_+^{j-i+1} / (j-i+1)! ] (entries with negative exponent
// vanish). O(m^3) and only usable for small m before m! amplifies rounding,
// which is exactly what an independent cross-check needs.
inline double steck_noncrossing(const std::vector<double>& d) {
  const int m = static_cast<int>(d.size());
  std::vector<double> fact(m + 2, 1.0);
  for (int k = 1; k <= m + 1; ++k) fact[k] = fact[k - 1] * k;

  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int e = j - i + 1;
      if (e < 0) continue;
      a[i - 1][j - 1] = std::pow(std::max(1.0 - d[j - 1], 0.0), e) / fact[e];
    }
  }

  // LU with partial pivoting; det = sign * prod(diag)
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return fact[m] * det;
}

// Literal transcription of the step-up-down definition, deliberately written
// as a quadratic-time search over candidate stop indices rather than a scan,
// so that it shares no structure with aorc::decide.
struct OracleDecision {
  int m = 0;
  std::vector<std::uint8_t> rejected;
};

inline OracleDecision literal_decide(const std::vector<double>& p,
                                     const std::vector<double>& c,
                                     aorc::ProcedureKind kind, double lambda) {
  const int n = static_cast<int>(p.size());
  std::vector<double> s(p);
  std::sort(s.begin(), s.end());

  int start = n;
  if (kind == aorc::ProcedureKind::kStepDown) {
    start = 1;
  } else if (kind == aorc::ProcedureKind::kStepUpDown) {
    start = n;
    for (int j = 1; j <= n; ++j) {
      if (c[j - 1] >= lambda) {
        start = j;
        break;
      }
    }
  }

  int m = 0;
  if (s[start - 1] <= c[start - 1]) {
    // largest j >= start such that every index in [start, j] is below the curve
    for (int j = start; j <= n; ++j) {
      bool all = true;
      for (int i = start; i <= j; ++i) {
        if (!(s[i - 1] <= c[i - 1])) {
          all = false;
          break;
        }
      }
      if (all) m = j;
    }
  } else {
    for (int j = 1; j <= start; ++j) {
      if (s[j - 1] <= c[j - 1]) m = j;  // keeps the largest such j
    }
  }

  OracleDecision d;
  d.m = m;
  d.rejected.assign(n, 0);
  if (m >= 1) {
    for (int i = 0; i < n; ++i) {
      if (p[i] <= c[m - 1]) d.rejected[i] = 1;
    }
  }
  return d;
}

}  // namespace testsupport
