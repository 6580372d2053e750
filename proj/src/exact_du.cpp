#include "aorc/exact_du.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aorc/errors.hpp"
#include "aorc/parallel.hpp"

namespace aorc {

namespace {

// Everything here works with probabilities in [0,1]; the only numerical
// hazards are long sums (handled by compensated accumulation) and binomial
// weights spanning many orders of magnitude (handled by anchoring each row at
// its mode in log space and walking outward with term ratios).

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Terms below this are dropped; with all weights in [0,1] the truncation error
// is orders of magnitude below every tolerance in use.
constexpr double kTermCutoff = 1e-280;

// sum over k in [klo, s] of Binom(k; s, theta) * v[k - klo].
// v must have s - klo + 1 readable entries, each in [0,1].
double binom_weighted_sum(int s, double theta, int klo, const double* v) {
  if (klo > s) return 0.0;
  if (theta <= 0.0) return klo <= 0 ? v[-klo] : 0.0;
  if (theta >= 1.0) return v[s - klo];

  const double one_minus = 1.0 - theta;
  int mode = static_cast<int>((static_cast<double>(s) + 1.0) * theta);
  mode = std::clamp(mode, klo, s);

  const double log_pmf_mode = std::lgamma(s + 1.0) - std::lgamma(mode + 1.0) -
                              std::lgamma(s - mode + 1.0) +
                              mode * std::log(theta) +
                              (s - mode) * std::log1p(-theta);
  const double pmf_mode = std::exp(log_pmf_mode);

  Kahan acc;
  double term = pmf_mode;
  for (int k = mode; k >= klo; --k) {  // downward from the mode
    acc.add(term * v[k - klo]);
    if (term < kTermCutoff) break;
    term *= (static_cast<double>(k) * one_minus) /
            (static_cast<double>(s - k + 1) * theta);
  }
  term = pmf_mode;
  for (int k = mode; k < s; ++k) {  // upward, mode itself already counted
    term *= (static_cast<double>(s - k) * theta) /
            (static_cast<double>(k + 1) * one_minus);
    if (term < kTermCutoff) break;
    acc.add(term * v[k + 1 - klo]);
  }
  return acc.sum;
}

// Exact step-up law under Dirac-uniform via a reflected staircase.
//
// With n0 uniforms among critical values c_1..c_n (n1 = n - n0 zeros), the
// rejection count is R = n1 + I, I = max{ i : U_(i) <= c_{n1+i} }. Reflecting
// u -> 1-u turns the suffix conditions on c into prefix conditions on the
// reflected order statistics: P(I < k) = P( V_(j) < e_j for j = 1..m ) with
// m = n0 + 1 - k and e_j = 1 - c_{n+1-j}. The e_j do not depend on n0, which
// is what lets one table serve a whole scan.
//
// The table phi_j(s) = P( among s uniforms confined below e_j, at least i lie
// below e_i for every i <= j ) satisfies
//   phi_j(s) = sum_{s'} Binom(s'; s, e_{j-1}/e_j) phi_{j-1}(s'),   s' >= j-1,
// because each of the s points independently falls below e_{j-1} with
// probability e_{j-1}/e_j. Then
//   P(V_(j) < e_j for j <= m) = sum_{s >= m} Binom(s; n0, e_m) phi_m(s).
class SuDuEngine {
 public:
  // smax: largest number of uniforms ever queried (= max n0).
  SuDuEngine(const std::vector<double>& critvals, int smax)
      : n_(static_cast<int>(critvals.size())), smax_(smax) {
    if (smax_ > n_) smax_ = n_;
    e_.resize(smax_);
    for (int j = 1; j <= smax_; ++j) {
      e_[j - 1] = 1.0 - critvals[n_ - j];
    }
    degenerate_ = smax_ > 0 && e_[0] <= 0.0;  // c_n = 1: everything rejected
    if (degenerate_) return;

    phi_.resize(smax_ + 1);
    phi_[0].assign(smax_ + 1, 1.0);
    for (int j = 1; j <= smax_; ++j) {
      phi_[j].assign(smax_ - j + 1, 0.0);
      if (j == 1) {
        // a single bound imposes nothing on points already confined below it
        std::fill(phi_[1].begin(), phi_[1].end(), 1.0);
        continue;
      }
      const double theta = e_[j - 2] / e_[j - 1];
      for (int s = j; s <= smax_; ++s) {
        phi_[j][s - j] = binom_weighted_sum(s, theta, j - 1, phi_[j - 1].data());
      }
    }
  }

  // P(V_(j) < e_j for all j <= m) with n0 uniforms; P(I < n0 + 1 - m).
  double prefix_prob(int n0, int m) const {
    if (m <= 0) return 1.0;
    if (degenerate_) return 0.0;
    return binom_weighted_sum(n0, e_[m - 1], m, phi_[m].data());
  }

  // pmf of I over 0..n0.
  std::vector<double> count_pmf(int n0) const {
    std::vector<double> pmf(n0 + 1, 0.0);
    if (n0 == 0) {
      pmf[0] = 1.0;
      return pmf;
    }
    if (degenerate_) {
      pmf[n0] = 1.0;
      return pmf;
    }
    // T_k = P(I < k), k = 1..n0; increments give the pmf
    double prev = 0.0;
    for (int k = 1; k <= n0 + 1; ++k) {
      const double t = k <= n0 ? prefix_prob(n0, n0 + 1 - k) : 1.0;
      pmf[k - 1] = std::max(t - prev, 0.0);
      prev = t;
    }
    return pmf;
  }

  // E[ (I+a) / (I+b) ]-type sums are assembled by the callers from
  // prefix_prob directly; exposing it keeps the scan allocation-free.
  int max_uniforms() const { return smax_; }

 private:
  int n_;
  int smax_;
  bool degenerate_ = false;
  std::vector<double> e_;
  std::vector<std::vector<double>> phi_;
};

void check_config(const CriticalValues& critvals, DuConfig config) {
  if (config.n != critvals.n) {
    throw DomainError("config.n = " + std::to_string(config.n) +
                      " does not match " + std::to_string(critvals.n) +
                      " critical values");
  }
  if (config.n0 < 0 || config.n0 > config.n) {
    throw DomainError("n0 must lie in {0..n}, got " + std::to_string(config.n0));
  }
  if (config.n > kMaxExactN) {
    throw SizeCapError("exact computation capped at n <= " +
                       std::to_string(kMaxExactN) + ", got n = " +
                       std::to_string(config.n) + "; use Monte Carlo instead");
  }
}

// FDR = E[ I / max(n1 + I, 1) ] from the prefix probabilities, by summation
// by parts: with w_k = k/(n1+k) (w_0 = 0, constant 1 when n1 = 0),
//   FDR = w_{n0} - sum_{k=1..n0} (w_k - w_{k-1}) P(I < k).
double fdr_from_engine(const SuDuEngine& engine, int n0, int n1) {
  if (n0 == 0) return 0.0;
  Kahan acc;
  double w_prev = 0.0;
  for (int k = 1; k <= n0; ++k) {
    const double w = static_cast<double>(k) / (n1 + k);
    const double dw = w - w_prev;
    if (dw != 0.0) {
      acc.add(-dw * engine.prefix_prob(n0, n0 + 1 - k));
    }
    w_prev = w;
  }
  acc.add(w_prev);
  return std::min(std::max(acc.sum, 0.0), 1.0);
}

// (n0/n) * E[ q_bar(R'/n) ] under the shifted config (n0-1 uniforms).
double bound_from_engine(const SuDuEngine& engine, const RejectionCurve& curve,
                         int n, int n0) {
  const int n1 = n - n0;
  const std::vector<double> pmf = engine.count_pmf(n0 - 1);
  Kahan acc;
  for (int i = 0; i < static_cast<int>(pmf.size()); ++i) {
    if (pmf[i] == 0.0) continue;
    const double r_over_n = static_cast<double>(n1 + 1 + i) / n;
    acc.add(pmf[i] * eval_q_bar(curve, r_over_n));
  }
  return acc.sum * static_cast<double>(n0) / n;
}

}  // namespace

double noncrossing_prob(const std::vector<double>& bounds) {
  const int m = static_cast<int>(bounds.size());
  if (m == 0) {
    throw DomainError("bounds vector is empty");
  }
  if (m > kMaxExactN) {
    throw SizeCapError("noncrossing_prob capped at m <= " +
                       std::to_string(kMaxExactN));
  }
  double prev = 0.0;
  for (double d : bounds) {
    if (!(d >= prev && d <= 1.0)) {
      throw DomainError("bounds must be nondecreasing within [0,1]");
    }
    prev = d;
  }
  // Reflect: U_(j) > d_j for all j  <=>  V_(j) < 1 - d_{m+1-j} for all j.
  const SuDuEngine engine(bounds, m);
  return engine.prefix_prob(m, m);
}

RejectionPmf su_rejection_pmf(const CriticalValues& critvals, DuConfig config) {
  check_config(critvals, config);
  const SuDuEngine engine(critvals.values, config.n0);
  const std::vector<double> count = engine.count_pmf(config.n0);
  RejectionPmf out;
  out.config = config;
  out.critvals = critvals;
  out.probs.assign(config.n + 1, 0.0);
  const int n1 = config.n - config.n0;
  for (int i = 0; i <= config.n0; ++i) {
    out.probs[n1 + i] = count[i];
  }
  return out;
}

double exact_du_fdr_su(const CriticalValues& critvals, DuConfig config) {
  check_config(critvals, config);
  const SuDuEngine engine(critvals.values, config.n0);
  return fdr_from_engine(engine, config.n0, config.n - config.n0);
}

double fdr_upper_bound(const CriticalValues& critvals, const RejectionCurve& curve,
                       DuConfig config) {
  check_config(critvals, config);
  if (config.n0 < 1) {
    throw DomainError("fdr_upper_bound requires n0 >= 1");
  }
  const SuDuEngine engine(critvals.values, config.n0 - 1);
  return bound_from_engine(engine, curve, config.n, config.n0);
}

ScanResult worst_case_scan(const RejectionCurve& curve, int n) {
  if (n < 1) {
    throw DomainError("n must be >= 1");
  }
  if (n > kMaxExactN) {
    throw SizeCapError("worst_case_scan capped at n <= " +
                       std::to_string(kMaxExactN) + ", got n = " +
                       std::to_string(n));
  }
  const CriticalValues cv = critical_values(curve, n);
  const SuDuEngine engine(cv.values, n);

  ScanResult result;
  result.n = n;
  result.du_least_favorable = q_nondecreasing(curve);
  result.fdr.assign(n + 1, 0.0);
  result.bound.assign(n + 1, 0.0);

  parallel_for(1, n + 1, default_thread_count(), [&](int n0) {
    result.fdr[n0] = fdr_from_engine(engine, n0, n - n0);
    result.bound[n0] = bound_from_engine(engine, curve, n, n0);
  });

  result.argmax_n0 = 0;
  result.max_fdr = 0.0;
  for (int n0 = 0; n0 <= n; ++n0) {
    if (result.fdr[n0] > result.max_fdr) {
      result.max_fdr = result.fdr[n0];
      result.argmax_n0 = n0;
    }
  }
  return result;
}

}  // namespace aorc
