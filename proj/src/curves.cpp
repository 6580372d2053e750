#include "aorc/curves.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "aorc/errors.hpp"

namespace aorc {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw DomainError("kappa must lie in (0,1], got " + std::to_string(kappa));
  }
}

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {  // also rejects NaN
    throw DomainError(std::string(name) + " must lie in [0,1]");
  }
}

// Slope of f_alpha at t.
double f_alpha_deriv(double t, double alpha) {
  const double d = t * (1.0 - alpha) + alpha;
  return alpha / (d * d);
}

}  // namespace

RejectionCurve simes_curve(double alpha) {
  check_alpha(alpha);
  return {CurveFamily::kSimes, alpha};
}

RejectionCurve aorc_curve(double alpha) {
  check_alpha(alpha);
  return {CurveFamily::kAorc, alpha};
}

RejectionCurve adjusted_h1_curve(double alpha, double kappa) {
  check_alpha(alpha);
  check_kappa(kappa);
  return {CurveFamily::kAdjustedH1, alpha, kappa};
}

RejectionCurve adjusted_h2_curve(double alpha, double kappa) {
  check_alpha(alpha);
  check_kappa(kappa);
  return {CurveFamily::kAdjustedH2, alpha, kappa};
}

RejectionCurve truncated_curve(double alpha, double kappa) {
  check_alpha(alpha);
  check_kappa(kappa);
  return {CurveFamily::kTruncated, alpha, kappa};
}

RejectionCurve beta_adjusted_curve(double alpha, double beta, int n) {
  check_alpha(alpha);
  if (!(beta >= 0.0)) {
    throw DomainError("beta must be >= 0, got " + std::to_string(beta));
  }
  if (n < 1) {
    throw DomainError("n must be >= 1, got " + std::to_string(n));
  }
  RejectionCurve c{CurveFamily::kBetaAdjusted, alpha};
  c.beta = beta;
  c.n = n;
  return c;
}

std::string family_name(CurveFamily family) {
  switch (family) {
    case CurveFamily::kSimes: return "simes";
    case CurveFamily::kAorc: return "aorc";
    case CurveFamily::kAdjustedH1: return "adjusted-h1";
    case CurveFamily::kAdjustedH2: return "adjusted-h2";
    case CurveFamily::kTruncated: return "truncated";
    case CurveFamily::kBetaAdjusted: return "beta-adjusted";
  }
  return "?";
}

double f_alpha(double t, double alpha) {
  check_alpha(alpha);
  check_unit(t, "t");
  if (t == 1.0) return 1.0;  // exact endpoint; t(1-a)+a can round off 1
  return t / (t * (1.0 - alpha) + alpha);
}

double f_alpha_inv(double x, double alpha) {
  check_alpha(alpha);
  check_unit(x, "x");
  if (x == 1.0) return 1.0;
  return alpha * x / (1.0 - x * (1.0 - alpha));
}

double eval_rho(const RejectionCurve& curve, double x) {
  check_unit(x, "x");
  const double a = curve.alpha;
  switch (curve.family) {
    case CurveFamily::kSimes:
      return a * x;
    case CurveFamily::kAorc:
      return f_alpha_inv(x, a);
    case CurveFamily::kAdjustedH1: {
      const double fk = f_alpha(curve.kappa, a);
      if (x <= fk) return f_alpha_inv(x, a);
      return curve.kappa + (x - fk) / f_alpha_deriv(curve.kappa, a);
    }
    case CurveFamily::kAdjustedH2: {
      const double fk = f_alpha(curve.kappa, a);
      if (x <= fk) return f_alpha_inv(x, a);
      return x * curve.kappa / fk;
    }
    case CurveFamily::kTruncated:
      return std::min(f_alpha_inv(x, a), curve.kappa);
    case CurveFamily::kBetaAdjusted: {
      const double b = curve.beta / static_cast<double>(curve.n);
      // denominator written as a + b + (1-a)(1-x) rather than 1 + b - x(1-a):
      // same value, but no cancellation near x = 1 (and rho(1) = a/(a+b) exactly)
      return x * a / (a + b + (1.0 - a) * (1.0 - x));
    }
  }
  throw DomainError("unknown curve family");
}

double eval_curve(const RejectionCurve& curve, double t) {
  check_unit(t, "t");
  const double a = curve.alpha;
  const double top = x_star(curve);
  if (t > top) return std::numeric_limits<double>::infinity();
  switch (curve.family) {
    case CurveFamily::kSimes:
      return t / a;
    case CurveFamily::kAorc:
      return f_alpha(t, a);
    case CurveFamily::kAdjustedH1: {
      if (t <= curve.kappa) return f_alpha(t, a);
      const double fk = f_alpha(curve.kappa, a);
      return fk + f_alpha_deriv(curve.kappa, a) * (t - curve.kappa);
    }
    case CurveFamily::kAdjustedH2: {
      if (t <= curve.kappa) return f_alpha(t, a);
      return t * f_alpha(curve.kappa, a) / curve.kappa;
    }
    case CurveFamily::kTruncated:
      return f_alpha(t, a);
    case CurveFamily::kBetaAdjusted: {
      const double b = curve.beta / static_cast<double>(curve.n);
      return (1.0 + b) * f_alpha(t, a);
    }
  }
  throw DomainError("unknown curve family");
}

double eval_q(const RejectionCurve& curve, double x) {
  check_unit(x, "x");
  if (x == 0.0) {
    // limit of rho(x)/x at 0: slope of rho at the origin
    if (curve.family == CurveFamily::kSimes) return curve.alpha;
    if (curve.family == CurveFamily::kBetaAdjusted) {
      return curve.alpha / (1.0 + curve.beta / static_cast<double>(curve.n));
    }
    return curve.alpha;  // all f_alpha^{-1}-based curves share its slope alpha
  }
  return eval_rho(curve, x) / x;
}

double eval_q_bar(const RejectionCurve& curve, double x) {
  check_unit(x, "x");
  if (curve.family == CurveFamily::kTruncated) {
    // q rises on [0, f_alpha(kappa)] and decays as kappa/x beyond, so the
    // running sup freezes at the junction.
    const double fk = f_alpha(curve.kappa, curve.alpha);
    return eval_q(curve, std::min(x, fk));
  }
  return eval_q(curve, x);
}

bool q_nondecreasing(const RejectionCurve& curve) {
  return curve.family != CurveFamily::kTruncated;
}

double x_star(const RejectionCurve& curve) {
  // Defined as rho(1) and computed through the same code path, so that the
  // largest critical value c_n = rho(n/n) never exceeds x_star by a rounding
  // ulp and eval_curve(rho(x)) stays finite for every x in [0,1].
  // Closed forms, for reference: simes -> alpha; aorc -> 1;
  // h1 -> kappa(1-alpha)(2-kappa) + alpha; h2 -> kappa(1-alpha) + alpha;
  // truncated -> kappa; beta-adjusted -> alpha / (alpha + beta/n).
  return eval_rho(curve, 1.0);
}

double kappa_for_xstar(CurveFamily family, double alpha, double xstar) {
  check_alpha(alpha);
  if (!(xstar > alpha && xstar <= 1.0)) {
    throw DomainError("xstar must lie in (alpha, 1]");
  }
  const double w = (xstar - alpha) / (1.0 - alpha);  // in (0,1]
  switch (family) {
    case CurveFamily::kAdjustedH2:
      return w;
    case CurveFamily::kAdjustedH1:
      // solve kappa(2-kappa) = w for kappa in (0,1]
      return 1.0 - std::sqrt(1.0 - w);
    default:
      throw DomainError("kappa_for_xstar applies to the adjusted families only");
  }
}

CriticalValues critical_values(const RejectionCurve& curve, int n) {
  if (n < 1) {
    throw DomainError("n must be >= 1, got " + std::to_string(n));
  }
  CriticalValues cv;
  cv.n = n;
  cv.values.resize(n);
  for (int i = 1; i <= n; ++i) {
    cv.values[i - 1] = eval_rho(curve, static_cast<double>(i) / n);
  }
  return cv;
}

CriticalValues critical_values_from(std::vector<double> values) {
  if (values.empty()) {
    throw DomainError("critical values must be nonempty");
  }
  double prev = 0.0;
  for (double v : values) {
    if (!(v >= prev && v <= 1.0)) {
      throw DomainError("critical values must be nondecreasing within [0,1]");
    }
    prev = v;
  }
  CriticalValues cv;
  cv.n = static_cast<int>(values.size());
  cv.values = std::move(values);
  return cv;
}

}  // namespace aorc
