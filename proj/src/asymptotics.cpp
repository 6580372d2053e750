#include "aorc/asymptotics.hpp"

#include <cmath>

#include "aorc/errors.hpp"

namespace aorc {

namespace {

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw DomainError("zeta must lie in [0,1]");
  }
}

void check_unit(double t, const char* name) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

double f_infinity(double t, double zeta) {
  check_unit(t, "t");
  check_zeta(zeta);
  return (1.0 - zeta) + zeta * t;
}

double t_zeta(double zeta, double alpha) {
  check_zeta(zeta);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  if (zeta < alpha) return 1.0;
  if (zeta == 1.0) return 0.0;
  return alpha * (1.0 - zeta) / (zeta * (1.0 - alpha));
}

double limiting_fdr_at_threshold(double t, double zeta) {
  check_unit(t, "t");
  check_zeta(zeta);
  if (t == 0.0) return 0.0;  // nothing rejected in the limit
  return t * zeta / ((1.0 - zeta) + t * zeta);
}

double zeta_star(double kappa, double alpha) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw DomainError("kappa must lie in (0,1]");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  return alpha / (kappa * (1.0 - alpha) + alpha);
}

double solve_r_star(const RejectionCurve& curve, double zeta) {
  check_zeta(zeta);
  // Smallest root of g(t) = F(rho(t)|zeta) - t. g(0) = 1 - zeta >= 0 and
  // g(1) <= 0, g continuous: scan a coarse grid for the first sign change,
  // then bisect. zeta = 1 makes 0 itself a root.
  if (zeta == 1.0) return 0.0;

  auto g = [&](double t) { return f_infinity(eval_rho(curve, t), zeta) - t; };

  constexpr int kGrid = 10000;
  double lo = 0.0;
  double hi = 1.0;
  bool found = false;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = static_cast<double>(i) / kGrid;
    if (g(t) <= 0.0) {
      lo = static_cast<double>(i - 1) / kGrid;
      hi = t;
      found = true;
      break;
    }
  }
  if (!found) return 1.0;  // curve stays above the ecdf on (0,1); g(1) = 0 at most

  for (int iter = 0; iter < 100 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double limiting_fdr_of_procedure(const RejectionCurve& curve, double zeta) {
  check_zeta(zeta);
  const double r = solve_r_star(curve, zeta);
  if (r <= 0.0) return zeta * eval_q(curve, 0.0);
  return zeta * eval_q(curve, r);
}

double level_function_g(const RejectionCurve& curve, double zeta) {
  check_zeta(zeta);
  switch (curve.family) {
    case CurveFamily::kSimes:
      return zeta * curve.alpha;
    case CurveFamily::kBetaAdjusted:
      return std::min(curve.alpha, zeta);
    case CurveFamily::kTruncated: {
      if (zeta >= zeta_star(curve.kappa, curve.alpha)) return curve.alpha;
      // truncation binds: the limit threshold sits at the ecdf value of kappa
      const double f = 1.0 - zeta + zeta * curve.kappa;
      return zeta * curve.kappa / f;
    }
    default:
      throw DomainError("no closed-form level function for family " +
                        family_name(curve.family));
  }
}

}  // namespace aorc
