#pragma once

#include "aorc/curves.hpp"

namespace aorc {

// Large-n limits under the proportion-of-true-nulls model: a fraction zeta of
// the p-values is uniform, the rest converge to point mass at zero, so the
// limiting ecdf is F(t | zeta) = (1 - zeta) + zeta * t.

double f_infinity(double t, double zeta);

// Largest threshold at which the asymptotic FDR still equals alpha:
// t_zeta = alpha(1-zeta) / (zeta(1-alpha)) for zeta in [alpha, 1), clamped to
// 1 below alpha and 0 at zeta = 1. This is the crossing of f_alpha with the
// limiting ecdf and the design point of the curve family.
double t_zeta(double zeta, double alpha);

// Asymptotic FDR of thresholding at a fixed t: t*zeta / ((1-zeta) + t*zeta).
double limiting_fdr_at_threshold(double t, double zeta);

// Critical null fraction above which the truncation at kappa stops binding:
// zeta_star = alpha / (kappa(1-alpha) + alpha).
double zeta_star(double kappa, double alpha);

// Smallest fixed point of t -> F(rho(t) | zeta): the limiting rejection
// threshold of the step-up-down family built from rho. Solved by a coarse
// grid scan plus bisection; exact 0 for zeta = 1 and 1 when the curve stays
// above the ecdf on [0, 1).
double solve_r_star(const RejectionCurve& curve, double zeta);

// Limiting FDR of the procedure: zeta * q(r_star), with the q(0) limit when
// the threshold collapses to zero.
double limiting_fdr_of_procedure(const RejectionCurve& curve, double zeta);

// Closed-form worst-case limiting level as a function of zeta, available for
// the families with a known display: Simes (zeta*alpha), BetaAdjusted
// (min(alpha, zeta)), Truncated (alpha above zeta_star, else
// zeta*kappa / (1 - zeta + zeta*kappa)). Throws DomainError for the others.
double level_function_g(const RejectionCurve& curve, double zeta);

}  // namespace aorc
