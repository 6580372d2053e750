#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "aorc/curves.hpp"
#include "aorc/errors.hpp"
#include "support.hpp"

using namespace aorc;

TEST_CASE("f_alpha point values and endpoints") {
  CHECK(f_alpha(0.0, 0.05) == 0.0);
  CHECK(f_alpha(1.0, 0.05) == 1.0);
  CHECK(f_alpha(1.0, 0.123) == 1.0);  // endpoint exact even when 1-a+a rounds
  CHECK_NEAR(f_alpha(1.0 / 19.0, 0.05), 10.0 / 19.0, 1e-15);
  CHECK_NEAR(f_alpha(0.5, 0.05), 0.95238095238095238, 1e-15);
  CHECK_NEAR(f_alpha_inv(0.5, 0.05), 1.0 / 21.0, 1e-15);
  CHECK(f_alpha_inv(0.0, 0.3) == 0.0);
  CHECK(f_alpha_inv(1.0, 0.3) == 1.0);
}

TEST_CASE("f_alpha round trips and reflection identity on a dense grid") {
  for (double alpha : {0.01, 0.05, 0.1, 0.5, 0.9}) {
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      CHECK_NEAR(f_alpha_inv(f_alpha(t, alpha), alpha), t, 1e-12);
      CHECK_NEAR(f_alpha(f_alpha_inv(t, alpha), alpha), t, 1e-12);
      // the curve and its inverse are reflections through (1/2, 1/2)
      CHECK_NEAR(f_alpha_inv(t, alpha), 1.0 - f_alpha(1.0 - t, alpha), 1e-12);
    }
  }
}

TEST_CASE("critical values: frozen examples") {
  SUBCASE("aorc alpha=0.05 n=5") {
    const CriticalValues cv = critical_values(aorc_curve(0.05), 5);
    REQUIRE(cv.n == 5);
    CHECK_NEAR(cv.values[0], 0.012345679012345679, 1e-15);
    CHECK_NEAR(cv.values[1], 0.032258064516129032, 1e-15);
    CHECK_NEAR(cv.values[2], 0.069767441860465116, 1e-15);
    CHECK_NEAR(cv.values[3], 1.0 / 6.0, 1e-15);
    CHECK(cv.values[4] == 1.0);  // the step-up trap: the top critical value is 1
  }
  SUBCASE("simes alpha=0.05 n=4") {
    const CriticalValues cv = critical_values(simes_curve(0.05), 4);
    CHECK_NEAR(cv.values[0], 0.0125, 1e-16);
    CHECK_NEAR(cv.values[1], 0.025, 1e-16);
    CHECK_NEAR(cv.values[2], 0.0375, 1e-16);
    CHECK_NEAR(cv.values[3], 0.05, 1e-16);
  }
  SUBCASE("beta-adjusted alpha=0.05 beta=1.76 n=100") {
    const CriticalValues cv = critical_values(beta_adjusted_curve(0.05, 1.76, 100), 100);
    CHECK_NEAR(cv.values[49], 0.046074456321415407, 1e-15);
    CHECK_NEAR(cv.values[99], 0.73964497041420118, 1e-15);
  }
}

TEST_CASE("critical values are nondecreasing for every family") {
  const double kappa2 = 0.45 / 0.95;
  const RejectionCurve curves[] = {
      simes_curve(0.05),          aorc_curve(0.05),
      adjusted_h1_curve(0.05, 0.5), adjusted_h2_curve(0.05, kappa2),
      truncated_curve(0.05, 0.5),   beta_adjusted_curve(0.05, 1.76, 57),
  };
  for (const auto& curve : curves) {
    const CriticalValues cv = critical_values(curve, 57);
    for (int i = 1; i < cv.n; ++i) {
      CHECK(cv.values[i] >= cv.values[i - 1]);
    }
    CHECK(cv.values[0] > 0.0);
    CHECK(cv.values[cv.n - 1] <= 1.0);
  }
}

TEST_CASE("adjusted curves: junction continuity and top critical value") {
  const double alpha = 0.05;
  const double kappa2 = 0.45 / 0.95;
  const RejectionCurve h1 = adjusted_h1_curve(alpha, 0.5);
  const RejectionCurve h2 = adjusted_h2_curve(alpha, kappa2);

  CHECK_NEAR(x_star(h2), 0.5, 1e-15);
  CHECK_NEAR(x_star(h1), 0.7625, 1e-15);
  CHECK_NEAR(x_star(simes_curve(alpha)), alpha, 1e-16);
  CHECK(x_star(aorc_curve(alpha)) == 1.0);
  CHECK_NEAR(x_star(truncated_curve(alpha, 0.5)), 0.5, 1e-16);
  CHECK_NEAR(x_star(beta_adjusted_curve(alpha, 1.76, 100)),
             0.05 / (0.05 + 0.0176), 1e-15);

  // rho is continuous where the f-branch hands over to the continuation
  for (const auto& curve : {h1, h2}) {
    const double fk = f_alpha(curve.kappa, alpha);
    CHECK_NEAR(eval_rho(curve, fk - 1e-9), eval_rho(curve, fk + 1e-9), 1e-7);
    CHECK_NEAR(eval_rho(curve, fk), curve.kappa, 1e-12);
  }

  // rho(1) equals the top critical value by construction
  for (const auto& curve : {h1, h2}) {
    CHECK_NEAR(eval_rho(curve, 1.0), x_star(curve), 1e-15);
  }

  // kappa = 1 degenerates both adjustments to the unadjusted curve
  for (auto family : {CurveFamily::kAdjustedH1, CurveFamily::kAdjustedH2}) {
    const RejectionCurve degenerate =
        family == CurveFamily::kAdjustedH1 ? adjusted_h1_curve(alpha, 1.0)
                                           : adjusted_h2_curve(alpha, 1.0);
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      CHECK_NEAR(eval_rho(degenerate, x), f_alpha_inv(x, alpha), 1e-12);
    }
  }
}

TEST_CASE("kappa_for_xstar inverts x_star") {
  const double alpha = 0.05;
  CHECK_NEAR(kappa_for_xstar(CurveFamily::kAdjustedH2, alpha, 0.5), 0.45 / 0.95, 1e-15);
  CHECK_NEAR(kappa_for_xstar(CurveFamily::kAdjustedH1, alpha, 0.5),
             0.27452374988998833, 1e-12);
  for (double xstar : {0.06, 0.2, 0.5, 0.8, 1.0}) {
    const double k1 = kappa_for_xstar(CurveFamily::kAdjustedH1, alpha, xstar);
    const double k2 = kappa_for_xstar(CurveFamily::kAdjustedH2, alpha, xstar);
    CHECK_NEAR(x_star(adjusted_h1_curve(alpha, k1)), xstar, 1e-12);
    CHECK_NEAR(x_star(adjusted_h2_curve(alpha, k2)), xstar, 1e-12);
  }
  CHECK_THROWS_AS(kappa_for_xstar(CurveFamily::kSimes, alpha, 0.5), DomainError);
  CHECK_THROWS_AS(kappa_for_xstar(CurveFamily::kAdjustedH1, alpha, 0.04), DomainError);
  CHECK_THROWS_AS(kappa_for_xstar(CurveFamily::kAdjustedH2, alpha, 1.2), DomainError);
}

TEST_CASE("truncated curve clips the generator at kappa") {
  const RejectionCurve tr = truncated_curve(0.05, 0.5);
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK_NEAR(eval_rho(tr, x), std::min(f_alpha_inv(x, 0.05), 0.5), 1e-15);
  }
}

TEST_CASE("rejection curve eval_curve: closed forms and the unattained region") {
  const double inf = std::numeric_limits<double>::infinity();
  const RejectionCurve simes = simes_curve(0.05);
  CHECK_NEAR(eval_curve(simes, 0.04), 0.8, 1e-15);
  CHECK(eval_curve(simes, 0.06) == inf);

  const RejectionCurve ao = aorc_curve(0.05);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    CHECK(eval_curve(ao, t) == f_alpha(t, 0.05));
  }

  const RejectionCurve h2 = adjusted_h2_curve(0.05, 0.45 / 0.95);
  CHECK_NEAR(eval_curve(h2, 0.3), f_alpha(0.3, 0.05), 1e-15);
  CHECK_NEAR(eval_curve(h2, 0.48), 0.96, 1e-12);  // chord slope is exactly 2 here
  CHECK(eval_curve(h2, 0.51) == inf);

  CHECK(eval_curve(truncated_curve(0.05, 0.5), 0.6) == inf);
  CHECK_NEAR(eval_curve(truncated_curve(0.05, 0.5), 0.4), f_alpha(0.4, 0.05), 1e-15);

  const RejectionCurve ba = beta_adjusted_curve(0.05, 1.76, 100);
  CHECK_NEAR(eval_curve(ba, 0.3), 1.0176 * f_alpha(0.3, 0.05), 1e-12);
  CHECK(eval_curve(ba, x_star(ba) + 1e-9) == inf);
}

TEST_CASE("eval_curve is the generalized inverse of eval_rho") {
  const double kappa2 = 0.45 / 0.95;
  const RejectionCurve curves[] = {
      simes_curve(0.05),            aorc_curve(0.05),
      adjusted_h1_curve(0.05, 0.5), adjusted_h2_curve(0.05, kappa2),
      truncated_curve(0.05, 0.5),   beta_adjusted_curve(0.05, 1.76, 100),
  };
  for (const auto& curve : curves) {
    for (int i = 0; i <= 500; ++i) {
      const double x = i / 500.0;
      const double t = eval_rho(curve, x);
      // r(rho(x)) <= x, and rho is at least t slightly above r(t)
      const double r = eval_curve(curve, t);
      CHECK(r <= x + 1e-9);
      if (r < 1.0) {
        CHECK(eval_rho(curve, std::min(1.0, r + 1e-7)) >= t - 1e-9);
      }
    }
  }
}

TEST_CASE("threshold ratio q and its isotone majorant") {
  const double alpha = 0.05;
  const double kappa2 = 0.45 / 0.95;

  CHECK_NEAR(eval_q(aorc_curve(alpha), 0.5), 2.0 / 21.0, 1e-15);
  CHECK(eval_q(simes_curve(alpha), 0.0) == alpha);
  CHECK(eval_q(aorc_curve(alpha), 0.0) == alpha);
  CHECK_NEAR(eval_q(beta_adjusted_curve(alpha, 1.76, 100), 0.0), 0.05 / 1.0176, 1e-15);

  const RejectionCurve curves[] = {
      simes_curve(alpha),            aorc_curve(alpha),
      adjusted_h1_curve(alpha, 0.5), adjusted_h2_curve(alpha, kappa2),
      truncated_curve(alpha, 0.5),   beta_adjusted_curve(alpha, 1.76, 100),
  };
  for (const auto& curve : curves) {
    double prev_qbar = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      const double q = eval_q(curve, x);
      const double qbar = eval_q_bar(curve, x);
      CHECK(qbar >= q - 1e-12);            // majorant
      CHECK(qbar >= prev_qbar - 1e-12);    // isotone
      if (q_nondecreasing(curve)) {
        CHECK_NEAR(qbar, q, 1e-15);        // tight when q itself is isotone
      }
      prev_qbar = qbar;
    }
  }

  // the truncated ratio really does decay past f_alpha(kappa), so the
  // majorant freezes there and the family is flagged
  const RejectionCurve tr = truncated_curve(alpha, 0.5);
  CHECK_FALSE(q_nondecreasing(tr));
  const double fk = f_alpha(0.5, alpha);
  CHECK(eval_q(tr, 0.99) < eval_q(tr, fk) - 1e-3);
  CHECK_NEAR(eval_q_bar(tr, 0.99), eval_q(tr, fk), 1e-12);
  CHECK(q_nondecreasing(simes_curve(alpha)));
  CHECK(q_nondecreasing(aorc_curve(alpha)));
  CHECK(q_nondecreasing(adjusted_h1_curve(alpha, 0.5)));
  CHECK(q_nondecreasing(adjusted_h2_curve(alpha, kappa2)));
  CHECK(q_nondecreasing(beta_adjusted_curve(alpha, 1.76, 100)));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(simes_curve(0.0), DomainError);
  CHECK_THROWS_AS(simes_curve(1.0), DomainError);
  CHECK_THROWS_AS(aorc_curve(-0.1), DomainError);
  CHECK_THROWS_AS(adjusted_h1_curve(0.05, 0.0), DomainError);
  CHECK_THROWS_AS(adjusted_h2_curve(0.05, 1.5), DomainError);
  CHECK_THROWS_AS(truncated_curve(0.05, -0.2), DomainError);
  CHECK_THROWS_AS(beta_adjusted_curve(0.05, -1.0, 100), DomainError);
  CHECK_THROWS_AS(beta_adjusted_curve(0.05, 1.0, 0), DomainError);
  CHECK_THROWS_AS(f_alpha(1.5, 0.05), DomainError);
  CHECK_THROWS_AS(f_alpha(0.5, 1.5), DomainError);
  CHECK_THROWS_AS(eval_rho(aorc_curve(0.05), -0.01), DomainError);
  CHECK_THROWS_AS(eval_rho(aorc_curve(0.05),
                           std::numeric_limits<double>::quiet_NaN()),
                  DomainError);
  CHECK_THROWS_AS(critical_values(aorc_curve(0.05), 0), DomainError);
  CHECK_THROWS_AS(critical_values_from({}), DomainError);
  CHECK_THROWS_AS(critical_values_from({0.2, 0.1}), DomainError);
  CHECK_THROWS_AS(critical_values_from({0.2, 1.1}), DomainError);
  CHECK_NOTHROW(critical_values_from({0.0, 0.5, 0.5, 1.0}));
}
