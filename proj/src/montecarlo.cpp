#include "aorc/montecarlo.hpp"

#include <cmath>
#include <string>

#include "aorc/errors.hpp"
#include "aorc/parallel.hpp"
#include "aorc/rng.hpp"

namespace aorc {

namespace {

void check_model(const ModelSpec& model) {
  if (model.n < 1) {
    throw DomainError("model.n must be >= 1");
  }
  if (model.n0 < 0 || model.n0 > model.n) {
    throw DomainError("model.n0 must lie in {0..n}");
  }
  if (model.kind == ModelKind::kEquicorrelated &&
      !(model.rho >= 0.0 && model.rho < 1.0)) {
    throw DomainError("correlation must lie in [0,1)");
  }
}

double upper_tail_p(double z) {
  // one-sided p-value of a z-statistic
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and standard error with compensated, index-ordered accumulation; the
// result is a pure function of the array contents.
Moments reduce(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  Moments m;
  m.mean = sum / static_cast<double>(n);
  if (n < 2) return m;
  double ss = 0.0;
  carry = 0.0;
  for (double v : values) {
    const double d = (v - m.mean) * (v - m.mean) - carry;
    const double t = ss + d;
    carry = (t - ss) - d;
    ss = t;
  }
  const double var = ss / static_cast<double>(n - 1);
  m.se = std::sqrt(var / static_cast<double>(n));
  return m;
}

void check_reps(long reps) {
  if (reps < 1) {
    throw DomainError("reps must be >= 1");
  }
}

int count_false_rejections(const Decision& d, const std::vector<std::uint8_t>& is_null) {
  int v = 0;
  for (int i = 0; i < d.n; ++i) {
    if (d.rejected[i] && is_null[i]) ++v;
  }
  return v;
}

}  // namespace

ModelSpec dirac_uniform_model(int n, int n0) {
  ModelSpec m{ModelKind::kDiracUniform, n, n0};
  check_model(m);
  return m;
}

ModelSpec normal_shift_model(int n, int n0, double mu) {
  ModelSpec m{ModelKind::kNormalShift, n, n0, mu};
  check_model(m);
  return m;
}

ModelSpec equicorrelated_model(int n, int n0, double mu, double rho) {
  ModelSpec m{ModelKind::kEquicorrelated, n, n0, mu, rho};
  check_model(m);
  return m;
}

Dataset generate(const ModelSpec& model, RepStream& stream) {
  check_model(model);
  Dataset d;
  d.pvalues.resize(model.n);
  d.is_null.assign(model.n, 0);
  for (int i = 0; i < model.n0; ++i) d.is_null[i] = 1;

  switch (model.kind) {
    case ModelKind::kDiracUniform:
      for (int i = 0; i < model.n; ++i) {
        d.pvalues[i] = d.is_null[i] ? stream.uniform() : 0.0;
      }
      break;
    case ModelKind::kNormalShift:
      for (int i = 0; i < model.n; ++i) {
        const double z = stream.normal() + (d.is_null[i] ? 0.0 : model.mu);
        d.pvalues[i] = upper_tail_p(z);
      }
      break;
    case ModelKind::kEquicorrelated: {
      const double shared = stream.normal();  // drawn first, by contract
      const double w_shared = std::sqrt(model.rho);
      const double w_own = std::sqrt(1.0 - model.rho);
      for (int i = 0; i < model.n; ++i) {
        double z = w_shared * shared + w_own * stream.normal();
        if (!d.is_null[i]) z += model.mu;
        d.pvalues[i] = upper_tail_p(z);
      }
      break;
    }
  }
  return d;
}

McEstimate estimate(const ModelSpec& model, const CriticalValues& critvals,
                    ProcedureKind kind, double lambda, long reps,
                    std::uint64_t seed, std::vector<RepRecord>* per_rep) {
  check_model(model);
  check_reps(reps);
  if (critvals.n != model.n) {
    throw DomainError("critical values sized " + std::to_string(critvals.n) +
                      " but model has n = " + std::to_string(model.n));
  }

  std::vector<double> fdps(reps), powers(reps);
  if (per_rep) per_rep->resize(reps);

  parallel_for(0, static_cast<int>(reps), default_thread_count(), [&](int rep) {
    RepStream stream(seed, static_cast<std::uint64_t>(rep));
    const Dataset data = generate(model, stream);
    const Decision d = decide(data.pvalues, critvals, kind, lambda);
    fdps[rep] = fdp(d, data.is_null);
    powers[rep] = power_proportion(d, data.is_null);
    if (per_rep) {
      RepRecord& r = (*per_rep)[rep];
      r.rep = rep;
      r.num_rejections = d.num_rejections;
      r.false_rejections = count_false_rejections(d, data.is_null);
      r.fdp = fdps[rep];
      r.power = powers[rep];
    }
  });

  const Moments mf = reduce(fdps);
  const Moments mp = reduce(powers);
  McEstimate est;
  est.reps = reps;
  est.mean_fdp = mf.mean;
  est.se_fdp = mf.se;
  est.mean_power = mp.mean;
  est.se_power = mp.se;
  return est;
}

PowerComparison compare_power(const ModelSpec& model,
                              const CriticalValues& first,
                              const CriticalValues& second,
                              ProcedureKind kind, double lambda, long reps,
                              std::uint64_t seed) {
  check_model(model);
  check_reps(reps);
  if (first.n != model.n || second.n != model.n) {
    throw DomainError("critical values must match the model's n");
  }

  std::vector<double> fdp_a(reps), pow_a(reps), fdp_b(reps), pow_b(reps), diff(reps);
  parallel_for(0, static_cast<int>(reps), default_thread_count(), [&](int rep) {
    RepStream stream(seed, static_cast<std::uint64_t>(rep));
    const Dataset data = generate(model, stream);  // shared by both arms
    const Decision da = decide(data.pvalues, first, kind, lambda);
    const Decision db = decide(data.pvalues, second, kind, lambda);
    fdp_a[rep] = fdp(da, data.is_null);
    pow_a[rep] = power_proportion(da, data.is_null);
    fdp_b[rep] = fdp(db, data.is_null);
    pow_b[rep] = power_proportion(db, data.is_null);
    diff[rep] = pow_a[rep] - pow_b[rep];
  });

  PowerComparison cmp;
  const Moments fa = reduce(fdp_a), pa = reduce(pow_a);
  const Moments fb = reduce(fdp_b), pb = reduce(pow_b);
  const Moments pd = reduce(diff);
  cmp.first = {reps, fa.mean, fa.se, pa.mean, pa.se};
  cmp.second = {reps, fb.mean, fb.se, pb.mean, pb.se};
  cmp.mean_power_diff = pd.mean;
  cmp.se_power_diff = pd.se;
  return cmp;
}

}  // namespace aorc
