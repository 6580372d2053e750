#pragma once

#include <cstdint>
#include <vector>

#include "aorc/curves.hpp"
#include "aorc/rng.hpp"
#include "aorc/stepwise.hpp"

namespace aorc {

// Data-generating models for simulation. In every model exactly n0 hypotheses
// are true nulls and they occupy the leading indices 0..n0-1.
enum class ModelKind {
  kDiracUniform,   // nulls: U(0,1), alternatives: exactly 0
  kNormalShift,    // one-sided z-tests, alternatives shifted by mu
  kEquicorrelated, // as kNormalShift with equicorrelated noise (correlation rho)
};

struct ModelSpec {
  ModelKind kind = ModelKind::kDiracUniform;
  int n = 0;
  int n0 = 0;
  double mu = 2.0;   // shift of false nulls (kNormalShift, kEquicorrelated)
  double rho = 0.1;  // common correlation (kEquicorrelated)
};

ModelSpec dirac_uniform_model(int n, int n0);
ModelSpec normal_shift_model(int n, int n0, double mu = 2.0);
ModelSpec equicorrelated_model(int n, int n0, double mu = 2.0, double rho = 0.1);

struct Dataset {
  std::vector<double> pvalues;
  std::vector<std::uint8_t> is_null;
};

// One draw from the model using the given stream. The draw order (nulls first,
// one shared factor first for the correlated model) is part of the contract:
// results for a fixed (seed, rep) never depend on anything else.
Dataset generate(const ModelSpec& model, RepStream& stream);

struct McEstimate {
  long reps = 0;
  double mean_fdp = 0.0;
  double se_fdp = 0.0;
  double mean_power = 0.0;
  double se_power = 0.0;
};

struct RepRecord {
  long rep = 0;
  int num_rejections = 0;
  int false_rejections = 0;
  double fdp = 0.0;
  double power = 0.0;
};

// Monte Carlo FDR / power estimate over reps independent replications.
// Replication r uses RepStream(seed, r). Work is split across threads (see
// parallel.hpp) but per-rep results land in a preallocated array and are
// reduced in index order, so the estimate is identical for any thread count.
// per_rep, when non-null, receives one record per replication.
McEstimate estimate(const ModelSpec& model, const CriticalValues& critvals,
                    ProcedureKind kind, double lambda, long reps,
                    std::uint64_t seed, std::vector<RepRecord>* per_rep = nullptr);

struct PowerComparison {
  McEstimate first;
  McEstimate second;
  double mean_power_diff = 0.0;  // first - second
  double se_power_diff = 0.0;    // paired (common random numbers)
};

// Paired comparison of two critical-value vectors on identical datasets.
PowerComparison compare_power(const ModelSpec& model,
                              const CriticalValues& first,
                              const CriticalValues& second,
                              ProcedureKind kind, double lambda, long reps,
                              std::uint64_t seed);

}  // namespace aorc
