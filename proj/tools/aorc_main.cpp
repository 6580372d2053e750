// Command-line front end: critical values, stepwise decisions, exact
// Dirac-uniform FDR analysis, beta calibration, Monte Carlo, asymptotics.
//
// Conventions shared by every subcommand:
//   * tabular data is CSV with 17-significant-digit floats (exact round-trip),
//   * single results are JSON on stdout with a schema marker,
//   * errors are JSON on stderr; exit 2 = parse/input, 3 = domain, 4 = size cap.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aorc/asymptotics.hpp"
#include "aorc/calibrate.hpp"
#include "aorc/curves.hpp"
#include "aorc/errors.hpp"
#include "aorc/exact_du.hpp"
#include "aorc/montecarlo.hpp"
#include "aorc/stepwise.hpp"

using nlohmann::json;

namespace {

// Input/usage problems detected by the tool itself (bad file content etc.).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json json_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

// ---- curve selection flags (shared by most subcommands) ----

struct CurveOpts {
  std::string family;
  double alpha = 0.0;
  double kappa = 0.0;
  double xstar = 0.0;
  double beta = 0.0;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* xstar_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
};

void add_curve_opts(CLI::App* cmd, CurveOpts& opts) {
  cmd->add_option("--curve", opts.family,
                  "curve family: simes|aorc|adjusted-h1|adjusted-h2|truncated|beta-adjusted")
      ->required();
  cmd->add_option("--alpha", opts.alpha, "target FDR level in (0,1)")->required();
  opts.kappa_opt = cmd->add_option("--kappa", opts.kappa,
                                   "switch point in (0,1] (adjusted-h1/h2, truncated)");
  opts.xstar_opt = cmd->add_option(
      "--xstar", opts.xstar,
      "largest critical value; alternative to --kappa for adjusted-h1/h2");
  opts.kappa_opt->excludes(opts.xstar_opt);
  opts.xstar_opt->excludes(opts.kappa_opt);
  opts.beta_opt = cmd->add_option("--beta", opts.beta,
                                  "adjustment >= 0 (beta-adjusted)");
}

// n_for_beta: the sample size the beta-adjusted curve scales with.
aorc::RejectionCurve resolve_curve(const CurveOpts& opts, int n_for_beta) {
  const bool has_kappa = opts.kappa_opt && opts.kappa_opt->count() > 0;
  const bool has_xstar = opts.xstar_opt && opts.xstar_opt->count() > 0;
  const bool has_beta = opts.beta_opt && opts.beta_opt->count() > 0;

  auto reject_kappa = [&](const char* fam) {
    if (has_kappa || has_xstar) {
      throw aorc::DomainError(std::string("--kappa/--xstar do not apply to ") + fam);
    }
  };
  auto reject_beta = [&](const char* fam) {
    if (has_beta) {
      throw aorc::DomainError(std::string("--beta does not apply to ") + fam);
    }
  };

  if (opts.family == "simes") {
    reject_kappa("simes");
    reject_beta("simes");
    return aorc::simes_curve(opts.alpha);
  }
  if (opts.family == "aorc") {
    reject_kappa("aorc");
    reject_beta("aorc");
    return aorc::aorc_curve(opts.alpha);
  }
  if (opts.family == "adjusted-h1" || opts.family == "adjusted-h2") {
    reject_beta(opts.family.c_str());
    const bool h1 = opts.family == "adjusted-h1";
    double kappa = opts.kappa;
    if (has_xstar) {
      kappa = aorc::kappa_for_xstar(
          h1 ? aorc::CurveFamily::kAdjustedH1 : aorc::CurveFamily::kAdjustedH2,
          opts.alpha, opts.xstar);
    } else if (!has_kappa) {
      throw aorc::DomainError(opts.family + " needs --kappa or --xstar");
    }
    return h1 ? aorc::adjusted_h1_curve(opts.alpha, kappa)
              : aorc::adjusted_h2_curve(opts.alpha, kappa);
  }
  if (opts.family == "truncated") {
    reject_beta("truncated");
    if (!has_kappa) {
      throw aorc::DomainError("truncated needs --kappa (its largest critical value)");
    }
    return aorc::truncated_curve(opts.alpha, opts.kappa);
  }
  if (opts.family == "beta-adjusted") {
    reject_kappa("beta-adjusted");
    if (!has_beta) {
      throw aorc::DomainError("beta-adjusted needs --beta");
    }
    if (n_for_beta < 1) {
      throw aorc::DomainError("beta-adjusted needs --n (the curve scales with 1/n)");
    }
    return aorc::beta_adjusted_curve(opts.alpha, opts.beta, n_for_beta);
  }
  throw aorc::DomainError("unknown curve family '" + opts.family + "'");
}

aorc::ProcedureKind parse_kind(const std::string& kind) {
  if (kind == "su") return aorc::ProcedureKind::kStepUp;
  if (kind == "sd") return aorc::ProcedureKind::kStepDown;
  if (kind == "sud") return aorc::ProcedureKind::kStepUpDown;
  throw aorc::DomainError("--kind must be su, sd or sud, got '" + kind + "'");
}

aorc::ModelKind parse_model(const std::string& model) {
  if (model == "du") return aorc::ModelKind::kDiracUniform;
  if (model == "normal-shift") return aorc::ModelKind::kNormalShift;
  if (model == "equicorrelated") return aorc::ModelKind::kEquicorrelated;
  throw aorc::DomainError("--model must be du, normal-shift or equicorrelated");
}

// ---- I/O helpers ----

std::vector<double> read_pvalues(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open input file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError("'" + path + "': no p-values (empty file)");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "p") {
    throw InputError("'" + path + "' line 1: expected header 'p', got '" + line + "'");
  }
  std::vector<double> p;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate a trailing blank line
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw InputError("'" + path + "' line " + std::to_string(lineno) +
                       ": not a number: '" + line + "'");
    }
    if (used != line.size()) {
      throw InputError("'" + path + "' line " + std::to_string(lineno) +
                       ": trailing characters in '" + line + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("'" + path + "' line " + std::to_string(lineno) +
                       ": p-value " + line + " outside [0,1]");
    }
    p.push_back(v);
  }
  if (p.empty()) {
    throw InputError("'" + path + "': no p-values");
  }
  return p;
}

// Writes to the file when path is nonempty, otherwise to stdout.
void emit_table(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw InputError("failed writing '" + path + "'");
  }
}

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Stepwise multiple-testing procedures with FDR control: rejection-curve "
      "critical values, exact Dirac-uniform analysis, calibration, simulation"};
  app.require_subcommand(1);

  // ---- critvals ----
  auto* cmd_critvals = app.add_subcommand(
      "critvals", "print the critical values c_i = rho(i/n) of a curve");
  CurveOpts critvals_curve;
  add_curve_opts(cmd_critvals, critvals_curve);
  int critvals_n = 0;
  std::string critvals_out;
  cmd_critvals->add_option("--n", critvals_n, "number of hypotheses")->required();
  cmd_critvals->add_option("--output", critvals_out, "CSV path (default stdout)");
  cmd_critvals->callback([&] {
    const aorc::RejectionCurve curve = resolve_curve(critvals_curve, critvals_n);
    const aorc::CriticalValues cv = aorc::critical_values(curve, critvals_n);
    std::ostringstream csv;
    csv << "index,critical_value\n";
    for (int i = 1; i <= cv.n; ++i) {
      csv << i << ',' << fmt17(cv.values[i - 1]) << '\n';
    }
    emit_table(critvals_out, csv.str());
  });

  // ---- decide ----
  auto* cmd_decide = app.add_subcommand(
      "decide", "run a stepwise procedure on a CSV of p-values");
  CurveOpts decide_curve;
  add_curve_opts(cmd_decide, decide_curve);
  std::string decide_in, decide_out, decide_kind = "su";
  double decide_lambda = 0.5;
  cmd_decide->add_option("--input", decide_in, "CSV file with header 'p'")->required();
  cmd_decide->add_option("--output", decide_out, "per-hypothesis CSV (index,p,rejected)")
      ->required();
  cmd_decide->add_option("--kind", decide_kind, "procedure kind: su|sd|sud (default su)");
  cmd_decide->add_option("--lambda", decide_lambda,
                         "crossing parameter in [0,1] for --kind sud (default 0.5)");
  cmd_decide->callback([&] {
    const std::vector<double> p = read_pvalues(decide_in);
    const int n = static_cast<int>(p.size());
    const aorc::RejectionCurve curve = resolve_curve(decide_curve, n);
    const aorc::CriticalValues cv = aorc::critical_values(curve, n);
    const aorc::Decision d =
        aorc::decide(p, cv, parse_kind(decide_kind), decide_lambda);

    std::ostringstream csv;
    csv << "index,p,rejected\n";
    for (int i = 0; i < n; ++i) {
      csv << (i + 1) << ',' << fmt17(p[i]) << ',' << int(d.rejected[i]) << '\n';
    }
    emit_table(decide_out, csv.str());

    json j;
    j["schema"] = 1;
    j["n"] = n;
    j["kind"] = decide_kind;
    if (decide_kind == "sud") j["lambda"] = decide_lambda;
    j["R"] = d.num_rejections;
    j["m_index"] = d.m_index;
    j["threshold"] = json_or_null(d.threshold);
    j["output"] = decide_out;
    emit_json(j);
  });

  // ---- exact-fdr ----
  auto* cmd_exact = app.add_subcommand(
      "exact-fdr", "exact step-up FDR under Dirac-uniform configurations");
  CurveOpts exact_curve;
  add_curve_opts(cmd_exact, exact_curve);
  int exact_n = 0, exact_n0 = -1;
  bool exact_scan = false;
  std::string exact_kind = "su", exact_out;
  cmd_exact->add_option("--n", exact_n, "number of hypotheses")->required();
  auto* n0_opt = cmd_exact->add_option("--n0", exact_n0, "number of true nulls");
  auto* scan_opt = cmd_exact->add_flag("--scan", exact_scan,
                                       "tabulate all n0 = 0..n instead of one n0");
  n0_opt->excludes(scan_opt);
  scan_opt->excludes(n0_opt);
  cmd_exact->add_option("--kind", exact_kind, "procedure kind (only su is exact)");
  cmd_exact->add_option("--output", exact_out, "CSV path for --scan (default stdout)");
  cmd_exact->callback([&] {
    if (exact_kind != "su") {
      throw aorc::DomainError(
          "exact analysis covers --kind su only; use simulate for sd/sud");
    }
    const aorc::RejectionCurve curve = resolve_curve(exact_curve, exact_n);
    if (exact_scan) {
      const aorc::ScanResult scan = aorc::worst_case_scan(curve, exact_n);
      std::ostringstream csv;
      csv << "n0,exact_fdr,upper_bound\n";
      for (int n0 = 0; n0 <= scan.n; ++n0) {
        csv << n0 << ',' << fmt17(scan.fdr[n0]) << ',' << fmt17(scan.bound[n0])
            << '\n';
      }
      emit_table(exact_out, csv.str());
      if (!exact_out.empty()) {
        json j;
        j["schema"] = 1;
        j["n"] = scan.n;
        j["argmax_n0"] = scan.argmax_n0;
        j["max_fdr"] = scan.max_fdr;
        j["du_least_favorable"] = scan.du_least_favorable;
        j["output"] = exact_out;
        emit_json(j);
      }
      return;
    }
    if (n0_opt->count() == 0) {
      throw aorc::DomainError("exact-fdr needs --n0 or --scan");
    }
    const aorc::CriticalValues cv = aorc::critical_values(curve, exact_n);
    const aorc::DuConfig config{exact_n, exact_n0};
    json j;
    j["schema"] = 1;
    j["n"] = exact_n;
    j["n0"] = exact_n0;
    j["exact_fdr"] = aorc::exact_du_fdr_su(cv, config);
    if (exact_n0 >= 1) {
      j["upper_bound"] = aorc::fdr_upper_bound(cv, curve, config);
    } else {
      j["upper_bound"] = nullptr;
    }
    emit_json(j);
  });

  // ---- calibrate ----
  auto* cmd_cal = app.add_subcommand(
      "calibrate", "smallest beta with exact worst-case FDR <= alpha");
  int cal_n = 0;
  double cal_alpha = 0.0, cal_tol = 1e-3;
  std::string cal_trace;
  cmd_cal->add_option("--n", cal_n, "number of hypotheses")->required();
  cmd_cal->add_option("--alpha", cal_alpha, "target FDR level in (0,1)")->required();
  cmd_cal->add_option("--tol", cal_tol, "bracket width for bisection (default 1e-3)");
  cmd_cal->add_option("--trace", cal_trace, "CSV path for the evaluation trace");
  cmd_cal->callback([&] {
    const aorc::CalibrationResult r = aorc::calibrate_beta(cal_n, cal_alpha, cal_tol);
    if (!cal_trace.empty()) {
      std::ostringstream csv;
      csv << "beta,max_fdr,argmax_n0\n";
      for (const auto& point : r.trace) {
        csv << fmt17(point.beta) << ',' << fmt17(point.max_fdr) << ','
            << point.argmax_n0 << '\n';
      }
      emit_table(cal_trace, csv.str());
    }
    json j;
    j["schema"] = 1;
    j["n"] = r.n;
    j["alpha"] = r.alpha;
    j["tol"] = cal_tol;
    j["beta_star"] = r.beta_star;
    j["achieved_max_fdr"] = r.achieved_max_fdr;
    j["argmax_n0"] = r.argmax_n0;
    if (!cal_trace.empty()) j["trace"] = cal_trace;
    emit_json(j);
  });

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand(
      "simulate", "Monte Carlo FDR/power of a stepwise procedure");
  CurveOpts sim_curve;
  add_curve_opts(cmd_sim, sim_curve);
  std::string sim_model = "du", sim_kind = "su", sim_per_rep;
  int sim_n = 0, sim_n0 = 0;
  double sim_mu = 2.0, sim_rho = 0.1, sim_lambda = 0.5;
  long sim_reps = 0;
  std::uint64_t sim_seed = 0;
  cmd_sim->add_option("--model", sim_model, "du|normal-shift|equicorrelated (default du)");
  cmd_sim->add_option("--n", sim_n, "number of hypotheses")->required();
  cmd_sim->add_option("--n0", sim_n0, "number of true nulls")->required();
  cmd_sim->add_option("--mu", sim_mu, "shift of false nulls (default 2)");
  cmd_sim->add_option("--rho", sim_rho, "equicorrelation in [0,1) (default 0.1)");
  cmd_sim->add_option("--kind", sim_kind, "procedure kind: su|sd|sud (default su)");
  cmd_sim->add_option("--lambda", sim_lambda, "crossing parameter for sud (default 0.5)");
  cmd_sim->add_option("--reps", sim_reps, "number of replications")->required();
  cmd_sim->add_option("--seed", sim_seed, "master seed; reruns are bit-identical")
      ->required();
  cmd_sim->add_option("--per-rep", sim_per_rep, "CSV path for per-replication records");
  cmd_sim->callback([&] {
    const aorc::RejectionCurve curve = resolve_curve(sim_curve, sim_n);
    const aorc::CriticalValues cv = aorc::critical_values(curve, sim_n);
    const aorc::ModelKind kind = parse_model(sim_model);
    aorc::ModelSpec model;
    switch (kind) {
      case aorc::ModelKind::kDiracUniform:
        model = aorc::dirac_uniform_model(sim_n, sim_n0);
        break;
      case aorc::ModelKind::kNormalShift:
        model = aorc::normal_shift_model(sim_n, sim_n0, sim_mu);
        break;
      case aorc::ModelKind::kEquicorrelated:
        model = aorc::equicorrelated_model(sim_n, sim_n0, sim_mu, sim_rho);
        break;
    }
    std::vector<aorc::RepRecord> records;
    std::vector<aorc::RepRecord>* records_ptr =
        sim_per_rep.empty() ? nullptr : &records;
    const aorc::McEstimate est =
        aorc::estimate(model, cv, parse_kind(sim_kind), sim_lambda, sim_reps,
                       sim_seed, records_ptr);
    if (records_ptr) {
      std::ostringstream csv;
      csv << "rep,R,V,fdp,power\n";
      for (const auto& r : records) {
        csv << r.rep << ',' << r.num_rejections << ',' << r.false_rejections
            << ',' << fmt17(r.fdp) << ',' << fmt17(r.power) << '\n';
      }
      emit_table(sim_per_rep, csv.str());
    }
    json j;
    j["schema"] = 1;
    j["model"] = sim_model;
    j["n"] = sim_n;
    j["n0"] = sim_n0;
    if (kind != aorc::ModelKind::kDiracUniform) j["mu"] = sim_mu;
    if (kind == aorc::ModelKind::kEquicorrelated) j["rho"] = sim_rho;
    j["kind"] = sim_kind;
    if (sim_kind == "sud") j["lambda"] = sim_lambda;
    j["reps"] = est.reps;
    j["seed"] = sim_seed;
    j["mean_fdp"] = est.mean_fdp;
    j["se_fdp"] = est.se_fdp;
    j["mean_power"] = est.mean_power;
    j["se_power"] = est.se_power;
    if (!sim_per_rep.empty()) j["per_rep"] = sim_per_rep;
    emit_json(j);
  });

  // ---- asymptotics ----
  auto* cmd_asym = app.add_subcommand(
      "asymptotics", "limiting thresholds and FDR over a grid of null fractions");
  CurveOpts asym_curve;
  add_curve_opts(cmd_asym, asym_curve);
  int asym_n = 0, asym_points = 101;
  std::vector<double> asym_zetas;
  std::string asym_out;
  cmd_asym->add_option("--n", asym_n, "sample size (beta-adjusted curve only)");
  cmd_asym->add_option("--zeta", asym_zetas, "explicit zeta values (repeatable)");
  cmd_asym->add_option("--zeta-points", asym_points,
                       "grid size on [0,1] when --zeta is absent (default 101)");
  cmd_asym->add_option("--output", asym_out, "CSV path (default stdout)");
  cmd_asym->callback([&] {
    const aorc::RejectionCurve curve = resolve_curve(asym_curve, asym_n);
    std::vector<double> zetas = asym_zetas;
    if (zetas.empty()) {
      if (asym_points < 2) {
        throw aorc::DomainError("--zeta-points must be >= 2");
      }
      zetas.resize(asym_points);
      for (int i = 0; i < asym_points; ++i) {
        zetas[i] = static_cast<double>(i) / (asym_points - 1);
      }
    }
    std::ostringstream csv;
    csv << "zeta,t_zeta,r_star,limiting_fdr,level_g\n";
    for (double z : zetas) {
      const double t = aorc::t_zeta(z, curve.alpha);
      const double r = aorc::solve_r_star(curve, z);
      const double fdr = aorc::limiting_fdr_of_procedure(curve, z);
      std::string g = "nan";
      switch (curve.family) {
        case aorc::CurveFamily::kSimes:
        case aorc::CurveFamily::kBetaAdjusted:
        case aorc::CurveFamily::kTruncated:
          g = fmt17(aorc::level_function_g(curve, z));
          break;
        default:
          break;
      }
      csv << fmt17(z) << ',' << fmt17(t) << ',' << fmt17(r) << ',' << fmt17(fdr)
          << ',' << g << '\n';
    }
    emit_table(asym_out, csv.str());
  });

  // ---- curve-table ----
  auto* cmd_table = app.add_subcommand(
      "curve-table", "sample rho, the rejection curve and the threshold ratio");
  CurveOpts table_curve;
  add_curve_opts(cmd_table, table_curve);
  int table_n = 0, table_points = 101;
  std::string table_out;
  cmd_table->add_option("--n", table_n, "sample size (beta-adjusted curve only)");
  cmd_table->add_option("--points", table_points, "grid size on [0,1] (default 101)");
  cmd_table->add_option("--output", table_out, "CSV path (default stdout)");
  cmd_table->callback([&] {
    if (table_points < 2) {
      throw aorc::DomainError("--points must be >= 2");
    }
    const aorc::RejectionCurve curve = resolve_curve(table_curve, table_n);
    std::ostringstream csv;
    csv << "x,rho,r,q,q_bar\n";
    for (int i = 0; i < table_points; ++i) {
      const double x = static_cast<double>(i) / (table_points - 1);
      csv << fmt17(x) << ',' << fmt17(aorc::eval_rho(curve, x)) << ','
          << fmt17(aorc::eval_curve(curve, x)) << ','
          << fmt17(aorc::eval_q(curve, x)) << ','
          << fmt17(aorc::eval_q_bar(curve, x)) << '\n';
    }
    emit_table(table_out, csv.str());
  });

  // ---- dispatch with the documented exit-code mapping ----
  auto fail = [](const char* kind, const std::string& message, int code) {
    json j;
    j["schema"] = 1;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);  // subcommand callbacks run inside
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("parse", e.what(), 2);
  } catch (const InputError& e) {
    return fail("input", e.what(), 2);
  } catch (const aorc::SizeCapError& e) {
    return fail("size_cap", e.what(), 4);
  } catch (const aorc::DomainError& e) {
    return fail("domain", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
