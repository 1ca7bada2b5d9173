// Command-line surface for the dependence-measure library: load a joint PMF
// from a file, evaluate measures and alpha sweeps, compute task-encoding
// rate regions, run the random-binning simulator, and run the built-in
// verification suite.
//
// Exit codes: 0 success, 1 usage/parse error, 2 solver non-convergence,
// 3 verification failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "renyidep/io.hpp"
#include "renyidep/measures.hpp"
#include "renyidep/pmf.hpp"
#include "renyidep/selfcheck.hpp"
#include "renyidep/solver.hpp"
#include "renyidep/task_encoding.hpp"

namespace {

using nlohmann::json;
using namespace renyidep;

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kNotConverged = 2;
constexpr int kVerifyFailed = 3;

struct CommonOpts {
  std::string file;
  std::string format = "human";
  SolverConfig cfg;
  std::optional<int> starts;

  SolverConfig solver_config() const {
    SolverConfig c = cfg;
    c.n_starts = starts;
    c.validate();
    return c;
  }
};

void add_solver_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.cfg.tol, "relative objective-change tolerance (bits)")
      ->capture_default_str();
  cmd->add_option("--max-iters", o.cfg.max_iters, "iteration cap per start")
      ->capture_default_str();
  cmd->add_option("--starts", o.starts,
                  "multi-start count (default: 1 for alpha >= 1/2, 8 below)");
  cmd->add_option("--grid-steps", o.cfg.grid_steps, "oracle simplex resolution")
      ->capture_default_str();
  cmd->add_option("--seed", o.cfg.seed, "RNG seed")->capture_default_str();
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool need_file = true) {
  auto* f = cmd->add_option("--file", o.file, "joint PMF file");
  if (need_file) f->required();
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json pmf_to_json(const Pmf& p) {
  json out = json::object();
  for (std::size_t i = 0; i < p.size(); ++i) out[p.label(i)] = p[i];
  return out;
}

std::string pmf_to_text(const Pmf& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += p.label(i) + "=" + fmt6(p[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

int run_measure(const CommonOpts& o, const std::string& measure, double alpha_in) {
  const JointPmf j = load_joint_pmf(o.file);
  if (j.renormalized()) {
    std::cerr << "warning: " << o.file << " was renormalized on load\n";
  }
  const SolverConfig cfg = o.solver_config();
  const AlphaOrder alpha(alpha_in);

  std::optional<MeasureResult> solved;
  double value = 0.0;
  if (measure == "J") {
    solved = compute_j_alpha(j, alpha, cfg);
  } else if (measure == "K") {
    solved = compute_k_alpha(j, alpha, cfg);
  } else if (measure == "I") {
    value = mutual_information(j).bits();
  } else if (measure == "H") {
    value = renyi_entropy(j.flattened(), alpha).bits();
  } else if (measure == "D") {
    value = renyi_divergence(j.flattened(),
                             product(j.marginal_x(), j.marginal_y()).flattened(), alpha)
                .bits();
  } else {  // Delta
    value = relative_alpha_entropy(
                j.flattened(), product(j.marginal_x(), j.marginal_y()).flattened(), alpha)
                .bits();
  }
  if (solved) value = solved->value.bits();
  const bool converged = solved ? solved->converged : true;

  if (o.format == "json") {
    json out{{"measure", measure}, {"alpha", alpha.value()}, {"value_bits", value},
             {"converged", converged}};
    if (solved) {
      out["iters"] = solved->iters;
      out["starts_used"] = solved->starts_used;
      out["regime"] = solved->regime == SolverRegime::kConvex ? "convex" : "nonconvex";
      out["qx_opt"] = pmf_to_json(solved->qx_opt);
      out["qy_opt"] = pmf_to_json(solved->qy_opt);
    }
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "measure,alpha,value_bits,converged,iters\n"
              << measure << ',' << fmt_full(alpha.value()) << ',' << fmt_full(value) << ','
              << (converged ? 1 : 0) << ',' << (solved ? solved->iters : 0) << "\n";
  } else {
    std::cout << measure << "_" << alpha.value() << " = " << fmt6(value) << " bits\n";
    if (solved) {
      std::cout << "converged: " << (converged ? "yes" : "no")
                << "  iterations: " << solved->iters << "  starts: " << solved->starts_used
                << "\n";
      std::cout << "qx_opt: " << pmf_to_text(solved->qx_opt) << "\n";
      std::cout << "qy_opt: " << pmf_to_text(solved->qy_opt) << "\n";
    }
  }
  return converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int run_sweep(const CommonOpts& o, double alpha_min, double alpha_max, int steps,
              std::vector<std::string> measures) {
  if (!(0.0 < alpha_min && alpha_min < alpha_max)) {
    throw std::runtime_error("sweep requires 0 < alpha-min < alpha-max");
  }
  if (steps < 2) throw std::runtime_error("sweep requires steps >= 2");
  const JointPmf j = load_joint_pmf(o.file);
  const SolverConfig cfg = o.solver_config();
  bool want_j = false, want_k = false;
  for (const auto& m : measures) {
    if (m == "J") want_j = true;
    else if (m == "K") want_k = true;
    else throw std::runtime_error("sweep measures must be J and/or K");
  }

  struct Row {
    double alpha;
    std::optional<MeasureResult> j, k;
  };
  std::vector<Row> rows;
  for (int i = 0; i < steps; ++i) {
    const double a = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
    Row row{a, {}, {}};
    const AlphaOrder alpha(a);
    if (want_j) row.j = compute_j_alpha(j, alpha, cfg);
    if (want_k) row.k = compute_k_alpha(j, alpha, cfg);
    rows.push_back(std::move(row));
  }

  bool all_converged = true;
  for (const Row& r : rows) {
    if (r.j && !r.j->converged) all_converged = false;
    if (r.k && !r.k->converged) all_converged = false;
  }

  const bool full = o.format != "human";
  auto val = [&](double v) { return full ? fmt_full(v) : fmt6(v); };
  if (o.format == "json") {
    json out = json::array();
    for (const Row& r : rows) {
      json jr{{"alpha", r.alpha}};
      if (r.j) {
        jr["j_value"] = r.j->value.bits();
        jr["j_converged"] = r.j->converged;
        jr["j_iters"] = r.j->iters;
      }
      if (r.k) {
        jr["k_value"] = r.k->value.bits();
        jr["k_converged"] = r.k->converged;
        jr["k_iters"] = r.k->iters;
      }
      out.push_back(std::move(jr));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    const char sep = o.format == "csv" ? ',' : '\t';
    std::cout << "alpha" << sep << "j_value" << sep << "j_converged" << sep << "j_iters" << sep
              << "k_value" << sep << "k_converged" << sep << "k_iters\n";
    for (const Row& r : rows) {
      std::cout << val(r.alpha) << sep;
      if (r.j) {
        std::cout << val(r.j->value.bits()) << sep << (r.j->converged ? 1 : 0) << sep
                  << r.j->iters;
      } else {
        std::cout << sep << sep;
      }
      std::cout << sep;
      if (r.k) {
        std::cout << val(r.k->value.bits()) << sep << (r.k->converged ? 1 : 0) << sep
                  << r.k->iters;
      } else {
        std::cout << sep << sep;
      }
      std::cout << "\n";
    }
  }
  return all_converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------------------
// rate-region
// ---------------------------------------------------------------------------

int run_rate_region(const CommonOpts& o, double rho) {
  const JointPmf j = load_joint_pmf(o.file);
  const RateRegion r = rate_region(j, rho, o.solver_config());
  if (o.format == "json") {
    json out{{"rho", r.rho},
             {"rx_min_bits", r.rx_min},
             {"ry_min_bits", r.ry_min},
             {"sum_min_bits", r.sum_min},
             {"corners", json::array({json::array({r.rx_min, r.sum_min - r.rx_min}),
                                      json::array({r.sum_min - r.ry_min, r.ry_min})})},
             {"k_converged", r.k_converged}};
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "rho,rx_min,ry_min,sum_min,k_converged\n"
              << fmt_full(r.rho) << ',' << fmt_full(r.rx_min) << ',' << fmt_full(r.ry_min)
              << ',' << fmt_full(r.sum_min) << ',' << (r.k_converged ? 1 : 0) << "\n";
  } else {
    std::cout << "rho = " << r.rho << "\n"
              << "R_X  >= " << fmt6(r.rx_min) << " bits/symbol\n"
              << "R_Y  >= " << fmt6(r.ry_min) << " bits/symbol\n"
              << "R_X + R_Y >= " << fmt6(r.sum_min) << " bits/symbol\n"
              << "corners: (" << fmt6(r.rx_min) << ", " << fmt6(r.sum_min - r.rx_min)
              << ") and (" << fmt6(r.sum_min - r.ry_min) << ", " << fmt6(r.ry_min) << ")\n";
  }
  return r.k_converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int run_simulate(const CommonOpts& o, int n, double rx, double ry, double rho,
                 std::int64_t trials, std::uint64_t seed, bool exact) {
  const JointPmf j = load_joint_pmf(o.file);
  const SimOutcome s = simulate_list_moment(j, n, rx, ry, rho, trials, seed, exact);
  const RateRegion region = rate_region(j, rho, o.solver_config());
  const bool inside = region.contains(rx, ry);
  if (o.format == "json") {
    json out{{"n", s.n},
             {"rx", s.rx},
             {"ry", s.ry},
             {"rho", s.rho},
             {"moment_estimate", s.moment_estimate},
             {"method", s.method == SimOutcome::Method::kExact ? "exact" : "monte_carlo"},
             {"trials", s.trials},
             {"seed", s.seed},
             {"std_error", s.std_error},
             {"inside_rate_region", inside}};
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "n,rx,ry,rho,moment_estimate,method,trials,seed,std_error,inside_region\n"
              << s.n << ',' << fmt_full(s.rx) << ',' << fmt_full(s.ry) << ','
              << fmt_full(s.rho) << ',' << fmt_full(s.moment_estimate) << ','
              << (s.method == SimOutcome::Method::kExact ? "exact" : "monte_carlo") << ','
              << s.trials << ',' << s.seed << ',' << fmt_full(s.std_error) << ','
              << (inside ? 1 : 0) << "\n";
  } else {
    std::cout << "E[list^" << rho << "] = " << fmt6(s.moment_estimate)
              << (s.method == SimOutcome::Method::kExact
                      ? " (exact enumeration"
                      : " (Monte Carlo, " + std::to_string(s.trials) + " trials")
              << ", n = " << s.n << ", seed = " << s.seed << ")\n";
    if (s.method == SimOutcome::Method::kMonteCarlo) {
      std::cout << "std error: " << fmt6(s.std_error) << "\n";
    }
    std::cout << "rates (" << fmt6(rx) << ", " << fmt6(ry) << ") are "
              << (inside ? "inside" : "outside") << " the rate region (sum bound "
              << fmt6(region.sum_min) << " bits)\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const std::string& format, std::uint64_t seed) {
  const std::vector<CheckResult> results = run_selfchecks(seed);
  std::size_t failed = 0;
  if (format == "json") {
    json out = json::array();
    for (const CheckResult& r : results) {
      out.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      failed += !r.pass;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const CheckResult& r : results) {
      std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
      if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
      std::cout << "\n";
      failed += !r.pass;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
  }
  return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi-order dependence measures on finite joint PMFs"};
  app.require_subcommand(1);

  CommonOpts measure_opts;
  std::string measure = "J";
  double alpha = 1.0;
  auto* cmd_measure = app.add_subcommand("measure", "compute one measure of a joint PMF");
  add_common_flags(cmd_measure, measure_opts);
  cmd_measure->add_option("--measure", measure,
                          "J | K | I | D | Delta | H  (D, Delta are taken against the "
                          "product of the file's marginals; H is the Renyi entropy of the "
                          "flattened joint)")
      ->check(CLI::IsMember({"J", "K", "I", "D", "Delta", "H"}))
      ->capture_default_str();
  cmd_measure->add_option("--alpha", alpha, "order parameter, > 0")->capture_default_str();
  add_solver_flags(cmd_measure, measure_opts);

  CommonOpts sweep_opts;
  double alpha_min = 0.1, alpha_max = 4.0;
  int sweep_steps = 20;
  std::vector<std::string> sweep_measures{"J", "K"};
  auto* cmd_sweep = app.add_subcommand("sweep", "tabulate J/K over an alpha range");
  add_common_flags(cmd_sweep, sweep_opts);
  cmd_sweep->add_option("--alpha-min", alpha_min, "lowest alpha, > 0")->capture_default_str();
  cmd_sweep->add_option("--alpha-max", alpha_max, "highest alpha")->capture_default_str();
  cmd_sweep->add_option("--steps", sweep_steps, "number of grid points, >= 2")
      ->capture_default_str();
  cmd_sweep->add_option("--measure", sweep_measures, "measures to sweep (J, K)")
      ->capture_default_str();
  add_solver_flags(cmd_sweep, sweep_opts);

  CommonOpts region_opts;
  double rho = 1.0;
  auto* cmd_region =
      app.add_subcommand("rate-region", "task-encoding rate region for a fixed rho");
  add_common_flags(cmd_region, region_opts);
  cmd_region->add_option("--rho", rho, "list-size moment order, > 0")->capture_default_str();
  add_solver_flags(cmd_region, region_opts);

  CommonOpts sim_opts;
  int sim_n = 2;
  double sim_rx = 1.0, sim_ry = 1.0, sim_rho = 1.0;
  std::int64_t sim_trials = 10000;
  std::uint64_t sim_seed = 1;
  bool sim_exact = false;
  auto* cmd_sim =
      app.add_subcommand("simulate", "random-binning list-size moment at block length n");
  add_common_flags(cmd_sim, sim_opts);
  cmd_sim->add_option("--n", sim_n, "block length")->capture_default_str();
  cmd_sim->add_option("--rx", sim_rx, "X description rate, bits/symbol")->capture_default_str();
  cmd_sim->add_option("--ry", sim_ry, "Y description rate, bits/symbol")->capture_default_str();
  cmd_sim->add_option("--rho", sim_rho, "moment order, > 0")->capture_default_str();
  cmd_sim->add_option("--trials", sim_trials, "Monte Carlo trials")->capture_default_str();
  cmd_sim->add_option("--seed", sim_seed, "encoder/trial seed")->capture_default_str();
  cmd_sim->add_flag("--exact", sim_exact, "enumerate all source pairs instead of sampling");

  std::string verify_format = "human";
  std::uint64_t verify_seed = 20260810ull;
  auto* cmd_verify = app.add_subcommand("verify", "run the built-in verification suite");
  cmd_verify->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();
  cmd_verify->add_option("--seed", verify_seed, "seed for the randomized checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (cmd_measure->parsed()) return run_measure(measure_opts, measure, alpha);
    if (cmd_sweep->parsed()) {
      return run_sweep(sweep_opts, alpha_min, alpha_max, sweep_steps, sweep_measures);
    }
    if (cmd_region->parsed()) return run_rate_region(region_opts, rho);
    if (cmd_sim->parsed()) {
      return run_simulate(sim_opts, sim_n, sim_rx, sim_ry, sim_rho, sim_trials, sim_seed,
                          sim_exact);
    }
    if (cmd_verify->parsed()) return run_verify(verify_format, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
