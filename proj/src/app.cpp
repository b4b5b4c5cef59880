#include "bresse/app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "bresse/certify.hpp"
#include "bresse/errors.hpp"
#include "bresse/generator.hpp"
#include "bresse/multiplier.hpp"
#include "bresse/report.hpp"
#include "bresse/sampling.hpp"
#include "bresse/spectral.hpp"
#include "bresse/timeint.hpp"

namespace bresse {

using ojson = nlohmann::ordered_json;

Command parse_command(const std::string& name) {
  if (name == "simulate") return Command::simulate;
  if (name == "spectrum") return Command::spectrum;
  if (name == "sweep") return Command::sweep;
  if (name == "certify") return Command::certify;
  if (name == "verify") return Command::verify;
  throw ConfigError("command", "unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
    case Command::certify: return "certify";
    case Command::verify: return "verify";
  }
  return "?";
}

namespace {

// null for non-finite values, which JSON cannot carry.
ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson complex_pair(cdouble z) { return ojson::array({number(z.real()), number(z.imag())}); }

ojson config_json(const RunConfig& c) {
  const BresseParams& p = c.params;
  return ojson{{"scenario", scenario_name(c.scenario)},
               {"N", c.N},
               {"seed", c.seed},
               {"params",
                {{"rho1", p.rho1},
                 {"rho2", p.rho2},
                 {"kappa", p.kappa},
                 {"k0", p.k0},
                 {"b", p.b},
                 {"ell", p.ell},
                 {"L", p.L},
                 {"gamma1", p.gamma1},
                 {"gamma2", p.gamma2},
                 {"gamma3", p.gamma3}}}};
}

struct Writer {
  std::filesystem::path dir;
  RunResult* result;

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void text(const std::string& name, const std::string& content) const {
    write_file_atomic(path(name), content);
    result->files.push_back(path(name));
  }
  void csv(const std::string& name, const CsvTable& t) const { text(name, to_csv(t)); }
  void summary(const std::string& name, const ojson& j) const {
    text(name, j.dump(2) + "\n");
    result->summary = path(name);
  }
};

void run_simulate(const RunConfig& cfg, const Writer& out, RunResult& res) {
  const FemSystem sys = build_system(cfg.params, cfg.N);
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(sys);
  const RealState init = smooth_initial_state(sys.grid, cfg.seed);
  const EnergyTrace trace = simulate(init, cfg.T, dt, sys);
  const double fit_end = cfg.fit_end > 0.0 ? cfg.fit_end : cfg.T;
  const DecayFit fit = fit_decay_rate(trace, cfg.fit_start, fit_end);

  double balance = 0.0;
  bool monotone = true;
  for (std::size_t i = 1; i < trace.energies.size(); ++i) {
    balance = std::max(balance, std::abs(trace.energies[i] - trace.energies[i - 1] + trace.boundary_losses[i]));
    monotone = monotone && trace.energies[i] <= trace.energies[i - 1] * (1.0 + 1e-12);
  }
  const double e0 = trace.energies.front();

  const CsvTable table = energy_table(trace);
  out.csv("energy.csv", table);
  out.text("energy.svg", render_plot(table, PlotKind::energy));
  ojson j = config_json(cfg);
  j["dt"] = dt;
  j["T"] = cfg.T;
  j["steps"] = trace.times.size() - 1;
  j["fit_window"] = {cfg.fit_start, fit_end};
  j["mu"] = number(fit.mu);
  j["fit_residual"] = number(fit.residual);
  j["E0"] = number(e0);
  j["E_final"] = number(trace.energies.back());
  j["max_balance_residual"] = number(e0 > 0.0 ? balance / e0 : balance);
  j["monotone"] = monotone;
  out.summary("simulate.json", j);
  res.headline = "simulate: mu = " + format_number(fit.mu) + " over " + std::to_string(trace.times.size() - 1) + " steps";
}

void run_spectrum(const RunConfig& cfg, const Writer& out, RunResult& res) {
  const FemSystem sys = build_system(cfg.params, cfg.N);
  const SpectrumReport rep = compute_spectrum(sys);
  const CsvTable table = spectrum_table(rep);
  out.csv("spectrum.csv", table);
  out.text("spectrum.svg", render_plot(table, PlotKind::spectrum));
  ojson j = config_json(cfg);
  j["count"] = rep.eigenvalues.size();
  j["partial"] = rep.partial;
  j["spectral_abscissa"] = number(rep.spectral_abscissa);
  j["resolved_abscissa"] = number(rep.resolved_abscissa);
  j["resolved_cutoff"] = number(rep.resolved_cutoff);
  j["imag_axis_clearance"] = number(rep.imag_axis_clearance);
  out.summary("spectrum.json", j);
  res.headline = "spectrum: abscissa " + format_number(rep.spectral_abscissa) + ", resolved " +
                 format_number(rep.resolved_abscissa);
}

void run_sweep(const RunConfig& cfg, const Writer& out, RunResult& res) {
  const FemSystem sys = build_system(cfg.params, cfg.N);
  // Probe the eigenfrequencies when a dense spectrum is affordable.
  std::vector<double> probes;
  if (6 * static_cast<Eigen::Index>(cfg.N) <= SpectrumOptions{}.dense_limit) {
    probes = eigen_frequencies(compute_spectrum(sys), cfg.lambda_max);
  }
  const ResolventSweep sw = resolvent_sweep(cfg.lambda_max, cfg.sweep_count, sys, probes);
  const CsvTable table = sweep_table(sw);
  out.csv("sweep.csv", table);
  out.text("sweep.svg", render_plot(table, PlotKind::resolvent));
  ojson j = config_json(cfg);
  j["lambda_max"] = cfg.lambda_max;
  j["points"] = sw.lambdas.size();
  j["probes"] = probes.size();
  j["sup_norm"] = number(sw.sup_norm);
  j["sup_finite"] = std::isfinite(sw.sup_norm);
  j["argmax"] = sw.argmax;
  j["poles"] = sw.poles;
  out.summary("sweep.json", j);
  res.headline = "sweep: sup " + format_number(sw.sup_norm) + " at lambda " + format_number(sw.argmax);
}

void run_certify(const RunConfig& cfg, const Writer& out, RunResult& res) {
  CertifyOptions opts;
  opts.sweep_count = cfg.sweep_count;
  const StabilityCertificate c = certify_stability(cfg.params, cfg.N, cfg.lambda_max, opts);
  ojson j = config_json(cfg);
  j["pass"] = c.pass;
  j["culprits"] = c.culprits;
  j["lambda_max"] = c.lambda_max;
  j["spectral_abscissa"] = number(c.spectral_abscissa);
  j["resolved_abscissa"] = number(c.resolved_abscissa);
  j["resolved_cutoff"] = number(c.resolved_cutoff);
  j["imag_axis_clearance"] = number(c.imag_axis_clearance);
  j["resolvent_sup"] = number(c.resolvent_sup);
  j["resolvent_sup_finite"] = std::isfinite(c.resolvent_sup);
  j["resolvent_argmax"] = c.resolvent_argmax;
  j["poles"] = c.poles;
  j["mu_candidate"] = number(c.mu_candidate);
  ojson shots = ojson::array();
  for (const ShootingCheck& s : c.shooting) {
    shots.push_back({{"discrete", complex_pair(s.discrete)},
                     {"shooting", complex_pair(s.shooting)},
                     {"delta", number(s.delta)},
                     {"converged", s.converged}});
  }
  j["shooting"] = shots;
  out.summary("certificate.json", j);
  res.exit_code = c.pass ? 0 : 1;
  std::string why;
  for (const auto& s : c.culprits) why += (why.empty() ? "" : ", ") + s;
  res.headline = std::string("certify: ") + (c.pass ? "PASS" : "FAIL (" + why + ")") + ", mu_candidate " +
                 format_number(c.mu_candidate);
}

void run_verify(const RunConfig& cfg, const Writer& out, RunResult& res) {
  const FemSystem sys = build_system(cfg.params, cfg.N);
  const Generator gen(sys);
  ojson j = config_json(cfg);
  bool pass = true;

  const DissipativityReport d = check_dissipativity(gen, 100, cfg.seed);
  const bool diss_ok = d.max_relative_residual <= 1e-11;
  pass = pass && diss_ok;
  j["dissipativity"] = {{"trials", d.trials},
                        {"max_residual", d.max_residual},
                        {"max_relative_residual", d.max_relative_residual},
                        {"pass", diss_ok}};

  const ComplexState F = to_complex(smooth_load(sys.grid, cfg.seed));
  double static_rel = 0.0;
  bool static_ok = true;
  try {
    const ComplexState U = solve_static(F, gen);
    static_rel = energy_norm(gen.apply(U) - F, sys) / energy_norm(F, sys);
  } catch (const Error& e) {
    static_ok = false;
    j["static_error"] = e.what();
  }
  static_ok = static_ok && static_rel <= 1e-10;
  pass = pass && static_ok;
  j["static"] = {{"relative_residual", static_rel}, {"pass", static_ok}};

  // Multiplier identities at lambda = 5 on N and 2N; residuals must fall.
  ojson mult = ojson::array();
  bool mult_ok = true;
  try {
    const FemSystem fine = build_system(cfg.params, 2 * cfg.N);
    const Generator gen_fine(fine);
    const auto coarse_r = verify_multiplier_identities(5.0, F, gen, default_weight(sys.grid));
    const auto fine_r = verify_multiplier_identities(5.0, to_complex(smooth_load(fine.grid, cfg.seed)), gen_fine,
                                                     default_weight(fine.grid));
    for (int k = 0; k < 3; ++k) {
      const double ratio = fine_r[k].residual > 0.0 ? coarse_r[k].residual / fine_r[k].residual : INFINITY;
      const bool ok = ratio >= 1.8;
      mult_ok = mult_ok && ok;
      mult.push_back({{"identity", k + 1},
                      {"lhs", coarse_r[k].lhs},
                      {"residual_N", coarse_r[k].residual},
                      {"residual_2N", fine_r[k].residual},
                      {"ratio", number(ratio)},
                      {"pass", ok}});
    }
  } catch (const NearSingularError& e) {
    mult_ok = false;
    j["multiplier_error"] = e.what();
  }
  pass = pass && mult_ok;
  j["multiplier"] = mult;

  // Boundary estimates over lambda = 1..100.
  std::array<double, 3> lo{}, hi{};
  bool bound_ok = true;
  try {
    for (int l = 1; l <= 100; ++l) {
      const BoundaryEstimateRatios r = verify_boundary_estimates(l, F, gen);
      auto& m = l <= 50 ? lo : hi;
      m[0] = std::max(m[0], r.r0);
      m[1] = std::max(m[1], r.r1);
      m[2] = std::max(m[2], r.r2);
    }
  } catch (const NearSingularError& e) {
    bound_ok = false;
    j["boundary_error"] = e.what();
  }
  ojson bounds = ojson::array();
  for (int k = 0; k < 3; ++k) {
    const bool ok = bound_ok && hi[k] <= 2.0 * lo[k];
    bound_ok = bound_ok && ok;
    bounds.push_back({{"ratio", "r" + std::to_string(k)}, {"max_lower", lo[k]}, {"max_upper", hi[k]}, {"pass", ok}});
  }
  pass = pass && bound_ok;
  j["boundary_estimates"] = bounds;
  j["pass"] = pass;
  out.summary("verify.json", j);
  res.exit_code = pass ? 0 : 1;
  res.headline = std::string("verify: ") + (pass ? "PASS" : "FAIL");
}

}  // namespace

RunResult run(Command cmd, const RunConfig& cfg) {
  validate(cfg);
  RunResult res;
  const Writer out{std::filesystem::path(cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir), &res};
  switch (cmd) {
    case Command::simulate: run_simulate(cfg, out, res); break;
    case Command::spectrum: run_spectrum(cfg, out, res); break;
    case Command::sweep: run_sweep(cfg, out, res); break;
    case Command::certify: run_certify(cfg, out, res); break;
    case Command::verify: run_verify(cfg, out, res); break;
  }
  return res;
}

}  // namespace bresse
