#include "gyrospin/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "gyrospin/analytics/decoherence.hpp"
#include "gyrospin/analytics/observables.hpp"
#include "gyrospin/cli/output.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"
#include "gyrospin/protocol/crosscheck.hpp"
#include "gyrospin/protocol/interferometer.hpp"
#include "gyrospin/protocol/stabilization.hpp"
#include "gyrospin/protocol/sweeps.hpp"

namespace gyrospin::cli {

using nlohmann::json;
using constants::hbar;
using constants::pi;

namespace {

double nan_if_unset(const std::optional<double>& v) {
  return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

json scales_json(const DerivedScales& s) {
  json j;
  j["M_kg"] = s.M;
  j["I_kg_m2"] = s.I;
  j["I3_kg_m2"] = s.I3;
  j["I_eff_kg_m2"] = s.I_eff;
  j["Q_C_m2"] = s.Q;
  j["Q3_C_m2"] = s.Q3;
  j["omega_rad_s"] = s.omega;
  j["omega_beta_rad_s"] = s.omega_beta;
  j["omega_xi_rad_s"] = s.omega_xi;
  j["g_rad_s"] = s.g;
  j["delta_rad_s"] = s.delta;
  j["Delta_rad_s"] = s.Delta;
  j["delta_tilde_rad_s"] = s.delta_tilde;
  j["Dnv_rad_s"] = s.D_nv;
  j["gamma0_rad_s_T"] = s.gamma0;
  j["B_T"] = s.B;
  j["omega_gamma_rad_s"] = json_number(nan_if_unset(s.omega_gamma));
  j["omega_eta_rad_s"] = json_number(nan_if_unset(s.omega_eta));
  j["sigma_gamma_rad"] = json_number(nan_if_unset(s.sigma_gamma));
  j["kappa_dimless"] = json_number(nan_if_unset(s.kappa));
  j["undefined"] = s.undefined();
  return j;
}

namespace {

struct Context {
  const RunConfig& cfg;
  const CommandOptions& opt;
  OutputSet out;
  json manifest;
  std::vector<std::string> warnings;

  std::vector<std::string> comments(const std::string& what) const {
    return {"gyrospin " + std::string(artifact_version), "command: " + manifest["command"].get<std::string>(),
            what};
  }
  DerivedScales scales() const {
    return derive_scales(cfg.particle, cfg.trap, cfg.fields, cfg.environment);
  }
};

json flags_json(const DerivedScales& s) {
  const RegimeFlags f = regime_flags(s);
  json j;
  j["dispersive"] = f.dispersive;
  j["trapping_stable"] = f.trapping_stable;
  j["Delta_over_g"] = json_number(f.delta_over_g);
  j["trap_ratio"] = json_number(f.trap_ratio);
  return j;
}

void cmd_derive(Context& c) {
  const DerivedScales s = c.scales();
  std::map<std::string, double> extra;
  extra["omega_beta_over_omega_dimless"] = s.omega != 0.0 ? s.omega_beta / s.omega : NAN;
  extra["zeeman_ratio_dimless"] = s.omega != 0.0 ? std::abs(hbar * s.gamma0 * s.B / (s.I * s.omega * s.omega)) : NAN;
  extra["asymmetry_bound_dimless"] = s.omega != 0.0 ? asymmetry_bound(s) : NAN;
  extra["overlap_alpha_f_dimless"] = s.omega > 0.0 ? overlap_alpha_f(s) : NAN;
  extra["overlap_alpha_g_dimless"] = s.omega > 0.0 ? overlap_alpha_g(s) : NAN;
  double small = NAN;
  if (s.g != 0.0) small = stability_check(s).small_param;
  extra["small_param_dimless"] = small;

  std::vector<std::string> cols;
  std::vector<double> row;
  const json sj = scales_json(s);
  for (auto it = sj.begin(); it != sj.end(); ++it) {
    if (it.key() == "undefined") continue;
    cols.push_back(it.key());
    row.push_back(it.value().is_null() ? NAN : it.value().get<double>());
  }
  for (const auto& [k, v] : extra) {
    cols.push_back(k);
    row.push_back(v);
  }
  c.out.add("scales.csv", csv_text(c.comments("derived scales, SI units"), cols, {row}));
  json results;
  for (const auto& [k, v] : extra) results[k] = json_number(v);
  c.manifest["results"] = results;
  for (const auto& u : s.undefined()) c.warnings.push_back(u + " undefined for this configuration");
}

void cmd_alignment(Context& c) {
  const SimulationConfig& sim = c.cfg.simulation;
  std::vector<double> Bs = sim.B_grid;
  const double B0 = c.cfg.fields.omega / c.cfg.fields.gamma0;
  if (Bs.empty()) {
    const double step = std::abs(B0) / 50.0;
    for (int k = -100; k <= 100; ++k) Bs.push_back(k == 0 ? B0 : B0 + k * step);
  }
  std::vector<double> Ts = sim.T_list;
  if (Ts.empty()) {
    if (!(c.cfg.environment.T > 0.0)) throw InvalidParameter("alignment needs simulation.T_list_K or environment.T_K");
    Ts = {c.cfg.environment.T};
  }
  const SweepTable t = alignment_sweep(c.cfg.particle, c.cfg.fields, Bs, Ts, sim.m, c.opt.jobs);
  c.out.add("alignment.csv", csv_text(c.comments("Barnett alignment, m = " + std::to_string(sim.m)), t));
  c.manifest["results"] = {{"zero_crossing_B_mT", B0 * 1e3}};
}

void cmd_surfaces(Context& c) {
  const DerivedScales s = c.scales();
  std::vector<double> gs = c.cfg.simulation.gamma_grid;
  if (gs.empty()) gs = linspace(0.0, 2.0 * pi, 721);
  c.out.add("surfaces.csv", csv_text(c.comments("potential surfaces Omega_+-"), surface_table(s, gs)));
  json r;
  r["crossing_curvature_rad_s"] = s.delta != 0.0 ? json_number(crossing_curvature(s.delta, s.g)) : json(nullptr);
  r["g2_over_delta_rad_s"] = s.delta != 0.0 ? json_number(s.g * s.g / s.delta) : json(nullptr);
  c.manifest["results"] = r;
}

void cmd_stabilize(Context& c) {
  const SimulationConfig& sim = c.cfg.simulation;
  DerivedScales s = c.scales();
  if (sim.rescale != 1.0) s = rescale_coupling(s, sim.rescale);
  StabilizationOptions o;
  o.rotor_L = sim.rotor_L;
  o.packet_width = sim.packet_width;
  o.spin_init = sim.spin_init;
  o.samples = sim.n_times;
  o.absorb_fraction = sim.absorb_fraction;
  if (!s.omega_eta) throw RegimeError("stabilization needs g != 0");
  const double period = 2.0 * pi / *s.omega_eta;
  o.t_max = sim.periods * period;
  o.dt = period / sim.steps_per_period;
  const StabilizationRun run = simulate_stabilization(s, o);
  c.out.add("stabilization.csv",
            csv_text(c.comments("spin transition probability, sigma_x = " + std::to_string(sim.spin_init)),
                     run.trajectory));
  json r;
  r["max_transition"] = run.max_transition;
  r["final_transition"] = run.final_transition;
  r["absorbed"] = run.absorbed;
  r["edge_weight"] = run.edge_weight;
  r["steps"] = run.steps;
  r["trapped"] = run.max_transition < 0.1;
  r["rescaled_scales"] = scales_json(s);
  c.manifest["results"] = r;
}

void cmd_interfere(Context& c) {
  const SimulationConfig& sim = c.cfg.simulation;
  const DerivedScales s = c.scales();
  if (!s.omega_gamma || !(s.Delta > 0.0)) throw RegimeError("interferometer needs Delta > 0 and a defined omega_gamma");
  const double T2 = c.cfg.environment.T2;
  std::vector<double> taus = sim.tau_grid;
  if (taus.empty()) taus = linspace(0.0, sim.tau_max_periods * pi / *s.omega_gamma, sim.tau_points);

  InterferometerOptions io;
  io.fock_dim = sim.fock_dim;
  io.temperature = c.cfg.environment.T;
  io.truncation_threshold = sim.truncation;
  std::optional<Interferometer> engine;
  if (sim.numeric) engine.emplace(s, io);

  std::vector<std::vector<std::string>> warn(taus.size());
  auto rows = parallel_rows(int(taus.size()), c.opt.jobs, [&](int i) {
    const double tau = taus[size_t(i)];
    const InterferenceResult a = interference_probability(s, tau, T2);
    double num = NAN;
    if (engine) {
      const InterferometerRun r = engine->run(tau, T2);
      num = r.P_numeric;
      warn[size_t(i)] = r.warnings;
    }
    return std::vector<double>{tau, *s.omega_gamma * tau, a.zeta, a.lambda.real(), a.lambda.imag(), a.P_up, num,
                               std::abs(num - a.P_up)};
  });
  SweepTable t;
  t.columns = {"tau_s", "omega_gamma_tau_rad", "zeta_dimless", "lambda_re_dimless", "lambda_im_dimless",
               "P_up_analytic_dimless", "P_up_numeric_dimless", "abs_diff_dimless"};
  double worst = 0.0;
  for (auto& r : rows) {
    if (engine) worst = std::max(worst, r.back());
    t.add_row(std::move(r));
  }
  for (const auto& w : warn)
    for (const auto& msg : w)
      if (std::find(c.warnings.begin(), c.warnings.end(), msg) == c.warnings.end()) c.warnings.push_back(msg);
  if (!regime_flags(s).dispersive) {
    const std::string msg = "configuration outside the dispersive regime";
    if (std::find(c.warnings.begin(), c.warnings.end(), msg) == c.warnings.end()) c.warnings.push_back(msg);
  }
  c.out.add("interference.csv", csv_text(c.comments("spin-echo interferometer"), t));

  json r;
  const double tau_r = pi / *s.omega_gamma;
  r["recurrence_tau_s"] = tau_r;
  r["P_recurrence_analytic"] = interference_probability(s, tau_r, T2).P_up;
  r["max_abs_diff"] = engine ? json_number(worst) : json(nullptr);

  if (!sim.g_over_dnv_grid.empty()) {
    Environment env = c.cfg.environment;
    const SweepTable rec = recurrence_sweep(c.cfg.particle, c.cfg.fields, env, sim.g_over_dnv_grid);
    c.out.add("recurrence.csv", csv_text(c.comments("recurrence at tau = pi/omega_gamma"), rec));
  }
  c.manifest["results"] = r;
}

void cmd_validity(Context& c) {
  const SimulationConfig& sim = c.cfg.simulation;
  std::vector<double> ws = sim.omega_grid, ls = sim.l3_grid;
  if (ws.empty()) {
    for (double f : linspace(5.0, 7.0, 41)) ws.push_back(2.0 * pi * std::pow(10.0, f));
  }
  if (ls.empty()) {
    for (double l : linspace(50.0, 500.0, 46)) ls.push_back(l * 1e-9);
  }
  const SweepTable t = validity_table(c.cfg.particle, c.cfg.fields, c.cfg.environment, ws, ls,
                                      sim.classical_occupation, c.opt.jobs);
  c.out.add("validity.csv", csv_text(c.comments("adiabatic validity map"), t));
  const auto valid = t.column("valid_bool");
  c.manifest["results"] = {{"valid_points", std::count(valid.begin(), valid.end(), 1.0)},
                           {"total_points", valid.size()}};
}

void cmd_decoherence(Context& c) {
  std::vector<double> seps = c.cfg.simulation.gamma_sep_grid;
  if (seps.empty()) seps = {1e-3};
  SweepTable t;
  t.columns = {"gamma_sep_rad", "Gamma_B_per_s", "Gamma_coll_per_s", "Gamma_ph_per_s", "F_bb_per_s", "F_mag_per_s"};
  for (double sep : seps) {
    const DecoherenceReport r = decoherence_report(c.cfg.particle, c.cfg.environment, sep,
                                                   c.cfg.simulation.gamma_center, c.cfg.fields.gamma0);
    t.add_row({sep, r.Gamma_B, r.Gamma_coll, r.Gamma_ph, r.F_bb, r.F_mag});
  }
  c.out.add("decoherence.csv", csv_text(c.comments("decoherence rates"), t));
  const DecoherenceReport r0 = decoherence_report(c.cfg.particle, c.cfg.environment, seps.front(),
                                                  c.cfg.simulation.gamma_center, c.cfg.fields.gamma0);
  c.manifest["results"] = {{"Gamma_coll_per_s", r0.Gamma_coll},
                           {"Gamma_ph_over_2pi_Hz", r0.Gamma_ph / (2.0 * pi)},
                           {"F_bb_over_2pi_Hz", r0.F_bb / (2.0 * pi)}};
}

void cmd_crosscheck(Context& c) {
  const SimulationConfig& sim = c.cfg.simulation;
  DerivedScales s = c.scales();
  if (sim.rescale != 1.0) s = rescale_coupling(s, sim.rescale);
  CrosscheckOptions o;
  o.pair = parse_crosscheck_pair(sim.pair);
  o.d_gamma = sim.d_gamma;
  o.d_xi = sim.d_xi;
  o.alpha = sim.alpha;
  o.spin = parse_spin_init(sim.spin);
  o.periods = sim.periods;
  o.n_times = sim.n_times;
  o.eps_nv = sim.eps_nv;
  o.truncation_threshold = sim.truncation;
  o.frame_sign = sim.frame_sign;
  const CrosscheckResult r = model_crosscheck(s, o);
  c.out.add("crosscheck.csv", csv_text(c.comments(r.reference + " vs " + r.candidate), r.trajectory));
  c.manifest["results"] = {{"reference", r.reference},
                           {"candidate", r.candidate},
                           {"deviation", r.deviation},
                           {"population_deviation", r.population_deviation},
                           {"discarded_ref", r.discarded_ref},
                           {"discarded_cand", r.discarded_cand}};
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r = {
      {"derive", cmd_derive},     {"alignment", cmd_alignment}, {"surfaces", cmd_surfaces},
      {"stabilize", cmd_stabilize}, {"interfere", cmd_interfere}, {"validity", cmd_validity},
      {"decoherence", cmd_decoherence}, {"crosscheck", cmd_crosscheck}};
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"derive",   "alignment",  "surfaces",    "stabilize",
                                                 "interfere", "validity", "decoherence", "crosscheck"};
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidParameter("unknown command '" + name + "'");
  if (opt.jobs < 1) throw InvalidParameter("--jobs must be >= 1");
  Context c{cfg, opt, OutputSet(opt.out_dir.empty() ? cfg.output_directory : opt.out_dir), json::object(), {}};
  c.manifest["artifact"] = "gyrospin";
  c.manifest["version"] = artifact_version;
  c.manifest["command"] = name;
  c.manifest["config"] = config_echo(cfg);
  try {
    const DerivedScales s = c.scales();
    c.manifest["derived"] = scales_json(s);
    c.manifest["flags"] = flags_json(s);
  } catch (const UnsupportedShape& e) {
    if (name != "decoherence") throw;
    c.manifest["derived"] = nullptr;
  }

  it->second(c);

  c.manifest["warnings"] = c.warnings;
  CommandResult res;
  res.manifest_text = c.out.write(c.manifest);
  res.manifest = json::parse(res.manifest_text);
  res.warnings = c.warnings;
  for (const auto& o : res.manifest["outputs"]) res.files.push_back(o["file"].get<std::string>());
  return res;
}

}  // namespace gyrospin::cli
