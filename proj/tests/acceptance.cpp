// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gyrospin/analytics/decoherence.hpp"
#include "gyrospin/analytics/observables.hpp"
#include "gyrospin/analytics/validity.hpp"
#include "gyrospin/cli/commands.hpp"
#include "gyrospin/cli/config.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/core/linalg.hpp"
#include "gyrospin/core/operators.hpp"
#include "gyrospin/core/propagate.hpp"
#include "gyrospin/model/geometry.hpp"
#include "gyrospin/model/hamiltonians.hpp"
#include "gyrospin/model/scales.hpp"
#include "gyrospin/protocol/crosscheck.hpp"
#include "gyrospin/protocol/interferometer.hpp"
#include "gyrospin/protocol/stabilization.hpp"
#include "gyrospin/protocol/sweeps.hpp"

using namespace gyrospin;
using constants::hbar;
using constants::pi;
using constants::two_pi;

namespace {

// tolerances
constexpr double tol_coll = 0.05;
constexpr double tol_ph = 0.05;
constexpr double max_F_bb_Hz = 30.0;
constexpr double tol_small = 0.20;
constexpr double tol_zeeman = 0.20;
constexpr double factor_beta = 3.0;
constexpr double tol_commutator = 1e-15;
constexpr double tol_unitary = 1e-10;
constexpr double tol_spectral = 1e-9;
constexpr double tol_barnett = 1e-8;
constexpr double tol_surfaces = 1e-12;
constexpr double tol_overlap = 1e-8;
constexpr double tol_interf = 1e-3;
constexpr double tol_rephase = 1e-9;
constexpr double tol_crosscheck = 0.05;
constexpr double max_trapped = 0.1;
constexpr double min_escaped = 0.9;
constexpr double tol_zero_transition = 1e-10;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  [%02d] %-22s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& detail) {
  std::printf("INFO       %s\n", detail.c_str());
  std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

DerivedScales scales(double l3, double ratio, double B_mT, double f_Hz) {
  FieldConfig fc;
  fc.B = B_mT * 1e-3;
  fc.omega = two_pi * f_Hz;
  return derive_scales(spheroid(l3, ratio), std::nullopt, fc, Environment{});
}

Environment gas_env() {
  Environment e;
  e.T = 300.0;
  e.P_gas = 1e-8 * 100.0;
  e.m_gas = 28.0134 * constants::amu;
  e.alpha_im = 1e-32;
  return e;
}

Mat random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(nd(rng), nd(rng));
  return (a + a.adjoint()) / 2.0;
}

std::pair<double, double> boltzmann_oracle(double k) {
  const int N = 4096;
  double z = 0, c1 = 0, c2 = 0;
  for (int j = 0; j < N; ++j) {
    const double c = std::cos(two_pi * j / N);
    const double w = std::exp(-k * c - std::abs(k));
    z += w;
    c1 += w * c;
    c2 += w * c * c;
  }
  return {c1 / z, c2 / z};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void collision_rate() {
  const double G = gas_collision_rate({60e-9, 60e-9, 200e-9}, gas_env());
  report(1, "collision rate", std::abs(G / 2.8e3 - 1) <= tol_coll,
         fmt("Gamma_coll = %.4g 1/s (target 2.8e3 +-5%%)", G));
}

void blackbody() {
  const Environment env = gas_env();
  const DecoherenceReport r = decoherence_report({60e-9, 60e-9, 200e-9}, env, 1e-3);
  const double ph = r.Gamma_ph / two_pi, F = r.F_bb / two_pi;
  report(2, "blackbody rates", std::abs(ph / 7.2e6 - 1) <= tol_ph && F <= max_F_bb_Hz,
         fmt("Gamma_ph/2pi = %.4g Hz (7.2e6 +-5%%), F/2pi = %.3g Hz at separation 1e-3 (<= 30)", ph, F));
}

void small_parameter() {
  const StabilityReport st = stability_check(scales(200e-9, 0.3, -100, 1e6));
  report(3, "stability small param", std::abs(st.small_param / 5e-4 - 1) <= tol_small,
         fmt("(hbar g^2 / 8 I_eff |delta|^3)^(1/4) = %.4g (5e-4 +-20%%)", st.small_param));
}

void zeeman_ratio() {
  const DerivedScales s = scales(200e-9, 0.3, -100, 1e6);
  const double r = std::abs(hbar * s.gamma0 * s.B / (s.I * s.omega * s.omega));
  report(4, "Zeeman scalar check", std::abs(r / 5e-7 - 1) <= tol_zeeman,
         fmt("hbar gamma0 B / I omega^2 = %.4g (5e-7 +-20%%)", r));
}

void trap_ratio() {
  TrapConfig t;
  t.U_ac = 2500.0;
  t.omega_ac = two_pi * 0.5e6;
  t.d0 = 350e-6;
  FieldConfig fc;
  fc.omega = two_pi * 1e6;
  const DerivedScales s = derive_scales(spheroid(200e-9, 0.3), t, fc, Environment{});
  const double r = s.omega_beta / s.omega;
  report(5, "trap frequency", r >= 4e-5 / factor_beta && r <= 4e-5 * factor_beta,
         fmt("omega_beta/omega = %.3g (4e-5 within factor 3)", r));
}

void core_suites() {
  const Spin1Ops s = spin1_operators();
  double comm = 0.0;
  comm = std::max(comm, max_abs(Op(commutator(s.S1, s.S2) - I_unit * hbar * s.S3)));
  comm = std::max(comm, max_abs(Op(commutator(s.S2, s.S3) - I_unit * hbar * s.S1)));
  comm = std::max(comm, max_abs(Op(commutator(s.S3, s.S1) - I_unit * hbar * s.S2)));
  comm /= hbar * hbar;
  double shift = 0.0;
  for (int L : {1, 4, 17, 255}) {
    const RotorOps r = rotor_operators(L);
    shift = std::max(shift, max_abs(Op(commutator(r.p, r.exp_i) + hbar * r.exp_i)) / max_abs(r.p));
  }

  std::mt19937_64 rng(7);
  double resid = 0.0, unit_eig = 0.0, unit_prop = 0.0;
  for (int n : {2, 17, 64, 150}) {
    const Mat h = random_hermitian(n, rng);
    const EigenSystem es = hermitian_eig(h);
    resid = std::max(resid, eig_residual(h, es));
    unit_eig = std::max(unit_eig, unitarity_defect(es.vectors));
    const SpectralPropagator prop(Mat(h * hbar * 1e6));
    unit_prop = std::max(unit_prop, unitarity_defect(prop.unitary(3.7e-6)));
  }
  // model Hamiltonians are Hermitian
  const DerivedScales sc = scales(200e-9, 0.4, -102, 0.1e6);
  const RotorFactor rf = harmonic_rotor(12, 0.0, 0.01);
  double herm = 0.0;
  const Op hr = build_H_rot(sc, spin_rotor_fock_basis(3, rf, 4));
  const Op he = build_H_eff(sc, spin_rotor_basis(3, rf), true);
  const Op hd = build_H_disp(sc, spin_rotor_basis(2, rf));
  herm = std::max({hermiticity_defect(hr), hermiticity_defect(he), hermiticity_defect(hd)});

  const bool pass = comm <= tol_commutator && shift <= tol_commutator && unit_eig <= tol_spectral &&
                    unit_prop <= tol_unitary && resid <= tol_spectral && herm <= tol_commutator;
  report(6, "core algebra suites", pass,
         fmt("commutators %.1e, shift %.1e (<= 1e-15 rel); propagator unitarity %.1e (<= 1e-10); "
             "eigen residual %.1e, eigvec unitarity %.1e (<= 1e-9); H hermiticity %.1e",
             comm, shift, unit_prop, resid, unit_eig, herm));
}

void barnett() {
  double worst = 0.0;
  bool var_ok = true;
  for (int m : {-1, 1})
    for (double k = -20.0; k <= 20.0; k += 0.125) {
      const Alignment a = barnett_alignment(k, m);
      const auto [c1, c2] = boltzmann_oracle(k * m);
      worst = std::max({worst, std::abs(a.mean - c1), std::abs(a.variance - (c2 - c1 * c1))});
      var_ok = var_ok && a.variance >= 0.0 && a.variance <= 0.5;
    }
  FieldConfig fc;
  fc.omega = two_pi * 1e6;
  const double B0 = fc.omega / fc.gamma0, d = 1e-3 * std::abs(B0);
  const SweepTable t = alignment_sweep(spheroid(100e-9, 0.2), fc, {B0 - d, B0, B0 + d}, {1e-3}, 1);
  const auto mean = t.column("mean_cos_gamma_dimless");
  const bool crossing = std::abs(mean[1]) <= 1e-15 && mean[0] * mean[2] < 0.0;
  report(7, "Barnett alignment", worst <= tol_barnett && var_ok && crossing,
         fmt("max |analytic - quadrature| = %.1e on kappa in [-20, 20] (<= 1e-8); <cos> at omega/gamma0 = %.1e, "
             "sign change across it: %s; variance in [0, 1/2]: %s",
             worst, mean[1], mean[0] * mean[2] < 0.0 ? "yes" : "no", var_ok ? "yes" : "no"));
}

void surfaces() {
  const DerivedScales s = scales(200e-9, 0.3, -0.5, 1e6);
  const double scale = 2 * std::abs(s.g) + 2 * std::abs(s.delta);
  double worst = 0.0;
  for (int k = 0; k < 360; ++k) {
    const double x = two_pi * (k + 0.37) / 360;
    const EigenSystem es = hermitian_eig(Mat(h_mag_spin_block(s, x)));
    const SurfacePoint p = potential_surfaces(s.delta, s.g, x);
    worst = std::max({worst, std::abs(2 * es.values(1) - p.omega_plus) / scale,
                      std::abs(2 * es.values(0) - p.omega_minus) / scale});
  }
  bool curv = true;
  double cworst = 0.0;
  for (double r : {1e-1, 1e-2, 1e-3}) {
    const double g = 3.7e4, dl = r * g;
    const double rel = std::abs(crossing_curvature(dl, g) / (g * g / dl) - 1.0);
    curv = curv && rel <= 2 * r * r;
    cworst = std::max(cworst, rel / (2 * r * r));
  }
  report(8, "potential surfaces", worst <= tol_surfaces && curv,
         fmt("max |closed form - 2x2 eig| = %.1e relative (<= 1e-12); curvature error / (2 delta^2/g^2) <= %.2f",
             worst, cworst));
}

void overlaps() {
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double a = 0.0; a <= 2.0; a += 0.125)
      worst = std::max(worst, std::abs(overlap_laguerre(n, a) - overlap_fock_matrix_element(n, a, 80)));
  bool limit = true;
  for (int n : {0, 5, 20})
    for (double a : {1e-2, 1e-4, 1e-6}) limit = limit && std::abs(overlap_laguerre(n, a) - 1.0) <= (n + 1) * a * a;
  report(9, "overlap integrals", worst <= tol_overlap && limit,
         fmt("max |Laguerre - Fock element| = %.1e for n <= 20, a <= 2 (<= 1e-8); -> 1 as a -> 0: %s", worst,
             limit ? "yes" : "no"));
}

struct EchoScan {
  double worst = 0.0, discarded = 0.0;
  int used = 0;
};

EchoScan echo_scan(const DerivedScales& s, int fock_dim) {
  InterferometerOptions o;
  o.fock_dim = fock_dim;
  o.truncation_threshold = 1.0;
  const Interferometer it(s, o);
  EchoScan e;
  for (double tau : linspace(0.0, pi / *s.omega_gamma, 32)) {
    if (squeezing_zeta(s, tau) > 1.0) continue;
    const InterferometerRun r = it.run(tau, INFINITY);
    ++e.used;
    e.worst = std::max(e.worst, std::abs(r.P_numeric - r.P_analytic));
    e.discarded = std::max(e.discarded, r.discarded_weight);
  }
  return e;
}

void interferometer() {
  const DerivedScales s = scales(100e-9, 0.2, -102, 1e6);
  const EchoScan e = echo_scan(s, 40);

  // rephasing on the -95 mT set, closed form and numeric
  const DerivedScales s95 = scales(100e-9, 0.2, -95, 1e6);
  const double tr = pi / *s95.omega_gamma, T2 = 10e-6;
  const cd lam = lambda_tau(s95, tr);
  InterferometerOptions o;
  o.fock_dim = 40;
  o.truncation_threshold = 1.0;
  const InterferometerRun rr = Interferometer(s95, o).run(tr, T2);
  const double expect = 0.5 + 0.5 * std::exp(-2 * tr / T2);
  const bool rephase = std::abs(lam - 1.0) <= tol_rephase && std::abs(rr.P_numeric_raw - 1.0) <= tol_rephase &&
                       std::abs(rr.P_numeric - expect) <= tol_rephase;

  double coef = 0.0;
  for (double r : {1e-2, 1e-4, 1e-6}) coef = std::max(coef, std::abs(i_gamma_coefficient(r, 1.0) - 1.0) / r);

  double prev = -1.0;
  bool increasing = true;
  std::string ps;
  for (double f : {1e6, 50e6, 100e6}) {
    const DerivedScales sf = scales(100e-9, 0.2, -95, f);
    const double p = interference_probability(sf, pi / *sf.omega_gamma, T2).P_up;
    increasing = increasing && p > prev;
    prev = p;
    ps += fmt(" %.6f", p);
  }

  const bool pass = e.worst <= tol_interf && e.used >= 10 && rephase && coef <= 2.0 && increasing;
  report(10, "interferometer", pass,
         fmt("B=-102 mT, fock_dim 40: max |numeric - analytic| = %.2e over %d zeta<=1 samples (<= 1e-3), "
             "discarded %.1e; |lambda(pi/w_g) - 1| = %.1e, P_raw - 1 = %.1e; |I_gamma coeff - 1| <= %.1e Delta/g (<= 2); "
             "recurrence at 1/50/100 MHz:%s",
             e.worst, e.used, e.discarded, std::abs(lam - 1.0), rr.P_numeric_raw - 1.0, coef, ps.c_str()));

  const EchoScan e95 = echo_scan(s95, 100);
  info(fmt("interferometer at B=-95 mT (Delta/g = %.3f, outside the dispersive limit): max gap %.2e over %d "
           "zeta<=1 samples",
           s95.Delta / s95.g, e95.worst, e95.used));
  InterferometerOptions om;
  om.fock_dim = 100;
  om.truncation_threshold = 1e-3;
  const InterferometerRun mid = Interferometer(s, om).run(pi / (2 * *s.omega_gamma), INFINITY);
  const InterferometerRun mid95 = Interferometer(s95, om).run(pi / (2 * *s95.omega_gamma), INFINITY);
  info(fmt("mid-arm tau = pi/2w_g: gap %.2e at -102 mT, %.2e at -95 mT (zeta = %.2f, %.2f)",
           std::abs(mid.P_numeric - mid.P_analytic), std::abs(mid95.P_numeric - mid95.P_analytic), mid.zeta,
           mid95.zeta));
}

void crosscheck() {
  const DerivedScales a1 = scales(200e-9, 0.4, -102, 0.1e6);
  CrosscheckOptions o;
  o.truncation_threshold = 1.0;
  o.pair = CrosscheckPair::RotVsEff;
  const CrosscheckResult rot = model_crosscheck(a1, o);
  o.pair = CrosscheckPair::EffVsDisp;
  const CrosscheckResult disp = model_crosscheck(a1, o);

  const DerivedScales c2 = scales(100e-9, 0.2, -100, 1e6);
  o.pair = CrosscheckPair::ZeemanOnOff;
  o.spin = SpinInit::Superposition;
  o.d_gamma = 70;
  const CrosscheckResult zee = model_crosscheck(c2, o);

  const bool pass = rot.deviation < tol_crosscheck && disp.deviation < tol_crosscheck && zee.deviation < tol_crosscheck;
  report(11, "cross-model agreement", pass,
         fmt("<gamma> deviation over 2 periods (< 5%%): H_rot/H_eff %.4f, H_eff/H_d %.4f, Zeeman on/off %.4f "
             "(discarded %.1e/%.1e, %.1e/%.1e, %.1e/%.1e)",
             rot.deviation, disp.deviation, zee.deviation, rot.discarded_ref, rot.discarded_cand,
             disp.discarded_ref, disp.discarded_cand, zee.discarded_ref, zee.discarded_cand));

  o.spin = SpinInit::Up;
  o.d_gamma = 100;
  const CrosscheckResult zu = model_crosscheck(c2, o);
  info(fmt("Zeeman on/off with spin up, d_gamma 100: deviation %.2e, discarded %.1e", zu.deviation,
           std::max(zu.discarded_ref, zu.discarded_cand)));
}

void stabilization() {
  const DerivedScales s = scales(200e-9, 0.3, -0.5, 1e6);
  StabilizationOptions o;
  o.samples = 101;
  o.spin_init = +1;
  const StabilizationRun up = simulate_stabilization(s, o);
  o.spin_init = -1;
  const StabilizationRun dn = simulate_stabilization(s, o);

  DerivedScales z = s;
  z.g = z.delta = z.delta_tilde = 0.0;
  z.Delta = z.D_nv;
  z.omega_gamma.reset();
  z.omega_eta.reset();
  z.sigma_gamma.reset();
  z.kappa.reset();
  StabilizationOptions oz;
  oz.samples = 11;
  oz.packet_width = *s.sigma_gamma;
  oz.t_max = 2 * two_pi / *s.omega_eta;
  oz.dt = oz.t_max / 400;
  const StabilizationRun zero = simulate_stabilization(z, oz);

  const bool pass =
      up.max_transition < max_trapped && dn.max_transition > min_escaped && zero.max_transition <= tol_zero_transition;
  report(12, "stabilization contrast", pass,
         fmt("B=-0.5 mT, L=16383, 10 omega_eta periods: sigma_x=+1 max escape %.4f (< 0.1), sigma_x=-1 %.4f "
             "(> 0.9); g=0 max transition %.1e (<= 1e-10)",
             up.max_transition, dn.max_transition, zero.max_transition));
}

void validity() {
  FieldConfig fc;
  fc.B = -0.1;
  bool pass = true;
  std::string detail;
  for (double T : {4.0, 300.0}) {
    Environment env;
    env.T = T;
    std::vector<double> ws, ls;
    for (int k = 0; k <= 40; ++k) ws.push_back(two_pi * std::pow(10.0, 5 + k * 0.05));
    for (int k = 0; k <= 45; ++k) ls.push_back((50 + 10 * k) * 1e-9);
    const auto pts = adiabatic_validity(spheroid(200e-9, 0.2), fc, env, ws, ls);
    int admitted = 0, violations = 0;
    for (size_t i = 0; i < ws.size(); ++i)
      for (size_t j = 0; j < ls.size(); ++j) {
        const auto& p = pts[i * ls.size() + j];
        if (!p.valid) continue;
        ++admitted;
        if (i + 1 < ws.size() && !pts[(i + 1) * ls.size() + j].valid) ++violations;
        if (j + 1 < ls.size() && !pts[i * ls.size() + j + 1].valid) ++violations;
      }
    pass = pass && violations == 0 && admitted > 0 && admitted < int(pts.size());
    detail += fmt("T=%g K: %d/%zu admitted, %d monotonicity violations; ", T, admitted, pts.size(), violations);
  }
  report(13, "validity map", pass, detail);
}

void cli_determinism() {
  using nlohmann::json;
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / ("gyrospin_acceptance_" + std::to_string(::getpid()));
  json d = json::parse(R"({
    "particle": {"l3_nm": 100, "l1_nm": 20},
    "fields": {"B_mT": -100, "rotation_Hz": 1e6},
    "environment": {"T_K": 300, "pressure_mbar": 1e-8, "alpha_im": 1e-32, "T2_us": 10},
    "simulation": {"fock_dim": 40, "rotor_L": 1023, "periods": 0.5, "n_times": 21, "tau_points": 16,
                   "d_gamma": 16, "d_xi": 4, "truncation": 1.0, "T_list_K": [0.001, 0.01],
                   "omega_grid_Hz": [1e5, 1e6, 1e7], "l3_grid_nm": [100, 200, 300],
                   "g_over_Dnv_grid": [0.9, 0.95, 0.99]}
  })");
  int files = 0, mismatches = 0;
  for (const auto& cmd : cli::command_names()) {
    json dc = d;
    if (cmd == "stabilize") dc["fields"]["B_mT"] = -0.5;
    const cli::RunConfig cfg = cli::parse_config_json(dc);
    for (int rep = 0; rep < 2; ++rep) {
      cli::CommandOptions o;
      o.out_dir = (root / (cmd + std::to_string(rep))).string();
      o.jobs = rep == 0 ? 1 : 3;
      cli::run_command(cmd, cfg, o);
    }
    for (const auto& e : std::filesystem::directory_iterator(root / (cmd + "0"))) {
      ++files;
      if (slurp(e.path()) != slurp(root / (cmd + "1") / e.path().filename())) ++mismatches;
    }
  }
  std::filesystem::remove_all(root);
  report(14, "CLI determinism", files > 0 && mismatches == 0,
         fmt("%d files from %zu commands, run twice (1 and 3 jobs): %d differ", files, cli::command_names().size(),
             mismatches));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  auto guarded = [](int id, const char* name, void (*f)()) {
    try {
      f();
    } catch (const std::exception& e) {
      report(id, name, false, std::string("threw: ") + e.what());
    }
  };
  guarded(1, "collision rate", collision_rate);
  guarded(2, "blackbody rates", blackbody);
  guarded(3, "stability small param", small_parameter);
  guarded(4, "Zeeman scalar check", zeeman_ratio);
  guarded(5, "trap frequency", trap_ratio);
  guarded(6, "core algebra suites", core_suites);
  guarded(7, "Barnett alignment", barnett);
  guarded(8, "potential surfaces", surfaces);
  guarded(9, "overlap integrals", overlaps);
  guarded(10, "interferometer", interferometer);
  guarded(11, "cross-model agreement", crosscheck);
  guarded(12, "stabilization contrast", stabilization);
  guarded(13, "validity map", validity);
  guarded(14, "CLI determinism", cli_determinism);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
