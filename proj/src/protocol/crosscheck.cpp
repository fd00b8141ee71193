#include "gyrospin/protocol/crosscheck.hpp"

#include <algorithm>
#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/core/operators.hpp"
#include "gyrospin/core/propagate.hpp"
#include "gyrospin/core/states.hpp"
#include "gyrospin/errors.hpp"
#include "gyrospin/model/hamiltonians.hpp"

namespace gyrospin {

using constants::hbar;

CrosscheckPair parse_crosscheck_pair(const std::string& name) {
  if (name == "rot_vs_eff") return CrosscheckPair::RotVsEff;
  if (name == "eff_vs_disp") return CrosscheckPair::EffVsDisp;
  if (name == "zeeman_on_off") return CrosscheckPair::ZeemanOnOff;
  if (name == "eff_vs_misaligned") return CrosscheckPair::EffVsMisaligned;
  throw InvalidParameter("unknown crosscheck pair '" + name + "'");
}

std::string to_string(CrosscheckPair p) {
  switch (p) {
    case CrosscheckPair::RotVsEff: return "rot_vs_eff";
    case CrosscheckPair::EffVsDisp: return "eff_vs_disp";
    case CrosscheckPair::ZeemanOnOff: return "zeeman_on_off";
    case CrosscheckPair::EffVsMisaligned: return "eff_vs_misaligned";
  }
  return "?";
}

SpinInit parse_spin_init(const std::string& name) {
  if (name == "up") return SpinInit::Up;
  if (name == "down") return SpinInit::Down;
  if (name == "superposition") return SpinInit::Superposition;
  throw InvalidParameter("unknown spin initialization '" + name + "'");
}

std::vector<double> observable_series(const Op& obs, const std::vector<Vec>& states) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const Vec& psi : states) out.push_back(expectation(obs, psi).real());
  return out;
}

namespace {

// amplitudes on (up, down)
std::pair<cd, cd> spin_amplitudes(SpinInit s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case SpinInit::Up: return {1.0, 0.0};
    case SpinInit::Down: return {0.0, 1.0};
    case SpinInit::Superposition: return {r, r};
  }
  return {1.0, 0.0};
}

Vec spin3_state(SpinInit s) {
  const auto [up, down] = spin_amplitudes(s);
  Vec v = Vec::Zero(3);
  v(2) = up;    // |S1 = -hbar>
  v(1) = down;  // |S1 = 0>
  return v;
}

Vec spin2_state(SpinInit s) {
  const auto [up, down] = spin_amplitudes(s);
  Vec v(2);
  v << up, down;
  return v;
}

struct Member {
  std::string name;
  BasisSpec basis;
  Op h;
  Op gamma_obs;
  Op p_up, p_down;
  Vec psi0;
};

struct MemberRun {
  std::vector<double> mean_gamma, p_up, p_down;
  double discarded = 0.0;
  double norm_error = 0.0;
};

MemberRun run_member(const Member& m, const std::vector<double>& times) {
  const StateTrajectory tr = evolve(m.h, m.psi0, times);
  MemberRun r;
  r.mean_gamma = observable_series(m.gamma_obs, tr.states);
  r.p_up = observable_series(m.p_up, tr.states);
  r.p_down = observable_series(m.p_down, tr.states);
  r.norm_error = tr.max_norm_error;
  for (const Vec& psi : tr.states) r.discarded = std::max(r.discarded, discarded_weight(psi, m.basis));
  return r;
}

Op projector(int dim, int index) {
  RVec d = RVec::Zero(dim);
  d(index) = 1.0;
  return diagonal(d);
}

Member effective_member(const DerivedScales& s, const RotorFactor& rf, const CrosscheckOptions& opt,
                        const std::string& name, bool zeeman, double eps) {
  Member m;
  m.name = name;
  m.basis = spin_rotor_basis(3, rf);
  m.h = eps != 0.0 ? build_H_misaligned(s, eps, m.basis, zeeman) : build_H_eff(s, m.basis, zeeman);
  const RotorOps r = rotor_operators(rf);
  m.gamma_obs = embed(r.angle, Factor::Rotor, m.basis);
  m.p_up = embed(projector(3, 2), Factor::Spin, m.basis);
  m.p_down = embed(projector(3, 1), Factor::Spin, m.basis);
  m.psi0 = product_state({spin3_state(opt.spin), coherent_state(rf.d, opt.alpha)});
  return m;
}

Member gyroscopic_member(const DerivedScales& s, const RotorFactor& rf, const CrosscheckOptions& opt) {
  Member m;
  m.name = "H_rot";
  m.basis = spin_rotor_fock_basis(3, rf, opt.d_xi);
  m.h = build_H_rot(s, m.basis);
  const RotorOps r = rotor_operators(rf);
  const FockOps f = fock_operators(opt.d_xi, s.I, s.omega_xi);
  m.gamma_obs = embed(r.angle, Factor::Rotor, m.basis);
  if (opt.frame_sign != 0.0) {
    if (s.omega == 0.0) throw InvalidParameter("adiabatic-frame observable needs omega != 0");
    m.gamma_obs += embed(f.p, Factor::Fock, m.basis) * (opt.frame_sign / (s.I * s.omega));
  }
  m.p_up = embed(projector(3, 2), Factor::Spin, m.basis);
  m.p_down = embed(projector(3, 1), Factor::Spin, m.basis);
  m.psi0 = product_state({spin3_state(opt.spin), coherent_state(rf.d, opt.alpha), coherent_state(opt.d_xi, opt.alpha)});
  return m;
}

Member dispersive_member(const DerivedScales& s, const RotorFactor& rf, const CrosscheckOptions& opt) {
  Member m;
  m.name = "H_d";
  m.basis = spin_rotor_basis(2, rf);
  m.h = build_H_disp(s, m.basis);
  const RotorOps r = rotor_operators(rf);
  m.gamma_obs = embed(r.angle, Factor::Rotor, m.basis);
  m.p_up = embed(projector(2, 0), Factor::Spin, m.basis);
  m.p_down = embed(projector(2, 1), Factor::Spin, m.basis);
  m.psi0 = product_state({spin2_state(opt.spin), coherent_state(rf.d, opt.alpha)});
  return m;
}

}  // namespace

CrosscheckResult model_crosscheck(const DerivedScales& s, const CrosscheckOptions& opt) {
  if (!s.omega_gamma) throw RegimeError("crosscheck needs a defined omega_gamma");
  if (opt.n_times < 2 || !(opt.periods > 0.0)) throw InvalidParameter("crosscheck needs a time window");
  const double w = *s.omega_gamma;
  const RotorFactor rf = harmonic_rotor(opt.d_gamma, 0.0, std::sqrt(hbar / (2.0 * s.I_eff * w)));

  Member ref, cand;
  switch (opt.pair) {
    case CrosscheckPair::RotVsEff:
      ref = gyroscopic_member(s, rf, opt);
      cand = effective_member(s, rf, opt, "H_eff", false, 0.0);
      break;
    case CrosscheckPair::EffVsDisp:
      ref = effective_member(s, rf, opt, "H_eff", false, 0.0);
      cand = dispersive_member(s, rf, opt);
      break;
    case CrosscheckPair::ZeemanOnOff:
      ref = effective_member(s, rf, opt, "H_eff", false, 0.0);
      cand = effective_member(s, rf, opt, "H_eff_zeeman", true, 0.0);
      break;
    case CrosscheckPair::EffVsMisaligned:
      ref = effective_member(s, rf, opt, "H_eff", false, 0.0);
      cand = effective_member(s, rf, opt, "H_misaligned", false, opt.eps_nv);
      break;
  }

  const std::vector<double> times = [&] {
    std::vector<double> t(static_cast<size_t>(opt.n_times));
    const double end = opt.periods * 2.0 * constants::pi / w;
    for (int k = 0; k < opt.n_times; ++k) t[k] = end * k / (opt.n_times - 1);
    return t;
  }();

  const MemberRun a = run_member(ref, times);
  const MemberRun b = run_member(cand, times);

  CrosscheckResult out;
  out.reference = ref.name;
  out.candidate = cand.name;
  out.discarded_ref = a.discarded;
  out.discarded_cand = b.discarded;
  out.max_norm_error = std::max(a.norm_error, b.norm_error);
  check_truncation(a.discarded, opt.truncation_threshold, ref.name + " crosscheck basis");
  check_truncation(b.discarded, opt.truncation_threshold, cand.name + " crosscheck basis");

  out.deviation = normalized_deviation(a.mean_gamma, b.mean_gamma);
  for (size_t k = 0; k < times.size(); ++k)
    out.population_deviation = std::max(out.population_deviation, std::abs(a.p_up[k] - b.p_up[k]));

  Trajectory& tr = out.trajectory;
  tr.times = times;
  std::vector<double> wt(times.size());
  for (size_t k = 0; k < times.size(); ++k) wt[k] = w * times[k];
  tr.add("omega_gamma_t_rad", wt);
  tr.add("ref_mean_gamma_rad", a.mean_gamma);
  tr.add("cand_mean_gamma_rad", b.mean_gamma);
  tr.add("ref_P_up_dimless", a.p_up);
  tr.add("ref_P_down_dimless", a.p_down);
  tr.add("cand_P_up_dimless", b.p_up);
  tr.add("cand_P_down_dimless", b.p_down);
  return out;
}

}  // namespace gyrospin
