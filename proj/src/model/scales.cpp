#include "gyrospin/model/scales.hpp"

#include <cmath>
#include <limits>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;

std::vector<std::string> DerivedScales::undefined() const {
  std::vector<std::string> out;
  if (!omega_gamma) out.push_back("omega_gamma");
  if (!omega_eta) out.push_back("omega_eta");
  if (!sigma_gamma) out.push_back("sigma_gamma");
  if (!kappa) out.push_back("kappa");
  return out;
}

namespace {

void fill_coupling(DerivedScales& s, double temperature) {
  s.delta = s.g * s.g / s.D_nv;
  s.Delta = s.D_nv - s.g;
  s.delta_tilde = s.g * s.g / (s.D_nv + s.g);

  s.omega_gamma.reset();
  if (s.Delta != 0.0) {
    const double w2 = hbar * s.g * (1.0 + s.g / s.Delta) / s.I_eff;
    if (w2 > 0.0 && std::isfinite(w2)) s.omega_gamma = std::sqrt(w2);
  }
  s.omega_eta.reset();
  s.sigma_gamma.reset();
  if (s.g != 0.0) {
    s.omega_eta = std::sqrt(2.0 * hbar * s.g * s.g / (s.I_eff * std::abs(s.delta)));
    s.sigma_gamma = std::pow(hbar * std::abs(s.delta) / (8.0 * s.I_eff * s.g * s.g), 0.25);
  }
  s.kappa.reset();
  if (temperature > 0.0) s.kappa = hbar * s.g / (constants::k_B * temperature);
}

}  // namespace

DerivedScales derive_scales(const ParticleGeometry& geom, const std::optional<TrapConfig>& trap,
                            const FieldConfig& fields, const Environment& env) {
  geom.validate();
  fields.validate();
  env.validate();
  if (trap) trap->validate();
  const Inertia in = inertia_from_geometry(geom);
  if (!(in.I3 < in.I)) throw UnsupportedShape("I3 must be smaller than I for a finite I_eff");

  DerivedScales s;
  s.M = in.M;
  s.I = in.I;
  s.I3 = in.I3;
  s.I_eff = in.I * in.I3 / (in.I - in.I3);
  s.omega = fields.omega;
  s.D_nv = fields.D_nv;
  s.gamma0 = fields.gamma0;
  s.B = fields.B;
  s.g = fields.omega - fields.gamma0 * fields.B;

  if (trap) {
    const QuadrupoleMoments q = quadrupole_moments(geom);
    s.Q = q.Q1;
    s.Q3 = q.Q3;
    const double num = trap->U_ac * trap->U_ac * (s.Q - s.Q3) * (s.Q - s.Q3);
    const double den = 8.0 * s.I * s.I * trap->omega_ac * trap->omega_ac * std::pow(trap->d0, 4);
    s.omega_beta = std::sqrt(num / den);
  }
  s.omega_xi = std::sqrt(s.omega * s.omega + s.omega_beta * s.omega_beta);
  fill_coupling(s, env.T);
  return s;
}

DerivedScales rescale_coupling(const DerivedScales& s, double factor) {
  if (!(factor > 0.0)) throw InvalidParameter("rescale factor must be positive");
  DerivedScales r = s;
  // g -> f g and delta -> f delta together require D_nv -> f D_nv
  r.g = s.g * factor;
  r.D_nv = s.D_nv * factor;
  const double temperature = s.kappa ? hbar * s.g / (constants::k_B * *s.kappa) : 0.0;
  fill_coupling(r, temperature);
  return r;
}

RegimeFlags regime_flags(const DerivedScales& s) {
  RegimeFlags f;
  f.delta_over_g = s.g != 0.0 ? s.Delta / s.g : std::numeric_limits<double>::infinity();
  f.dispersive = s.g != 0.0 && s.Delta > 0.0 && f.delta_over_g <= dispersive_limit;
  if (s.sigma_gamma && s.delta != 0.0) {
    f.trap_ratio = std::abs(s.g * *s.sigma_gamma / s.delta);
    f.trapping_stable = f.trap_ratio < 0.1;
  } else {
    f.trap_ratio = std::numeric_limits<double>::infinity();
  }
  return f;
}

std::vector<double> secular_potential_beta(const DerivedScales& s, const TrapConfig& trap,
                                           const std::vector<double>& beta) {
  trap.validate();
  const double pref = trap.U_ac * trap.U_ac * (s.Q - s.Q3) * (s.Q - s.Q3) /
                      (16.0 * s.I * trap.omega_ac * trap.omega_ac * std::pow(trap.d0, 4));
  std::vector<double> v(beta.size());
  for (size_t k = 0; k < beta.size(); ++k) {
    const double sb = std::sin(beta[k]), cb = std::cos(beta[k]);
    v[k] = pref * sb * sb * cb * cb;
  }
  return v;
}

}  // namespace gyrospin
