#include "gyrospin/analytics/decoherence.hpp"

#include <cmath>

#include "gyrospin/errors.hpp"

namespace gyrospin {

using namespace constants;

double gas_collision_rate(const ParticleGeometry& geom, const Environment& env) {
  if (env.P_gas == 0.0) return 0.0;
  if (!(env.m_gas > 0.0) || !(env.T > 0.0))
    throw InvalidParameter("collision rate needs positive gas mass and temperature");
  return geom.l1 * (geom.l1 + geom.l3) * env.P_gas * std::sqrt(2.0 * pi / (env.m_gas * k_B * env.T));
}

double blackbody_emission_rate(const Environment& env) {
  const double kT = k_B * env.T;
  return 2.0 * pi * pi * env.alpha_im * std::pow(kT, 4) /
         (45.0 * std::pow(c, 3) * std::pow(hbar, 4) * epsilon0);
}

DecoherenceReport decoherence_report(const ParticleGeometry& geom, const Environment& env,
                                     double gamma_sep, double gamma_center, double gamma0) {
  geom.validate();
  env.validate();
  DecoherenceReport r;
  const double ga = gamma_center - 0.5 * gamma_sep;
  const double gb = gamma_center + 0.5 * gamma_sep;
  r.Gamma_B = std::pow(gamma0 * env.A_fl, 2);
  const double dc = std::cos(ga) - std::cos(gb);
  r.F_mag = r.Gamma_B * dc * dc / 2.0;
  r.Gamma_coll = gas_collision_rate(geom, env);
  r.Gamma_ph = blackbody_emission_rate(env);
  r.F_bb = r.Gamma_ph * (1.0 - std::cos(gb - ga));
  return r;
}

}  // namespace gyrospin
