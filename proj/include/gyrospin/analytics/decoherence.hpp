#pragma once

#include "gyrospin/constants.hpp"
#include "gyrospin/model/params.hpp"

namespace gyrospin {

struct DecoherenceReport {
  double Gamma_B = 0.0;     // (gamma0 A_fl)^2, 1/s
  double Gamma_coll = 0.0;  // gas collision rate, 1/s
  double Gamma_ph = 0.0;    // blackbody emission rate, 1/s
  double F_bb = 0.0;        // blackbody localization rate at the pair, 1/s
  double F_mag = 0.0;       // field-noise localization rate at the pair, 1/s
};

double gas_collision_rate(const ParticleGeometry& geom, const Environment& env);
double blackbody_emission_rate(const Environment& env);

// Rates for the orientation pair gamma = center -+ sep/2.
DecoherenceReport decoherence_report(const ParticleGeometry& geom, const Environment& env,
                                     double gamma_sep, double gamma_center = 0.0,
                                     double gamma0 = constants::gamma0_default);

}  // namespace gyrospin
