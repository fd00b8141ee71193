#include "gyrospin/analytics/validity.hpp"

#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;
using constants::k_B;

double thermal_occupation(double w, double temperature, bool classical) {
  if (temperature < 0.0) throw InvalidParameter("temperature must be non-negative");
  if (!(w > 0.0)) throw InvalidParameter("occupation needs a positive frequency");
  if (temperature == 0.0) return 0.0;
  const double x = hbar * w / (k_B * temperature);
  if (classical) return 1.0 / x;
  return 1.0 / std::expm1(x);
}

ValidityPoint validity_point(const DerivedScales& s, double temperature, double l3, bool classical) {
  ValidityPoint p;
  p.omega = s.omega;
  p.l3 = l3;
  p.ratio_B = std::abs(hbar * s.gamma0 * s.B / (s.I * s.omega * s.omega));
  if (!s.omega_gamma) return p;
  p.defined = true;
  p.n_gamma = thermal_occupation(*s.omega_gamma, temperature, classical);
  const double p_gamma = std::sqrt(hbar * p.n_gamma * s.I3 * *s.omega_gamma);
  p.ratio_p = std::abs(p_gamma / (s.I * s.omega));
  p.valid = p.ratio_p < validity_threshold && p.ratio_B < validity_threshold;
  return p;
}

std::vector<ValidityPoint> adiabatic_validity(const ParticleGeometry& shape, const FieldConfig& fields,
                                              const Environment& env,
                                              const std::vector<double>& omegas,
                                              const std::vector<double>& l3s, bool classical) {
  shape.validate();
  std::vector<ValidityPoint> out;
  out.reserve(omegas.size() * l3s.size());
  for (double w : omegas) {
    for (double l3 : l3s) {
      ParticleGeometry g = shape;
      const double f = l3 / shape.l3;
      g.l1 *= f;
      g.l2 *= f;
      g.l3 = l3;
      FieldConfig fc = fields;
      fc.omega = w;
      const DerivedScales s = derive_scales(g, std::nullopt, fc, env);
      out.push_back(validity_point(s, env.T, l3, classical));
    }
  }
  return out;
}

}  // namespace gyrospin
