#pragma once

#include <vector>

#include "gyrospin/model/params.hpp"
#include "gyrospin/model/scales.hpp"

namespace gyrospin {

inline constexpr double validity_threshold = 0.01;

struct ValidityPoint {
  double omega = 0.0;  // rad/s
  double l3 = 0.0;     // m
  double n_gamma = 0.0;
  double ratio_p = 0.0;  // |p_gamma / (I omega)|
  double ratio_B = 0.0;  // |hbar gamma0 B / (I omega^2)|
  bool defined = false;  // omega_gamma real at this point
  bool valid = false;    // defined and both ratios < validity_threshold
};

// Mean thermal occupation at frequency w: Bose-Einstein, or k_B T/(hbar w)
// when `classical` is set.
double thermal_occupation(double w, double temperature, bool classical = false);

ValidityPoint validity_point(const DerivedScales& s, double temperature, double l3,
                             bool classical = false);

// Grid over omega (outer) and l3 (inner). The semiaxis ratios of `shape`
// are kept while l3 is varied; B, gamma0 and D_nv come from `fields`.
std::vector<ValidityPoint> adiabatic_validity(const ParticleGeometry& shape, const FieldConfig& fields,
                                              const Environment& env,
                                              const std::vector<double>& omegas,
                                              const std::vector<double>& l3s,
                                              bool classical = false);

}  // namespace gyrospin
