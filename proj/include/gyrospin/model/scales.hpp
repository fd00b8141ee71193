#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gyrospin/model/geometry.hpp"
#include "gyrospin/model/params.hpp"

namespace gyrospin {

struct DerivedScales {
  double M = 0.0, I = 0.0, I3 = 0.0, I_eff = 0.0;
  double Q = 0.0, Q3 = 0.0;
  double omega = 0.0;        // rotation rate, copied from the fields
  double omega_beta = 0.0;   // 0 without a trap
  double omega_xi = 0.0;
  double g = 0.0;            // omega - gamma0 B
  double delta = 0.0;        // g^2 / D_nv
  double Delta = 0.0;        // D_nv - g
  double delta_tilde = 0.0;  // g^2 / (D_nv + g)
  double D_nv = 0.0;
  double gamma0 = 0.0;
  double B = 0.0;

  // unset where the defining expression is singular or not real
  std::optional<double> omega_gamma;
  std::optional<double> omega_eta;
  std::optional<double> sigma_gamma;
  std::optional<double> kappa;

  std::vector<std::string> undefined() const;
};

// Throws UnsupportedShape when I3 >= I (no finite I_eff).
DerivedScales derive_scales(const ParticleGeometry& geom, const std::optional<TrapConfig>& trap,
                            const FieldConfig& fields, const Environment& env);

// Same scales with g, delta and D_nv multiplied by `factor` (Delta,
// delta_tilde and the frequencies recomputed from the rescaled values).
DerivedScales rescale_coupling(const DerivedScales& s, double factor);

struct RegimeFlags {
  bool dispersive = false;        // 0 < Delta/g <= dispersive_limit
  bool trapping_stable = false;   // |g sigma_gamma / delta| < 0.1
  double delta_over_g = 0.0;
  double trap_ratio = 0.0;
};

inline constexpr double dispersive_limit = 0.05;

RegimeFlags regime_flags(const DerivedScales& s);

// V(beta) = U^2 (Q - Q3)^2 / (16 I w_ac^2 d0^4) sin^2 cos^2, joules
std::vector<double> secular_potential_beta(const DerivedScales& s, const TrapConfig& trap,
                                           const std::vector<double>& beta);

}  // namespace gyrospin
