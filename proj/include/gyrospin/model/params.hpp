#pragma once

#include <limits>
#include <optional>

#include "gyrospin/constants.hpp"

namespace gyrospin {

// All quantities SI; angular frequencies in rad/s.
struct ParticleGeometry {
  double l1 = 0.0, l2 = 0.0, l3 = 0.0;  // semiaxes, m
  double density = constants::diamond_density;
  double sigma = 3.5e-6;  // surface charge density, C/m^2

  void validate() const;
  bool symmetric() const { return l1 == l2; }
};

// A1 = -1/2 - eps, A2 = -1/2 + eps, A3 = 1
struct TrapConfig {
  double U_ac = 0.0;      // V
  double omega_ac = 0.0;  // rad/s
  double d0 = 0.0;        // m
  double epsilon = 0.0;

  void validate() const;
};

struct FieldConfig {
  double B = 0.0;      // T along e_z
  double omega = 0.0;  // rad/s
  double gamma0 = constants::gamma0_default;
  double D_nv = constants::dnv_default;

  void validate() const;
};

struct Environment {
  double T = 0.0;         // K
  double P_gas = 0.0;     // Pa
  double m_gas = 0.0;     // kg
  double T2 = std::numeric_limits<double>::infinity();  // s; infinite disables dephasing
  double A_fl = 0.0;      // T/sqrt(Hz)
  double alpha_im = 0.0;  // C m^2/V

  void validate() const;
};

ParticleGeometry spheroid(double l3, double l1_over_l3);

}  // namespace gyrospin
