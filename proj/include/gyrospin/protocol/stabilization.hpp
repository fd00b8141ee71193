#pragma once

#include <optional>

#include "gyrospin/core/types.hpp"
#include "gyrospin/model/scales.hpp"
#include "gyrospin/protocol/trajectory.hpp"

namespace gyrospin {

struct StabilizationOptions {
  int rotor_L = 16383;                 // grid N = 2L+1
  std::optional<double> packet_width;  // rad; defaults to sigma_gamma
  int spin_init = +1;                  // sigma_x eigenvalue of the initial spin
  double t_max = 0.0;                  // s; 0 = 10 periods of omega_eta
  std::optional<double> dt;            // s; defaults to 1/200 of an omega_eta period
  int samples = 201;
  double absorb_fraction = 0.2;        // outer momentum layer treated as escaped
};

struct StabilizationRun {
  Trajectory trajectory;
  double max_transition = 0.0;
  double final_transition = 0.0;
  double absorbed = 0.0;
  double edge_weight = 0.0;  // largest population at the absorber onset
  int steps = 0;
};

// Packet at gamma = pi/2 in |sigma_x = spin_init> evolved under H_mag with
// a Strang split-operator on the angle grid. The transition probability
// 1 - P(initial spin) counts absorbed norm as escaped.
StabilizationRun simulate_stabilization(const DerivedScales& s, const StabilizationOptions& opt);

// Initial state in the spin(2) x rotor(L) layout of build_H_mag.
Vec stabilization_initial_state(int L, double width, int spin_init);

}  // namespace gyrospin
