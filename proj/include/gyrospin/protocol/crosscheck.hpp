#pragma once

#include <string>

#include "gyrospin/core/basis.hpp"
#include "gyrospin/core/types.hpp"
#include "gyrospin/model/scales.hpp"
#include "gyrospin/protocol/trajectory.hpp"

namespace gyrospin {

enum class CrosscheckPair {
  RotVsEff,         // gyroscopic H_rot (reference) vs adiabatic H_eff
  EffVsDisp,        // H_eff (reference) vs dispersive H_d
  ZeemanOnOff,      // H_eff without (reference) and with the S3 p_gamma term
  EffVsMisaligned,  // H_eff (reference) vs H_eff + eps D {S1,S3}/hbar
};

CrosscheckPair parse_crosscheck_pair(const std::string& name);
std::string to_string(CrosscheckPair p);

// Spin part of the shared initial state, in the dispersive labels
// up = |S1=-hbar>, down = |S1=0>.
enum class SpinInit { Up, Down, Superposition };

SpinInit parse_spin_init(const std::string& name);

struct CrosscheckOptions {
  CrosscheckPair pair = CrosscheckPair::RotVsEff;
  int d_gamma = 40;     // harmonic gamma basis around gamma = 0
  int d_xi = 10;        // xi oscillator, H_rot only
  double alpha = 0.1;   // coherent amplitude of every oscillator factor
  SpinInit spin = SpinInit::Up;
  double periods = 2.0;  // window in units of 2 pi / omega_gamma
  int n_times = 201;
  double eps_nv = 0.01;
  double truncation_threshold = 1e-6;
  // H_rot observable gamma + frame_sign p_xi/(I omega): the slow angle of
  // the adiabatic frame. 0 compares bare gamma.
  double frame_sign = -1.0;
};

struct CrosscheckResult {
  Trajectory trajectory;
  double deviation = 0.0;             // normalized <gamma> deviation
  double population_deviation = 0.0;  // max |P_up difference|
  double discarded_ref = 0.0;
  double discarded_cand = 0.0;
  double max_norm_error = 0.0;
  std::string reference, candidate;
};

// Both members start from spin (x) |alpha>_gamma [(x) |alpha>_xi] on a
// harmonic gamma basis of zero-point width sqrt(hbar / 2 I_eff omega_gamma).
CrosscheckResult model_crosscheck(const DerivedScales& s, const CrosscheckOptions& opt);

// Mean of the observable along a precomputed trajectory.
std::vector<double> observable_series(const Op& obs, const std::vector<Vec>& states);

}  // namespace gyrospin
