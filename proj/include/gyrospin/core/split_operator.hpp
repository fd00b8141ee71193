#pragma once

#include <functional>
#include <memory>

#include "gyrospin/core/types.hpp"

namespace gyrospin {

// Two-level spin on the periodic rotor with
//   H/hbar = hbar m^2 / (2 I) + V(gamma),
// V(gamma) a Hermitian 2x2 matrix in rad/s. Strang splitting
// K(dt/2) V(dt) K(dt/2); V is applied on the angle grid gamma_j = 2 pi j/N,
// N = 2L+1, reached by FFT from the momentum coefficients.
//
// State layout matches spin(2) x rotor(L): index s*(2L+1) + (m+L).
//
// Optional absorbing layer: amplitudes with |m| > (1-absorb_fraction) L are
// damped by a cos^(1/8) ramp each half kinetic step; the removed norm is
// accumulated in absorbed().
class RotorSplitOperator {
 public:
  using Potential = std::function<Eigen::Matrix2cd(double gamma)>;

  RotorSplitOperator(int L, double inertia, const Potential& v, double dt, double absorb_fraction = 0.0);
  ~RotorSplitOperator();
  RotorSplitOperator(const RotorSplitOperator&) = delete;
  RotorSplitOperator& operator=(const RotorSplitOperator&) = delete;

  void step(Vec& state);
  void advance(Vec& state, int nsteps);

  int L() const { return L_; }
  double dt() const { return dt_; }
  double absorbed() const { return absorbed_; }

 private:
  struct Fft;
  int L_, N_;
  double dt_;
  double absorbed_ = 0.0;
  std::vector<cd> kinetic_;               // per momentum index, includes mask
  std::vector<Eigen::Matrix2cd> pot_;     // per grid point
  std::unique_ptr<Fft> fft_;
};

// exp(-i V t) for a Hermitian 2x2 V.
Eigen::Matrix2cd expm_hermitian2(const Eigen::Matrix2cd& v, double t);

}  // namespace gyrospin
