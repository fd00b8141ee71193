#pragma once

#include <string>
#include <vector>

#include "gyrospin/core/linalg.hpp"
#include "gyrospin/core/types.hpp"
#include "gyrospin/model/scales.hpp"
#include "gyrospin/protocol/trajectory.hpp"

namespace gyrospin {

enum class PulseKind { HalfPi, Pi };

// Instantaneous rotation of the {up, down} Bloch vector about the in-plane
// axis cos(phase) x + sin(phase) y.
struct Pulse {
  double time = 0.0;  // s
  PulseKind kind = PulseKind::HalfPi;
  double phase = 0.0;  // rad, 0 = x axis
};

struct PulseSequence {
  std::vector<Pulse> pulses;

  // pi/2 at 0, pi at tau, pi/2 at 2 tau
  static PulseSequence echo(double tau, double phase = 0.0);
  void validate() const;
  double duration() const;
};

Eigen::Matrix2cd pulse_unitary(const Pulse& p);

struct InterferometerRun {
  double tau = 0.0;
  double P_numeric = 0.0;      // with the exp(-2 tau/T2) visibility factor
  double P_analytic = 0.0;     // closed form, same factor
  double P_numeric_raw = 0.0;  // without dephasing
  cd lambda{1.0, 0.0};
  double zeta = 0.0;
  double discarded_weight = 0.0;
  std::vector<std::string> warnings;
  Trajectory trajectory;  // spin populations and <gamma^2> over [0, 2 tau]
};

struct InterferometerOptions {
  int fock_dim = 60;
  double temperature = 0.0;  // K
  double phase = 0.0;        // pulse axis
  int samples = 0;           // trajectory points over [0, 2 tau]; 0 = endpoints only
  double truncation_threshold = 1e-6;
};

// Spin echo on the dispersive pair. The oscillator basis is the Fock basis
// of the up branch (frequency omega_gamma); arm unitaries
//   U_up   = exp(-i t (p^2/2I_eff + I_eff omega_gamma^2 gamma^2/2 + hbar Delta/2)/hbar)
//   U_down = exp(-i t (p^2/2I_eff + I_eff omega_gamma^2 gamma^2/2
//                      - hbar g (1 + 4g/Delta) gamma^2/4 - hbar Delta/2)/hbar)
// are exact on the truncated space. The initial state is rho_th (x) |up><up|.
class Interferometer {
 public:
  Interferometer(const DerivedScales& s, const InterferometerOptions& opt);

  InterferometerRun run(double tau, double T2) const;
  InterferometerRun run(const PulseSequence& seq, double T2) const;

  double gamma_width() const { return x0_; }
  const Mat& initial_oscillator_state() const { return rho_th_; }

 private:
  Mat arm(int branch, double t) const;
  DerivedScales s_;
  InterferometerOptions opt_;
  double x0_ = 0.0;
  EigenSystem up_, down_;
  Mat rho_th_;
  Mat gamma2_;
};

InterferometerRun run_interferometer(const DerivedScales& s, double tau, int fock_dim, double temperature,
                                     double T2);

}  // namespace gyrospin
