#pragma once

#include <complex>
#include <optional>

#include "gyrospin/model/params.hpp"
#include "gyrospin/model/scales.hpp"

namespace gyrospin {

struct Alignment {
  double mean = 0.0;      // <cos gamma>
  double variance = 0.5;  // var(cos gamma)
};

// Boltzmann weight exp(-kappa m cos gamma).
Alignment barnett_alignment(double kappa, int m);

struct SurfacePoint {
  double gamma = 0.0;
  double omega_plus = 0.0;   // rad/s
  double omega_minus = 0.0;  // rad/s
};

SurfacePoint potential_surfaces(double delta, double g, double gamma);

// Coefficient of (gamma - pi/2)^2 in Omega_+/2 at the avoided crossing,
// from a central second difference. Throws RegimeError for delta == 0.
double crossing_curvature(double delta, double g);

struct StabilityReport {
  double sigma_gamma = 0.0;
  double ratio = 0.0;        // |g sigma_gamma / delta|
  double small_param = 0.0;  // (hbar g^2 / 8 I_eff |delta|^3)^(1/4)
  double omega_eta = 0.0;
  bool stable = false;       // ratio < stability_threshold
};

inline constexpr double stability_threshold = 0.1;

// Throws RegimeError when g or delta vanish.
StabilityReport stability_check(const DerivedScales& s);

// exp(-a^2/2) L_n(a^2): <n| D(a) |n> for a real displacement a.
double overlap_laguerre(int n, double a);

// Same matrix element from a truncated Fock representation of size d.
// Throws TruncationError when enlarging d changes the value by more than 1e-10.
double overlap_fock_matrix_element(int n, double a, int d);

// Displacements in units of 2 xi0, xi0 = sqrt(hbar / 2 I omega).
double overlap_alpha_f(const DerivedScales& s);  // s = hbar g / (I omega^2)
double overlap_alpha_g(const DerivedScales& s);  // s = 2 hbar gamma0 B / (I omega^2)
double overlap_fn(int n, const DerivedScales& s);
double overlap_gn(int n, const DerivedScales& s);

// zeta = sqrt(hbar) g tau / sqrt(I_eff Delta). Throws RegimeError unless
// Delta > 0, g != 0 and omega_gamma is defined.
double squeezing_zeta(const DerivedScales& s, double tau);

std::complex<double> lambda_tau(const DerivedScales& s, double tau);

struct InterferenceResult {
  double tau = 0.0;
  std::complex<double> lambda{1.0, 0.0};
  double zeta = 0.0;
  double P_up = 1.0;
  double P_down = 0.0;
};

// P = 1/2 +- exp(-2 tau/T2) Re(sqrt(lambda))/2; T2 = +inf disables dephasing.
InterferenceResult interference_probability(const DerivedScales& s, double tau, double T2);

// (Delta + 4g)^2 / (8 g (Delta + 2g)); tends to 1 as Delta/g -> 0.
double i_gamma_coefficient(double Delta, double g);

// 2 Re[(1 + c (1 - e^{2 i omega_gamma tau}) sinh^2 zeta)^(-1/2)]
double i_gamma_general(const DerivedScales& s, double tau);

// theta = arctan(sqrt(2) eps D_nv / |Delta|) / 2. Throws RegimeError for Delta == 0.
double misalignment_angle(double eps_nv, double D_nv, double Delta);

// hbar g / (I omega^2)
double asymmetry_bound(const DerivedScales& s);

struct DopplerDrift {
  double mean = 0.0;       // time-averaged dp_alpha/dt, N m
  double amplitude = 0.0;  // bound on the instantaneous value
};

// Average of the first-order torque from a trap asymmetry over n_rev full
// revolutions with alpha = omega t.
DopplerDrift doppler_drift_average(const DerivedScales& s, const TrapConfig& trap, double xi,
                                   int n_rev);

}  // namespace gyrospin
