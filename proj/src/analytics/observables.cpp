#include "gyrospin/analytics/observables.hpp"

#include <cmath>
#include <string>

#include "gyrospin/analytics/special.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/core/linalg.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;
using constants::pi;

Alignment barnett_alignment(double kappa, int m) {
  if (m < -1 || m > 1) throw InvalidParameter("spin projection m must be -1, 0 or +1");
  if (!std::isfinite(kappa)) throw InvalidParameter("kappa must be finite");
  const double x = kappa * m;
  if (x == 0.0) return {};
  const double r1 = bessel_ratio(1, x);
  const double r2 = bessel_ratio(2, x);
  Alignment a;
  a.mean = -r1;
  a.variance = 0.5 + 0.5 * r2 - r1 * r1;
  if (a.variance < 0.0) a.variance = 0.0;
  return a;
}

SurfacePoint potential_surfaces(double delta, double g, double gamma) {
  const double s = std::sin(gamma), c = std::cos(gamma);
  const double a = delta * s * s;
  const double root = std::sqrt(a * a + 4.0 * g * g * c * c);
  return {gamma, a + root, a - root};
}

double crossing_curvature(double delta, double g) {
  if (delta == 0.0) throw RegimeError("crossing curvature undefined for delta = 0");
  // The quartic term scales as (g/delta)^2, so h follows delta/g; one
  // Richardson step removes the h^2 error.
  double h = 2e-2;
  if (g != 0.0) h *= std::min(1.0, std::abs(delta / g));
  const double c = pi / 2;
  const double f0 = potential_surfaces(delta, g, c).omega_plus;
  auto second = [&](double step) {
    const double fp = potential_surfaces(delta, g, c + step).omega_plus;
    const double fm = potential_surfaces(delta, g, c - step).omega_plus;
    return (fp - 2.0 * f0 + fm) / (step * step);
  };
  const double d2 = (4.0 * second(h / 2) - second(h)) / 3.0;
  return d2 / 4.0;
}

StabilityReport stability_check(const DerivedScales& s) {
  if (s.g == 0.0 || s.delta == 0.0 || !s.sigma_gamma || !s.omega_eta)
    throw RegimeError("stability check undefined for g = 0");
  StabilityReport r;
  r.sigma_gamma = *s.sigma_gamma;
  r.omega_eta = *s.omega_eta;
  r.ratio = std::abs(s.g * r.sigma_gamma / s.delta);
  r.small_param =
      std::pow(hbar * s.g * s.g / (8.0 * s.I_eff * std::pow(std::abs(s.delta), 3)), 0.25);
  r.stable = r.ratio < stability_threshold;
  return r;
}

double overlap_laguerre(int n, double a) {
  if (n < 0) throw InvalidParameter("overlap index must be non-negative");
  return std::exp(-0.5 * a * a) * laguerre(n, a * a);
}

namespace {

double fock_element(int n, double a, int d) {
  // D(a) = exp(a (a^dag - a)) = exp(-i H) with H = i a (a^dag - a) Hermitian
  Mat h = Mat::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double e = a * std::sqrt(double(k + 1));
    h(k + 1, k) = cd(0.0, e);
    h(k, k + 1) = cd(0.0, -e);
  }
  const EigenSystem es = hermitian_eig(h);
  const Vec col = es.vectors.row(n).adjoint();
  cd acc = 0.0;
  for (int j = 0; j < d; ++j) acc += std::norm(col(j)) * std::exp(cd(0.0, -es.values(j)));
  return acc.real();
}

}  // namespace

double overlap_fock_matrix_element(int n, double a, int d) {
  if (n < 0 || n >= d) throw InvalidParameter("overlap index outside the Fock space");
  const double v = fock_element(n, a, d);
  const double check = fock_element(n, a, d + 16);
  if (std::abs(v - check) > 1e-10)
    throw TruncationError("Fock dimension " + std::to_string(d) + " inadequate for n=" +
                          std::to_string(n) + ", a=" + std::to_string(a));
  return v;
}

namespace {

double xi0(const DerivedScales& s) {
  if (s.I <= 0.0 || s.omega <= 0.0) throw InvalidParameter("overlaps need I > 0 and omega > 0");
  return std::sqrt(hbar / (2.0 * s.I * s.omega));
}

}  // namespace

double overlap_alpha_f(const DerivedScales& s) {
  const double shift = hbar * s.g / (s.I * s.omega * s.omega);
  return shift / (2.0 * xi0(s));
}

double overlap_alpha_g(const DerivedScales& s) {
  const double shift = 2.0 * hbar * s.gamma0 * s.B / (s.I * s.omega * s.omega);
  return shift / (2.0 * xi0(s));
}

double overlap_fn(int n, const DerivedScales& s) { return overlap_laguerre(n, overlap_alpha_f(s)); }
double overlap_gn(int n, const DerivedScales& s) { return overlap_laguerre(n, overlap_alpha_g(s)); }

namespace {

void require_dispersive_inputs(const DerivedScales& s) {
  if (!(s.Delta > 0.0)) throw RegimeError("interferometer requires Delta > 0");
  if (s.g == 0.0) throw RegimeError("interferometer requires g != 0");
  if (!s.omega_gamma) throw RegimeError("omega_gamma undefined");
}

cd visibility(double coeff, double omega_gamma, double tau, double zeta) {
  const double sh = std::sinh(zeta);
  const cd inv = 1.0 + coeff * (1.0 - std::exp(cd(0.0, 2.0 * omega_gamma * tau))) * sh * sh;
  return 1.0 / inv;
}

}  // namespace

double squeezing_zeta(const DerivedScales& s, double tau) {
  require_dispersive_inputs(s);
  return std::sqrt(hbar) * s.g * tau / std::sqrt(s.I_eff * s.Delta);
}

cd lambda_tau(const DerivedScales& s, double tau) {
  const double zeta = squeezing_zeta(s, tau);
  return visibility(1.0, *s.omega_gamma, tau, zeta);
}

InterferenceResult interference_probability(const DerivedScales& s, double tau, double T2) {
  if (!(T2 > 0.0)) throw InvalidParameter("T2 must be positive");
  InterferenceResult r;
  r.tau = tau;
  r.zeta = squeezing_zeta(s, tau);
  r.lambda = visibility(1.0, *s.omega_gamma, tau, r.zeta);
  const double decay = std::isinf(T2) ? 1.0 : std::exp(-2.0 * tau / T2);
  // Re(1/lambda) >= 1 keeps lambda in the right half plane, so the
  // principal root matches sqrt|lambda| cos(arg lambda / 2).
  const double half = 0.5 * decay * std::sqrt(r.lambda).real();
  r.P_up = 0.5 + half;
  r.P_down = 0.5 - half;
  return r;
}

double i_gamma_coefficient(double Delta, double g) {
  if (g == 0.0 || Delta + 2.0 * g == 0.0) throw RegimeError("I_gamma coefficient undefined");
  return (Delta + 4.0 * g) * (Delta + 4.0 * g) / (8.0 * g * (Delta + 2.0 * g));
}

double i_gamma_general(const DerivedScales& s, double tau) {
  const double zeta = squeezing_zeta(s, tau);
  const cd lam = visibility(i_gamma_coefficient(s.Delta, s.g), *s.omega_gamma, tau, zeta);
  return 2.0 * std::sqrt(lam).real();
}

double misalignment_angle(double eps_nv, double D_nv, double Delta) {
  if (Delta == 0.0) throw RegimeError("mixing angle undefined for Delta = 0");
  return 0.5 * std::atan(std::sqrt(2.0) * eps_nv * D_nv / std::abs(Delta));
}

double asymmetry_bound(const DerivedScales& s) {
  if (s.I <= 0.0 || s.omega == 0.0) throw InvalidParameter("asymmetry bound needs I > 0, omega != 0");
  return hbar * s.g / (s.I * s.omega * s.omega);
}

DopplerDrift doppler_drift_average(const DerivedScales& s, const TrapConfig& trap, double xi,
                                   int n_rev) {
  trap.validate();
  if (n_rev < 1) throw InvalidParameter("n_rev must be >= 1");
  if (s.omega == 0.0) throw InvalidParameter("doppler average needs omega != 0");
  const double dq = s.Q - s.Q3;
  const double pref = trap.U_ac * trap.U_ac * dq * dq /
                      (18.0 * trap.omega_ac * trap.omega_ac * std::pow(trap.d0, 4) * s.I);
  const double eps = trap.epsilon;
  auto torque = [&](double alpha) {
    return -pref * (eps * eps * std::sin(4.0 * alpha) - 3.0 * eps * xi * std::sin(2.0 * alpha));
  };
  // Uniform trapezoid rule over whole periods is exact for these harmonics.
  const int per_rev = 64;
  const int n = per_rev * n_rev;
  const double period = 2.0 * pi / std::abs(s.omega);
  const double dt = n_rev * period / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += torque(s.omega * k * dt);
  DopplerDrift d;
  d.mean = sum / n;
  d.amplitude = std::abs(pref) * (eps * eps + 3.0 * std::abs(eps * xi));
  return d;
}

}  // namespace gyrospin
