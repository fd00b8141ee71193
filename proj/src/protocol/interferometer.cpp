#include "gyrospin/protocol/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gyrospin/analytics/observables.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/core/operators.hpp"
#include "gyrospin/core/propagate.hpp"
#include "gyrospin/core/states.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;

PulseSequence PulseSequence::echo(double tau, double phase) {
  if (!(tau >= 0.0)) throw InvalidParameter("tau must be non-negative");
  PulseSequence s;
  s.pulses = {{0.0, PulseKind::HalfPi, phase}, {tau, PulseKind::Pi, phase}, {2.0 * tau, PulseKind::HalfPi, phase}};
  return s;
}

void PulseSequence::validate() const {
  for (size_t k = 0; k < pulses.size(); ++k) {
    if (!(pulses[k].time >= 0.0)) throw InvalidParameter("pulse times must be non-negative");
    if (k > 0 && pulses[k].time < pulses[k - 1].time)
      throw InvalidParameter("pulse times must be nondecreasing");
  }
}

double PulseSequence::duration() const { return pulses.empty() ? 0.0 : pulses.back().time; }

Eigen::Matrix2cd pulse_unitary(const Pulse& p) {
  const double theta = p.kind == PulseKind::Pi ? constants::pi : constants::pi / 2;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const cd e = std::exp(cd(0.0, p.phase));
  Eigen::Matrix2cd u;
  // cos(theta/2) - i sin(theta/2) (cos(phase) sx + sin(phase) sy)
  u << c, -I_unit * s * std::conj(e), -I_unit * s * e, c;
  return u;
}

Interferometer::Interferometer(const DerivedScales& s, const InterferometerOptions& opt) : s_(s), opt_(opt) {
  if (!(s.Delta > 0.0)) throw RegimeError("interferometer requires Delta > 0");
  if (s.g == 0.0 || !s.omega_gamma) throw RegimeError("interferometer requires a defined omega_gamma");
  if (opt.fock_dim < 2) throw InvalidBasis("fock_dim must be >= 2");
  if (opt.temperature < 0.0) throw InvalidParameter("temperature must be non-negative");
  const int d = opt.fock_dim;
  const double w = *s.omega_gamma;
  x0_ = std::sqrt(hbar / (2.0 * s.I_eff * w));

  const RotorOps ops = harmonic_angle_operators(d, 0.0, x0_);
  gamma2_ = Mat(ops.angle * ops.angle);

  RVec up_levels(d);
  for (int n = 0; n < d; ++n) up_levels(n) = hbar * w * (n + 0.5);
  up_.values = up_levels;
  up_.vectors = Mat::Identity(d, d);

  Mat h_down = Mat(up_levels.cast<cd>().asDiagonal());
  h_down -= (hbar * s.g / 4.0) * (1.0 + 4.0 * s.g / s.Delta) * gamma2_;
  down_ = hermitian_eig(h_down);

  rho_th_ = thermal_density(diagonal(up_levels), opt.temperature);
}

Mat Interferometer::arm(int branch, double t) const {
  const EigenSystem& es = branch == 0 ? up_ : down_;
  const double offset = (branch == 0 ? 0.5 : -0.5) * s_.Delta;
  Vec phases(es.values.size());
  for (int k = 0; k < phases.size(); ++k) phases(k) = std::exp(cd(0.0, -(es.values(k) / hbar + offset) * t));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

namespace {

// Ensemble of weighted pure states sqrt(p_n) |n>|up>, stored as columns of
// a (2d x k) matrix: rows [0, d) are the up branch, [d, 2d) the down branch.
struct Ensemble {
  Mat cols;
  int d = 0;

  double up_population() const { return cols.topRows(d).squaredNorm(); }
  double down_population() const { return cols.bottomRows(d).squaredNorm(); }
  double mean(const Mat& osc) const {
    cd acc = (cols.topRows(d).adjoint() * osc * cols.topRows(d)).trace() +
             (cols.bottomRows(d).adjoint() * osc * cols.bottomRows(d)).trace();
    return acc.real();
  }
  double edge_weight(int layers) const {
    double w = 0.0;
    for (int n = std::max(0, d - layers); n < d; ++n) w += cols.row(n).squaredNorm() + cols.row(d + n).squaredNorm();
    return w;
  }
};

}  // namespace

InterferometerRun Interferometer::run(double tau, double T2) const {
  return run(PulseSequence::echo(tau, opt_.phase), T2);
}

InterferometerRun Interferometer::run(const PulseSequence& seq, double T2) const {
  seq.validate();
  if (!(T2 > 0.0)) throw InvalidParameter("T2 must be positive");
  const int d = opt_.fock_dim;

  // Diagonal thermal state in the up-branch Fock basis.
  std::vector<int> occupied;
  for (int n = 0; n < d; ++n)
    if (rho_th_(n, n).real() > 1e-16) occupied.push_back(n);
  Ensemble ens;
  ens.d = d;
  ens.cols = Mat::Zero(2 * d, Eigen::Index(occupied.size()));
  for (size_t k = 0; k < occupied.size(); ++k)
    ens.cols(occupied[k], Eigen::Index(k)) = std::sqrt(rho_th_(occupied[k], occupied[k]).real());

  const double end = seq.duration();
  std::vector<double> samples;
  if (opt_.samples >= 2) {
    for (int k = 0; k < opt_.samples; ++k) samples.push_back(end * k / (opt_.samples - 1));
  } else {
    samples = {0.0, end};
  }

  InterferometerRun out;
  out.tau = 0.5 * end;
  std::vector<double> p_up, p_down, g2, edge;
  double now = 0.0;
  size_t next_pulse = 0;
  const int layers = 2;
  double max_edge = ens.edge_weight(layers);

  auto advance_to = [&](double t) {
    if (t > now) {
      const Mat u_up = arm(0, t - now);
      const Mat u_down = arm(1, t - now);
      ens.cols.topRows(d) = u_up * ens.cols.topRows(d);
      ens.cols.bottomRows(d) = u_down * ens.cols.bottomRows(d);
      now = t;
    }
  };
  auto apply_pulses_at = [&](double t) {
    while (next_pulse < seq.pulses.size() && seq.pulses[next_pulse].time <= t) {
      advance_to(seq.pulses[next_pulse].time);
      const Eigen::Matrix2cd u = pulse_unitary(seq.pulses[next_pulse]);
      const Mat up = ens.cols.topRows(d), down = ens.cols.bottomRows(d);
      ens.cols.topRows(d) = u(0, 0) * up + u(0, 1) * down;
      ens.cols.bottomRows(d) = u(1, 0) * up + u(1, 1) * down;
      ++next_pulse;
    }
  };

  out.trajectory.times = samples;
  for (double t : samples) {
    apply_pulses_at(t);
    advance_to(t);
    p_up.push_back(ens.up_population());
    p_down.push_back(ens.down_population());
    g2.push_back(ens.mean(gamma2_));
    const double e = ens.edge_weight(layers);
    edge.push_back(e);
    max_edge = std::max(max_edge, e);
  }
  apply_pulses_at(end);

  const double total = p_up.back() + p_down.back();
  if (std::abs(total - 1.0) > 1e-8) throw NumericError("interferometer lost normalization");

  out.trajectory.add("P_up_dimless", p_up);
  out.trajectory.add("P_down_dimless", p_down);
  out.trajectory.add("mean_gamma_sq_rad2", g2);
  out.trajectory.add("discarded_weight_dimless", edge);

  out.discarded_weight = max_edge;
  check_truncation(max_edge, opt_.truncation_threshold, "interferometer Fock space");

  const double decay = std::isinf(T2) ? 1.0 : std::exp(-2.0 * out.tau / T2);
  out.P_numeric_raw = ens.up_population();
  out.P_numeric = 0.5 + decay * (out.P_numeric_raw - 0.5);
  const InterferenceResult a = interference_probability(s_, out.tau, T2);
  out.P_analytic = a.P_up;
  out.lambda = a.lambda;
  out.zeta = a.zeta;

  const RegimeFlags flags = regime_flags(s_);
  if (!flags.dispersive) {
    std::ostringstream msg;
    msg << "Delta/g = " << flags.delta_over_g << " outside the dispersive regime";
    out.warnings.push_back(msg.str());
  }
  if (a.zeta > 1.0) out.warnings.push_back("zeta > 1: closed form outside its stated range");
  if (opt_.temperature > 0.0) out.warnings.push_back("closed form assumes T -> 0");
  return out;
}

InterferometerRun run_interferometer(const DerivedScales& s, double tau, int fock_dim, double temperature,
                                     double T2) {
  InterferometerOptions opt;
  opt.fock_dim = fock_dim;
  opt.temperature = temperature;
  return Interferometer(s, opt).run(tau, T2);
}

}  // namespace gyrospin
