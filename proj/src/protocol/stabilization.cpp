#include "gyrospin/protocol/stabilization.hpp"

#include <algorithm>
#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/core/split_operator.hpp"
#include "gyrospin/core/states.hpp"
#include "gyrospin/errors.hpp"
#include "gyrospin/model/hamiltonians.hpp"

namespace gyrospin {

using constants::pi;

Vec stabilization_initial_state(int L, double width, int spin_init) {
  if (spin_init != 1 && spin_init != -1) throw InvalidParameter("spin_init must be +1 or -1");
  const Vec packet = rotor_gaussian_packet(L, pi / 2, width);
  const int n = 2 * L + 1;
  Vec psi(2 * n);
  const double r = 1.0 / std::sqrt(2.0);
  psi.head(n) = r * packet;
  psi.tail(n) = (spin_init * r) * packet;
  return psi;
}

namespace {

double initial_spin_population(const Vec& psi, int n, int spin_init) {
  const double r = 1.0 / std::sqrt(2.0);
  double p = 0.0;
  for (int k = 0; k < n; ++k) p += std::norm(r * (psi[k] + double(spin_init) * psi[n + k]));
  return p;
}

double layer_weight(const Vec& psi, int L, double fraction) {
  const int n = 2 * L + 1;
  const double onset = (1.0 - fraction) * L;
  double w = 0.0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(k - L) >= onset) w += std::norm(psi[k]) + std::norm(psi[n + k]);
  }
  return w;
}

}  // namespace

StabilizationRun simulate_stabilization(const DerivedScales& s, const StabilizationOptions& opt) {
  if (opt.rotor_L < 1) throw InvalidBasis("rotor cutoff L must be >= 1");
  if (opt.samples < 2) throw InvalidParameter("need at least two samples");
  const double width = opt.packet_width ? *opt.packet_width : s.sigma_gamma.value_or(0.0);
  if (!(width > 0.0)) throw InvalidParameter("packet width undefined (g = 0 needs an explicit width)");

  double t_max = opt.t_max;
  double dt_target = opt.dt.value_or(0.0);
  if (s.omega_eta) {
    const double period = 2.0 * pi / *s.omega_eta;
    if (t_max <= 0.0) t_max = 10.0 * period;
    if (dt_target <= 0.0) dt_target = period / 200.0;
  }
  if (!(t_max > 0.0) || !(dt_target > 0.0))
    throw InvalidParameter("t_max and dt must be given when omega_eta is undefined");

  const int intervals = opt.samples - 1;
  const int per_sample = std::max(1, int(std::ceil(t_max / dt_target / intervals)));
  const int total = per_sample * intervals;
  const double dt = t_max / total;

  const DerivedScales sc = s;
  RotorSplitOperator prop(
      opt.rotor_L, s.I_eff, [&sc](double gamma) { return h_mag_spin_block(sc, gamma); }, dt,
      opt.absorb_fraction);

  const int n = 2 * opt.rotor_L + 1;
  Vec psi = stabilization_initial_state(opt.rotor_L, width, opt.spin_init);

  StabilizationRun run;
  std::vector<double> times, p_trans, absorbed, eta_t, gamma_t, edge;
  for (int k = 0; k <= intervals; ++k) {
    if (k > 0) prop.advance(psi, per_sample);
    const double t = k * per_sample * dt;
    const double p = std::clamp(1.0 - initial_spin_population(psi, n, opt.spin_init), 0.0, 1.0);
    times.push_back(t);
    p_trans.push_back(p);
    absorbed.push_back(prop.absorbed());
    eta_t.push_back(s.omega_eta ? *s.omega_eta * t : 0.0);
    gamma_t.push_back(s.omega_gamma ? *s.omega_gamma * t : 0.0);
    const double e = opt.absorb_fraction > 0.0 ? layer_weight(psi, opt.rotor_L, opt.absorb_fraction)
                                               : layer_weight(psi, opt.rotor_L, 2.0 / opt.rotor_L);
    edge.push_back(e);
    run.max_transition = std::max(run.max_transition, p);
    run.edge_weight = std::max(run.edge_weight, e);
  }
  const double total_prob = psi.squaredNorm() + prop.absorbed();
  if (std::abs(total_prob - 1.0) > 1e-8) throw NumericError("stabilization run lost probability");

  run.trajectory.times = times;
  run.trajectory.add("omega_eta_t_rad", eta_t);
  run.trajectory.add("omega_gamma_t_rad", gamma_t);
  run.trajectory.add("P_transition_dimless", p_trans);
  run.trajectory.add("absorbed_dimless", absorbed);
  run.trajectory.add("edge_weight_dimless", edge);
  run.final_transition = p_trans.back();
  run.absorbed = prop.absorbed();
  run.steps = total;
  return run;
}

}  // namespace gyrospin
