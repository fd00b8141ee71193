#include "gyrospin/protocol/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "gyrospin/analytics/observables.hpp"
#include "gyrospin/analytics/validity.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

std::vector<std::vector<double>> parallel_rows(int n, int jobs,
                                               const std::function<std::vector<double>(int)>& f) {
  std::vector<std::vector<double>> out(size_t(std::max(n, 0)));
  if (n <= 0) return out;
  jobs = std::clamp(jobs, 1, n);
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw InvalidParameter("linspace needs n >= 1");
  if (n == 1) return {a};
  std::vector<double> v(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = a + (b - a) * k / (n - 1);
  v.back() = b;
  return v;
}

SweepTable alignment_sweep(const ParticleGeometry& geom, const FieldConfig& fields,
                           const std::vector<double>& B_values, const std::vector<double>& temperatures,
                           int m, int jobs) {
  if (m < -1 || m > 1) throw InvalidParameter("m must be -1, 0 or +1");
  for (double T : temperatures)
    if (!(T > 0.0)) throw InvalidParameter("alignment temperatures must be positive");
  SweepTable t;
  t.columns = {"B_mT", "T_K", "kappa_dimless", "mean_cos_gamma_dimless", "variance_dimless"};
  const int nt = int(temperatures.size());
  const int n = int(B_values.size()) * nt;
  auto rows = parallel_rows(n, jobs, [&](int i) {
    FieldConfig f = fields;
    f.B = B_values[size_t(i / nt)];
    Environment env;
    env.T = temperatures[size_t(i % nt)];
    const DerivedScales s = derive_scales(geom, std::nullopt, f, env);
    const double kappa = *s.kappa;
    const Alignment a = barnett_alignment(kappa, m);
    return std::vector<double>{f.B * 1e3, env.T, kappa, a.mean, a.variance};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

SweepTable surface_table(const DerivedScales& s, const std::vector<double>& gammas) {
  SweepTable t;
  t.columns = {"gamma_rad", "Omega_plus_rad_s", "Omega_minus_rad_s"};
  for (double g : gammas) {
    const SurfacePoint p = potential_surfaces(s.delta, s.g, g);
    t.add_row({g, p.omega_plus, p.omega_minus});
  }
  return t;
}

SweepTable recurrence_sweep(const ParticleGeometry& geom, const FieldConfig& fields, const Environment& env,
                            const std::vector<double>& g_over_dnv) {
  if (!(env.T2 > 0.0)) throw InvalidParameter("recurrence sweep needs T2 > 0");
  SweepTable t;
  t.columns = {"g_over_Dnv_dimless", "B_mT", "Delta_over_g_dimless", "omega_gamma_rad_s", "duration_s", "P_recurrence_dimless",
               "T2_exceeds_duration_bool"};
  for (double r : g_over_dnv) {
    FieldConfig f = fields;
    f.B = (fields.omega - r * fields.D_nv) / fields.gamma0;
    const DerivedScales s = derive_scales(geom, std::nullopt, f, env);
    if (!s.omega_gamma || !(s.Delta > 0.0)) throw RegimeError("omega_gamma undefined at g/D_nv = " + std::to_string(r));
    const double tau = constants::pi / *s.omega_gamma;
    const InterferenceResult res = interference_probability(s, tau, env.T2);
    const double duration = 2.0 * tau;
    t.add_row({r, f.B * 1e3, s.Delta / s.g, *s.omega_gamma, duration, res.P_up, env.T2 > duration ? 1.0 : 0.0});
  }
  return t;
}

SweepTable interference_curve(const DerivedScales& s, const std::vector<double>& taus, double T2) {
  SweepTable t;
  t.columns = {"tau_s", "omega_gamma_tau_rad", "zeta_dimless", "lambda_re_dimless", "lambda_im_dimless", "P_up_dimless", "P_down_dimless"};
  for (double tau : taus) {
    const InterferenceResult r = interference_probability(s, tau, T2);
    t.add_row({tau, *s.omega_gamma * tau, r.zeta, r.lambda.real(), r.lambda.imag(), r.P_up, r.P_down});
  }
  return t;
}

SweepTable validity_table(const ParticleGeometry& shape, const FieldConfig& fields, const Environment& env,
                          const std::vector<double>& omegas, const std::vector<double>& l3s, bool classical,
                          int jobs) {
  SweepTable t;
  t.columns = {"omega_rad_s", "l3_m", "n_gamma_dimless", "ratio_p_dimless", "ratio_B_dimless", "defined_bool", "valid_bool"};
  const int nl = int(l3s.size());
  auto rows = parallel_rows(int(omegas.size()) * nl, jobs, [&](int i) {
    const auto pts = adiabatic_validity(shape, fields, env, {omegas[size_t(i / nl)]}, {l3s[size_t(i % nl)]}, classical);
    const ValidityPoint& p = pts.front();
    return std::vector<double>{p.omega, p.l3, p.n_gamma, p.ratio_p, p.ratio_B, p.defined ? 1.0 : 0.0,
                               p.valid ? 1.0 : 0.0};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

}  // namespace gyrospin
