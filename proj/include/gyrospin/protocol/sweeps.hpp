#pragma once

#include <functional>
#include <vector>

#include "gyrospin/model/params.hpp"
#include "gyrospin/model/scales.hpp"
#include "gyrospin/protocol/trajectory.hpp"

namespace gyrospin {

// Evaluates f(0..n-1) on up to `jobs` threads and returns the results in
// index order.
std::vector<std::vector<double>> parallel_rows(int n, int jobs,
                                               const std::function<std::vector<double>(int)>& f);

// Columns B_mT, T_K, kappa_dimless, mean_cos_gamma_dimless, variance_dimless. B outer, T inner.
SweepTable alignment_sweep(const ParticleGeometry& geom, const FieldConfig& fields,
                           const std::vector<double>& B_values, const std::vector<double>& temperatures,
                           int m, int jobs = 1);

// Columns gamma_rad, Omega_plus_rad_s, Omega_minus_rad_s.
SweepTable surface_table(const DerivedScales& s, const std::vector<double>& gammas);

// Recurrence at tau = pi/omega_gamma while g/D_nv is swept by adjusting B.
// Columns g_over_Dnv_dimless, B_mT, Delta_over_g_dimless, omega_gamma_rad_s, duration_s,
// P_recurrence_dimless, T2_exceeds_duration_bool.
SweepTable recurrence_sweep(const ParticleGeometry& geom, const FieldConfig& fields, const Environment& env,
                            const std::vector<double>& g_over_dnv);

// Closed-form P_up over a tau grid. Columns tau_s, omega_gamma_tau_rad,
// zeta_dimless, lambda_re_dimless, lambda_im_dimless, P_up_dimless, P_down_dimless.
SweepTable interference_curve(const DerivedScales& s, const std::vector<double>& taus, double T2);

// Columns omega_rad_s, l3_m, n_gamma_dimless, ratio_p_dimless, ratio_B_dimless, defined_bool, valid_bool.
SweepTable validity_table(const ParticleGeometry& shape, const FieldConfig& fields, const Environment& env,
                          const std::vector<double>& omegas, const std::vector<double>& l3s,
                          bool classical = false, int jobs = 1);

std::vector<double> linspace(double a, double b, int n);

}  // namespace gyrospin
