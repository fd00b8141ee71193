#pragma once

#include "gyrospin/core/basis.hpp"
#include "gyrospin/core/types.hpp"
#include "gyrospin/model/params.hpp"
#include "gyrospin/model/scales.hpp"

namespace gyrospin {

// All builders return H in joules on the requested basis. Spin-1 factors
// use the S1 eigenbasis (+hbar, 0, -hbar). Two-level factors:
//   H_mag:      index 0 = |S1=+hbar>, 1 = |S1=-hbar>
//   H2, H_disp: index 0 = up = |S1=-hbar> (sigma_z=+1), 1 = down = |S1=0>

// spin(3) x gamma x fock(xi)
Op build_H_rot(const DerivedScales& s, const BasisSpec& basis);

// spin(3) x gamma; include_zeeman adds (gamma0 B/omega) S3 p_gamma / I
Op build_H_eff(const DerivedScales& s, const BasisSpec& basis, bool include_zeeman = false);

// spin(2) x gamma, magnetic subspace
Op build_H_mag(const DerivedScales& s, const BasisSpec& basis);

// spin(2) x gamma (harmonic angle basis expected)
Op build_H2(const DerivedScales& s, const BasisSpec& basis);
Op build_H_disp(const DerivedScales& s, const BasisSpec& basis);

// H_eff + eps D_nv {S1, S3}/hbar
Op build_H_misaligned(const DerivedScales& s, double eps_nv, const BasisSpec& basis,
                      bool include_zeeman = false);

// H_rot + shape-asymmetry correction with I2 = I (1 - delta_I)
Op build_H_asym(const DerivedScales& s, double delta_I, const BasisSpec& basis);

// Fixed-gamma 2x2 spin block of H_mag divided by hbar (rad/s).
Eigen::Matrix2cd h_mag_spin_block(const DerivedScales& s, double gamma);

}  // namespace gyrospin
