#pragma once

#include "gyrospin/core/basis.hpp"
#include "gyrospin/core/types.hpp"

namespace gyrospin {

struct Spin1Ops {
  Op S1, S2, S3;
};

struct PauliOps {
  Op sx, sy, sz;
};

// Angle operators of the gamma factor. For the periodic rotor `angle` is
// left empty (gamma itself is not a bounded operator on the circle).
struct RotorOps {
  Op p;
  Op exp_i;  // exp(i gamma)
  Op cos;
  Op sin;
  Op cos2;   // cos(2 gamma)
  Op angle;
};

struct FockOps {
  Op a;
  Op xi;
  Op p;
  Op H;
  double xi0 = 0.0;
};

Op identity(int n);
Op diagonal(const RVec& d);
Op from_dense(const Mat& m, double drop = 0.0);

// S1 eigenbasis ordered (+hbar, 0, -hbar).
Spin1Ops spin1_operators();
PauliOps pauli_operators();

// m in [-L, L]; exp_i lowers m, so [p, exp_i] = -hbar exp_i.
RotorOps rotor_operators(int L);

// gamma = center + width (a + a^dagger), p = i hbar/(2 width) (a^dagger - a);
// trigonometric functions by functional calculus of the truncated angle matrix.
RotorOps harmonic_angle_operators(int d, double center, double width);

RotorOps rotor_operators(const RotorFactor& r);

FockOps fock_operators(int d, double inertia, double frequency);

Op tensor(const Op& a, const Op& b);
Op embed(const Op& op, Factor f, const BasisSpec& basis);

Op commutator(const Op& a, const Op& b);
Op anticommutator(const Op& a, const Op& b);
// (AB + B^dagger A^dagger)/2
Op symmetrized(const Op& a, const Op& b);

}  // namespace gyrospin
