#include "gyrospin/model/hamiltonians.hpp"

#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/core/operators.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;

namespace {

void require_factors(const BasisSpec& b, int spin_dim, bool rotor, bool fock, const char* who) {
  b.validate();
  const bool ok = b.spin_dim == spin_dim && b.has(Factor::Rotor) == rotor && b.has(Factor::Fock) == fock;
  if (!ok) throw InvalidBasis(std::string(who) + ": basis is " + b.describe());
}

struct Embedded {
  const BasisSpec& basis;
  Op spin(const Op& a) const { return embed(a, Factor::Spin, basis); }
  Op rotor(const Op& a) const { return embed(a, Factor::Rotor, basis); }
  Op fock(const Op& a) const { return embed(a, Factor::Fock, basis); }
};

Op sin_squared(const RotorOps& r) {
  const Op one = identity(int(r.cos2.rows()));
  return 0.5 * (one - r.cos2);
}

Op cos_squared(const RotorOps& r) {
  const Op one = identity(int(r.cos2.rows()));
  return 0.5 * (one + r.cos2);
}

const Op& angle_of(const RotorOps& r, const BasisSpec& b, const char* who) {
  if (b.rotor->kind != RotorKind::Harmonic)
    throw InvalidBasis(std::string(who) + " needs the harmonic angle basis");
  return r.angle;
}

// H_eff without the optional Zeeman term
Op effective_core(const DerivedScales& s, const BasisSpec& b, const RotorOps& r, const Spin1Ops& sp) {
  Embedded e{b};
  Op p2 = r.p * r.p;
  Op h = e.rotor(p2) / (2.0 * s.I_eff);
  Op s1s1 = sp.S1 * sp.S1;
  h += e.spin(s1s1) * (s.D_nv / hbar);
  h += s.g * (tensor(sp.S1, r.cos) - tensor(sp.S2, r.sin));
  return h;
}

}  // namespace

Op build_H_rot(const DerivedScales& s, const BasisSpec& b) {
  require_factors(b, 3, true, true, "build_H_rot");
  if (!(s.omega_xi > 0.0)) throw InvalidParameter("build_H_rot needs omega_xi > 0");
  const Spin1Ops sp = spin1_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  const FockOps f = fock_operators(b.fock_dim, s.I, s.omega_xi);
  Embedded e{b};
  Op p2 = r.p * r.p;
  Op s1s1 = sp.S1 * sp.S1;
  Op h = e.fock(f.H);
  h += e.rotor(p2) / (2.0 * s.I3);
  h += e.spin(s1s1) * (s.D_nv / hbar);
  h += tensor(tensor(sp.S3, identity(b.rotor->dim())), f.xi) * (s.gamma0 * s.B);
  h -= tensor(tensor(identity(3), r.p), f.xi) * s.omega;
  h += s.g * tensor(Op(tensor(sp.S1, r.cos) - tensor(sp.S2, r.sin)), identity(b.fock_dim));
  return h;
}

Op build_H_eff(const DerivedScales& s, const BasisSpec& b, bool include_zeeman) {
  require_factors(b, 3, true, false, "build_H_eff");
  const Spin1Ops sp = spin1_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  Op h = effective_core(s, b, r, sp);
  if (include_zeeman) {
    if (s.omega == 0.0) throw InvalidParameter("Zeeman term needs a nonzero rotation rate");
    h += tensor(sp.S3, r.p) * (s.gamma0 * s.B / (s.omega * s.I));
  }
  return h;
}

Op build_H_mag(const DerivedScales& s, const BasisSpec& b) {
  require_factors(b, 2, true, false, "build_H_mag");
  if (!std::isfinite(s.delta) || !std::isfinite(s.g)) throw InvalidParameter("build_H_mag needs finite delta, g");
  const PauliOps pa = pauli_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  Embedded e{b};
  Op p2 = r.p * r.p;
  Op h = e.rotor(p2) / (2.0 * s.I_eff);
  Op one_plus_sx = identity(2) + pa.sx;
  h += tensor(one_plus_sx, sin_squared(r)) * (0.5 * hbar * s.delta);
  h += tensor(pa.sz, r.cos) * (hbar * s.g);
  return h;
}

Op build_H2(const DerivedScales& s, const BasisSpec& b) {
  require_factors(b, 2, true, false, "build_H2");
  const PauliOps pa = pauli_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  const Op& x = angle_of(r, b, "build_H2");
  Embedded e{b};
  Op p2 = r.p * r.p;
  Op x2 = x * x;
  Op h = e.rotor(p2) / (2.0 * s.I_eff);
  h += e.rotor(x2) * (0.25 * hbar * (s.g - s.delta_tilde));
  h += e.spin(pa.sz) * (0.5 * hbar * s.Delta);
  h += tensor(pa.sz, x2) * (0.25 * hbar * (s.g + s.delta_tilde));
  h -= tensor(pa.sx, x) * (hbar * s.g / std::sqrt(2.0));
  return h;
}

Op build_H_disp(const DerivedScales& s, const BasisSpec& b) {
  require_factors(b, 2, true, false, "build_H_disp");
  if (s.Delta == 0.0) throw RegimeError("build_H_disp: Delta = 0");
  const PauliOps pa = pauli_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  const Op& x = angle_of(r, b, "build_H_disp");
  Embedded e{b};
  Op p2 = r.p * r.p;
  Op x2 = x * x;
  Op h = e.rotor(p2) / (2.0 * s.I_eff);
  h += e.rotor(x2) * (hbar * s.g / 8.0);
  h += e.spin(pa.sz) * (0.5 * hbar * s.Delta);
  h += tensor(pa.sz, x2) * (3.0 * hbar * s.g / 8.0 * (1.0 + 4.0 * s.g / (3.0 * s.Delta)));
  return h;
}

Op build_H_misaligned(const DerivedScales& s, double eps_nv, const BasisSpec& b, bool include_zeeman) {
  Op h = build_H_eff(s, b, include_zeeman);
  if (eps_nv != 0.0) {
    const Spin1Ops sp = spin1_operators();
    Embedded e{b};
    h += e.spin(anticommutator(sp.S1, sp.S3)) * (eps_nv * s.D_nv / hbar);
  }
  return h;
}

Op build_H_asym(const DerivedScales& s, double delta_I, const BasisSpec& b) {
  Op h = build_H_rot(s, b);
  if (delta_I == 0.0) return h;
  const Spin1Ops sp = spin1_operators();
  const RotorOps r = rotor_operators(*b.rotor);
  const FockOps f = fock_operators(b.fock_dim, s.I, s.omega_xi);
  const Op one3 = identity(3);
  const Op onef = identity(b.fock_dim);
  const Op s2g = sin_squared(r);
  const Op c2g = cos_squared(r);
  Op pxi2 = f.p * f.p;
  Op xi2 = f.xi * f.xi;
  Op one_xi2 = onef + xi2;
  const double w = s.omega;

  h += tensor(tensor(one3, c2g), pxi2) * (delta_I / (2.0 * s.I));
  h += tensor(tensor(one3, s2g), one_xi2) * (0.5 * s.I * delta_I * w * w);
  h -= tensor(tensor(sp.S2, r.sin), onef) * (delta_I * w);
  h -= tensor(tensor(one3, symmetrized(r.p, s2g)), f.xi) * (delta_I * w);
  h += tensor(tensor(one3, symmetrized(r.sin, r.cos)), f.p) * (delta_I * w);
  return h;
}

Eigen::Matrix2cd h_mag_spin_block(const DerivedScales& s, double gamma) {
  const double sn = std::sin(gamma), cs = std::cos(gamma);
  const double a = 0.5 * s.delta * sn * sn;
  Eigen::Matrix2cd m;
  m << a + s.g * cs, a, a, a - s.g * cs;
  return m;
}

}  // namespace gyrospin
