#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gyrospin {

enum class Factor { Spin, Rotor, Fock };

enum class RotorKind {
  Periodic,  // angular-momentum states |m>, m in [-L, L]
  Harmonic   // oscillator states of the angle around a center point
};

struct RotorFactor {
  RotorKind kind = RotorKind::Periodic;
  int L = 0;
  int d = 0;
  double center = 0.0;  // rad
  double width = 0.0;   // rad, zero-point width sqrt(<(angle-center)^2>) of |0>

  int dim() const;
};

RotorFactor periodic_rotor(int L);
RotorFactor harmonic_rotor(int d, double center, double width);

// Product basis spin (x) rotor (x) fock; any factor may be omitted.
// spin_dim is 3 for the NV triplet and 2 for a two-level subspace.
struct BasisSpec {
  int spin_dim = 0;
  std::optional<RotorFactor> rotor;
  int fock_dim = 0;

  bool has(Factor f) const;
  int factor_dim(Factor f) const;
  std::vector<int> dims() const;
  int dim() const;
  void validate() const;
  std::string describe() const;
};

BasisSpec spin_rotor_basis(int spin_dim, const RotorFactor& rotor);
BasisSpec spin_rotor_fock_basis(int spin_dim, const RotorFactor& rotor, int fock_dim);
BasisSpec spin_fock_basis(int spin_dim, int fock_dim);

}  // namespace gyrospin
