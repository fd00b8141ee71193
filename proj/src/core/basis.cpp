#include "gyrospin/core/basis.hpp"

#include <sstream>

#include "gyrospin/errors.hpp"

namespace gyrospin {

int RotorFactor::dim() const {
  return kind == RotorKind::Periodic ? 2 * L + 1 : d;
}

RotorFactor periodic_rotor(int L) {
  if (L < 1) throw InvalidBasis("rotor cutoff L must be >= 1");
  RotorFactor r;
  r.kind = RotorKind::Periodic;
  r.L = L;
  return r;
}

RotorFactor harmonic_rotor(int d, double center, double width) {
  if (d < 2) throw InvalidBasis("harmonic angle basis needs d >= 2");
  if (!(width > 0.0)) throw InvalidBasis("harmonic angle width must be positive");
  RotorFactor r;
  r.kind = RotorKind::Harmonic;
  r.d = d;
  r.center = center;
  r.width = width;
  return r;
}

bool BasisSpec::has(Factor f) const {
  switch (f) {
    case Factor::Spin: return spin_dim > 0;
    case Factor::Rotor: return rotor.has_value();
    case Factor::Fock: return fock_dim > 0;
  }
  return false;
}

int BasisSpec::factor_dim(Factor f) const {
  if (!has(f)) throw InvalidBasis("basis factor not present");
  switch (f) {
    case Factor::Spin: return spin_dim;
    case Factor::Rotor: return rotor->dim();
    case Factor::Fock: return fock_dim;
  }
  return 0;
}

std::vector<int> BasisSpec::dims() const {
  std::vector<int> out;
  if (has(Factor::Spin)) out.push_back(spin_dim);
  if (has(Factor::Rotor)) out.push_back(rotor->dim());
  if (has(Factor::Fock)) out.push_back(fock_dim);
  return out;
}

int BasisSpec::dim() const {
  int n = 1;
  for (int d : dims()) n *= d;
  return n;
}

void BasisSpec::validate() const {
  if (spin_dim < 0 || spin_dim == 1 || spin_dim > 3)
    throw InvalidBasis("spin factor must have dimension 2 or 3");
  if (rotor) {
    if (rotor->kind == RotorKind::Periodic && rotor->L < 1)
      throw InvalidBasis("rotor cutoff L must be >= 1");
    if (rotor->kind == RotorKind::Harmonic && (rotor->d < 2 || !(rotor->width > 0.0)))
      throw InvalidBasis("harmonic angle basis needs d >= 2 and positive width");
  }
  if (fock_dim < 0 || fock_dim == 1) throw InvalidBasis("fock dimension must be >= 2");
  if (dims().empty()) throw InvalidBasis("empty basis");
}

std::string BasisSpec::describe() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " x ";
    first = false;
  };
  if (has(Factor::Spin)) {
    sep();
    os << "spin" << spin_dim;
  }
  if (rotor) {
    sep();
    if (rotor->kind == RotorKind::Periodic)
      os << "rotor(L=" << rotor->L << ")";
    else
      os << "angle(d=" << rotor->d << ")";
  }
  if (has(Factor::Fock)) {
    sep();
    os << "fock(" << fock_dim << ")";
  }
  return os.str();
}

BasisSpec spin_rotor_basis(int spin_dim, const RotorFactor& rotor) {
  BasisSpec b;
  b.spin_dim = spin_dim;
  b.rotor = rotor;
  b.validate();
  return b;
}

BasisSpec spin_rotor_fock_basis(int spin_dim, const RotorFactor& rotor, int fock_dim) {
  BasisSpec b;
  b.spin_dim = spin_dim;
  b.rotor = rotor;
  b.fock_dim = fock_dim;
  b.validate();
  return b;
}

BasisSpec spin_fock_basis(int spin_dim, int fock_dim) {
  BasisSpec b;
  b.spin_dim = spin_dim;
  b.fock_dim = fock_dim;
  b.validate();
  return b;
}

}  // namespace gyrospin
