#include "gyrospin/core/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;

namespace {

using Triplets = std::vector<Eigen::Triplet<cd>>;

Op build(int n, const Triplets& t) {
  Op m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Op lowering(int d) {
  Triplets t;
  for (int n = 1; n < d; ++n) t.emplace_back(n - 1, n, std::sqrt(double(n)));
  return build(d, t);
}

}  // namespace

Op identity(int n) {
  Op m(n, n);
  m.setIdentity();
  return m;
}

Op diagonal(const RVec& d) {
  Triplets t;
  t.reserve(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d[i] != 0.0) t.emplace_back(i, i, d[i]);
  return build(int(d.size()), t);
}

Op from_dense(const Mat& m, double drop) {
  Triplets t;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > drop) t.emplace_back(i, j, m(i, j));
  Op out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  out.makeCompressed();
  return out;
}

Spin1Ops spin1_operators() {
  const double r = hbar / std::sqrt(2.0);
  Spin1Ops s;
  s.S1 = build(3, {{0, 0, hbar}, {2, 2, -hbar}});
  s.S2 = build(3, {{0, 1, r}, {1, 0, r}, {1, 2, r}, {2, 1, r}});
  s.S3 = build(3, {{0, 1, -I_unit * r}, {1, 0, I_unit * r}, {1, 2, -I_unit * r}, {2, 1, I_unit * r}});
  return s;
}

PauliOps pauli_operators() {
  PauliOps p;
  p.sx = build(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  p.sy = build(2, {{0, 1, -I_unit}, {1, 0, I_unit}});
  p.sz = build(2, {{0, 0, 1.0}, {1, 1, -1.0}});
  return p;
}

RotorOps rotor_operators(int L) {
  if (L < 1) throw InvalidBasis("rotor cutoff L must be >= 1");
  const int n = 2 * L + 1;
  RVec m(n);
  for (int k = 0; k < n; ++k) m[k] = hbar * double(k - L);
  RotorOps r;
  r.p = diagonal(m);
  Triplets e, e2;
  for (int k = 1; k < n; ++k) e.emplace_back(k - 1, k, 1.0);
  for (int k = 2; k < n; ++k) e2.emplace_back(k - 2, k, 1.0);
  r.exp_i = build(n, e);
  Op exp_2i = build(n, e2);
  Op ed = r.exp_i.adjoint();
  r.cos = 0.5 * (r.exp_i + ed);
  r.sin = (r.exp_i - ed) * cd(0.0, -0.5);
  r.cos2 = 0.5 * (exp_2i + Op(exp_2i.adjoint()));
  return r;
}

RotorOps harmonic_angle_operators(int d, double center, double width) {
  if (d < 2) throw InvalidBasis("harmonic angle basis needs d >= 2");
  if (!(width > 0.0)) throw InvalidParameter("harmonic angle width must be positive");
  RMat x = RMat::Zero(d, d);
  for (int n = 1; n < d; ++n) x(n - 1, n) = x(n, n - 1) = width * std::sqrt(double(n));
  Eigen::SelfAdjointEigenSolver<RMat> es(x);
  const RVec& lam = es.eigenvalues();
  const RMat& V = es.eigenvectors();
  auto fn = [&](auto f) {
    RVec v(d);
    for (int k = 0; k < d; ++k) v[k] = f(lam[k]);
    RMat out = V * v.asDiagonal() * V.transpose();
    return from_dense(out.cast<cd>());
  };
  const double c0 = std::cos(center), s0 = std::sin(center);
  RotorOps r;
  Op a = lowering(d);
  Op ad = a.adjoint();
  r.angle = center * identity(d) + width * (a + ad);
  r.p = (ad - a) * cd(0.0, hbar / (2.0 * width));
  r.cos = fn([&](double y) { return c0 * std::cos(y) - s0 * std::sin(y); });
  r.sin = fn([&](double y) { return s0 * std::cos(y) + c0 * std::sin(y); });
  r.cos2 = fn([&](double y) { return std::cos(2.0 * (center + y)); });
  r.exp_i = r.cos + I_unit * r.sin;
  return r;
}

RotorOps rotor_operators(const RotorFactor& r) {
  if (r.kind == RotorKind::Periodic) return rotor_operators(r.L);
  return harmonic_angle_operators(r.d, r.center, r.width);
}

FockOps fock_operators(int d, double inertia, double frequency) {
  if (d < 2) throw InvalidBasis("fock dimension must be >= 2");
  if (!(inertia > 0.0) || !(frequency > 0.0))
    throw InvalidParameter("fock operators need positive inertia and frequency");
  FockOps f;
  f.xi0 = std::sqrt(hbar / (2.0 * inertia * frequency));
  f.a = lowering(d);
  Op ad = f.a.adjoint();
  f.xi = f.xi0 * (f.a + ad);
  f.p = (ad - f.a) * cd(0.0, std::sqrt(hbar * inertia * frequency / 2.0));
  RVec e(d);
  for (int n = 0; n < d; ++n) e[n] = hbar * frequency * (n + 0.5);
  f.H = diagonal(e);
  return f;
}

Op tensor(const Op& a, const Op& b) {
  Op out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

Op embed(const Op& op, Factor f, const BasisSpec& basis) {
  const int fd = basis.factor_dim(f);
  if (op.rows() != fd || op.cols() != fd)
    throw DimensionMismatch("operator does not match basis factor dimension");
  Op out = identity(1);
  for (Factor g : {Factor::Spin, Factor::Rotor, Factor::Fock}) {
    if (!basis.has(g)) continue;
    out = tensor(out, g == f ? op : identity(basis.factor_dim(g)));
  }
  return out;
}

Op commutator(const Op& a, const Op& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("commutator dimension mismatch");
  Op ab = a * b;
  Op ba = b * a;
  return ab - ba;
}

Op anticommutator(const Op& a, const Op& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("anticommutator dimension mismatch");
  Op ab = a * b;
  Op ba = b * a;
  return ab + ba;
}

Op symmetrized(const Op& a, const Op& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("product dimension mismatch");
  Op ab = a * b;
  Op h = ab.adjoint();
  return 0.5 * (ab + h);
}

}  // namespace gyrospin
