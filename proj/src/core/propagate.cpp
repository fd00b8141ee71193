#include "gyrospin/core/propagate.hpp"

#include <cmath>
#include <sstream>

#include "gyrospin/constants.hpp"
#include "gyrospin/core/krylov.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

using constants::hbar;

SpectralPropagator::SpectralPropagator(const Op& h) : es_(hermitian_eig(h)) {}
SpectralPropagator::SpectralPropagator(const Mat& h) : es_(hermitian_eig(h)) {}

Vec SpectralPropagator::apply(const Vec& psi, double t) const {
  if (psi.size() != es_.values.size()) throw DimensionMismatch("state does not match Hamiltonian");
  Vec c = es_.vectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -es_.values[k] * t / hbar);
  return es_.vectors * c;
}

Mat SpectralPropagator::unitary(double t) const {
  return hermitian_function(es_, [t](double e) { return std::polar(1.0, -e * t / hbar); });
}

StateTrajectory evolve(const Op& h, const Vec& psi0, const std::vector<double>& times) {
  if (h.rows() != psi0.size()) throw DimensionMismatch("state does not match Hamiltonian");
  if (std::abs(psi0.norm() - 1.0) > norm_tolerance) throw PreconditionError("initial state not normalized");
  StateTrajectory out;
  out.times = times;
  out.states.reserve(times.size());
  auto record = [&](Vec v) {
    const double err = std::abs(v.norm() - 1.0);
    out.max_norm_error = std::max(out.max_norm_error, err);
    if (err > norm_tolerance) throw NumericError("propagation lost normalization");
    out.states.push_back(std::move(v));
  };
  if (h.rows() <= dense_dim_limit) {
    if (!is_hermitian(h)) throw PreconditionError("evolve: Hamiltonian is not Hermitian");
    SpectralPropagator prop(h);
    for (double t : times) record(prop.apply(psi0, t));
  } else {
    if (!is_hermitian(h)) throw PreconditionError("evolve: Hamiltonian is not Hermitian");
    KrylovPropagator prop(h);
    Vec psi = psi0;
    double t_now = 0.0;
    for (double t : times) {
      if (t < t_now) throw PreconditionError("Krylov propagation needs nondecreasing times");
      psi = prop.advance(psi, t - t_now);
      t_now = t;
      record(psi);
    }
  }
  return out;
}

namespace {

// Flag basis indices lying in an outer layer of any truncated factor.
std::vector<char> outer_mask(const BasisSpec& basis, int layers) {
  const int n = basis.dim();
  std::vector<char> mask(n, 0);
  std::vector<std::pair<int, std::vector<char>>> factors;  // (dim, outer flags)
  if (basis.has(Factor::Spin)) factors.push_back({basis.spin_dim, std::vector<char>(basis.spin_dim, 0)});
  if (basis.rotor) {
    const int d = basis.rotor->dim();
    std::vector<char> f(d, 0);
    if (basis.rotor->kind == RotorKind::Periodic) {
      for (int k = 0; k < std::min(layers, d); ++k) f[k] = f[d - 1 - k] = 1;
    } else {
      for (int k = std::max(0, d - layers); k < d; ++k) f[k] = 1;
    }
    factors.push_back({d, f});
  }
  if (basis.has(Factor::Fock)) {
    const int d = basis.fock_dim;
    std::vector<char> f(d, 0);
    for (int k = std::max(0, d - layers); k < d; ++k) f[k] = 1;
    factors.push_back({d, f});
  }
  for (int i = 0; i < n; ++i) {
    int rem = i;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      const int idx = rem % it->first;
      rem /= it->first;
      if (it->second[idx]) mask[i] = 1;
    }
  }
  return mask;
}

}  // namespace

double discarded_weight(const Vec& psi, const BasisSpec& basis, int layers) {
  if (psi.size() != basis.dim()) throw DimensionMismatch("state does not match basis");
  const auto mask = outer_mask(basis, layers);
  double w = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if (mask[i]) w += std::norm(psi[i]);
  return w;
}

double discarded_weight(const Mat& rho, const BasisSpec& basis, int layers) {
  if (rho.rows() != basis.dim()) throw DimensionMismatch("density matrix does not match basis");
  const auto mask = outer_mask(basis, layers);
  double w = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    if (mask[i]) w += rho(i, i).real();
  return w;
}

void check_truncation(double weight, double threshold, const std::string& context) {
  if (weight > threshold) {
    std::ostringstream os;
    os << context << ": discarded weight " << weight << " exceeds " << threshold;
    throw TruncationError(os.str());
  }
}

}  // namespace gyrospin
