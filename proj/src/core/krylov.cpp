#include "gyrospin/core/krylov.hpp"

#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

KrylovPropagator::KrylovPropagator(const Op& h, KrylovOptions opts)
    : hw_(h / constants::hbar), opts_(opts) {
  if (opts_.subspace < 2) throw InvalidParameter("Krylov subspace must have size >= 2");
  if (!(opts_.tolerance > 0.0)) throw InvalidParameter("Krylov tolerance must be positive");
}

Vec KrylovPropagator::advance(const Vec& psi, double t) {
  if (psi.size() != hw_.rows()) throw DimensionMismatch("state does not match Hamiltonian");
  const Eigen::Index n = psi.size();
  const int m = int(std::min<Eigen::Index>(opts_.subspace, n));
  Vec state = psi;
  double remaining = t;
  Mat V(n, m + 1);
  RVec alpha(m), beta(m);

  while (remaining > 0.0) {
    const double beta0 = state.norm();
    if (beta0 == 0.0) return state;
    V.col(0) = state / beta0;
    int k = m;
    bool exact = false;
    for (int j = 0; j < m; ++j) {
      Vec w = hw_ * V.col(j);
      alpha[j] = V.col(j).dot(w).real();
      // classical Gram-Schmidt against the whole basis, applied twice
      for (int pass = 0; pass < 2; ++pass) {
        Vec proj = V.leftCols(j + 1).adjoint() * w;
        w -= V.leftCols(j + 1) * proj;
      }
      beta[j] = w.norm();
      const double scale = std::abs(alpha[j]) + (j > 0 ? beta[j - 1] : 0.0);
      if (beta[j] <= 1e-13 * std::max(scale, 1e-300)) {
        k = j + 1;
        exact = true;
        break;
      }
      V.col(j + 1) = w / beta[j];
    }

    RMat T = RMat::Zero(k, k);
    for (int j = 0; j < k; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < k) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(T);
    const RVec& theta = es.eigenvalues();
    const RMat& Q = es.eigenvectors();

    auto coeffs = [&](double dt) {
      Vec y = Vec::Zero(k);
      for (int a = 0; a < k; ++a) y += Q.col(a).cast<cd>() * (std::polar(1.0, -theta[a] * dt) * Q(0, a));
      return y;
    };

    double dt = dt_guess_ > 0.0 ? std::min(remaining, 2.0 * dt_guess_) : remaining;
    Vec y = coeffs(dt);
    double err = exact ? 0.0 : beta[k - 1] * std::abs(y[k - 1]);
    int shrink = 0;
    while (err > opts_.tolerance) {
      dt *= 0.7;
      if (++shrink > 400) throw NumericError("Krylov step size underflow");
      y = coeffs(dt);
      err = beta[k - 1] * std::abs(y[k - 1]);
    }
    state = beta0 * (V.leftCols(k) * y);
    remaining -= dt;
    if (remaining < 1e-14 * t) remaining = 0.0;
    if (dt < t || shrink > 0) dt_guess_ = dt;
    last_error_ = err;
    ++steps_;
  }
  return state;
}

}  // namespace gyrospin
