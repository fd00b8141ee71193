#include "gyrospin/core/states.hpp"

#include <cmath>

#include "gyrospin/constants.hpp"
#include "gyrospin/core/linalg.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

Vec basis_state(int dim, int index) {
  if (index < 0 || index >= dim) throw DimensionMismatch("basis index out of range");
  Vec v = Vec::Zero(dim);
  v[index] = 1.0;
  return v;
}

Vec coherent_state(int d, cd alpha, double max_loss) {
  if (d < 1) throw InvalidParameter("coherent state needs d >= 1");
  Vec c(d);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < d; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
  const double kept = c.squaredNorm();
  if (1.0 - kept > max_loss)
    throw TruncationError("coherent state truncation loss exceeds threshold");
  return c / std::sqrt(kept);
}

Vec rotor_gaussian_packet(int L, double center, double sigma) {
  if (L < 1) throw InvalidBasis("rotor cutoff L must be >= 1");
  if (!(sigma > 0.0)) throw InvalidParameter("packet width must be positive");
  Vec c(2 * L + 1);
  for (int k = 0; k < 2 * L + 1; ++k) {
    const double m = k - L;
    c[k] = std::exp(-sigma * sigma * m * m) * std::polar(1.0, m * center);
  }
  return c / c.norm();
}

Vec product_state(const std::vector<Vec>& factors) {
  if (factors.empty()) throw DimensionMismatch("product of zero factors");
  Vec out = factors.front();
  for (size_t f = 1; f < factors.size(); ++f) {
    const Vec& b = factors[f];
    Vec next(out.size() * b.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * b.size(), b.size()) = out[i] * b;
    out = std::move(next);
  }
  return out;
}

Mat thermal_density(const Op& h_osc, double temperature) {
  if (temperature < 0.0) throw InvalidParameter("temperature must be >= 0");
  EigenSystem es = hermitian_eig(h_osc);
  const double e0 = es.values[0];
  RVec w(es.values.size());
  if (temperature == 0.0) {
    w.setZero();
    w[0] = 1.0;
  } else {
    const double kT = constants::k_B * temperature;
    for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = std::exp(-(es.values[k] - e0) / kT);
    w /= w.sum();
  }
  return es.vectors * w.cast<cd>().asDiagonal() * es.vectors.adjoint();
}

Vec ground_state(const Op& h) {
  EigenSystem es = hermitian_eig(h);
  return es.vectors.col(0);
}

cd expectation(const Op& a, const Vec& psi) {
  if (a.cols() != psi.size()) throw DimensionMismatch("expectation dimension mismatch");
  return psi.dot(a * psi);
}

cd expectation(const Op& a, const Mat& rho) {
  if (a.cols() != rho.rows()) throw DimensionMismatch("expectation dimension mismatch");
  Mat ar = a * rho;
  return ar.trace();
}

cd expectation(const Mat& a, const Vec& psi) {
  if (a.cols() != psi.size()) throw DimensionMismatch("expectation dimension mismatch");
  return psi.dot(a * psi);
}

double trace_defect(const Mat& rho) { return std::abs(rho.trace() - 1.0); }

double min_eigenvalue(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace gyrospin
