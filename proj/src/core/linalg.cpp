#include "gyrospin/core/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "gyrospin/errors.hpp"

namespace gyrospin {

double max_abs(const Op& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (Op::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs(const Mat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Op& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("hermiticity check needs a square matrix");
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  Op d = a - Op(a.adjoint());
  return max_abs(d) / scale;
}

double hermiticity_defect(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("hermiticity check needs a square matrix");
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  return max_abs(Mat(a - a.adjoint())) / scale;
}

double unitarity_defect(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("unitarity check needs a square matrix");
  Mat d = a.adjoint() * a - Mat::Identity(a.rows(), a.cols());
  return max_abs(d);
}

bool is_hermitian(const Op& a, double tol) { return hermiticity_defect(a) <= tol; }

bool is_unitary(const Mat& a, double tol) { return unitarity_defect(a) <= tol; }

EigenSystem hermitian_eig(const Mat& h) {
  if (hermiticity_defect(h) > hermitian_tolerance)
    throw PreconditionError("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw NumericError("hermitian_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

EigenSystem hermitian_eig(const Op& h) { return hermitian_eig(Mat(h)); }

double eig_residual(const Mat& h, const EigenSystem& es) {
  const double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  Mat r = h * es.vectors - es.vectors * es.values.cast<cd>().asDiagonal();
  const double res = max_abs(r);
  return scale > 0.0 ? res / scale : res;
}

Mat hermitian_function(const EigenSystem& es, const std::function<cd(double)>& f) {
  Vec fv(es.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv[k] = f(es.values[k]);
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

}  // namespace gyrospin
