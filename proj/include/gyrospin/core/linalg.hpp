#pragma once

#include <functional>

#include "gyrospin/core/types.hpp"

namespace gyrospin {

struct EigenSystem {
  RVec values;  // ascending
  Mat vectors;  // columns are eigenvectors
};

inline constexpr double hermitian_tolerance = 1e-12;
inline constexpr double unitary_tolerance = 1e-10;

double max_abs(const Op& a);
double max_abs(const Mat& a);

// max|A - A^dagger| / max|A| (0 for the zero matrix)
double hermiticity_defect(const Op& a);
double hermiticity_defect(const Mat& a);
// max|A^dagger A - 1|
double unitarity_defect(const Mat& a);

bool is_hermitian(const Op& a, double tol = hermitian_tolerance);
bool is_unitary(const Mat& a, double tol = unitary_tolerance);

// Dense Hermitian eigensolve (Householder tridiagonalization + implicit QR).
// Throws PreconditionError when the input is not Hermitian within tolerance.
EigenSystem hermitian_eig(const Mat& h);
EigenSystem hermitian_eig(const Op& h);

// max|H V - V Lambda| / max|Lambda|
double eig_residual(const Mat& h, const EigenSystem& es);

// f(H) = V f(Lambda) V^dagger
Mat hermitian_function(const EigenSystem& es, const std::function<cd(double)>& f);

}  // namespace gyrospin
