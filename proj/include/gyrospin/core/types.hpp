#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gyrospin {

using cd = std::complex<double>;

// Operators are carried sparse; factor operators are small and the
// builders assemble Kronecker products, which stay sparse.
using Op = Eigen::SparseMatrix<cd>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr cd I_unit{0.0, 1.0};

}  // namespace gyrospin
