#pragma once

#include <vector>

#include "gyrospin/core/types.hpp"

namespace gyrospin {

Vec basis_state(int dim, int index);

// Truncated coherent state, renormalized; throws TruncationError when the
// discarded weight exceeds max_loss.
Vec coherent_state(int d, cd alpha, double max_loss = 1e-8);

// Gaussian packet on the periodic rotor, |psi(gamma)|^2 of standard
// deviation sigma centered at `center`: c_m ~ exp(-sigma^2 m^2 + i m center).
Vec rotor_gaussian_packet(int L, double center, double sigma);

// Kronecker product of factor states in basis order.
Vec product_state(const std::vector<Vec>& factors);

// exp(-H/k_B T)/Z for H in joules; T == 0 gives the ground-state projector.
Mat thermal_density(const Op& h_osc, double temperature);
Vec ground_state(const Op& h);

cd expectation(const Op& a, const Vec& psi);
cd expectation(const Op& a, const Mat& rho);
cd expectation(const Mat& a, const Vec& psi);

double trace_defect(const Mat& rho);        // |Tr rho - 1|
double min_eigenvalue(const Mat& rho);

}  // namespace gyrospin
