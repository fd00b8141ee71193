#pragma once

#include <string>
#include <vector>

#include "gyrospin/core/basis.hpp"
#include "gyrospin/core/linalg.hpp"
#include "gyrospin/core/types.hpp"

namespace gyrospin {

inline constexpr double norm_tolerance = 1e-10;
inline constexpr double default_truncation_threshold = 1e-6;
inline constexpr int dense_dim_limit = 2000;

// exp(-i H t / hbar) from one dense eigendecomposition; H in joules.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Op& h);
  explicit SpectralPropagator(const Mat& h);

  Vec apply(const Vec& psi, double t) const;
  Mat unitary(double t) const;
  const EigenSystem& eig() const { return es_; }
  int dim() const { return int(es_.values.size()); }

 private:
  EigenSystem es_;
};

struct StateTrajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  double max_norm_error = 0.0;
};

// Dense spectral propagation up to dense_dim_limit, Lanczos above it.
// Throws NumericError when the norm drifts by more than norm_tolerance.
StateTrajectory evolve(const Op& h, const Vec& psi0, const std::vector<double>& times);

// Population in the two outermost layers of every truncated factor
// (|m| >= L-1 for the periodic rotor, n >= d-2 for oscillator factors).
double discarded_weight(const Vec& psi, const BasisSpec& basis, int layers = 2);
double discarded_weight(const Mat& rho, const BasisSpec& basis, int layers = 2);

void check_truncation(double weight, double threshold, const std::string& context);

}  // namespace gyrospin
