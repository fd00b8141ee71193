#pragma once

#include "gyrospin/core/types.hpp"

namespace gyrospin {

struct KrylovOptions {
  int subspace = 30;
  double tolerance = 1e-9;  // per-step error estimate on a unit vector
};

// Short-iterate Lanczos propagator for exp(-i H t/hbar) psi with full
// reorthogonalization and step-size control from the a posteriori
// residual estimate beta_m |e_m^T exp(-i T_m dt) e_1|.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(const Op& h, KrylovOptions opts = {});

  Vec advance(const Vec& psi, double t);
  long steps() const { return steps_; }
  double last_error() const { return last_error_; }

 private:
  Op hw_;  // H / hbar, rad/s
  KrylovOptions opts_;
  double dt_guess_ = 0.0;
  long steps_ = 0;
  double last_error_ = 0.0;
};

}  // namespace gyrospin
