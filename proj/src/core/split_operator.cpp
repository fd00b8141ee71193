#include "gyrospin/core/split_operator.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RotorSplitOperator::Fft {
  int n;
  fftw_complex* buf;
  fftw_plan fwd, bwd;

  explicit Fft(int n_) : n(n_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  cd* data() { return reinterpret_cast<cd*>(buf); }
};

Eigen::Matrix2cd expm_hermitian2(const Eigen::Matrix2cd& v, double t) {
  // V = a0 + a . sigma
  const double a0 = 0.5 * (v(0, 0).real() + v(1, 1).real());
  const double az = 0.5 * (v(0, 0).real() - v(1, 1).real());
  const double ax = v(1, 0).real();
  const double ay = v(1, 0).imag();
  const double r = std::sqrt(ax * ax + ay * ay + az * az);
  const double c = std::cos(r * t);
  const double s = r > 0.0 ? std::sin(r * t) / r : t;
  const cd ph = std::polar(1.0, -a0 * t);
  Eigen::Matrix2cd u;
  u(0, 0) = ph * cd(c, -s * az);
  u(1, 1) = ph * cd(c, s * az);
  u(0, 1) = ph * (-I_unit * s) * cd(ax, -ay);
  u(1, 0) = ph * (-I_unit * s) * cd(ax, ay);
  return u;
}

RotorSplitOperator::RotorSplitOperator(int L, double inertia, const Potential& v, double dt,
                                       double absorb_fraction)
    : L_(L), N_(2 * L + 1), dt_(dt) {
  if (L < 1) throw InvalidBasis("rotor cutoff L must be >= 1");
  if (!(inertia > 0.0)) throw InvalidParameter("inertia must be positive");
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  if (absorb_fraction < 0.0 || absorb_fraction >= 1.0)
    throw InvalidParameter("absorbing fraction must lie in [0, 1)");

  const double hbar = constants::hbar;
  const double m_abs = (1.0 - absorb_fraction) * L;
  kinetic_.resize(N_);
  for (int k = 0; k < N_; ++k) {
    const double m = k - L;
    cd kin = std::polar(1.0, -hbar * m * m / (2.0 * inertia) * 0.5 * dt);
    if (absorb_fraction > 0.0 && std::abs(m) > m_abs) {
      const double x = std::min(1.0, (std::abs(m) - m_abs) / (absorb_fraction * L));
      kin *= std::pow(std::cos(0.5 * constants::pi * x), 0.125);
    }
    kinetic_[k] = kin;
  }
  pot_.resize(N_);
  for (int j = 0; j < N_; ++j) {
    const double gamma = constants::two_pi * j / N_;
    Eigen::Matrix2cd vj = v(gamma);
    if (std::abs(vj(0, 1) - std::conj(vj(1, 0))) > 1e-12 * (vj.cwiseAbs().maxCoeff() + 1e-300) ||
        std::abs(vj(0, 0).imag()) > 0.0 || std::abs(vj(1, 1).imag()) > 0.0)
      throw PreconditionError("split-operator potential is not Hermitian");
    pot_[j] = expm_hermitian2(vj, dt);
  }
  fft_ = std::make_unique<Fft>(N_);
}

RotorSplitOperator::~RotorSplitOperator() = default;

void RotorSplitOperator::step(Vec& state) {
  if (state.size() != 2 * N_) throw DimensionMismatch("state does not match split-operator grid");
  const double before = state.squaredNorm();
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < N_; ++k) state[s * N_ + k] *= kinetic_[k];

  // momentum -> angle grid: psi(gamma_j) = sum_m c_m e^{-i m gamma_j}
  std::vector<cd> grid(2 * N_);
  cd* b = fft_->data();
  for (int s = 0; s < 2; ++s) {
    for (int k = 0; k < N_; ++k) {
      const int m = k - L_;
      b[(m + N_) % N_] = state[s * N_ + k];
    }
    fftw_execute(fft_->fwd);
    std::copy(b, b + N_, grid.begin() + s * N_);
  }
  for (int j = 0; j < N_; ++j) {
    const Eigen::Matrix2cd& u = pot_[j];
    const cd a = grid[j], c = grid[N_ + j];
    grid[j] = u(0, 0) * a + u(0, 1) * c;
    grid[N_ + j] = u(1, 0) * a + u(1, 1) * c;
  }
  const double inv = 1.0 / N_;
  for (int s = 0; s < 2; ++s) {
    std::copy(grid.begin() + s * N_, grid.begin() + (s + 1) * N_, b);
    fftw_execute(fft_->bwd);
    for (int k = 0; k < N_; ++k) {
      const int m = k - L_;
      state[s * N_ + k] = b[(m + N_) % N_] * inv * kinetic_[k];
    }
  }
  absorbed_ += before - state.squaredNorm();
}

void RotorSplitOperator::advance(Vec& state, int nsteps) {
  for (int i = 0; i < nsteps; ++i) step(state);
}

}  // namespace gyrospin
