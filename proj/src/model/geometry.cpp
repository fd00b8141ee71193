#include "gyrospin/model/geometry.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "gyrospin/errors.hpp"

namespace gyrospin {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw InvalidParameter(msg);
}
bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
}  // namespace

void ParticleGeometry::validate() const {
  require(l1 > 0.0 && l2 > 0.0 && l3 > 0.0, "semiaxes must be positive");
  require(std::isfinite(l1) && std::isfinite(l2) && std::isfinite(l3), "semiaxes must be finite");
  require(density > 0.0 && std::isfinite(density), "mass density must be positive");
  require(finite_nonneg(sigma), "surface charge density must be >= 0");
}

void TrapConfig::validate() const {
  require(U_ac > 0.0 && omega_ac > 0.0 && d0 > 0.0, "trap voltage, frequency and size must be positive");
  require(std::isfinite(epsilon) && std::abs(epsilon) < 0.5, "trap asymmetry must be small");
}

void FieldConfig::validate() const {
  require(std::isfinite(B) && std::isfinite(omega), "field and rotation must be finite");
  require(gamma0 > 0.0 && std::isfinite(gamma0), "gyromagnetic ratio must be positive");
  require(D_nv > 0.0 && std::isfinite(D_nv), "zero-field splitting must be positive");
}

void Environment::validate() const {
  require(finite_nonneg(T) && finite_nonneg(P_gas) && finite_nonneg(m_gas) && (T2 > 0.0) &&
              finite_nonneg(A_fl) && finite_nonneg(alpha_im),
          "environment parameters must be finite and >= 0, T2 > 0 (may be infinite)");
}

ParticleGeometry spheroid(double l3, double l1_over_l3) {
  ParticleGeometry g;
  g.l3 = l3;
  g.l1 = g.l2 = l1_over_l3 * l3;
  return g;
}

Inertia inertia_from_geometry(const ParticleGeometry& g) {
  g.validate();
  if (g.l3 < std::max(g.l1, g.l2)) throw UnsupportedShape("oblate shapes are not supported (need l3 >= l1, l2)");
  Inertia in;
  in.M = g.density * 4.0 / 3.0 * constants::pi * g.l1 * g.l2 * g.l3;
  in.I = in.M * (g.l2 * g.l2 + g.l3 * g.l3) / 5.0;
  in.I2 = in.M * (g.l1 * g.l1 + g.l3 * g.l3) / 5.0;
  in.I3 = in.M * (g.l1 * g.l1 + g.l2 * g.l2) / 5.0;
  return in;
}

QuadrupoleMoments quadrupole_moments(const ParticleGeometry& g) {
  g.validate();
  using boost::math::quadrature::gauss;
  const double a = g.l1, b = g.l2, c = g.l3;
  // x = a s cos(phi), y = b s sin(phi), z = c u with u = cos(theta), s = sqrt(1-u^2);
  // dA = sqrt(b^2c^2 s^2 cos^2 + a^2c^2 s^2 sin^2 + a^2b^2 u^2) du dphi
  double area = 0.0, mx = 0.0, my = 0.0, mz = 0.0;
  auto over_phi = [&](double u, auto&& f) {
    return gauss<double, 128>::integrate([&](double phi) { return f(u, phi); }, 0.0, constants::two_pi);
  };
  auto surface = [&](auto&& f) {
    return gauss<double, 64>::integrate([&](double u) { return over_phi(u, f); }, -1.0, 1.0);
  };
  auto jac = [&](double u, double phi) {
    const double s2 = 1.0 - u * u;
    const double cp = std::cos(phi), sp = std::sin(phi);
    return std::sqrt(b * b * c * c * s2 * cp * cp + a * a * c * c * s2 * sp * sp + a * a * b * b * u * u);
  };
  area = surface([&](double u, double phi) { return jac(u, phi); });
  mx = surface([&](double u, double phi) {
    const double x = a * std::sqrt(1.0 - u * u) * std::cos(phi);
    return x * x * jac(u, phi);
  });
  my = surface([&](double u, double phi) {
    const double y = b * std::sqrt(1.0 - u * u) * std::sin(phi);
    return y * y * jac(u, phi);
  });
  mz = surface([&](double u, double phi) {
    const double z = c * u;
    return z * z * jac(u, phi);
  });
  mx /= area;
  my /= area;
  mz /= area;
  if (g.symmetric()) my = mx;
  const double r2 = mx + my + mz;
  QuadrupoleMoments q;
  q.area = area;
  q.charge = g.sigma * area;
  q.Q3 = q.charge * (3.0 * mz - r2);
  if (g.symmetric()) {
    q.Q1 = q.Q2 = -0.5 * q.Q3;
  } else {
    q.Q1 = q.charge * (3.0 * mx - r2);
    q.Q2 = -q.Q1 - q.Q3;
  }
  return q;
}

Eigen::Matrix3d rotation_matrix(double alpha, double beta, double gamma) {
  using Eigen::AngleAxisd;
  using Eigen::Vector3d;
  return (AngleAxisd(alpha, Vector3d::UnitZ()) * AngleAxisd(beta, Vector3d::UnitY()) *
          AngleAxisd(gamma, Vector3d::UnitZ()))
      .toRotationMatrix();
}

std::array<Eigen::Vector3d, 3> principal_axes(double alpha, double beta, double gamma) {
  const Eigen::Matrix3d r = rotation_matrix(alpha, beta, gamma);
  return {r.col(0), r.col(1), r.col(2)};
}

}  // namespace gyrospin
