#pragma once

#include <array>

#include <Eigen/Dense>

#include "gyrospin/model/params.hpp"

namespace gyrospin {

struct Inertia {
  double M = 0.0;   // kg
  double I = 0.0;   // I1, kg m^2
  double I2 = 0.0;
  double I3 = 0.0;
};

struct QuadrupoleMoments {
  double Q1 = 0.0, Q2 = 0.0, Q3 = 0.0;  // C m^2
  double charge = 0.0;                  // C
  double area = 0.0;                    // m^2
};

// Uniform solid ellipsoid. Throws UnsupportedShape for l3 <= max(l1, l2).
Inertia inertia_from_geometry(const ParticleGeometry& g);

// Homogeneous surface charge: Q_mu = q (3 <x_mu^2> - <r^2>) with surface
// averages from 64 x 128 Gauss-Legendre quadrature over the surface.
QuadrupoleMoments quadrupole_moments(const ParticleGeometry& g);

// R = Rz(alpha) Ry(beta) Rz(gamma); principal axes are the columns.
Eigen::Matrix3d rotation_matrix(double alpha, double beta, double gamma);
std::array<Eigen::Vector3d, 3> principal_axes(double alpha, double beta, double gamma);

}  // namespace gyrospin
