#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gyrospin/analytics/observables.hpp"
#include "gyrospin/constants.hpp"
#include "gyrospin/core/basis.hpp"
#include "gyrospin/core/linalg.hpp"
#include "gyrospin/core/operators.hpp"
#include "gyrospin/errors.hpp"
#include "gyrospin/model/geometry.hpp"
#include "gyrospin/model/hamiltonians.hpp"
#include "gyrospin/model/scales.hpp"

using namespace gyrospin;
using constants::hbar;
using constants::pi;
using constants::two_pi;

namespace {

FieldConfig field(double B_mT, double f_Hz) {
  FieldConfig fc;
  fc.B = B_mT * 1e-3;
  fc.omega = two_pi * f_Hz;
  return fc;
}

DerivedScales scales(double l3, double ratio, double B_mT, double f_Hz) {
  return derive_scales(spheroid(l3, ratio), std::nullopt, field(B_mT, f_Hz), Environment{});
}

TrapConfig app_b_trap() {
  TrapConfig t;
  t.U_ac = 2500.0;
  t.omega_ac = two_pi * 0.5e6;
  t.d0 = 350e-6;
  return t;
}

// Surface moments of a spheroid (l1 = l2) by composite Simpson in the polar
// angle; the azimuth integrates analytically.
struct SurfaceMoments {
  double area, zz, xx;
};

SurfaceMoments spheroid_surface_oracle(double a, double c) {
  const int n = 20000;
  const double h = pi / n;
  double A = 0, Z = 0, X = 0;
  for (int k = 0; k <= n; ++k) {
    const double t = k * h, st = std::sin(t), ct = std::cos(t);
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const double dA = a * st * std::sqrt(c * c * st * st + a * a * ct * ct);
    A += w * dA;
    Z += w * dA * c * c * ct * ct;
    X += w * dA * a * a * st * st / 2.0;
  }
  const double f = two_pi * h / 3.0;
  return {A * f, Z / A, X / A};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("sphere has I = I3") {
    ParticleGeometry g{100e-9, 100e-9, 100e-9};
    auto in = inertia_from_geometry(g);
    CHECK(in.I == doctest::Approx(in.I3).epsilon(1e-15));
  }

  TEST_CASE("hand-evaluated mass and inertia") {
    ParticleGeometry g{60e-9, 60e-9, 200e-9};
    auto in = inertia_from_geometry(g);
    const double M = 3500.0 * 4.0 / 3.0 * pi * 60e-9 * 60e-9 * 200e-9;
    CHECK(in.M == doctest::Approx(M).epsilon(1e-14));
    CHECK(in.M == doctest::Approx(1.056e-17).epsilon(1e-3));
    CHECK(in.I == doctest::Approx(9.20e-32).epsilon(2e-3));
    CHECK(in.I3 == doctest::Approx(M * 2 * 3.6e-15 / 5).epsilon(1e-14));
  }

  TEST_CASE("doubling the semiaxes scales M by 8 and I by 32") {
    ParticleGeometry g{60e-9, 60e-9, 200e-9};
    ParticleGeometry g2{120e-9, 120e-9, 400e-9};
    auto a = inertia_from_geometry(g), b = inertia_from_geometry(g2);
    CHECK(b.M / a.M == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(b.I / a.I == doctest::Approx(32.0).epsilon(1e-14));
  }

  TEST_CASE("oblate shapes are rejected") {
    ParticleGeometry g{200e-9, 200e-9, 60e-9};
    CHECK_THROWS_AS(inertia_from_geometry(g), UnsupportedShape);
    ParticleGeometry bad{-1e-9, 1e-9, 2e-9};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
  }

  TEST_CASE("quadrupole moments: sphere, trace, prolate ordering") {
    ParticleGeometry s{100e-9, 100e-9, 100e-9};
    auto qs = quadrupole_moments(s);
    CHECK(std::abs(qs.Q3) < 1e-12 * qs.charge * 1e-14);
    ParticleGeometry g{60e-9, 60e-9, 200e-9};
    auto q = quadrupole_moments(g);
    CHECK(q.Q1 + q.Q2 + q.Q3 == 0.0);
    CHECK(q.Q3 > q.Q1);
    CHECK(q.Q1 == q.Q2);
  }

  TEST_CASE("quadrupole moments match an independent surface quadrature") {
    for (double ratio : {0.2, 0.3, 0.6}) {
      const double c = 200e-9, a = ratio * c;
      ParticleGeometry g{a, a, c};
      auto q = quadrupole_moments(g);
      auto o = spheroid_surface_oracle(a, c);
      CHECK(rel(q.area, o.area) < 1e-9);
      const double charge = g.sigma * o.area;
      const double r2 = o.zz + 2 * o.xx;
      CHECK(rel(q.Q3, charge * (3 * o.zz - r2)) < 1e-8);
      CHECK(rel(q.Q1, charge * (3 * o.xx - r2)) < 1e-8);
    }
  }

  TEST_CASE("rotation matrices") {
    CHECK((rotation_matrix(0, 0, 0) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    auto ax = principal_axes(0.0, pi / 2, 0.0);
    CHECK((ax[2] - Eigen::Vector3d::UnitX()).norm() < 1e-15);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-pi, pi);
    for (int k = 0; k < 100; ++k) {
      const double al = u(rng), be = u(rng), ga = u(rng);
      Eigen::Matrix3d R = rotation_matrix(al, be, ga);
      CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      // n3 = (cos a sin b, sin a sin b, cos b)
      Eigen::Vector3d n3(std::cos(al) * std::sin(be), std::sin(al) * std::sin(be), std::cos(be));
      CHECK((R.col(2) - n3).norm() < 1e-14);
    }
  }
}

TEST_SUITE("scales") {
  TEST_CASE("compensating field gives g = 0") {
    FieldConfig fc = field(0, 1e6);
    fc.B = fc.omega / fc.gamma0;
    auto s = derive_scales(spheroid(200e-9, 0.3), std::nullopt, fc, Environment{});
    CHECK(std::abs(s.g) <= 1e-9 * s.omega);
    CHECK(std::abs(s.delta) <= 1e-18 * s.omega);
    CHECK(s.Delta == doctest::Approx(s.D_nv).epsilon(1e-12));
  }

  TEST_CASE("exact g = 0 flags sigma_gamma and omega_eta") {
    FieldConfig fc = field(0, 0);
    fc.omega = 0.0;
    auto s = derive_scales(spheroid(200e-9, 0.3), std::nullopt, fc, Environment{});
    CHECK(s.g == 0.0);
    CHECK_FALSE(s.sigma_gamma.has_value());
    CHECK_FALSE(s.omega_eta.has_value());
    auto u = s.undefined();
    CHECK(std::find(u.begin(), u.end(), "sigma_gamma") != u.end());
  }

  TEST_CASE("Delta = 0 flags omega_gamma") {
    FieldConfig fc = field(0, 0);
    fc.B = -fc.D_nv / fc.gamma0;
    auto s = derive_scales(spheroid(200e-9, 0.3), std::nullopt, fc, Environment{});
    CHECK(std::abs(s.Delta) < 1e-6 * s.D_nv);
    if (s.Delta == 0.0) CHECK_FALSE(s.omega_gamma.has_value());
  }

  TEST_CASE("Delta/g at -100 mT") {
    auto s = scales(200e-9, 0.3, -100, 1e6);
    CHECK(s.Delta > 0);
    CHECK(s.Delta / s.g > 0.02);
    CHECK(s.Delta / s.g < 0.03);
    CHECK(regime_flags(s).dispersive);
  }

  TEST_CASE("scale formulas") {
    Environment env;
    env.T = 4.0;
    auto s = derive_scales(spheroid(150e-9, 0.25), std::nullopt, field(-80, 2e6), env);
    const double g = s.omega - s.gamma0 * s.B;
    CHECK(s.g == doctest::Approx(g).epsilon(1e-15));
    CHECK(s.delta == doctest::Approx(g * g / s.D_nv).epsilon(1e-15));
    CHECK(s.delta_tilde == doctest::Approx(g * g / (s.D_nv + g)).epsilon(1e-15));
    CHECK(*s.omega_gamma == doctest::Approx(std::sqrt(hbar * g * (1 + g / s.Delta) / s.I_eff)).epsilon(1e-14));
    CHECK(*s.omega_eta == doctest::Approx(std::sqrt(2 * hbar * g * g / (s.I_eff * std::abs(s.delta)))).epsilon(1e-14));
    CHECK(*s.sigma_gamma == doctest::Approx(std::pow(hbar * s.delta / (8 * s.I_eff * g * g), 0.25)).epsilon(1e-14));
    CHECK(*s.kappa == doctest::Approx(hbar * g / (constants::k_B * 4.0)).epsilon(1e-14));
    CHECK(1.0 / s.I_eff == doctest::Approx(1.0 / s.I3 - 1.0 / s.I).epsilon(1e-14));
    CHECK(s.omega_xi >= s.omega);
  }

  TEST_CASE("kappa is undefined without a temperature") {
    auto s = scales(200e-9, 0.3, -100, 1e6);
    CHECK_FALSE(s.kappa.has_value());
  }

  TEST_CASE("trap frequency formula") {
    auto geom = spheroid(200e-9, 0.3);
    auto trap = app_b_trap();
    auto s = derive_scales(geom, trap, field(0, 1e6), Environment{});
    auto q = quadrupole_moments(geom);
    auto in = inertia_from_geometry(geom);
    const double dq = q.Q1 - q.Q3;
    const double wb2 = trap.U_ac * trap.U_ac * dq * dq /
                       (8 * in.I * in.I * trap.omega_ac * trap.omega_ac * std::pow(trap.d0, 4));
    CHECK(s.omega_beta == doctest::Approx(std::sqrt(wb2)).epsilon(1e-14));
    CHECK(s.omega_xi * s.omega_xi == doctest::Approx(s.omega * s.omega + wb2).epsilon(1e-14));
  }

  TEST_CASE("trap frequency ratio near 4e-5") {
    auto s = derive_scales(spheroid(200e-9, 0.3), app_b_trap(), field(0, 1e6), Environment{});
    const double r = s.omega_beta / s.omega;
    CHECK(r > 4e-5 / 3);
    CHECK(r < 4e-5 * 3);
  }

  TEST_CASE("secular potential") {
    auto trap = app_b_trap();
    auto s = derive_scales(spheroid(200e-9, 0.3), trap, field(0, 1e6), Environment{});
    auto v = secular_potential_beta(s, trap, {0.0, pi / 2, pi / 4, pi / 4 - 0.01, pi / 4 + 0.01});
    CHECK(std::abs(v[0]) < 1e-50);
    CHECK(std::abs(v[1]) < 1e-30 * v[2]);
    CHECK(v[2] > v[3]);
    CHECK(v[2] > v[4]);
    const double h = 1e-4;
    auto w = secular_potential_beta(s, trap, {pi / 2 - h, pi / 2, pi / 2 + h});
    const double curv = (w[0] - 2 * w[1] + w[2]) / (h * h);
    CHECK(curv == doctest::Approx(s.I * s.omega_beta * s.omega_beta).epsilon(1e-6));
  }

  TEST_CASE("rescale multiplies g and delta") {
    auto s = scales(200e-9, 0.3, -0.5, 1e6);
    auto r = rescale_coupling(s, 1e-3);
    CHECK(r.g == doctest::Approx(1e-3 * s.g).epsilon(1e-14));
    CHECK(r.delta == doctest::Approx(1e-3 * s.delta).epsilon(1e-14));
    CHECK(r.D_nv == doctest::Approx(1e-3 * s.D_nv).epsilon(1e-14));
    CHECK(r.Delta == doctest::Approx(r.D_nv - r.g).epsilon(1e-14));
  }

  TEST_CASE("invalid inputs") {
    FieldConfig fc = field(0, 1e6);
    fc.gamma0 = -1;
    CHECK_THROWS_AS(fc.validate(), InvalidParameter);
    Environment env;
    env.T = -1;
    CHECK_THROWS_AS(env.validate(), InvalidParameter);
    TrapConfig t;
    CHECK_THROWS_AS(t.validate(), InvalidParameter);
  }
}

TEST_SUITE("hamiltonians") {
  TEST_CASE("every builder is Hermitian") {
    auto s = derive_scales(spheroid(200e-9, 0.4), app_b_trap(), field(-102, 1e5), Environment{});
    auto rot = spin_rotor_fock_basis(3, periodic_rotor(3), 6);
    auto eff = spin_rotor_basis(3, periodic_rotor(6));
    auto mag = spin_rotor_basis(2, periodic_rotor(6));
    auto harm = spin_rotor_basis(2, harmonic_rotor(20, 0.0, 0.01));
    auto harm3 = spin_rotor_basis(3, harmonic_rotor(12, 0.0, 0.01));
    CHECK(is_hermitian(build_H_rot(s, rot)));
    CHECK(is_hermitian(build_H_eff(s, eff)));
    CHECK(is_hermitian(build_H_eff(s, eff, true)));
    CHECK(is_hermitian(build_H_mag(s, mag)));
    CHECK(is_hermitian(build_H2(s, harm)));
    CHECK(is_hermitian(build_H_disp(s, harm)));
    CHECK(is_hermitian(build_H_misaligned(s, 0.01, harm3, true)));
    CHECK(is_hermitian(build_H_asym(s, 1e-3, rot)));
  }

  TEST_CASE("builders reject the wrong basis") {
    auto s = scales(200e-9, 0.3, -100, 1e6);
    CHECK_THROWS_AS(build_H_eff(s, spin_rotor_basis(2, periodic_rotor(3))), InvalidBasis);
    CHECK_THROWS_AS(build_H2(s, spin_rotor_basis(2, periodic_rotor(3))), InvalidBasis);
    CHECK_THROWS_AS(build_H_rot(s, spin_rotor_basis(3, periodic_rotor(3))), InvalidBasis);
  }

  TEST_CASE("H_rot at B = 0, omega = 0 decouples all factors") {
    auto s = derive_scales(spheroid(200e-9, 0.3), app_b_trap(), field(0, 0), Environment{});
    auto b = spin_rotor_fock_basis(3, periodic_rotor(2), 5);
    Op h = build_H_rot(s, b);
    auto r = rotor_operators(2);
    auto f = fock_operators(5, s.I, s.omega_xi);
    CHECK(max_abs(commutator(h, embed(spin1_operators().S1, Factor::Spin, b))) == 0.0);
    CHECK(max_abs(commutator(h, embed(r.p, Factor::Rotor, b))) == 0.0);
    CHECK(max_abs(commutator(h, embed(f.H, Factor::Fock, b))) == 0.0);
  }

  TEST_CASE("H_rot at g = 0 keeps only the xi coupling off S1") {
    FieldConfig fc = field(0, 0);
    fc.omega = two_pi * 1e6;
    fc.B = 0.0;
    auto s = derive_scales(spheroid(200e-9, 0.3), std::nullopt, fc, Environment{});
    s.B = s.omega / s.gamma0;
    s.g = 0.0;
    auto b = spin_rotor_fock_basis(3, periodic_rotor(2), 5);
    Op h = build_H_rot(s, b);
    Op s1 = embed(spin1_operators().S1, Factor::Spin, b);
    auto f = fock_operators(5, s.I, s.omega_xi);
    Op xi_term = tensor(tensor(spin1_operators().S3, identity(5)), f.xi) * (s.gamma0 * s.B);
    Op d = commutator(h, s1) - commutator(xi_term, s1);
    CHECK(max_abs(d) <= 1e-15 * max_abs(commutator(xi_term, s1)));
  }

  TEST_CASE("H_rot ground energy matches second-order perturbation theory") {
    // small rotor and zero-field splitting keep every coupling far below its gap
    FieldConfig fc = field(0, 1e3);
    fc.D_nv = two_pi * 1e4;
    fc.B = (fc.omega - 50.0) / fc.gamma0;
    auto s = derive_scales(spheroid(20e-9, 0.3), std::nullopt, fc, Environment{});
    REQUIRE(s.g == doctest::Approx(50.0).epsilon(1e-9));
    REQUIRE(hbar / (2 * s.I3) > 1e3 * s.g * s.g / s.D_nv);
    auto b = spin_rotor_fock_basis(3, periodic_rotor(2), 8);
    auto es = hermitian_eig(build_H_rot(s, b));
    // ground |S1=0, m=0, n=0>; S3 xi and S2 sin gamma both reach |S1=+-1>
    const double xi0sq = hbar / (2 * s.I * s.omega_xi);
    const double e0 = 0.5 * hbar * s.omega_xi;
    const double a = std::pow(s.gamma0 * s.B * hbar, 2) * xi0sq / (hbar * (s.D_nv + s.omega_xi));
    const double c = 0.5 * std::pow(s.g * hbar, 2) / (hbar * s.D_nv + hbar * hbar / (2 * s.I3));
    const double e2 = -(a + c);
    CHECK(std::abs(es.values(0) - (e0 + e2)) <= 1e-2 * std::abs(e2));
  }

  TEST_CASE("H_eff at g = 0 separates rotor and spin") {
    auto s = scales(200e-9, 0.3, 0, 1e6);
    s.g = 0.0;
    const int L = 4;
    auto es = hermitian_eig(build_H_eff(s, spin_rotor_basis(3, periodic_rotor(L))));
    std::vector<double> ref;
    for (double sp : {hbar * s.D_nv, 0.0, hbar * s.D_nv})
      for (int m = -L; m <= L; ++m) ref.push_back(hbar * hbar * m * m / (2 * s.I_eff) + sp);
    std::sort(ref.begin(), ref.end());
    for (size_t k = 0; k < ref.size(); ++k)
      CHECK(std::abs(es.values(int(k)) - ref[k]) <= 1e-12 * hbar * s.D_nv);
  }

  TEST_CASE("hard-magnet block of H_eff is hbar g cos gamma") {
    auto s = scales(200e-9, 0.3, -10, 1e6);
    const int L = 5, n = 2 * L + 1;
    auto r = rotor_operators(L);
    Mat h(build_H_eff(s, spin_rotor_basis(3, periodic_rotor(L))));
    Mat block = h.topLeftCorner(n, n);
    Mat expect = Mat(r.p * r.p) / (2 * s.I_eff) + hbar * s.D_nv * Mat::Identity(n, n) + hbar * s.g * Mat(r.cos);
    CHECK(max_abs(Mat(block - expect)) <= 1e-15 * hbar * s.D_nv);
  }

  TEST_CASE("Zeeman term needs a rotation") {
    auto s = scales(200e-9, 0.3, -10, 1e6);
    s.omega = 0.0;
    CHECK_THROWS_AS(build_H_eff(s, spin_rotor_basis(3, periodic_rotor(2)), true), InvalidParameter);
  }

  TEST_CASE("H_mag potential equals the fixed-gamma block") {
    auto s = scales(200e-9, 0.3, -0.5, 1e6);
    const int L = 6, n = 2 * L + 1;
    Mat h(build_H_mag(s, spin_rotor_basis(2, periodic_rotor(L))));
    // Read the Fourier coefficients A0 + A1 cos + A2 cos 2 off the m = 0 row.
    Eigen::Matrix2cd A0, A1, A2;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        A0(a, b) = h(a * n + L, b * n + L);
        A1(a, b) = 2.0 * h(a * n + L, b * n + L + 1);
        A2(a, b) = 2.0 * h(a * n + L, b * n + L + 2);
      }
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, two_pi);
    for (int k = 0; k < 100; ++k) {
      const double g = u(rng);
      Eigen::Matrix2cd m = (A0 + A1 * std::cos(g) + A2 * std::cos(2 * g)) / hbar;
      CHECK((m - h_mag_spin_block(s, g)).cwiseAbs().maxCoeff() <= 1e-12 * std::abs(s.g));
    }
  }

  TEST_CASE("H_mag at delta = 0 has no spin-flip blocks") {
    auto s = scales(200e-9, 0.3, -0.5, 1e6);
    s.delta = 0.0;
    const int n = 9;
    Mat h(build_H_mag(s, spin_rotor_basis(2, periodic_rotor(4))));
    CHECK(max_abs(Mat(h.topRightCorner(n, n))) == 0.0);
    auto r = rotor_operators(4);
    Mat up = Mat(r.p * r.p) / (2 * s.I_eff) + hbar * s.g * Mat(r.cos);
    CHECK(max_abs(Mat(h.topLeftCorner(n, n) - up)) <= 1e-15 * hbar * std::abs(s.g));
  }

  TEST_CASE("H2 at g = 0 is a free oscillator plus hbar Delta sz / 2") {
    auto s = scales(100e-9, 0.2, -100, 1e6);
    s.g = 0.0;
    s.delta_tilde = 0.0;
    s.Delta = s.D_nv;
    const int d = 10;
    Mat h(build_H2(s, spin_rotor_basis(2, harmonic_rotor(d, 0.0, 1e-3))));
    CHECK(max_abs(Mat(h.topRightCorner(d, d))) == 0.0);
    Mat diff = h.topLeftCorner(d, d) - h.bottomRightCorner(d, d);
    CHECK(max_abs(Mat(diff - hbar * s.Delta * Mat::Identity(d, d))) <= 1e-14 * hbar * s.Delta);
  }

  TEST_CASE("up block of H_d oscillates at omega_gamma") {
    auto s = scales(100e-9, 0.2, -100, 1e6);
    const double w = *s.omega_gamma;
    const double width = std::sqrt(hbar / (2 * s.I_eff * w));
    const int d = 16;
    Mat h(build_H_disp(s, spin_rotor_basis(2, harmonic_rotor(d, 0.0, width))));
    auto es = hermitian_eig(Mat(h.topLeftCorner(d, d)));
    CHECK(es.values(0) == doctest::Approx(0.5 * hbar * s.Delta + 0.5 * hbar * w).epsilon(1e-12));
    CHECK((es.values(1) - es.values(0)) == doctest::Approx(hbar * w).epsilon(1e-10));
  }

  TEST_CASE("low-lying up states of H2 and H_d agree in the dispersive regime") {
    auto s = scales(100e-9, 0.2, -100, 1e6);
    REQUIRE(s.Delta / s.g <= dispersive_limit);
    const double w = *s.omega_gamma;
    const double width = std::sqrt(hbar / (2 * s.I_eff * w));
    REQUIRE(width * width <= 1e-3);
    REQUIRE(2 * s.g * s.g * width * width / (s.Delta * s.Delta) < 1e-2);
    const int d = 40;
    auto basis = spin_rotor_basis(2, harmonic_rotor(d, 0.0, width));
    auto up_levels = [&](const Mat& h) {
      auto es = hermitian_eig(h);
      std::vector<double> out;
      for (int k = 0; k < 2 * d && out.size() < 4; ++k)
        if (es.vectors.col(k).head(d).squaredNorm() > 0.5) out.push_back(es.values(k));
      return out;
    };
    auto a = up_levels(Mat(build_H2(s, basis)));
    auto b = up_levels(Mat(build_H_disp(s, basis)));
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    for (int k = 1; k < 4; ++k) {
      const double ea = a[k] - a[0], eb = b[k] - b[0];
      CHECK(std::abs(ea - eb) <= 1e-2 * eb);
    }
  }

  TEST_CASE("misalignment reproduces the mixing angle") {
    auto s = scales(100e-9, 0.2, -55, 1e6);
    const double eps = 0.01;
    auto basis = spin_rotor_basis(3, periodic_rotor(1));
    Mat dh(build_H_misaligned(s, eps, basis) - build_H_eff(s, basis));
    CHECK(max_abs(Op(build_H_misaligned(s, 0.0, basis) - build_H_eff(s, basis))) == 0.0);
    // spin block of the perturbation at m = 0, plus the gamma = 0 spin Hamiltonian
    Mat spin(3, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) spin(a, b) = dh(a * 3 + 1, b * 3 + 1);
    Mat s1(spin1_operators().S1);
    spin += s.D_nv / hbar * s1 * s1 + s.g * s1;
    auto es = hermitian_eig(spin);
    // eigenvector dominated by |S1=-hbar> (index 2)
    int k = 0;
    for (int j = 1; j < 3; ++j)
      if (std::abs(es.vectors(2, j)) > std::abs(es.vectors(2, k))) k = j;
    const double theta = std::atan2(std::abs(es.vectors(1, k)), std::abs(es.vectors(2, k)));
    CHECK(theta == doctest::Approx(misalignment_angle(eps, s.D_nv, s.Delta)).epsilon(1e-2));
  }

  TEST_CASE("shape asymmetry adds a libration potential") {
    auto base = scales(200e-9, 0.3, 0, 1e6);
    base.B = base.omega / base.gamma0;
    base.g = 0.0;
    const double dI = 1e-6;
    const double w_lib = base.omega * std::sqrt(dI * base.I / base.I_eff);
    const double width = std::sqrt(hbar / (2 * base.I_eff * w_lib));
    auto basis = spin_rotor_fock_basis(3, harmonic_rotor(24, 0.0, width), 6);
    CHECK(max_abs(Op(build_H_asym(base, 0.0, basis) - build_H_rot(base, basis))) == 0.0);
    Mat h(build_H_asym(base, dI, basis));
    // restrict to the S1 = 0 sector; the other sectors sit hbar D_nv higher
    const int n = 24 * 6;
    auto es = hermitian_eig(Mat(h.block(n, n, n, n)));
    const double gap = (es.values(1) - es.values(0)) / hbar;
    CHECK(gap == doctest::Approx(w_lib).epsilon(0.1));
  }
}
