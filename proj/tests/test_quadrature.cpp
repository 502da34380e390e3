#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "szg/metric.hpp"
#include "szg/quadrature.hpp"

using namespace szg;

namespace {
constexpr double kPi = std::numbers::pi;

// triangulated area of a Moebius image surface (oracle for transported mass)
double mesh_area(const BoundarySurface& s, int nu, int nv) {
  double area = 0.0;
  if (s.m() == 1) {
    // polyline length
    double len = 0.0;
    for (int i = 0; i < nu; ++i) {
      Paravector a = s.chart(2.0 * kPi * i / nu);
      Paravector b = s.chart(2.0 * kPi * (i + 1) / nu);
      len += (b - a).norm();
    }
    return len;
  }
  auto tri = [](const Paravector& a, const Paravector& b, const Paravector& c) {
    // 0.5 |AB x AC| in R^3
    double ab[3], ac[3];
    for (int i = 0; i < 3; ++i) {
      ab[i] = b[i] - a[i];
      ac[i] = c[i] - a[i];
    }
    double cx = ab[1] * ac[2] - ab[2] * ac[1];
    double cy = ab[2] * ac[0] - ab[0] * ac[2];
    double cz = ab[0] * ac[1] - ab[1] * ac[0];
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
  };
  for (int i = 0; i < nu; ++i) {
    double t0 = -1.0 + 2.0 * i / nu;
    double t1 = -1.0 + 2.0 * (i + 1) / nu;
    for (int j = 0; j < nv; ++j) {
      double p0 = 2.0 * kPi * j / nv;
      double p1 = 2.0 * kPi * (j + 1) / nv;
      Paravector a = s.chart(t0, p0), b = s.chart(t1, p0), c = s.chart(t1, p1),
                 d = s.chart(t0, p1);
      area += tri(a, b, c) + tri(a, c, d);
    }
  }
  return area;
}

}  // namespace

TEST_CASE("gauss-legendre nodes integrate monomials exactly") {
  std::vector<double> x, w;
  legendre::nodes(8, x, w);
  for (int k = 0; k <= 15; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], k);
    double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("circle rule: mass and |z|^2 moment") {
  QuadratureRule r = sphere_quadrature(1, 15);
  CHECK(r.size() == 16);
  CHECK(r.total_mass() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  double zz = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) zz += r.weights[k] * r.nodes[k].norm_sq();
  CHECK(zz == doctest::Approx(2.0 * kPi).epsilon(1e-13));
}

TEST_CASE("sphere rule: mass and polynomial moments") {
  QuadratureRule r = sphere_quadrature(2, 20);
  CHECK(std::abs(r.total_mass() - 4.0 * kPi) <= 1e-12);
  auto moment = [&](int e0) {
    double acc = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k)
      acc += r.weights[k] * std::pow(r.nodes[k][0], e0);
    return acc;
  };
  // int z0^{2k} over S^2 = 4 pi / (2k+1)
  CHECK(moment(2) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(moment(4) == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-13));
  CHECK(moment(6) == doctest::Approx(4.0 * kPi / 7.0).epsilon(1e-13));
  CHECK(moment(3) == doctest::Approx(0.0));
}

TEST_CASE("scaled and shifted spheres") {
  Paravector c(2, {0.5, -1.0, 0.25});
  QuadratureRule r = sphere_quadrature(2, 10, 0.75, c);
  CHECK(r.total_mass() == doctest::Approx(4.0 * kPi * 0.75 * 0.75).epsilon(1e-12));
  for (std::size_t k = 0; k < r.size(); ++k)
    CHECK((r.nodes[k] - c).norm() == doctest::Approx(0.75));
}

TEST_CASE("transport: identity map leaves the rule unchanged") {
  QuadratureRule r = sphere_quadrature(2, 8);
  QuadratureRule t = transport_quadrature(r, VahlenMatrix::identity(2));
  for (std::size_t k = 0; k < r.size(); ++k) {
    CHECK((r.nodes[k] - t.nodes[k]).norm() <= 1e-14);
    CHECK(r.weights[k] == doctest::Approx(t.weights[k]));
  }
}

TEST_CASE("transported mass equals the image surface area") {
  for (int m = 1; m <= 2; ++m) {
    VahlenMatrix V = helper_vahlen(m);
    BoundarySurface img = helper_image_surface(m);
    QuadratureRule base = sphere_quadrature(m, 30);
    QuadratureRule t = transport_quadrature(base, V);
    double coarse = mesh_area(img, 256, 256);
    double fine = mesh_area(img, 512, 512);
    // mesh refinement must have converged well past the comparison tolerance
    CHECK(std::abs(fine - coarse) <= 1e-4 * fine);
    double extrap = fine + (fine - coarse) / 3.0;  // second-order elements
    CHECK(std::abs(t.total_mass() - extrap) <= 1e-6 * extrap);
    // the helper image is the sphere of radius 1/2: area known in closed form
    double exact = (m == 1) ? 2.0 * kPi * 0.5 : 4.0 * kPi * 0.25;
    CHECK(t.total_mass() == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("moebius surface construction rejects interior poles") {
  // map with pole at 0.5 e_1 (inside the closed unit ball)
  Paravector a(2, {0.0, 0.5, 0.0});
  // ball automorphism of parameter a has its pole at a/|a|^2 = 2 e_1; compose
  // with a scaling to pull the pole inward: pole of V o S is S^{-1}(pole)
  VahlenMatrix V = VahlenMatrix::ball_automorphism(a);
  VahlenMatrix S = VahlenMatrix::scaling(2, 4.0);
  VahlenMatrix W = compose(V, S);  // pole where 4 z = 2 e_1, i.e. z = 0.5 e_1
  CHECK_THROWS_AS(BoundarySurface::mobius_image(W, Paravector(2), 1.0), std::invalid_argument);
}

TEST_CASE("refined sphere rule reproduces total mass") {
  Paravector toward(2, {0.0, 1.3, 0.0});
  QuadratureRule r = refined_sphere_quadrature(2, 1.0, Paravector(2), toward);
  CHECK(r.total_mass() == doctest::Approx(4.0 * kPi).epsilon(1e-10));
  Paravector toward1(1, {0.0, 1.3});
  QuadratureRule r1 = refined_sphere_quadrature(1, 1.0, Paravector(1), toward1);
  CHECK(r1.total_mass() == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  // resolves a sharply peaked integrand: int over S^2 of d^{-4} with
  // d = |w - w0|, |w0| = 1 + eps: compare against the axisymmetric 1-D
  // integral computed by adaptive refinement in closed form
  double eps = 1e-3;
  Paravector w0(2, {0.0, 1.0 + eps, 0.0});
  double acc = 0.0;
  QuadratureRule rr = refined_sphere_quadrature(2, 1.0, Paravector(2), w0, 48, 16);
  for (std::size_t k = 0; k < rr.size(); ++k)
    acc += rr.weights[k] / std::pow((rr.nodes[k] - w0).norm(), 4);
  // exact: 2 pi int_0^pi sin t / (2 - 2(1+eps) cos t + ... ) dt; evaluate by
  // substitution u = cos t: integral = 2 pi int_{-1}^{1} du / (1 + (1+eps)^2 - 2(1+eps) u)^2
  double b = 1.0 + eps;
  double exact = 2.0 * kPi * (1.0 / (2.0 * b)) *
                 (1.0 / ((1.0 + b * b) - 2.0 * b) - 1.0 / ((1.0 + b * b) + 2.0 * b));
  CHECK(acc == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("nearest boundary point on spheres") {
  BoundarySurface ball = BoundarySurface::sphere(2, Paravector(2), 1.0);
  Paravector z(2, {0.0, 0.5, 0.0});
  TangentBallData tb = nearest_boundary_point(ball, z, 0.5);
  CHECK((tb.P - Paravector(2, {0.0, 1.0, 0.0})).norm() <= 1e-12);
  CHECK(tb.delta == doctest::Approx(0.5));
  CHECK((tb.C - Paravector(2, {0.0, 1.5, 0.0})).norm() <= 1e-12);
  CHECK((tb.P - tb.C).norm() == doctest::Approx(tb.r0));

  CHECK_THROWS_AS(nearest_boundary_point(ball, Paravector(2), 0.5), std::domain_error);
}

TEST_CASE("nearest boundary point on a moebius image agrees with dense sampling") {
  BoundarySurface img = helper_image_surface(2);
  Paravector z(2, {0.05, 0.1, 0.35});  // interior of the image ball(0.3 e2, 0.5)
  TangentBallData tb = nearest_boundary_point(img, z, 0.25);
  // dense sampling oracle
  double best = 1e300;
  Paravector bp(2);
  for (int i = 0; i <= 600; ++i) {
    double t = -1.0 + 2.0 * i / 600.0;
    for (int j = 0; j < 1200; ++j) {
      double phi = 2.0 * kPi * j / 1200.0;
      Paravector p = img.chart(t, phi);
      double d = (p - z).norm();
      if (d < best) {
        best = d;
        bp = p;
      }
    }
  }
  CHECK(std::abs(tb.delta - best) <= 1e-6);
  CHECK((tb.P - bp).norm() <= 2e-3);  // dense grid is the coarse side here
}
