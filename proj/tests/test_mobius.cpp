#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "szg/metric.hpp"
#include "szg/mobius.hpp"

using namespace szg;

namespace {

Paravector random_point(std::mt19937& rng, int m, double radius) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Paravector p(m);
  do {
    for (int i = 0; i <= m; ++i) p[i] = dist(rng);
  } while (p.norm() > 1.0);
  return p * radius;
}

// finite-difference Jacobian of the Moebius map
std::vector<std::vector<double>> fd_jacobian(const VahlenMatrix& V, const Paravector& z,
                                             double h = 1e-6) {
  int n = z.m() + 1;
  std::vector<std::vector<double>> J(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
  for (int j = 0; j < n; ++j) {
    Paravector zp = z, zm = z;
    zp[j] += h;
    zm[j] -= h;
    Paravector dp = (apply(V, zp) - apply(V, zm)) * (1.0 / (2.0 * h));
    for (int i = 0; i < n; ++i) J[std::size_t(i)][std::size_t(j)] = dp[i];
  }
  return J;
}

}  // namespace

TEST_CASE("validate: identity and translation pass all constraints") {
  for (int m = 1; m <= 3; ++m) {
    auto d1 = validate(VahlenMatrix::identity(m));
    CHECK(d1.all_ok());
    Paravector t(m, {0.5, -0.25});
    auto d2 = validate(VahlenMatrix::translation(t));
    CHECK(d2.all_ok());
  }
}

TEST_CASE("validate: bivector entry with explicit paravector factorization") {
  // a = e_1 e_2, d = reversed-tilde inverse so that a d~ = 1; the rotation
  // z -> e_12 z e_12^{-1}
  int m = 2;
  Mv e12 = Mv::basis(m, 1) * Mv::basis(m, 2);
  VahlenMatrix V{e12, Mv(m), Mv(m), e12};
  Paravector p1(m, {0.0, 1.0, 0.0});
  Paravector p2(m, {0.0, 0.0, 1.0});
  V.factors[0] = {p1, p2};
  V.factors[3] = {p1, p2};
  auto d = validate(V);
  CHECK(d.pseudo_det_ok);  // e_12 * reverse(e_12) = e_12 e_21 = 1
  CHECK(d.entry_products[0] == CheckStatus::Pass);
  CHECK(d.entry_products[3] == CheckStatus::Pass);
  CHECK(d.all_ok());

  // without the factor lists the entry is flagged as not checkable
  VahlenMatrix W{e12, Mv(m), Mv(m), e12};
  auto dw = validate(W);
  CHECK(dw.entry_products[0] == CheckStatus::NotCheckable);
}

TEST_CASE("apply: identity, translation, pole") {
  std::mt19937 rng(5);
  int m = 2;
  VahlenMatrix id = VahlenMatrix::identity(m);
  Paravector t(m, {0.3, 0.1, -0.2});
  VahlenMatrix tr = VahlenMatrix::translation(t);
  for (int rep = 0; rep < 10; ++rep) {
    Paravector z = random_point(rng, m, 0.9);
    CHECK((apply(id, z) - z).norm() <= 1e-14);
    CHECK((apply(tr, z) - (z + t)).norm() <= 1e-14);
  }
  // pole of the ball automorphism lies at a/|a|^2
  Paravector a(m, {0.0, 0.5, 0.0});
  VahlenMatrix T = VahlenMatrix::ball_automorphism(a);
  Paravector pole(m, {0.0, 2.0, 0.0});
  CHECK_THROWS_AS(apply(T, pole, 1e-6), std::domain_error);
}

TEST_CASE("compose and inverse act pointwise") {
  std::mt19937 rng(6);
  for (int m = 1; m <= 3; ++m) {
    Paravector a(m, {0.0, 0.25});
    Paravector t(m, {0.2, -0.1});
    VahlenMatrix V = compose(VahlenMatrix::translation(t),
                             compose(VahlenMatrix::scaling(m, 0.7), VahlenMatrix::ball_automorphism(a)));
    VahlenMatrix Vi = inverse(V);
    VahlenMatrix VVi = compose(V, Vi);
    for (int rep = 0; rep < 100; ++rep) {
      Paravector z = random_point(rng, m, 0.8);
      CHECK((apply(VVi, z) - z).norm() <= 1e-10);
      // compose = pointwise composition
      Paravector lhs = apply(V, z);
      Paravector rhs = apply(VahlenMatrix::translation(t),
                             apply(VahlenMatrix::scaling(m, 0.7),
                                   apply(VahlenMatrix::ball_automorphism(a), z)));
      CHECK((lhs - rhs).norm() <= 1e-10);
    }
    // pseudo-determinant preserved under composition
    Mv pd = V.a * reverse(V.d) - V.b * reverse(V.c);
    CHECK(norm(pd - Mv::scalar(m, 1.0)) <= 1e-9);
  }
}

TEST_CASE("translations compose additively") {
  int m = 2;
  Paravector t1(m, {0.1, 0.2, 0.3}), t2(m, {-0.05, 0.4, 0.0});
  VahlenMatrix c = compose(VahlenMatrix::translation(t1), VahlenMatrix::translation(t2));
  Paravector z(m, {0.0, 0.1, -0.1});
  CHECK((apply(c, z) - (z + t1 + t2)).norm() <= 1e-14);
}

TEST_CASE("conformal scale matches the finite-difference Jacobian") {
  std::mt19937 rng(7);
  int m = 2;
  VahlenMatrix id = VahlenMatrix::identity(m);
  Paravector z0 = random_point(rng, m, 0.5);
  CHECK(conformal_scale(id, z0) == doctest::Approx(1.0));

  // affine (z - C)/r0 scales by 1/r0
  Paravector C(m, {0.0, 2.0, 0.0});
  InversionPair pair{C, 0.5};
  VahlenMatrix j = pair.j_vahlen();
  CHECK(conformal_scale(j, z0) == doctest::Approx(1.0 / 0.5));

  VahlenMatrix V = helper_vahlen(m);
  for (int rep = 0; rep < 5; ++rep) {
    Paravector z = random_point(rng, m, 0.6);
    double s = conformal_scale(V, z);
    auto J = fd_jacobian(V, z);
    // J = s Q with Q orthogonal: check J^T J = s^2 I
    for (int i = 0; i <= m; ++i)
      for (int k = 0; k <= m; ++k) {
        double dot = 0;
        for (int r = 0; r <= m; ++r) dot += J[std::size_t(r)][std::size_t(i)] * J[std::size_t(r)][std::size_t(k)];
        double expect = (i == k) ? s * s : 0.0;
        CHECK(std::abs(dot - expect) <= 1e-5 * std::max(1.0, s * s));
      }
  }
}

TEST_CASE("automorphy factor") {
  int m = 2;
  std::mt19937 rng(8);
  VahlenMatrix id = VahlenMatrix::identity(m);
  Paravector z = random_point(rng, m, 0.5);
  for (int p : {m, m + 1, m + 2})
    CHECK(norm(automorphy_factor(id, z, p) - Mv::scalar(m, 1.0)) <= 1e-14);

  VahlenMatrix V = helper_vahlen(m);
  Mv f = automorphy_factor(V, z, m + 1);
  Mv den = V.c * z.embed() + V.d;
  CHECK(norm(f) == doctest::Approx(1.0 / std::pow(norm(den), m)));
}

TEST_CASE("inversion pair: composition, moduli, weight") {
  std::mt19937 rng(9);
  for (int m = 1; m <= 3; ++m) {
    Paravector C(m);
    C[1] = 2.0;
    double r0 = 0.5;
    Paravector P(m);
    P[1] = 1.5;  // |P - C| = r0, tangent to the unit sphere at e_1... P = 1.5 e_1
    InversionPair pair = inversion_maps(P, C, r0);

    // (j o i)(z) = r0 (z - C)^{-1} pointwise
    for (int rep = 0; rep < 50; ++rep) {
      Paravector z = random_point(rng, m, 0.9);
      Paravector lhs = pair.apply_j(pair.apply_i(z));
      Paravector rhs = pair.apply_composed(z);
      CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
      Paravector formula = (z - C).inverse() * r0;
      CHECK((rhs - formula).norm() <= 1e-12);
    }

    // |j o i| = 1 - delta/(delta + r0) at |z - C| = delta + r0
    for (double delta : {0.0, r0, 0.8}) {
      Paravector z = C;
      z[1] -= (delta + r0);  // point at distance delta + r0 from C
      double modulus = pair.apply_composed(z).norm();
      CHECK(modulus == doctest::Approx(1.0 - delta / (delta + r0)));
      if (delta == r0) CHECK(modulus == doctest::Approx(0.5));
      // automorphy weight modulus r0/(delta + r0)^m at exponent m+1
      CHECK(pair.automorphy_weight_modulus(z, m + 1) ==
            doctest::Approx(r0 / std::pow(delta + r0, m)));
      CHECK(norm(pair.automorphy_weight(z, m + 1)) ==
            doctest::Approx(r0 / std::pow(delta + r0, m)));
    }

    // the image of the exterior of the tangent sphere is bounded
    double sup = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
      Paravector z = random_point(rng, m, 1.0) * 3.0;
      if ((z - C).norm() < r0) continue;
      sup = std::max(sup, pair.apply_composed(z).norm());
    }
    CHECK(sup <= 1.0 + 1e-12);
  }
}

TEST_CASE("inversion_maps validates the tangent configuration") {
  Paravector P(2, {0.0, 1.0, 0.0});
  Paravector C(2, {0.0, 3.0, 0.0});
  CHECK_THROWS_AS(inversion_maps(P, C, 0.5), std::invalid_argument);  // |P-C| != r0
  CHECK_THROWS_AS(inversion_maps(P, C, -1.0), std::invalid_argument);
}

TEST_CASE("moebius images of paravectors stay paravectors") {
  std::mt19937 rng(10);
  for (int m = 1; m <= 3; ++m) {
    VahlenMatrix V = helper_vahlen(m);
    for (int rep = 0; rep < 30; ++rep) {
      Paravector z = random_point(rng, m, 0.8);
      // apply() already enforces off-subspace mass <= 1e-9 relative
      CHECK_NOTHROW(apply(V, z));
    }
  }
}

TEST_CASE("helper map is a valid Vahlen matrix with exterior pole") {
  for (int m = 1; m <= 3; ++m) {
    VahlenMatrix V = helper_vahlen(m);
    auto d = validate(V);
    CHECK(d.pseudo_det_ok);
    CHECK(d.paravector_ratios_ok);
    // pole at -c^{-1} d should be outside the closed unit ball
    Paravector pole = to_paravector(-(group_inverse(V.c) * V.d), 1e-7);
    CHECK(pole.norm() > 1.0);
    // image of the unit sphere is a sphere: compare chart points against the
    // (center, radius) fitted from two antipodal images (charts cover m <= 2)
    if (m > 2) continue;
    BoundarySurface img = helper_image_surface(m);
    Paravector pa(m), pb(m);
    pa[1] = 1.0;
    pb[1] = -1.0;
    Paravector qa = apply(V, pa), qb = apply(V, pb);
    Paravector center = (qa + qb) * 0.5;
    double radius = (qa - qb).norm() * 0.5;
    std::mt19937 rng(11);
    for (int rep = 0; rep < 40; ++rep) {
      double u = (m == 1) ? std::uniform_real_distribution<double>(0, 6.28)(rng)
                          : std::uniform_real_distribution<double>(-1, 1)(rng);
      double v = std::uniform_real_distribution<double>(0, 6.28)(rng);
      Paravector q = img.chart(u, v);
      CHECK(std::abs((q - center).norm() - radius) <= 1e-9);
    }
  }
}
