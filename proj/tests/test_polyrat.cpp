#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "schwarz/ode.hpp"
#include "schwarz/polyrat.hpp"
#include "schwarz/velocity.hpp"

using namespace schwarz;

TEST_CASE("polynomial roots with multiplicity clustering") {
  // (z-2)^2 (z+1)
  coeff_list p = poly::from_roots({2.0, 2.0, -1.0});
  auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    if (r.multiplicity == 2)
      CHECK(std::abs(r.location - cplx(2.0)) < 1e-6);
    else
      CHECK(std::abs(r.location - cplx(-1.0)) < 1e-9);
  }
}

TEST_CASE("count_zeros_poles: spec cases") {
  // r(z) = 2(z-2), radius 3.
  DiskCount c1 = count_zeros_poles(PolyRat::polynomial({-4.0, 2.0}), 3.0);
  CHECK(c1.zeros == 1);
  CHECK(c1.poles == 0);

  // r(z) = 1/z^2, radius 1.
  DiskCount c2 = count_zeros_poles(PolyRat({1.0}, {0.0, 0.0, 1.0}), 1.0);
  CHECK(c2.zeros == 0);
  CHECK(c2.poles == 2);

  // h'(z) for h = 5/(z^5 - 5z), radius 1.2: zeros at z^4 = 1, double pole at 0.
  PolyRat h({5.0}, {0.0, -5.0, 0.0, 0.0, 0.0, 1.0});
  DiskCount c3 = count_zeros_poles(h.derivative_reduced(), 1.2);
  CHECK(c3.zeros == 4);
  CHECK(c3.poles == 2);
}

TEST_CASE("boundary roots are rejected") {
  CHECK_THROWS_AS(count_zeros_poles(PolyRat::polynomial({-1.0, 1.0}), 1.0), error);
}

TEST_CASE("winding number equals Z - P on random rationals") {
  auto g = testutil::rng(41);
  int done = 0;
  while (done < 40) {
    int dn = 1 + int(testutil::uniform(g, 0.0, 5.0));
    int dd = int(testutil::uniform(g, 0.0, 4.0));
    std::vector<cplx> zs, ps;
    for (int i = 0; i < dn; ++i) zs.push_back(2.0 * testutil::random_unit_disk(g));
    for (int i = 0; i < dd; ++i) ps.push_back(2.0 * testutil::random_unit_disk(g));
    double radius = testutil::uniform(g, 0.5, 1.8);
    bool clear = true;
    for (const auto& z : zs) clear = clear && std::abs(std::abs(z) - radius) > 1e-3;
    for (const auto& p : ps) clear = clear && std::abs(std::abs(p) - radius) > 1e-3;
    bool distinct = true;
    for (const auto& z : zs)
      for (const auto& p : ps) distinct = distinct && std::abs(z - p) > 1e-2;
    if (!clear || !distinct) continue;
    PolyRat r(poly::from_roots(zs, testutil::random_unit_disk(g) + cplx(1.5)), poly::from_roots(ps));
    DiskCount count = count_zeros_poles(r, radius);
    int wind = winding_number([&](cplx z) { return r(z); }, radius);
    CHECK(wind == count.zeros - count.poles);
    ++done;
  }
}

TEST_CASE("rational derivative cancels common factors") {
  // h = 1/(z-1)^2: h' = -2/(z-1)^3, numerator and denominator share (z-1).
  PolyRat h({1.0}, poly::from_roots({1.0, 1.0}));
  PolyRat hp = h.derivative_reduced();
  CHECK(poly::degree(hp.den()) == 3);
  CHECK(poly::degree(hp.num()) == 0);
  CHECK(std::abs(hp(cplx(3.0)) - (-2.0 / 8.0)) < 1e-9);
}

TEST_CASE("eval_derivatives matches series expansion") {
  PolyRat h({5.0}, {0.0, -5.0, 0.0, 0.0, 0.0, 1.0});
  cplx z0(0.7, 0.3);
  auto d = h.eval_derivatives(z0, 3);
  // Oracle: Cauchy coefficients of h about z0.
  coeff_list c = testutil::cauchy_coefficients([&](cplx z) { return h(z); }, z0, 3, 24, 0.1);
  CHECK(std::abs(d[0] - c[0]) < 1e-9 * std::abs(c[0]));
  CHECK(std::abs(d[1] - c[1]) < 1e-8 * std::abs(c[1]));
  CHECK(std::abs(d[2] - 2.0 * c[2]) < 1e-7 * std::abs(c[2]));
  CHECK(std::abs(d[3] - 6.0 * c[3]) < 1e-6 * std::abs(c[3]));
}

TEST_CASE("residue of 1/v: simple, double, and contour oracle") {
  // v = z: residue 1 at 0.
  VelocityField v1 = VelocityField::polynomial({0.0, 1.0});
  CHECK(std::abs(residue_of_reciprocal(v1, 0.0, 1) - cplx(1.0)) < 1e-14);

  // v = z^2 + z^3: Res(1/v; 0) = -1.
  VelocityField v2 = VelocityField::polynomial({0.0, 0.0, 1.0, 1.0});
  CHECK(std::abs(residue_of_reciprocal(v2, 0.0, 2) - cplx(-1.0)) < 1e-12);

  // v = (1 - z^2)/2: Res(1/v; 1) = q/p' = 1/(-1) = -1... partial fractions oracle.
  VelocityField v3 = VelocityField::polynomial({0.5, 0.0, -0.5});
  cplx lam = residue_of_reciprocal(v3, 1.0, 1);
  CHECK(std::abs(lam - cplx(-1.0)) < 1e-12);

  // Independent contour oracle: (1/2 pi i) ∮ dz/v around a small circle.
  auto contour = [&](const VelocityField& v, cplx center) {
    cplx acc = 0.0;
    const int nseg = 8;
    double r = 0.3;
    for (int k = 0; k < nseg; ++k) {
      cplx a = center + r * std::exp(cplx(0.0, 2.0 * std::numbers::pi * k / nseg));
      cplx b = center + r * std::exp(cplx(0.0, 2.0 * std::numbers::pi * (k + 1) / nseg));
      acc += integrate_segment([&](cplx z) { return 1.0 / v(z); }, a, b, 1e-13);
    }
    return acc / cplx(0.0, 2.0 * std::numbers::pi);
  };
  CHECK(std::abs(contour(v2, 0.0) - cplx(-1.0)) < 1e-10);
  CHECK(std::abs(contour(v3, 1.0) - cplx(-1.0)) < 1e-10);
}

TEST_CASE("stationary point table") {
  // v = z: one pivot point with rate 1 and lambda = 1.
  auto sp1 = stationary_points(VelocityField::polynomial({0.0, 1.0}));
  REQUIRE(sp1.size() == 1);
  CHECK(sp1[0].multiplicity == 1);
  CHECK(sp1[0].theta_rate.has_value());
  CHECK(std::abs(*sp1[0].theta_rate - 1.0) < 1e-14);
  CHECK(std::abs(sp1[0].lambda - cplx(1.0)) < 1e-14);
  CHECK(sp1[0].rate_residual < 1e-12);

  // v = (1 - z^2)/2: pivots at +-1 with rates -+1.
  auto sp2 = stationary_points(VelocityField::polynomial({0.5, 0.0, -0.5}));
  REQUIRE(sp2.size() == 2);
  CHECK(std::abs(sp2[0].x0 + 1.0) < 1e-9);
  CHECK(std::abs(*sp2[0].theta_rate - 1.0) < 1e-12);
  CHECK(std::abs(sp2[1].x0 - 1.0) < 1e-9);
  CHECK(std::abs(*sp2[1].theta_rate + 1.0) < 1e-12);

  // v = z^2 + z^3: point of tangency, lambda = -1, dK/dt = 2/3.
  auto sp3 = stationary_points(VelocityField::polynomial({0.0, 0.0, 1.0, 1.0}));
  bool found = false;
  for (const auto& sp : sp3) {
    if (std::abs(sp.x0) < 1e-7) {
      found = true;
      CHECK(sp.multiplicity == 2);
      CHECK(std::abs(sp.lambda - cplx(-1.0)) < 1e-9);
      REQUIRE(sp.kasner_rate.has_value());
      CHECK(std::abs(*sp.kasner_rate - 2.0 / 3.0) < 1e-12);
      CHECK(sp.rate_residual < 1e-9);
    }
  }
  CHECK(found);
}
