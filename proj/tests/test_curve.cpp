#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "schwarz/curve.hpp"
#include "schwarz/dynamics.hpp"

using namespace schwarz;

namespace {

// gamma(x) = c e^{i a x} about x0.
Jet exp_curve_jet(cplx c, double a, double x0, int order = kDefaultJetOrder) {
  coeff_list coeffs(std::size_t(order) + 1);
  cplx term = c * std::exp(cplx(0.0, a * x0));
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    coeffs[std::size_t(k)] = term * std::pow(cplx(0.0, a), k) / factorial;
    factorial *= (k + 1);
  }
  return Jet(x0, std::move(coeffs));
}

// Random analytic perturbation of the real axis.
SchwarzFn random_curve(std::mt19937_64& g, double eps = 0.08) {
  coeff_list gamma(17, cplx(0.0));
  gamma[1] = 1.0;
  for (int k = 2; k <= 4; ++k) gamma[std::size_t(k)] = eps * testutil::random_unit_disk(g);
  return schwarz_from_curve(Jet(0.0, std::move(gamma)));
}

}  // namespace

TEST_CASE("schwarz_from_curve: lines and the unit circle") {
  // gamma(x) = x + i -> S(z) = z - 2i.
  Jet line(0.0, [] {
    coeff_list c(9, cplx(0.0));
    c[0] = cplx(0.0, 1.0);
    c[1] = 1.0;
    return c;
  }());
  SchwarzFn s = schwarz_from_curve(line);
  CHECK(std::abs(s.base_point() - cplx(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(s(cplx(0.7, 1.0)) - cplx(0.7, -1.0)) < 1e-12);

  // gamma(x) = x -> S(z) = z.
  SchwarzFn axis = schwarz_from_curve(Jet::identity(0.0, 8));
  CHECK(std::abs(axis(cplx(0.4)) - cplx(0.4)) < 1e-14);

  // gamma(x) = e^{ix} about 0 -> the jet of 1/z about 1.
  SchwarzFn circ = schwarz_from_curve(exp_curve_jet(1.0, 1.0, 0.0));
  const Jet& j = circ.jet();
  CHECK(std::abs(j.center() - cplx(1.0)) < 1e-12);
  for (int k = 0; k <= 12; ++k) {
    cplx expected = (k % 2 == 0) ? 1.0 : -1.0;  // 1/z = sum (-1)^k (z-1)^k
    CHECK(std::abs(j.coeff(k) - expected) < 1e-9);
  }
}

TEST_CASE("curve recovery by Newton iteration") {
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  std::vector<cplx> seeds;
  for (int k = 0; k < 12; ++k)
    seeds.push_back(1.15 * std::exp(cplx(0.0, 0.5 * k)));
  CurveRecovery rec = curve_from_schwarz(circle, seeds);
  CHECK(rec.failed_seeds.empty());
  CHECK(!rec.curve.discrete_set);
  for (cplx z : rec.curve.points) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    CHECK(std::abs(circle(z) - std::conj(z)) < 1e-10);
  }

  SchwarzFn line(MobiusMap{1.0, cplx(0.0, -2.0), 0.0, 1.0}, cplx(0.0, 1.0));
  CurveRecovery rl = curve_from_schwarz(line, {cplx(0.2, 0.7), cplx(-1.0, 1.4), cplx(2.0, 0.9)});
  for (cplx z : rl.curve.points) CHECK(std::abs(z.imag() - 1.0) < 1e-10);

  // S(z) = z^2 is not a Schwarz function of a curve: isolated solutions only.
  Jet sq = Jet::of_polynomial({0.0, 0.0, 1.0}, 1.0, 10);
  SchwarzFn notcurve(sq);
  std::vector<cplx> grid;
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) grid.push_back(cplx(0.6 + 0.15 * i, -0.45 + 0.15 * k));
  CurveRecovery rs = curve_from_schwarz(notcurve, grid);
  CHECK(rs.curve.discrete_set);
}

TEST_CASE("reflect_point fixes the curve and is involutive") {
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  CHECK(std::abs(reflect_point(circle, 2.0) - cplx(0.5)) < 1e-14);

  SchwarzFn axis(MobiusMap::identity(), 0.0);
  CHECK(std::abs(reflect_point(axis, cplx(0.3, 0.4)) - cplx(0.3, -0.4)) < 1e-15);

  SchwarzFn line(MobiusMap{1.0, cplx(0.0, -2.0), 0.0, 1.0}, cplx(0.0, 1.0));
  CHECK(std::abs(reflect_point(line, 0.0) - cplx(0.0, 2.0)) < 1e-14);

  auto g = testutil::rng(71);
  for (int i = 0; i < 20; ++i) {
    SchwarzFn s = random_curve(g);
    cplx z = s.base_point() + cplx(testutil::uniform(g, -0.05, 0.05), testutil::uniform(g, -0.05, 0.05));
    CHECK(std::abs(reflect_point(s, reflect_point(s, z)) - z) < 1e-8);
  }

  // Far outside the jet's validity the tail proxy rejects the evaluation.
  SchwarzFn snug = random_curve(g);
  CHECK_THROWS_AS(reflect_point(snug, snug.base_point() + cplx(30.0, 0.0)), error);
}

TEST_CASE("clinant has unit modulus and the expected angles") {
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  CHECK(std::abs(clinant(axis, cplx(0.7)) - cplx(1.0)) < 1e-14);

  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  CHECK(std::abs(clinant(circle, 1.0) - cplx(-1.0)) < 1e-14);
  CHECK_THROWS_AS(clinant(circle, cplx(1.5)), error);  // off curve

  // Rotating line S(t,z) = e^{-2it} z at t = 0.6: clinant e^{-2it} on the line.
  double t = 0.6;
  MobiusMap rot{std::exp(cplx(0.0, -2.0 * t)), 0.0, 0.0, 1.0};
  SchwarzFn sline(rot, std::exp(cplx(0.0, t)));
  CHECK(std::abs(clinant(sline, std::exp(cplx(0.0, t))) - std::exp(cplx(0.0, -2.0 * t))) < 1e-14);

  auto g = testutil::rng(73);
  for (int i = 0; i < 20; ++i) {
    SchwarzFn s = random_curve(g);
    CHECK(std::abs(std::abs(clinant(s, s.base_point())) - 1.0) < 1e-8);
  }
}

TEST_CASE("curvature: line, circle, ellipse against the circumcircle oracle") {
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  CHECK(std::abs(curvature(axis, cplx(0.3))) < 1e-14);

  // Circle of radius r: |kappa| = 1/r.
  for (double r : {0.5, 1.0, 2.0, 3.7}) {
    SchwarzForm f{0.0, 1.0, r * r};
    SchwarzFn circle(f.matrix(), cplx(r));
    CHECK(std::abs(std::abs(curvature(circle, cplx(r))) - 1.0 / r) < 1e-9 / r);
  }

  // Ellipse gamma(x) = 2 cos x + i sin x at x = 0 (end of the major axis).
  coeff_list gamma(25, cplx(0.0));
  double fact = 1.0;
  for (int k = 0; k <= 24; ++k) {
    // 2 cos x + i sin x = sum [2 Re + i Im] of (ix)^k/k!.
    cplx ik = std::pow(cplx(0.0, 1.0), k);
    gamma[std::size_t(k)] = (2.0 * ik.real() + cplx(0.0, 1.0) * ik.imag()) / fact;
    fact *= (k + 1);
  }
  Jet ell(0.0, std::move(gamma));
  SchwarzFn s = schwarz_from_curve(ell);
  double kappa = std::abs(curvature(s, s.base_point()));
  // Three-point circumcircle estimate on gamma samples.
  auto gamma_at = [](double x) { return cplx(2.0 * std::cos(x), std::sin(x)); };
  cplx p1 = gamma_at(-1e-3), p2 = gamma_at(0.0), p3 = gamma_at(1e-3);
  double a = std::abs(p2 - p1), b = std::abs(p3 - p2), c = std::abs(p3 - p1);
  double area = 0.5 * std::abs(((p2 - p1) * std::conj(p3 - p1)).imag());
  double circum = a * b * c / (4.0 * area);
  CHECK(std::abs(kappa - 1.0 / circum) < 1e-4);
  CHECK(std::abs(kappa - 2.0) < 1e-6);  // a/b^2 at the major-axis endpoint
}

TEST_CASE("curvature_s and the Kasner invariant") {
  // Mobius Schwarz functions: kappa_s = 0, no Kasner invariant.
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  CHECK(std::abs(curvature_s(circle, 1.0)) < 1e-14);
  CHECK_THROWS_AS(kasner(circle, 1.0), error);

  // Parabola gamma(x) = x + i x^2: kappa_s matches the finite-difference
  // derivative of curvature with respect to arclength.
  double x0 = 0.3;
  auto curve_at = [&](double x) {
    coeff_list c(25, cplx(0.0));
    c[0] = cplx(x, x * x);
    c[1] = cplx(1.0, 2.0 * x);
    c[2] = cplx(0.0, 1.0);
    return Jet(x, std::move(c));
  };
  SchwarzFn s = schwarz_from_curve(curve_at(x0));
  double ks = curvature_s(s, s.base_point());
  const double h = 1e-3;
  SchwarzFn sp = schwarz_from_curve(curve_at(x0 + h));
  SchwarzFn sm = schwarz_from_curve(curve_at(x0 - h));
  cplx branch_m(0.0), branch_0(0.0), branch_p(0.0);
  double km = curvature(sm, sm.base_point(), branch_m);
  branch_0 = branch_m;
  curvature(s, s.base_point(), branch_0);
  branch_p = branch_0;
  double kp = curvature(sp, sp.base_point(), branch_p);
  auto speed = [&](double x) { return std::abs(cplx(1.0, 2.0 * x)); };
  double ds = (speed(x0 - h) + 4.0 * speed(x0) + speed(x0 + h)) / 6.0 * 2.0 * h;  // Simpson
  CHECK(std::abs(ks - (kp - km) / ds) < 1e-5);

  // K kappa_s = kappa^2 is an exact identity of the three formulas.
  auto g = testutil::rng(79);
  for (int i = 0; i < 20; ++i) {
    SchwarzFn r = random_curve(g);
    cplx z = r.base_point();
    double kap = curvature(r, z);
    double ks2 = curvature_s(r, z);
    if (std::abs(ks2) < 1e-6) continue;
    double K = kasner(r, z);
    CHECK(std::abs(K * ks2 - kap * kap) < 1e-8 * std::max(1.0, kap * kap));
  }
}

TEST_CASE("hermitian conjugation transports Schwarz functions") {
  // Real translations fix the real axis.
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  SchwarzFn moved = hermitian_conjugate(MobiusMap::translation(2.5), axis);
  CHECK(std::abs(moved(cplx(0.3)) - cplx(0.3)) < 1e-13);

  // phi(z) = 2z sends the unit circle to radius 2: S -> 4/z.
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  SchwarzFn scaled = hermitian_conjugate(MobiusMap::scaling(2.0), circle);
  CHECK(projective_distance(scaled.mobius(), MobiusMap{0.0, 4.0, 1.0, 0.0}) < 1e-13);

  // Jet representation transports the same way.
  SchwarzFn circle_jet(mobius_to_jet(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0, 20));
  SchwarzFn scaled_jet = hermitian_conjugate(MobiusMap::scaling(2.0), circle_jet);
  CHECK(std::abs(scaled_jet(cplx(2.1)) - 4.0 / 2.1) < 1e-9);
}

namespace {

// Two curves tangent to R at 0 with distinct quadratic terms: a
// first-order-contact (horn angle) configuration.
std::pair<SchwarzFn, SchwarzFn> contact_pair(std::mt19937_64& g) {
  auto curve = [&](double amp) {
    coeff_list c(17, cplx(0.0));
    c[1] = 1.0;
    c[2] = cplx(0.0, amp);
    c[3] = cplx(0.0, 0.12) * testutil::uniform(g, 0.4, 1.6);
    c[4] = 0.05 * testutil::random_unit_disk(g);
    return schwarz_from_curve(Jet(0.0, std::move(c)));
  };
  return {curve(testutil::uniform(g, 0.2, 0.5)), curve(testutil::uniform(g, -0.5, -0.2))};
}

}  // namespace

TEST_CASE("horn-angle invariant under Mobius transport") {
  auto g = testutil::rng(83);
  for (int i = 0; i < 50; ++i) {
    auto [s1, s2] = contact_pair(g);
    double K = kasner_pair(s1, s2, 0.0);
    MobiusMap phi{1.5 + testutil::random_unit_disk(g, 0.4), testutil::random_unit_disk(g, 0.3),
                  testutil::random_unit_disk(g, 0.2), 1.5 + testutil::random_unit_disk(g, 0.4)};
    double K2 = kasner_pair(hermitian_conjugate(phi, s1), hermitian_conjugate(phi, s2), phi(0.0));
    CHECK(std::abs(K2 - K) < 1e-6 * std::max(1.0, std::abs(K)));
  }
}

TEST_CASE("specialized kasner: affine invariance and the pair consistency") {
  auto g = testutil::rng(89);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    SchwarzFn s = random_curve(g);
    cplx z = s.base_point();
    if (std::abs(curvature_s(s, z)) < 1e-4) continue;
    double K = kasner(s, z);
    // Straight lines stay straight under affine maps, so the specialized
    // formula is invariant there.
    MobiusMap phi{1.5 + testutil::random_unit_disk(g, 0.6), testutil::random_unit_disk(g), 0.0, 1.0};
    SchwarzFn moved = hermitian_conjugate(phi, s);
    double K2 = kasner(moved, phi(z));
    CHECK(std::abs(K2 - K) < 1e-6 * std::max(1.0, std::abs(K)));

    // And it agrees with the pair invariant against the tangent line.
    cplx sz = s.deriv(z, 1);
    double theta = -0.5 * std::arg(sz);
    cplx e = std::exp(cplx(0.0, -2.0 * theta));
    MobiusMap tangent_line{e, std::conj(z) - e * z, 0.0, 1.0};
    double Kp = kasner_pair(s, SchwarzFn(tangent_line, z), z);
    CHECK(std::abs(Kp - K) < 1e-8 * std::max(1.0, std::abs(K)));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("tangent vector criterion X^2/S_z < 0") {
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  std::vector<cplx> pts{cplx(-0.4), cplx(0.0), cplx(0.5)};

  // Purely imaginary variations of R are tangent.
  Jet x_imag = Jet::of_polynomial({cplx(0.0, 2.0), 0.0, cplx(0.0, 0.6)}, 0.0, 8);
  CHECK(is_tangent_vector(x_imag, axis, pts).is_tangent);

  // The constant 1 is not: X^2/S_z = 1 > 0.
  Jet x_one = Jet::constant(1.0, 0.0, 8);
  CHECK(!is_tangent_vector(x_one, axis, pts).is_tangent);

  // X = dS/dt of the elliptic pencil at t = pi/2: i(z^2-1)/z^2 on S = 1/z.
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  const double h = 1e-5;
  cplx z0 = std::exp(cplx(0.0, 0.9));
  Jet top = Jet::of_polynomial({cplx(0.0, -1.0), 0.0, cplx(0.0, 1.0)}, z0, 16);
  Jet bottom = Jet::of_polynomial({0.0, 0.0, 1.0}, z0, 16);
  Jet xjet = top / bottom;  // i(z^2 - 1)/z^2
  // Sanity: matches the finite difference of the closed-form pencil in t.
  cplx fd = (pencil_solution(1.0, 0.0, -1.0, 0.5 * std::numbers::pi + h)(z0) -
             pencil_solution(1.0, 0.0, -1.0, 0.5 * std::numbers::pi - h)(z0)) /
            (2.0 * h);
  REQUIRE(std::abs(xjet(z0) - fd) < 1e-8);
  CHECK(is_tangent_vector(xjet, circle, {z0}).is_tangent);
}
