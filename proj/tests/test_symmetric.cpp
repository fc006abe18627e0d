#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "schwarz/checks.hpp"
#include "schwarz/symmetric.hpp"

using namespace schwarz;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * double(i) / double(n - 1));
  return out;
}

SchwarzFn perturbed_axis(std::mt19937_64& g, double eps) {
  coeff_list gamma(17, cplx(0.0));
  gamma[1] = 1.0;
  gamma[0] = cplx(0.0, eps * testutil::uniform(g, -1.0, 1.0));
  for (int k = 1; k <= 3; ++k) gamma[std::size_t(k)] += cplx(0.0, eps * testutil::uniform(g, -1.0, 1.0));
  return schwarz_from_curve(Jet(0.0, std::move(gamma)));
}

}  // namespace

TEST_CASE("axiom suite on the jet model of nearby curves") {
  auto g = testutil::rng(103);
  std::vector<std::array<SchwarzFn, 3>> triples;
  for (int i = 0; i < 12; ++i)
    triples.push_back({perturbed_axis(g, 0.02), perturbed_axis(g, 0.02), perturbed_axis(g, 0.02)});
  AxiomReport rep = axiom_suite(triples);
  CHECK(rep.idempotent < 1e-6);
  CHECK(rep.involution < 1e-6);
  CHECK(rep.distributive < 1e-6);
}

TEST_CASE("orthogonal fixed points classification") {
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  SchwarzFn circle(MobiusMap{0.0, 1.0, 1.0, 0.0}, 1.0);
  FixedPointReport rep = orthogonal_fixed_points(axis, circle, 1.0);
  CHECK(rep.kind == FixedPointKind::orthogonal);
  CHECK(rep.derivative_sum < 1e-12);
  CHECK(rep.lorentz_dot < 1e-12);

  FixedPointReport eq = orthogonal_fixed_points(axis, axis, 0.3);
  CHECK(eq.kind == FixedPointKind::equal);

  // Circle |z - i| = 1 is not fixed by reflection across R.
  cplx center(0.0, 1.0);
  SchwarzForm cf{cplx(0.0, 1.0) * std::conj(center), 1.0, 1.0 - std::norm(center)};
  SchwarzFn q(cf.matrix(), center + 1.0);
  CHECK_THROWS_AS(orthogonal_fixed_points(axis, q, cplx(0.0)), error);
}

TEST_CASE("perpendicular lines are orthogonal fixed points") {
  SchwarzFn axis(MobiusMap::identity(), 0.0);
  SchwarzFn imag_axis(MobiusMap{-1.0, 0.0, 0.0, 1.0}, 0.0);  // S(z) = -z
  FixedPointReport rep = orthogonal_fixed_points(axis, imag_axis, 0.0);
  CHECK(rep.kind == FixedPointKind::orthogonal);
  CHECK(rep.derivative_sum < 1e-14);
}

TEST_CASE("power table of parallel lines") {
  MobiusMap o = MobiusMap::identity();
  MobiusMap p{1.0, cplx(0.0, -2.0), 0.0, 1.0};  // z - 2i
  PowerTable tab = power_table(o, p, -5, 6);
  for (int n = -5; n <= 6; ++n) {
    MobiusMap expect{1.0, cplx(0.0, -2.0 * n), 0.0, 1.0};
    CHECK(projective_distance(tab.at(n), expect) < 1e-13);
  }
  // p^2 . p^3 = p^1 (2*2 - 3).
  CHECK(projective_distance(mobius_product(tab.at(2), tab.at(3)), tab.at(1)) < 1e-13);
  PowerIdentityReport rep = power_identities(tab, 3);
  CHECK(rep.worst() < 1e-10);
}

TEST_CASE("power table with o = p is constant") {
  MobiusMap p{1.0, cplx(0.0, -2.0), 0.0, 1.0};
  PowerTable tab = power_table(p, p, -4, 4);
  for (int n = -4; n <= 4; ++n) CHECK(projective_distance(tab.at(n), p) < 1e-12);
}

TEST_CASE("pencil powers follow the one-parameter group") {
  MobiusMap o = MobiusMap::identity();
  MobiusMap p = pencil_solution(1.0, 0.0, -1.0, 0.2);
  PowerTable tab = power_table(o, p, -5, 6);
  for (int n = -5; n <= 6; ++n)
    CHECK(projective_distance(tab.at(n), pencil_solution(1.0, 0.0, -1.0, 0.2 * n)) < 1e-10);
  PowerIdentityReport rep = power_identities(tab, 3);
  CHECK(rep.worst() < 1e-10);
}

TEST_CASE("connection residual: geodesics vs a planted non-geodesic") {
  std::vector<cplx> seeds{cplx(0.3), cplx(-0.2, 0.15)};
  std::vector<double> ts = linspace(-0.1, 0.1, 201);

  // Rotating line, exact: residual at machine level.
  CHECK(connection_residual(pencil_flow(0.0, -2.0, 0.0, ts, seeds)) < 1e-10);
  // Elliptic pencil, exact.
  CHECK(connection_residual(pencil_flow(1.0, 0.0, -1.0, ts, seeds)) < 1e-10);

  // Numerically integrated geodesic.
  FlowOptions opt;
  opt.abs_tol = opt.rel_tol = 1e-12;
  VelocityField v = VelocityField::polynomial({-0.5, 0.0, 0.5});
  CHECK(connection_residual(integrate_reflection(v, seeds, ts, opt)) < 1e-5);

  // S(t, z) = z - 2i t^2 violates the geodesic equation: residual ~ 4.
  auto planted = [](double t, cplx center) {
    return Jet(center, coeff_list{center + cplx(0.0, -2.0) * t * t, cplx(1.0)});
  };
  FlowFamily bad = flow_from_jets(planted, [](cplx) { return cplx(0.0, -2.0); }, ts, seeds);
  CHECK(connection_residual(bad) > 1e-2);
}

namespace {

MobiusMap add(const MobiusMap& a, const MobiusMap& b) {
  return {a.a + b.a, a.b + b.b, a.c + b.c, a.d + b.d};
}

// Two-parameter Mobius variation S(r, t) = lambda(Phi_r)(pencil(t)) with
// Phi_r = exp(r Y), all derivative matrices exact.
struct TwoParamFamily {
  MobiusMap y{0.0, 1.0, 0.0, 0.0};  // generator of horizontal translations
  double a0 = 1.0, a1 = 0.0, a2 = -1.0;

  MobiusMap phi(double r) const { return MobiusMap{1.0, r, 0.0, 1.0}; }

  MobiusMap m(double r, double t) const {
    return hermitian_conjugate(phi(r), pencil_solution(a0, a1, a2, t));
  }
  MobiusMap m_t(double r, double t) const {
    MobiusMap x = PencilGenerator{a0, a1, a2}.matrix();
    MobiusMap inner = x * pencil_solution(a0, a1, a2, t);
    return phi(r).conjugated() * inner * phi(r).adjugate();
  }
  MobiusMap m_r(double r, double t) const {
    // d/dr [conj(Phi) M adj(Phi)] with Phi' = Y Phi (Y real).
    MobiusMap mt = m(r, t);
    return add(y * mt, mt * MobiusMap{y.d, -y.b, -y.c, y.a});
  }
  MobiusMap m_rt(double r, double t) const {
    MobiusMap mt = m_t(r, t);
    return add(y * mt, mt * MobiusMap{y.d, -y.b, -y.c, y.a});
  }
};

// Jet of the scalar derivative (d/du) S(z) = N_u(z)/q(z)^2 at fixed (r, t),
// from the matrix pair (M, M_u).
Jet derivative_jet(const MobiusMap& m, const MobiusMap& mu, cplx center, int order) {
  coeff_list nu = poly::add(poly::mul({mu.b, mu.a}, {m.d, m.c}),
                            poly::scale(poly::mul({m.b, m.a}, {mu.d, mu.c}), -1.0));
  coeff_list q2 = poly::mul({m.d, m.c}, {m.d, m.c});
  return Jet::of_polynomial(nu, center, order) / Jet::of_polynomial(q2, center, order);
}

// Jet of S_rt from (M, M_r, M_t, M_rt): S_rt = (d_r N_t q - 2 N_t q_r)/q^3.
Jet mixed_jet(const MobiusMap& m, const MobiusMap& mr, const MobiusMap& mt, const MobiusMap& mrt,
              cplx center, int order) {
  coeff_list q{m.d, m.c}, qr{mr.d, mr.c}, qt{mt.d, mt.c};
  coeff_list nt = poly::add(poly::mul({mt.b, mt.a}, q), poly::scale(poly::mul({m.b, m.a}, qt), -1.0));
  coeff_list drnt = poly::add(
      poly::add(poly::mul({mrt.b, mrt.a}, q), poly::mul({mt.b, mt.a}, qr)),
      poly::scale(poly::add(poly::mul({mr.b, mr.a}, qt), poly::mul({m.b, m.a}, {mrt.d, mrt.c})), -1.0));
  coeff_list num = poly::add(poly::mul(drnt, q), poly::scale(poly::mul(nt, qr), -2.0));
  coeff_list den = poly::mul(poly::mul(q, q), q);
  return Jet::of_polynomial(num, center, order) / Jet::of_polynomial(den, center, order);
}

}  // namespace

TEST_CASE("nabla_{S_r} S_t is a tangent vector") {
  TwoParamFamily fam;
  double r0 = 0.2, t0 = 0.3;
  MobiusMap m = fam.m(r0, t0);
  CircleGeometry geom = circle_geometry(m);
  cplx base = geom.is_line ? geom.point : geom.center + geom.radius;
  SchwarzFn s(m, base);

  int order = 14;
  Jet s_jet = mobius_to_jet(m, base, order);
  Jet sr = derivative_jet(m, fam.m_r(r0, t0), base, order);
  Jet st = derivative_jet(m, fam.m_t(r0, t0), base, order);
  Jet srt = mixed_jet(m, fam.m_r(r0, t0), fam.m_t(r0, t0), fam.m_rt(r0, t0), base, order);
  Jet sz = s_jet.derivative();
  Jet x = srt - (sr.derivative() * st + st.derivative() * sr) / (2.0 * sz);

  // Sanity against the finite-difference library path.
  auto jets = [&](double r, double t) { return mobius_to_jet(fam.m(r, t), base, order); };
  CrossConnection cc = cross_connection(jets, r0, t0, base + cplx(0.02, 0.01));
  CHECK(std::abs(cc.value - x(base + cplx(0.02, 0.01))) < 1e-5 * std::max(1.0, std::abs(cc.value)));

  // Tangency at recovered curve points.
  std::vector<cplx> seeds;
  for (int k = -2; k <= 2; ++k) seeds.push_back(base + 0.05 * k);
  CurveRecovery rec = curve_from_schwarz(s, seeds);
  REQUIRE(rec.curve.points.size() >= 3);
  std::vector<cplx> pts;
  for (cplx p : rec.curve.points)
    if (std::abs(p - base) < 0.5) pts.push_back(p);
  REQUIRE(pts.size() >= 3);
  TangentReport rep = is_tangent_vector(x, s, pts);
  CHECK(rep.is_tangent);
  CHECK(rep.worst_im_rel < 1e-9);
}

TEST_CASE("equivalence: connection residual vs Im Q on a canonical family") {
  // Canonical parametrization of the integrated elliptic flow: both the
  // connection residual and Im Q vanish within tolerance, measured
  // independently (FD in t for nabla, exact partials for Q).
  VelocityField v = VelocityField::polynomial({-0.5, 0.0, 0.5});
  FlowOptions opt;
  opt.abs_tol = opt.rel_tol = 1e-12;
  double t0 = 0.4, x0 = 0.3;
  // gamma(t0, x0) = S(-t0/2, x0).
  FlowFamily to_point = integrate_reflection(v, {cplx(x0)}, {-0.5 * t0}, opt);
  cplx z_star = to_point.s[0][0].value();

  std::vector<double> stencil = linspace(t0 - 2e-2, t0 + 2e-2, 5);
  FlowFamily fam = integrate_reflection(v, {z_star}, stencil, opt);
  double h = stencil[1] - stencil[0];
  auto val = [&](int i) { return fam.s[std::size_t(i)][0](z_star); };
  auto dz = [&](int i) { return fam.s[std::size_t(i)][0].derivative()(z_star); };
  cplx s_t = (-val(4) + 8.0 * val(3) - 8.0 * val(1) + val(0)) / (12.0 * h);
  cplx s_tt = (-val(4) + 16.0 * val(3) - 30.0 * val(2) + 16.0 * val(1) - val(0)) / (12.0 * h * h);
  cplx s_tz = (-dz(4) + 8.0 * dz(3) - 8.0 * dz(1) + dz(0)) / (12.0 * h);
  cplx nabla = s_tt - s_t * s_tz / dz(2);

  // Exact w-sample of the canonical parametrization at (t0, x0).
  FlowFamily gfam = integrate_reflection(v, {cplx(x0)}, {-0.5 * t0}, opt);
  const Jet& gj = gfam.s[0][0];
  WSample w;
  w.w = gj.value();
  w.wx = gj.coeff(1);
  w.wxx = 2.0 * gj.coeff(2);
  cplx vw = v(w.w), vpw = v.deriv(w.w, 1);
  w.wt = cplx(0.0, 1.0) * vw;
  w.wtt = -vpw * vw;
  w.wxt = cplx(0.0, 1.0) * vpw * w.wx;
  double im_q = q_operator(w).imag();

  cplx lhs = w.wx * w.wx * std::conj(w.wx) * nabla;
  CHECK(std::abs(lhs + cplx(0.0, 2.0 * im_q)) < 1e-6);
  CHECK(std::abs(nabla) < 1e-5);
  CHECK(std::abs(im_q) < 1e-9);
}
