#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "schwarz/gallery.hpp"
#include "schwarz/symmetric.hpp"

namespace schwarz {

struct CheckLine {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool ok() const {
    for (const auto& l : lines)
      if (!l.pass()) return false;
    return true;
  }
  void add(const std::string& name, double residual, double tol) { lines.push_back({name, residual, tol}); }
};

namespace checkdetail {

// Deterministic random circles: <x,x> = 1 points of the hyperboloid.
inline CircleCoord random_circle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    CircleCoord c{{u(rng), u(rng), u(rng), 0.7 * u(rng)}};
    double q = minkowski_dot(c, c);
    if (q > 0.05) return normalized(c);
  }
}

inline std::vector<std::array<CircleCoord, 3>> random_circle_triples(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<CircleCoord, 3>> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i)
    out.push_back({random_circle(rng), random_circle(rng), random_circle(rng)});
  return out;
}

inline std::vector<std::array<MobiusMap, 3>> random_mobius_triples(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<MobiusMap, 3>> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    auto m = [&] { return from_lorentz(random_circle(rng)); };
    out.push_back({m(), m(), m()});
  }
  return out;
}

// Nearby analytic perturbations of the real axis: gamma(x) = x + i e p(x).
inline SchwarzFn perturbed_line(std::mt19937_64& rng, double eps, int order = 16) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  coeff_list gamma(std::size_t(order) + 1, cplx(0.0));
  gamma[1] = 1.0;
  gamma[0] = cplx(0.0, eps * u(rng));
  for (int k = 1; k <= 3; ++k) gamma[std::size_t(k)] += cplx(0.0, eps * u(rng));
  return schwarz_from_curve(Jet(0.0, std::move(gamma)));
}

}  // namespace checkdetail

inline CheckReport check_axioms(int mobius_count = 1000, int jet_count = 12, unsigned seed = 2024) {
  CheckReport rep;
  AxiomReport quad = axiom_suite(checkdetail::random_circle_triples(mobius_count, seed));
  rep.add("quadric idempotent", quad.idempotent, 1e-12);
  rep.add("quadric involution", quad.involution, 1e-12);
  rep.add("quadric distributive", quad.distributive, 1e-12);
  AxiomReport mob = axiom_suite(checkdetail::random_mobius_triples(mobius_count, seed + 1));
  rep.add("mobius idempotent", mob.idempotent, 1e-10);
  rep.add("mobius involution", mob.involution, 1e-10);
  rep.add("mobius distributive", mob.distributive, 1e-10);
  std::mt19937_64 rng(seed + 2);
  std::vector<std::array<SchwarzFn, 3>> jets;
  for (int i = 0; i < jet_count; ++i)
    jets.push_back({checkdetail::perturbed_line(rng, 0.02), checkdetail::perturbed_line(rng, 0.02),
                    checkdetail::perturbed_line(rng, 0.02)});
  AxiomReport jr = axiom_suite(jets);
  rep.add("jet idempotent", jr.idempotent, 1e-6);
  rep.add("jet involution", jr.involution, 1e-6);
  rep.add("jet distributive", jr.distributive, 1e-6);
  return rep;
}

inline CheckReport check_pde(const std::string& pencil_case) {
  double a0 = 1.0, a2 = 1.0;
  if (pencil_case == "elliptic")
    a2 = -1.0;
  else if (pencil_case == "parabolic")
    a0 = 0.0;
  else if (pencil_case != "hyperbolic")
    raise(errc::validation, "unknown pencil case: " + pencil_case);

  CheckReport rep;
  std::vector<double> t_grid;
  for (int i = 0; i <= 40; ++i) t_grid.push_back(-1.0 + 0.05 * i);
  std::vector<cplx> seeds{cplx(0.3, 0.0), cplx(-0.6, 0.0), cplx(0.1, 0.2)};
  FlowFamily exact = pencil_flow(a0, 0.0, a2, t_grid, seeds);
  PdeResiduals er = pde_residuals(exact);
  rep.add("closed-form first-order", er.first_order, 1e-9);
  rep.add("closed-form second-order", er.second_order, 1e-9);

  std::vector<double> fine;
  for (int i = -200; i <= 200; ++i) fine.push_back(1e-3 * i);
  FlowOptions opt;
  opt.abs_tol = opt.rel_tol = 1e-12;
  coeff_list vc{-0.5 * a0, 0.0, -0.5 * a2};  // v = -(a2 z^2 + a0)/2
  FlowFamily numeric = integrate_reflection(VelocityField::polynomial(vc), seeds, fine, opt);
  PdeResiduals nr = pde_residuals(numeric);
  rep.add("integrated first-order", nr.first_order, 1e-4);
  rep.add("integrated second-order", nr.second_order, 1e-4);
  rep.add("trace ODE residual", trace_ode_residual(a0, 0.0, a2, fine), 1e-5);
  return rep;
}

inline CheckReport check_index(const PolyRat& h, const std::vector<double>& radii) {
  CheckReport rep;
  for (double r : radii) {
    RotationIndex ri = rotation_index(h, r);  // raises WindingMismatch on disagreement
    std::ostringstream name;
    name << "index r=" << r << " -> I=" << ri.index << " (Z=" << ri.zeros << ", P=" << ri.poles << ")";
    rep.add(name.str(), 0.0, 1.0);
  }
  return rep;
}

inline CheckReport check_powers() {
  CheckReport rep;
  MobiusMap o = MobiusMap::identity();
  MobiusMap line = schwarz_of_mobius(MobiusMap::translation(cplx(0.0, 1.0)));  // z - 2i
  PowerIdentityReport lr = power_identities(power_table(o, line, -6, 7), 3);
  rep.add("line powers", lr.worst(), 1e-10);
  MobiusMap p = pencil_solution(1.0, 0.0, -1.0, 0.2);
  PowerIdentityReport pr = power_identities(power_table(o, p, -6, 7), 3);
  rep.add("pencil powers", pr.worst(), 1e-10);
  double group = 0.0;
  PowerTable tab = power_table(o, p, -6, 7);
  for (int n = -6; n <= 7; ++n)
    group = std::max(group, projective_distance(tab.at(n), pencil_solution(1.0, 0.0, -1.0, 0.2 * n)));
  rep.add("pencil powers vs closed form", group, 1e-10);
  return rep;
}

inline CheckReport check_geodesic() {
  CheckReport rep;
  for (const char* id : {"cusp-quadratic", "cusp-quartic", "celtic-cross", "turtle",
                         "bicycle-race", "confocal"}) {
    std::string name(id);
    HoloFamily fam{gallery_map(name), 1.0, FamilyForm::circle, 512};
    std::vector<double> cuts = exceptional_times(fam);
    double t_lo = cuts.empty() ? -0.5 : cuts.front() - 0.4;
    double t_hi = cuts.empty() ? 0.5 : cuts.back() + 0.4;
    double worst = 0.0;
    for (double t : {t_lo, 0.5 * (t_lo + t_hi), t_hi}) {
      bool near_cut = false;
      for (double c : cuts)
        if (std::abs(t - c) < 0.05) near_cut = true;
      if (near_cut) continue;
      worst = std::max(worst, q_residual(fam, t, uniform_thetas(512)).relative());
    }
    rep.add("Im Q[w] relative, " + name, worst, 1e-9);
  }
  return rep;
}

inline CheckReport check_connection() {
  CheckReport rep;
  std::vector<double> t_grid;
  for (int i = 0; i <= 200; ++i) t_grid.push_back(-0.1 + 1e-3 * i);
  std::vector<cplx> seeds{cplx(0.25, 0.0), cplx(-0.4, 0.1)};
  rep.add("pencil geodesic", connection_residual(pencil_flow(1.0, 0.0, -1.0, t_grid, seeds)), 1e-10);

  FlowOptions opt;
  opt.abs_tol = opt.rel_tol = 1e-12;
  FlowFamily numeric =
      integrate_reflection(VelocityField::polynomial({0.5, 0.0, -0.5}), seeds, t_grid, opt);
  rep.add("integrated geodesic", connection_residual(numeric), 1e-5);

  auto planted = [](double t, cplx center) {
    coeff_list c{center + cplx(0.0, -2.0) * t * t, cplx(1.0)};
    return Jet(center, std::move(c));
  };
  FlowFamily bad = flow_from_jets(planted, [](cplx) { return cplx(0.0, -2.0); }, t_grid, seeds);
  double resid = connection_residual(bad);
  rep.add("planted non-geodesic detected", resid > 1e-2 ? 0.0 : 1.0, 0.5);
  return rep;
}

inline CheckReport run_check_suite(const std::string& suite) {
  if (suite == "axioms") return check_axioms();
  if (suite == "pde-hyperbolic" || suite == "pde") return check_pde("hyperbolic");
  if (suite == "pde-elliptic") return check_pde("elliptic");
  if (suite == "pde-parabolic") return check_pde("parabolic");
  if (suite == "powers") return check_powers();
  if (suite == "geodesic") return check_geodesic();
  if (suite == "connection") return check_connection();
  if (suite == "index") {
    CheckReport rep;
    for (const char* id : {"cusp-quadratic", "celtic-cross", "turtle", "bicycle-race"}) {
      std::string name(id);
      PolyRat h = gallery_map(name);
      HoloFamily fam{h, 1.0, FamilyForm::circle, 512};
      std::vector<double> cuts = exceptional_times(fam);
      std::vector<double> radii;
      double lo = cuts.front() - 0.35, hi = cuts.back() + 0.35;
      radii.push_back(std::exp(lo));
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) radii.push_back(std::exp(0.5 * (cuts[k] + cuts[k + 1])));
      radii.push_back(std::exp(hi));
      CheckReport sub = check_index(h, radii);
      for (auto& l : sub.lines) rep.add(name + " " + l.name, l.residual, l.tolerance);
    }
    return rep;
  }
  raise(errc::validation, "unknown check suite: " + suite);
}

inline std::vector<std::string> check_suite_names() {
  return {"axioms", "pde-hyperbolic", "pde-elliptic", "pde-parabolic", "powers", "geodesic",
          "connection", "index"};
}

}  // namespace schwarz
