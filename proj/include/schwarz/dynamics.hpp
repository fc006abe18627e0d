#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "schwarz/curve.hpp"
#include "schwarz/ode.hpp"
#include "schwarz/pencil.hpp"
#include "schwarz/velocity.hpp"

namespace schwarz {

inline constexpr double kProductProxyRadius = 0.25;
inline constexpr double kProductProxyTol = 1e-6;

inline double chordal_distance(cplx a, cplx b) {
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

// Jet of S about an arbitrary nearby center (exact for Mobius reps).
inline Jet jet_about(const SchwarzFn& s, cplx center, int order = kDefaultJetOrder) {
  if (s.is_mobius()) return mobius_to_jet(s.mobius(), center, order);
  return s.jet().recentered(center, /*enforce_radius=*/true).truncated(order);
}

// Symmetric-space product S.T = S o sigma(T) o S: the Schwarz function of
// the reflection of Gamma_T in Gamma_S. Exact on Mobius pairs, composed
// jets otherwise.
inline SchwarzFn schwarz_product(const SchwarzFn& s, const SchwarzFn& t) {
  cplx new_base = std::conj(s(t.base_point()));
  if (s.is_mobius() && t.is_mobius())
    return SchwarzFn(mobius_product(s.mobius(), t.mobius()), new_base);

  int order = kDefaultJetOrder;
  if (!s.is_mobius()) order = std::min(order, s.jet().order());
  if (!t.is_mobius()) order = std::min(order, t.jet().order());

  Jet inner = jet_about(s, new_base, order);
  SchwarzFn sigma_t = t.conjugated();
  Jet mid = jet_about(sigma_t, inner.value(), order);
  Jet comp = jet_compose(mid, inner);
  Jet outer = jet_about(s, comp.value(), order);
  Jet result = jet_compose(outer, comp);
  if (result.tail_proxy(kProductProxyRadius) > kProductProxyTol)
    raise(errc::domain_exhausted, "product jet tail proxy exceeded 1e-6");
  return SchwarzFn(result);
}

// Davis iterates S_{k+2} = S_{k+1} o sigma(S_k) o S_{k+1}; negative
// indices from the axiom-(2) inversion S_{k-1} = S_k . S_{k+1}.
struct DavisFamily {
  int first_index = 0;
  std::vector<SchwarzFn> fns;

  const SchwarzFn& at(int k) const {
    int i = k - first_index;
    if (i < 0 || std::size_t(i) >= fns.size()) raise(errc::validation, "index outside produced range");
    return fns[std::size_t(i)];
  }
  int last_index() const { return first_index + int(fns.size()) - 1; }
};

inline DavisFamily davis_iterate(const SchwarzFn& s0, const SchwarzFn& s1, int n) {
  DavisFamily fam;
  fam.first_index = std::min(n, 0);
  std::vector<SchwarzFn> up{s0, s1};
  for (int k = 2; k <= n; ++k) up.push_back(schwarz_product(up[std::size_t(k - 1)], up[std::size_t(k - 2)]));
  std::vector<SchwarzFn> down;
  if (n < 0) {
    SchwarzFn a = s0, b = s1;  // S_k, S_{k+1}
    for (int k = -1; k >= n; --k) {
      SchwarzFn prev = schwarz_product(a, b);
      down.push_back(prev);
      b = a;
      a = prev;
    }
  }
  for (auto it = down.rbegin(); it != down.rend(); ++it) fam.fns.push_back(*it);
  for (auto& f : up) fam.fns.push_back(f);
  return fam;
}

// Residual of the identity S_{j+k} = S_j o sigma(S_0) o S_k at sample
// points near the base of S_k (chordal metric).
inline double check_sjk(const DavisFamily& fam, int j, int k,
                        const std::vector<cplx>& offsets = {cplx(0.0), cplx(0.05), cplx(-0.05),
                                                            cplx(0.0, 0.05), cplx(0.0, -0.05)}) {
  const SchwarzFn& sj = fam.at(j);
  const SchwarzFn& sk = fam.at(k);
  const SchwarzFn& sjk = fam.at(j + k);
  SchwarzFn sigma0 = fam.at(0).conjugated();
  double worst = 0.0;
  for (cplx off : offsets) {
    cplx z = sk.base_point() + off;
    cplx lhs = sjk(z);
    cplx rhs = sj(sigma0(sk(z)));
    worst = std::max(worst, chordal_distance(lhs, rhs));
  }
  return worst;
}

// One-parameter family of curves: S(t_i, .) expanded about each seed, and
// the canonical parametrization gamma(t, x) = S(-t/2, x) about each x-grid
// point. Exact (Mobius pencil) families carry their generator.
struct FlowFamily {
  bool exact = false;
  std::optional<PencilGenerator> generator;
  std::function<cplx(cplx)> g;  // g(z) = -2 i v(z)
  std::optional<VelocityField> field;
  std::vector<double> t_grid;
  std::vector<cplx> seeds;
  std::vector<std::vector<Jet>> s;      // s[i][j]: about seeds[j]
  std::vector<double> x_grid;
  std::vector<std::vector<Jet>> gamma;  // gamma[i][k]: about x_grid[k]
};

struct FlowOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int jet_order = 8;
  std::vector<double> x_grid;  // canonical-parametrization grid (optional)
  bool singularity_monitor = true;
};

namespace detail {

struct SeedPlan {
  bool linearized = false;
  cplx zero;       // the nearby simple zero
  cplx rate;       // v'(zero)
  bool stationary = false;
};

inline SeedPlan plan_seed(const VelocityField& v, cplx seed) {
  SeedPlan plan;
  double best = std::numeric_limits<double>::infinity();
  Root near{cplx(0.0), 0};
  for (const auto& r : v.zeros()) {
    double d = std::abs(seed - r.location);
    if (d < best) {
      best = d;
      near = r;
    }
  }
  if (best == std::numeric_limits<double>::infinity()) return plan;
  plan.stationary = best <= 1e-8;
  if (best < 1e-3 && near.multiplicity == 1) {
    plan.linearized = true;
    plan.zero = near.location;
    plan.rate = v.deriv(near.location, 1);
  }
  return plan;
}

inline Jet linearized_jet(const SeedPlan& plan, cplx seed, double t, int order) {
  cplx e = std::exp(cplx(0.0, -2.0) * plan.rate * t);
  coeff_list c(std::size_t(order) + 1, cplx(0.0));
  c[0] = plan.zero + e * (seed - plan.zero);
  if (order >= 1) c[1] = e;
  return Jet(seed, std::move(c));
}

// Integrate the jet-coefficient ODE d(coeffs)/dt = -2i v(S) for one seed.
inline std::vector<Jet> flow_one_seed(const VelocityField& v, cplx seed, const std::vector<double>& t_out,
                                      const FlowOptions& opt) {
  SeedPlan plan = plan_seed(v, seed);
  std::vector<Jet> out;
  out.reserve(t_out.size());
  if (plan.linearized) {
    for (double t : t_out) out.push_back(linearized_jet(plan, seed, t, opt.jet_order));
    return out;
  }
  const int n = opt.jet_order;
  std::vector<cplx> y0(std::size_t(n) + 1, cplx(0.0));
  y0[0] = seed;
  if (n >= 1) y0[1] = 1.0;
  auto rhs = [&](double, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    Jet s(seed, y);
    Jet w = v.eval_on_jet(s);
    for (int k = 0; k <= n; ++k) dy[std::size_t(k)] = cplx(0.0, -2.0) * w.coeff(k);
  };
  auto observe = [&](double, const std::vector<cplx>& y) {
    if (opt.singularity_monitor && !plan.stationary && v.distance_to_zero(y[0]) < 1e-6)
      raise(errc::singularity_hit, "trajectory approached a zero of v within 1e-6");
    out.push_back(Jet(seed, y));
  };
  OdeOptions ode;
  ode.abs_tol = opt.abs_tol;
  ode.rel_tol = opt.rel_tol;
  integrate_rk45(rhs, y0, 0.0, t_out, observe, ode);
  return out;
}

}  // namespace detail

// Numeric continuous-reflection family: dS/dt = -2 i v(S), S(0, z) = z,
// per seed, plus the canonical parametrization gamma(t, x) = S(-t/2, x).
inline FlowFamily integrate_reflection(const VelocityField& v, const std::vector<cplx>& seeds,
                                       const std::vector<double>& t_grid, const FlowOptions& opt = {}) {
  FlowFamily fam;
  fam.exact = false;
  fam.field = v;
  fam.g = [v](cplx z) { return cplx(0.0, -2.0) * v(z); };
  fam.t_grid = t_grid;
  fam.seeds = seeds;
  fam.x_grid = opt.x_grid;

  fam.s.assign(t_grid.size(), {});
  for (auto& row : fam.s) row.reserve(seeds.size());
  for (cplx seed : seeds) {
    auto traj = detail::flow_one_seed(v, seed, t_grid, opt);
    for (std::size_t i = 0; i < t_grid.size(); ++i) fam.s[i].push_back(traj[i]);
  }
  if (!opt.x_grid.empty()) {
    std::vector<double> half(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) half[i] = -0.5 * t_grid[i];
    fam.gamma.assign(t_grid.size(), {});
    for (double x : opt.x_grid) {
      auto traj = detail::flow_one_seed(v, cplx(x), half, opt);
      for (std::size_t i = 0; i < t_grid.size(); ++i) fam.gamma[i].push_back(traj[i]);
    }
  }
  return fam;
}

// Exact Mobius family from the closed-form pencil solution.
inline FlowFamily pencil_flow(double a0, double a1, double a2, const std::vector<double>& t_grid,
                              const std::vector<cplx>& seeds, const std::vector<double>& x_grid = {},
                              int jet_order = 8) {
  FlowFamily fam;
  fam.exact = true;
  fam.generator = PencilGenerator{a0, a1, a2};
  fam.g = [a0, a1, a2](cplx z) { return cplx(0.0, 1.0) * (a2 * z * z + a1 * z + a0); };
  fam.t_grid = t_grid;
  fam.seeds = seeds;
  fam.x_grid = x_grid;
  fam.s.assign(t_grid.size(), {});
  fam.gamma.assign(t_grid.size(), {});
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    MobiusMap m = pencil_solution(a0, a1, a2, t_grid[i]);
    for (cplx seed : seeds) fam.s[i].push_back(mobius_to_jet(m, seed, jet_order));
    MobiusMap mg = pencil_solution(a0, a1, a2, -0.5 * t_grid[i]);
    for (double x : x_grid) fam.gamma[i].push_back(mobius_to_jet(mg, cplx(x), jet_order));
  }
  return fam;
}

// Arbitrary closed-form family supplied as jets (numeric-path diagnostics).
inline FlowFamily flow_from_jets(const std::function<Jet(double, cplx)>& sjet,
                                 const std::function<cplx(cplx)>& g, const std::vector<double>& t_grid,
                                 const std::vector<cplx>& seeds) {
  FlowFamily fam;
  fam.exact = false;
  fam.g = g;
  fam.t_grid = t_grid;
  fam.seeds = seeds;
  fam.s.assign(t_grid.size(), {});
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    for (cplx seed : seeds) fam.s[i].push_back(sjet(t_grid[i], seed));
  return fam;
}

struct PdeResiduals {
  double first_order = 0.0;   // max |S_t - g(z) S_z|
  double second_order = 0.0;  // max |S_tt S_z - S_t S_tz|
};

namespace detail {

inline void require_uniform(const std::vector<double>& t, std::size_t min_points) {
  if (t.size() < min_points) raise(errc::grid_too_coarse, "need a denser t-grid");
  double h = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < t.size(); ++i)
    if (std::abs((t[i + 1] - t[i]) - h) > 1e-12 * std::max(1.0, std::abs(h)))
      raise(errc::grid_too_coarse, "t-grid must be uniform");
}

struct ExactDerivs {
  cplx S, St, Stt, Sz, Stz;
};

// Closed-form t-derivatives of a pencil family via M' = X M.
inline ExactDerivs pencil_derivs(const PencilGenerator& gen, double t, cplx z) {
  MobiusMap m = pencil_solution(gen.a0, gen.a1, gen.a2, t);
  MobiusMap x = gen.matrix();
  MobiusMap md = x * m;
  MobiusMap mdd = x * md;
  cplx q = m.c * z + m.d;
  cplx qd = md.c * z + md.d;
  cplx n = (md.a * z + md.b) * q - (m.a * z + m.b) * qd;
  cplx ndd = (mdd.a * z + mdd.b) * q - (m.a * z + m.b) * (mdd.c * z + mdd.d);
  ExactDerivs d;
  d.S = m(z);
  d.St = n / (q * q);
  d.Stt = (ndd * q - 2.0 * n * qd) / (q * q * q);
  d.Sz = 1.0 / (q * q);  // det(M(t)) = 1
  d.Stz = -2.0 * qd / (q * q * q);
  return d;
}

}  // namespace detail

// Residuals of the first-order PDE S_t = g(z) S_z and the second-order
// evolution S_tt S_z = S_t S_tz. Exact families differentiate the closed
// form; numeric families use central differences on the t-grid.
inline PdeResiduals pde_residuals(const FlowFamily& fam) {
  PdeResiduals out;
  if (fam.exact && fam.generator) {
    for (double t : fam.t_grid)
      for (cplx z : fam.seeds) {
        auto d = detail::pencil_derivs(*fam.generator, t, z);
        out.first_order = std::max(out.first_order, std::abs(d.St - fam.g(z) * d.Sz));
        out.second_order = std::max(out.second_order, std::abs(d.Stt * d.Sz - d.St * d.Stz));
      }
    return out;
  }
  detail::require_uniform(fam.t_grid, 3);
  double h = fam.t_grid[1] - fam.t_grid[0];
  for (std::size_t i = 1; i + 1 < fam.t_grid.size(); ++i) {
    for (std::size_t j = 0; j < fam.seeds.size(); ++j) {
      cplx z = fam.seeds[j];
      cplx sm = fam.s[i - 1][j].value(), s0 = fam.s[i][j].value(), sp = fam.s[i + 1][j].value();
      cplx st = (sp - sm) / (2.0 * h);
      cplx stt = (sp - 2.0 * s0 + sm) / (h * h);
      cplx sz = fam.s[i][j].coeff(1);
      cplx stz = (fam.s[i + 1][j].coeff(1) - fam.s[i - 1][j].coeff(1)) / (2.0 * h);
      out.first_order = std::max(out.first_order, std::abs(st - fam.g(z) * sz));
      out.second_order = std::max(out.second_order, std::abs(stt * sz - st * stz));
    }
  }
  return out;
}

struct MeasuredRates {
  std::optional<double> theta_rate;
  std::optional<double> kasner_rate;
  double max_deviation = 0.0;  // worst distance of samples from the linear fit
};

namespace detail {

inline void fit_line(const std::vector<double>& t, const std::vector<double>& y, double& slope,
                     double& max_dev) {
  double n = double(t.size()), st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  double det = n * stt - st * st;
  slope = (n * sty - st * sy) / det;
  double intercept = (sy * stt - st * sty) / det;
  max_dev = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    max_dev = std::max(max_dev, std::abs(y[i] - (intercept + slope * t[i])));
}

}  // namespace detail

// Empirical stationary-point rates from an integrated family with a seed
// at x0: d(theta)/dt from the clinant, dK/dt from the jet diagnostics.
inline MeasuredRates rate_measurement(const FlowFamily& fam, const StationaryPoint& sp) {
  std::size_t j = fam.seeds.size();
  for (std::size_t k = 0; k < fam.seeds.size(); ++k)
    if (std::abs(fam.seeds[k] - cplx(sp.x0)) < 1e-9) j = k;
  if (j == fam.seeds.size())
    raise(errc::insufficient_resolution, "family has no seed at the stationary point");
  if (fam.t_grid.size() < 4) raise(errc::insufficient_resolution, "too few time samples");

  MeasuredRates out;
  if (sp.multiplicity == 1) {
    std::vector<double> theta(fam.t_grid.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < fam.t_grid.size(); ++i) {
      double th = -0.5 * std::arg(fam.s[i][j].coeff(1));
      if (i > 0) {  // unwrap against the previous sample
        while (th - prev > 0.5 * std::numbers::pi) th -= std::numbers::pi;
        while (th - prev < -0.5 * std::numbers::pi) th += std::numbers::pi;
      }
      theta[i] = th;
      prev = th;
    }
    double slope, dev;
    detail::fit_line(fam.t_grid, theta, slope, dev);
    out.theta_rate = slope;
    out.max_deviation = dev;
    return out;
  }

  if (fam.s[0][j].order() < 5)
    raise(errc::insufficient_resolution, "kasner rate needs jet order >= 5");
  std::vector<double> kas(fam.t_grid.size());
  for (std::size_t i = 0; i < fam.t_grid.size(); ++i) {
    const Jet& s = fam.s[i][j];
    cplx sz = s.coeff(1);
    cplx szz = 2.0 * s.coeff(2);
    cplx sch = schwarzian(s).value();
    cplx kv = cplx(0.0, 0.5) * szz * szz / (sz * sz * sch);
    kas[i] = kv.real();
  }
  double slope, dev;
  detail::fit_line(fam.t_grid, kas, slope, dev);
  out.kasner_rate = slope;
  out.max_deviation = dev;
  return out;
}

// Normal-motion residual of the canonical parametrization:
// max |<gamma_t, gamma_x>| / (|gamma_t| |gamma_x|).
inline double normal_motion_residual_flow(const FlowFamily& fam) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fam.gamma.size(); ++i)
    for (const Jet& gj : fam.gamma[i]) {
      cplx w = gj.value();
      cplx wt = -0.5 * fam.g(w);
      cplx wx = gj.coeff(1);
      double mag = std::abs(wt) * std::abs(wx);
      if (mag < 1e-14) continue;
      worst = std::max(worst, std::abs((wt * std::conj(wx)).real()) / mag);
    }
  return worst;
}

// Residual of dS/dz = v(S)/v(z) by finite differences across neighbouring seeds.
inline double z_ode_residual(const FlowFamily& fam) {
  if (!fam.field) raise(errc::validation, "family carries no velocity field");
  if (fam.seeds.size() < 3) raise(errc::grid_too_coarse, "need at least 3 seeds");
  const VelocityField& v = *fam.field;
  double worst = 0.0;
  for (std::size_t i = 0; i < fam.t_grid.size(); ++i)
    for (std::size_t j = 1; j + 1 < fam.seeds.size(); ++j) {
      cplx dz = fam.seeds[j + 1] - fam.seeds[j - 1];
      cplx fd = (fam.s[i][j + 1].value() - fam.s[i][j - 1].value()) / dz;
      cplx predicted = v(fam.s[i][j].value()) / v(fam.seeds[j]);
      worst = std::max(worst, std::abs(fd - predicted));
    }
  return worst;
}

// Equipotential through z0: ds z = -v(z)/|v(z)| (unit-speed tangent to
// i W = -v d_z). Reports the drift of Re[int dz / (i v)] along the trace.
struct Equipotential {
  std::vector<double> s;
  std::vector<cplx> points;
  double potential_drift = 0.0;
};

inline Equipotential trace_equipotential(const VelocityField& v, cplx z0, double arclength,
                                         int samples = 200, const OdeOptions& ode = {}) {
  if (std::abs(v(z0)) < 1e-12) raise(errc::zero_field, "v(z0) = 0");
  Equipotential out;
  auto rhs = [&](double, const std::vector<cplx>& y, std::vector<cplx>& dy) {
    cplx w = v(y[0]);
    double m = std::abs(w);
    if (m < 1e-9) raise(errc::singularity_hit, "equipotential ran into a zero of v");
    dy[0] = -w / m;
  };
  std::vector<double> s_out(std::size_t(samples) + 1);
  for (int k = 0; k <= samples; ++k) s_out[std::size_t(k)] = arclength * double(k) / double(samples);
  auto observe = [&](double s, const std::vector<cplx>& y) {
    if (v.distance_to_zero(y[0]) < 1e-6) raise(errc::singularity_hit, "approached a zero of v");
    out.s.push_back(s);
    out.points.push_back(y[0]);
  };
  integrate_rk45(rhs, {z0}, 0.0, s_out, observe, ode);

  cplx phi = 0.0;
  double worst = 0.0;
  auto integrand = [&](cplx z) { return 1.0 / (cplx(0.0, 1.0) * v(z)); };
  for (std::size_t k = 1; k < out.points.size(); ++k) {
    phi += integrate_segment(integrand, out.points[k - 1], out.points[k]);
    worst = std::max(worst, std::abs(phi.real()));
  }
  out.potential_drift = worst;
  return out;
}

// W = i v(z) d_z (moving-curve velocity) and the ideal flow Y dual to
// omega = dz/(i v) under the metric lambda^2 |dz|^2: same directions,
// reciprocal magnitudes.
struct ReciprocalField {
  std::function<cplx(cplx)> v;
  std::function<double(cplx)> lambda2;

  cplx W(cplx z) const { return cplx(0.0, 1.0) * v(z); }
  cplx Y(cplx z) const {
    cplx w = W(z);
    if (std::abs(w) < 1e-12) raise(errc::zero_field, "zero of v has no reciprocal field");
    double l2 = lambda2(z);
    if (!(l2 > 0.0)) raise(errc::validation, "conformal factor must be positive");
    return std::conj(1.0 / w) / l2;
  }
  double metric_norm2_W(cplx z) const { return lambda2(z) * std::norm(W(z)); }
  double metric_norm2_Y(cplx z) const { return lambda2(z) * std::norm(Y(z)); }
};

inline ReciprocalField reciprocal_field(const PolyRat& v, std::function<double(cplx)> lambda2) {
  ReciprocalField f;
  f.v = [v](cplx z) { return v(z); };
  f.lambda2 = std::move(lambda2);
  return f;
}

inline ReciprocalField reciprocal_field(const VelocityField& v, std::function<double(cplx)> lambda2) {
  return reciprocal_field(v.rational(), std::move(lambda2));
}

// S(t, z) = F^{-1}(i t + F(z)) with F(z) = int_{x0}^{z} dS / (-2 v(S)):
// the local conjugation to the translation solution near a non-stationary
// point. Quadrature along straight segments, inversion by Newton.
inline cplx local_conjugation(const std::function<cplx(cplx)>& v, const std::vector<cplx>& v_zeros,
                              double x0, double t, cplx z, double quad_tol = 1e-12) {
  if (std::abs(v(cplx(x0))) < 1e-10) raise(errc::validation, "x0 must be non-stationary");
  auto integrand = [&](cplx u) { return 1.0 / (-2.0 * v(u)); };

  // Straight segment, with a single perpendicular detour if it passes a zero.
  auto segment_integral = [&](cplx a, cplx b) -> cplx {
    double clearance = std::numeric_limits<double>::infinity();
    for (cplx zr : v_zeros) {
      cplx d = b - a;
      double len2 = std::norm(d);
      double s = len2 > 0.0 ? std::clamp(((zr - a) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
      clearance = std::min(clearance, std::abs(a + s * d - zr));
    }
    if (clearance > 1e-3) return integrate_segment(integrand, a, b, quad_tol);
    cplx d = b - a;
    cplx n = d == cplx(0.0) ? cplx(0.0, 1.0) : cplx(0.0, 1.0) * d / std::abs(d);
    for (double side : {1.0, -1.0}) {
      cplx mid = 0.5 * (a + b) + 3e-3 * side * n;
      double ok = std::numeric_limits<double>::infinity();
      for (cplx zr : v_zeros) ok = std::min(ok, std::abs(mid - zr));
      if (ok > 1e-3)
        return integrate_segment(integrand, a, mid, quad_tol) + integrate_segment(integrand, mid, b, quad_tol);
    }
    raise(errc::singularity_hit, "no clear quadrature path around zeros of v");
  };

  cplx Fz = segment_integral(cplx(x0), z);
  // Continuation in the target keeps Newton in its basin for larger |t|.
  int chunks = std::max(1, int(std::ceil(std::abs(t) / 0.1)));
  cplx u = z;
  cplx Fu = Fz;
  for (int c = 1; c <= chunks; ++c) {
    cplx target = Fz + cplx(0.0, t * double(c) / double(chunks));
    bool done = false;
    for (int it = 0; it < 50; ++it) {
      cplx resid = Fu - target;
      if (std::abs(resid) < 1e-13 * (1.0 + std::abs(target))) {
        done = true;
        break;
      }
      cplx step = -resid * (-2.0 * v(u));  // Newton: F'(u) = 1/(-2 v(u))
      cplx next = u + step;
      Fu += segment_integral(u, next);
      u = next;
    }
    if (!done) {
      cplx resid = Fu - target;
      if (std::abs(resid) >= 1e-10 * (1.0 + std::abs(target)))
        raise(errc::no_convergence, "F-inversion Newton did not converge");
    }
  }
  return u;
}

inline cplx local_conjugation(const VelocityField& v, double x0, double t, cplx z,
                              double quad_tol = 1e-12) {
  std::vector<cplx> zeros;
  for (const auto& r : v.zeros()) zeros.push_back(r.location);
  return local_conjugation([&v](cplx u) { return v(u); }, zeros, x0, t, z, quad_tol);
}

}  // namespace schwarz
