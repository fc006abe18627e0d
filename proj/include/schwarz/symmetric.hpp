#pragma once

#include <array>
#include <map>
#include <vector>

#include "schwarz/dynamics.hpp"
#include "schwarz/holo.hpp"
#include "schwarz/lorentz.hpp"

namespace schwarz {

// Worst violations of the symmetric-space multiplication axioms
//   (1) P.P = P   (2) P.(P.Q) = Q   (3) P.(Q.R) = (P.Q).(P.R)
// over a sample of triples.
struct AxiomReport {
  double idempotent = 0.0;
  double involution = 0.0;
  double distributive = 0.0;
  double worst() const { return std::max({idempotent, involution, distributive}); }
};

inline AxiomReport axiom_suite(const std::vector<std::array<CircleCoord, 3>>& triples) {
  AxiomReport rep;
  for (const auto& [p, q, r] : triples) {
    rep.idempotent = std::max(rep.idempotent, circle_distance(quadric_product(p, p), p));
    rep.involution = std::max(rep.involution, circle_distance(quadric_product(p, quadric_product(p, q)), q));
    CircleCoord lhs = quadric_product(p, quadric_product(q, r));
    CircleCoord rhs = quadric_product(quadric_product(p, q), quadric_product(p, r));
    rep.distributive = std::max(rep.distributive, circle_distance(lhs, rhs));
  }
  return rep;
}

inline AxiomReport axiom_suite(const std::vector<std::array<MobiusMap, 3>>& triples) {
  AxiomReport rep;
  for (const auto& [p, q, r] : triples) {
    rep.idempotent = std::max(rep.idempotent, projective_distance(mobius_product(p, p), p));
    rep.involution =
        std::max(rep.involution, projective_distance(mobius_product(p, mobius_product(p, q)), q));
    MobiusMap lhs = mobius_product(p, mobius_product(q, r));
    MobiusMap rhs = mobius_product(mobius_product(p, q), mobius_product(p, r));
    rep.distributive = std::max(rep.distributive, projective_distance(lhs, rhs));
  }
  return rep;
}

// Jet model: residuals measured by evaluation near the base curve.
inline AxiomReport axiom_suite(const std::vector<std::array<SchwarzFn, 3>>& triples,
                               const std::vector<cplx>& offsets = {cplx(0.0), cplx(0.05),
                                                                   cplx(-0.05), cplx(0.0, 0.03)}) {
  auto fn_distance = [&](const SchwarzFn& a, const SchwarzFn& b) {
    double worst = 0.0;
    for (cplx off : offsets) {
      cplx z = a.base_point() + off;
      worst = std::max(worst, chordal_distance(a(z), b(z)));
    }
    return worst;
  };
  AxiomReport rep;
  for (const auto& [p, q, r] : triples) {
    rep.idempotent = std::max(rep.idempotent, fn_distance(schwarz_product(p, p), p));
    rep.involution = std::max(rep.involution, fn_distance(schwarz_product(p, schwarz_product(p, q)), q));
    SchwarzFn lhs = schwarz_product(p, schwarz_product(q, r));
    SchwarzFn rhs = schwarz_product(schwarz_product(p, q), schwarz_product(p, r));
    rep.distributive = std::max(rep.distributive, fn_distance(lhs, rhs));
  }
  return rep;
}

enum class FixedPointKind { equal, orthogonal };

// Theorem (4) dichotomy for a fixed-point pair P.Q = Q: either P = Q or the
// curves meet orthogonally, P'(z0) = -Q'(z0) at the intersection.
struct FixedPointReport {
  FixedPointKind kind;
  double derivative_sum;   // |P'(z0) + Q'(z0)| (orthogonal case)
  double lorentz_dot;      // |<x_P, x_Q>| for Mobius input, else 0
};

inline FixedPointReport orthogonal_fixed_points(const SchwarzFn& p, const SchwarzFn& q, cplx z0,
                                                double tol = 1e-8) {
  SchwarzFn pq = schwarz_product(p, q);
  double fixed_resid = 0.0;
  for (cplx off : {cplx(0.0), cplx(0.03), cplx(0.0, 0.03)}) {
    cplx z = q.base_point() + off;
    fixed_resid = std::max(fixed_resid, chordal_distance(pq(z), q(z)));
  }
  if (fixed_resid > 1e-7) raise(errc::not_a_fixed_point, "P.Q != Q");

  FixedPointReport rep{FixedPointKind::equal, 0.0, 0.0};
  double same = 0.0;
  for (cplx off : {cplx(0.0), cplx(0.03), cplx(0.0, 0.03)}) {
    cplx z = q.base_point() + off;
    same = std::max(same, chordal_distance(p(z), q(z)));
  }
  if (same <= 1e-9) return rep;

  if (std::abs(p(z0) - std::conj(z0)) > kOnCurveTol || std::abs(q(z0) - std::conj(z0)) > kOnCurveTol)
    raise(errc::not_a_fixed_point, "z0 is not an intersection point");
  rep.kind = FixedPointKind::orthogonal;
  rep.derivative_sum = std::abs(p.deriv(z0, 1) + q.deriv(z0, 1));
  if (p.is_mobius() && q.is_mobius())
    rep.lorentz_dot = std::abs(minkowski_dot(to_lorentz(p.mobius()), to_lorentz(q.mobius())));
  if (rep.derivative_sum > tol) raise(errc::not_a_fixed_point, "curves are neither equal nor orthogonal");
  return rep;
}

// Powers of p relative to base point o: p^0 = o, p^1 = p,
// p^{n+1} = p^n . p^{n-1} (and downward by the axiom-(2) inversion).
struct PowerTable {
  MobiusMap o, p;
  std::map<int, MobiusMap> powers;

  const MobiusMap& at(int n) const { return powers.at(n); }
};

inline PowerTable power_table(const MobiusMap& o, const MobiusMap& p, int n_min, int n_max) {
  PowerTable tab{o, p, {}};
  tab.powers[0] = o;
  tab.powers[1] = p;
  for (int n = 1; n < n_max; ++n) tab.powers[n + 1] = mobius_product(tab.powers[n], tab.powers[n - 1]);
  for (int n = 0; n > n_min; --n) tab.powers[n - 1] = mobius_product(tab.powers[n], tab.powers[n + 1]);
  return tab;
}

struct PowerIdentityReport {
  double homomorphism = 0.0;    // p^m . p^n vs p^{2m-n}
  double quadratic = 0.0;       // p^{n+2} vs Q(p) p^n, Q(p) x = p.(o.x)
  double power_of_power = 0.0;  // (p^n)^k vs p^{kn}
  double translation = 0.0;     // powers of p^{1+k} based at p^k vs p^{n+k}
  double worst() const { return std::max({homomorphism, quadratic, power_of_power, translation}); }
};

inline PowerIdentityReport power_identities(const PowerTable& tab, int check_range) {
  PowerIdentityReport rep;
  int lo = tab.powers.begin()->first, hi = tab.powers.rbegin()->first;
  for (int m = -check_range; m <= check_range; ++m)
    for (int n = -check_range; n <= check_range; ++n) {
      if (m < lo || m > hi || n < lo || n > hi) continue;
      int k = 2 * m - n;
      if (k < lo || k > hi) continue;
      rep.homomorphism = std::max(
          rep.homomorphism, projective_distance(mobius_product(tab.at(m), tab.at(n)), tab.at(k)));
    }
  for (int n = lo; n + 2 <= hi; ++n) {
    MobiusMap qp = mobius_product(tab.p, mobius_product(tab.o, tab.at(n)));
    rep.quadratic = std::max(rep.quadratic, projective_distance(qp, tab.at(n + 2)));
  }
  for (int n = 1; n <= check_range; ++n)
    for (int k = -check_range; k <= check_range; ++k) {
      if (n * k < lo || n * k > hi || n > hi) continue;
      PowerTable sub = power_table(tab.o, tab.at(n), std::min(k, 0), std::max(k, 1));
      rep.power_of_power =
          std::max(rep.power_of_power, projective_distance(sub.at(k), tab.at(n * k)));
    }
  for (int k = -1; k <= 1; ++k) {
    if (k < lo || k + 1 > hi) continue;
    int reach = std::min(check_range, std::min(hi - k, k - lo));
    if (reach < 1) continue;
    PowerTable sub = power_table(tab.at(k), tab.at(k + 1), -reach, reach);
    for (int n = -reach; n <= reach; ++n)
      rep.translation = std::max(rep.translation, projective_distance(sub.at(n), tab.at(n + k)));
  }
  return rep;
}

// nabla_{S_t} S_t = S_tt - S_t S_tz / S_z on the family grid. Exact
// families differentiate the closed form; numeric families use central
// differences in t on the stored jets.
inline double connection_residual(const FlowFamily& fam) {
  double worst = 0.0;
  if (fam.exact && fam.generator) {
    for (double t : fam.t_grid)
      for (cplx z : fam.seeds) {
        auto d = detail::pencil_derivs(*fam.generator, t, z);
        worst = std::max(worst, std::abs(d.Stt - d.St * d.Stz / d.Sz));
      }
    return worst;
  }
  detail::require_uniform(fam.t_grid, 3);
  double h = fam.t_grid[1] - fam.t_grid[0];
  for (std::size_t i = 1; i + 1 < fam.t_grid.size(); ++i)
    for (std::size_t j = 0; j < fam.seeds.size(); ++j) {
      cplx sm = fam.s[i - 1][j].value(), s0 = fam.s[i][j].value(), sp = fam.s[i + 1][j].value();
      cplx st = (sp - sm) / (2.0 * h);
      cplx stt = (sp - 2.0 * s0 + sm) / (h * h);
      cplx sz = fam.s[i][j].coeff(1);
      cplx stz = (fam.s[i + 1][j].coeff(1) - fam.s[i - 1][j].coeff(1)) / (2.0 * h);
      worst = std::max(worst, std::abs(stt - st * stz / sz));
    }
  return worst;
}

// A two-parameter variation provides jets of S(r, t, .) about a center;
// nabla_{S_r} S_t = S_rt - (S_rz S_t + S_tz S_r) / (2 S_z) by five-point
// stencils in (r, t).
struct CrossConnection {
  cplx value;
  cplx base_point;
};

inline CrossConnection cross_connection(const std::function<Jet(double, double)>& s_jets, double r0,
                                        double t0, cplx z, double h = 5e-3) {
  auto at = [&](double dr, double dt) { return s_jets(r0 + dr, t0 + dt); };
  auto val = [&](const Jet& j) { return j(z); };
  auto dz = [&](const Jet& j) { return j.derivative()(z); };

  static const double w1 = 8.0, w2 = -1.0, den = 12.0;
  auto d_r = [&](auto&& f) {
    return (w2 * f(at(2 * h, 0.0)) + w1 * f(at(h, 0.0)) - w1 * f(at(-h, 0.0)) - w2 * f(at(-2 * h, 0.0))) /
           (den * h);
  };
  auto d_t = [&](auto&& f) {
    return (w2 * f(at(0.0, 2 * h)) + w1 * f(at(0.0, h)) - w1 * f(at(0.0, -h)) - w2 * f(at(0.0, -2 * h))) /
           (den * h);
  };

  cplx s_r = d_r(val), s_t = d_t(val);
  cplx s_rz = d_r(dz), s_tz = d_t(dz);
  // Mixed derivative from the tensor product of two fourth-order stencils.
  static const double cs[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  cplx s_rt = 0.0;
  for (int i = -2; i <= 2; ++i) {
    if (i == 0) continue;
    for (int j = -2; j <= 2; ++j) {
      if (j == 0) continue;
      s_rt += cs[i + 2] * cs[j + 2] * val(at(i * h, j * h));
    }
  }
  s_rt /= h * h;
  cplx s_z = dz(at(0.0, 0.0));
  CrossConnection out;
  out.value = s_rt - (s_rz * s_t + s_tz * s_r) / (2.0 * s_z);
  out.base_point = z;
  return out;
}

// Both sides of the identity w_x^2 wbar_x nabla_{S_t} S_t = -2 Im Q[w] for
// a parametrized family: the S-side from jets of sigma(w) o w^{-1} across
// a five-point t-stencil, the w-side from exact partials.
struct ParametrizedFamily {
  std::function<Jet(double t, double x0, int order)> x_jet;
  WFamily sample;
};

// The product w_x^2 wbar_x nabla_{S_t}S_t is purely imaginary along the
// curve and equals -2i Im Q[w]: expanding nabla via Eq. SrSt makes each Q
// term appear as -(term - conj term), so the sum is -(Q - Qbar).
struct ConnectionIdentity {
  cplx lhs;     // w_x^2 wbar_x nabla_{S_t} S_t
  double im_q;  // Im Q[w]
  double mismatch() const { return std::abs(lhs + cplx(0.0, 2.0 * im_q)); }
};

inline ConnectionIdentity connection_identity(const ParametrizedFamily& fam, double t0, double x0,
                                              double h = 5e-3, int order = 12) {
  WSample w0 = fam.sample(t0, x0);
  cplx z_star = w0.w;

  auto s_jet_at = [&](double t) {
    Jet w = fam.x_jet(t, x0, order);
    Jet inv = jet_invert(w);
    return jet_compose(w.conjugate(), inv);  // centers match: x0 is real
  };
  std::array<Jet, 5> st{s_jet_at(t0 - 2 * h), s_jet_at(t0 - h), s_jet_at(t0), s_jet_at(t0 + h),
                        s_jet_at(t0 + 2 * h)};
  std::array<cplx, 5> v, vz;
  for (int k = 0; k < 5; ++k) {
    v[std::size_t(k)] = st[std::size_t(k)](z_star);
    vz[std::size_t(k)] = st[std::size_t(k)].derivative()(z_star);
  }
  cplx s_t = (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h);
  cplx s_tt = (-v[4] + 16.0 * v[3] - 30.0 * v[2] + 16.0 * v[1] - v[0]) / (12.0 * h * h);
  cplx s_tz = (-vz[4] + 8.0 * vz[3] - 8.0 * vz[1] + vz[0]) / (12.0 * h);
  cplx s_z = vz[2];
  cplx nabla = s_tt - s_t * s_tz / s_z;

  ConnectionIdentity out;
  out.lhs = w0.wx * w0.wx * std::conj(w0.wx) * nabla;
  out.im_q = q_operator(w0).imag();
  return out;
}

}  // namespace schwarz
