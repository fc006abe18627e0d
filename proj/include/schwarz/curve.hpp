#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/jet.hpp"
#include "schwarz/mobius.hpp"

namespace schwarz {

inline constexpr double kOnCurveTol = 1e-8;
inline constexpr double kCurveResidualTol = 1e-10;

// Analytic curve provided through a parametrization jet gamma(x) about a
// real x0, plus sampled image points. Recovered curves (from a Schwarz
// function) carry points only.
struct ParamCurve {
  std::optional<Jet> gamma;
  std::vector<double> params;
  std::vector<cplx> points;
  bool discrete_set = false;  // solution set looks like isolated points, not a curve
};

// Schwarz function with an exact Mobius representation (circles/lines) or
// a general jet about a certified base point z0, S(z0) = conj(z0).
class SchwarzFn {
 public:
  SchwarzFn(const MobiusMap& m, cplx base_point) : rep_(m), base_(base_point) { certify(); }

  explicit SchwarzFn(const Jet& j) : rep_(j), base_(j.center()) { certify(); }

  bool is_mobius() const { return std::holds_alternative<MobiusMap>(rep_); }
  const MobiusMap& mobius() const { return std::get<MobiusMap>(rep_); }
  const Jet& jet() const { return std::get<Jet>(rep_); }
  cplx base_point() const { return base_; }

  cplx operator()(cplx z) const {
    if (is_mobius()) return mobius()(z);
    return jet()(z);
  }

  cplx deriv(cplx z, int k = 1) const {
    if (is_mobius()) {
      if (k == 1) return mobius().derivative(z);
      if (k == 2) return mobius().second_derivative(z);
      // d^k of (az+b)/(cz+d): det * (-c)^{k-1} k! / (cz+d)^{k+1}
      const MobiusMap& m = mobius();
      cplx q = m.c * z + m.d;
      double fact = 1.0;
      for (int i = 2; i <= k; ++i) fact *= i;
      return m.det() * std::pow(-m.c, k - 1) * fact / std::pow(q, k + 1);
    }
    Jet d = jet();
    for (int i = 0; i < k; ++i) d = d.derivative();
    return d(z);
  }

  cplx schwarzian_at(cplx z) const {
    if (is_mobius()) return 0.0;
    return schwarzian(jet())(z);
  }

  // Truncation-error proxy at z; exact representations report 0.
  double tail_proxy_at(cplx z) const {
    if (is_mobius()) return 0.0;
    return jet().tail_proxy(std::abs(z - jet().center()));
  }

  Jet as_jet(int order = kDefaultJetOrder) const {
    if (is_mobius()) return mobius_to_jet(mobius(), base_, order);
    return jet();
  }

  // sigma(S), based at the reflected point.
  SchwarzFn conjugated() const {
    if (is_mobius()) return SchwarzFn(mobius().conjugated(), std::conj(base_));
    return SchwarzFn(jet().conjugate());
  }

  double base_residual() const { return std::abs((*this)(base_) - std::conj(base_)); }

 private:
  void certify() const {
    if (base_residual() > 1e-9)
      raise(errc::off_curve, "base point not on the curve (|S(z0)-conj(z0)|=" +
                                 std::to_string(base_residual()) + ")");
  }

  std::variant<MobiusMap, Jet> rep_;
  cplx base_;
};

// S = sigma(gamma) o gamma^{-1} about z0 = gamma(x0).
inline SchwarzFn schwarz_from_curve(const Jet& gamma) {
  if (std::abs(gamma.center().imag()) > 1e-12)
    raise(errc::validation, "parametrization must be centered at a real parameter");
  Jet inv = jet_invert(gamma);                 // about gamma(x0)
  Jet conj_gamma = gamma.conjugate();          // about x0 (real center)
  return SchwarzFn(jet_compose(conj_gamma, inv));
}

inline SchwarzFn schwarz_from_curve(const ParamCurve& curve) {
  if (!curve.gamma) raise(errc::validation, "curve carries no parametrization jet");
  return schwarz_from_curve(*curve.gamma);
}

namespace detail {

// One Newton solve of S(z) = conj(z) from `seed`, as a real 2x2 system.
// The Jacobian determinant is |S'|^2 - 1, which vanishes on the curve
// itself (unit clinant), so the step is a damped least-squares solve: it
// moves along the normal direction where the system is rank one.
inline std::optional<cplx> newton_on_curve(const SchwarzFn& s, cplx seed, int max_iter = 50,
                                           double tol = kCurveResidualTol) {
  cplx z = seed;
  for (int it = 0; it < max_iter; ++it) {
    cplx f = s(z) - std::conj(z);
    if (std::abs(f) < tol) return z;
    cplx sp = s.deriv(z, 1);
    // Columns of the real Jacobian: d/dx = S' - 1, d/dy = i(S' + 1).
    double j11 = (sp - 1.0).real(), j12 = (cplx(0.0, 1.0) * (sp + 1.0)).real();
    double j21 = (sp - 1.0).imag(), j22 = (cplx(0.0, 1.0) * (sp + 1.0)).imag();
    double a = j11 * j11 + j12 * j12, b = j11 * j21 + j12 * j22, c = j21 * j21 + j22 * j22;
    double eps = 1e-12 * std::max(1.0, a + c);
    double det = (a + eps) * (c + eps) - b * b;
    if (det <= 0.0) return std::nullopt;
    double u1 = (-f.real() * (c + eps) + f.imag() * b) / det;
    double u2 = (-f.imag() * (a + eps) + f.real() * b) / det;
    cplx step(j11 * u1 + j21 * u2, j12 * u1 + j22 * u2);
    double cap = 0.5 * (1.0 + std::abs(z));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z += step;
  }
  cplx f = s(z) - std::conj(z);
  if (std::abs(f) < tol) return z;
  return std::nullopt;
}

}  // namespace detail

struct CurveRecovery {
  ParamCurve curve;
  std::vector<std::size_t> failed_seeds;
};

// Solve S(z) = conj(z) from each seed by Newton iteration, order the
// solutions into a polyline, and flag discrete solution sets.
inline CurveRecovery curve_from_schwarz(const SchwarzFn& s, const std::vector<cplx>& seeds) {
  CurveRecovery out;
  std::vector<cplx> found;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    auto z = detail::newton_on_curve(s, seeds[i]);
    if (z)
      found.push_back(*z);
    else
      out.failed_seeds.push_back(i);
  }
  if (found.empty()) {
    if (!seeds.empty()) raise(errc::no_convergence, "no seed converged to the curve");
    return out;
  }

  // Count distinct solution clusters; a near-constant set signals that the
  // locus is a discrete point set rather than a curve.
  std::vector<cplx> clusters;
  for (const auto& z : found) {
    bool fresh = true;
    for (const auto& c : clusters)
      if (std::abs(z - c) < 1e-6) {
        fresh = false;
        break;
      }
    if (fresh) clusters.push_back(z);
  }
  out.curve.discrete_set = clusters.size() < std::max<std::size_t>(2, found.size() / 3);

  // Greedy nearest-neighbour ordering into a polyline.
  std::vector<bool> used(found.size(), false);
  std::size_t cur = 0;
  used[0] = true;
  out.curve.points.push_back(found[0]);
  for (std::size_t step = 1; step < found.size(); ++step) {
    double best = 0.0;
    std::size_t pick = found.size();
    for (std::size_t j = 0; j < found.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(found[j] - found[cur]);
      if (pick == found.size() || d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = true;
    out.curve.points.push_back(found[pick]);
    cur = pick;
  }
  return out;
}

// R_Gamma(z) = conj(S(z)); antiholomorphic reflection fixing the curve.
inline cplx reflect_point(const SchwarzFn& s, cplx z) {
  if (s.tail_proxy_at(z) > 1e-6) raise(errc::out_of_domain, "jet tail proxy exceeds 1e-6");
  return std::conj(s(z));
}

namespace detail {
inline void require_on_curve(const SchwarzFn& s, cplx z) {
  double r = std::abs(s(z) - std::conj(z));
  if (r > kOnCurveTol)
    raise(errc::off_curve, "|S(z)-conj(z)| = " + std::to_string(r) + " exceeds on-curve tolerance");
}
}  // namespace detail

// S'(z) on the curve: the clinant e^{-2 i theta}, of unit modulus.
inline cplx clinant(const SchwarzFn& s, cplx z) {
  detail::require_on_curve(s, z);
  return s.deriv(z, 1);
}

// sqrt with branch chosen nearest to `hint` (hint = 0 means principal).
inline cplx continued_sqrt(cplx w, cplx hint) {
  cplx r = std::sqrt(w);
  if (hint != cplx(0.0) && std::abs(r - hint) > std::abs(-r - hint)) r = -r;
  return r;
}

// Unit tangent 1/sqrt(S_z), up to the sign fixed by the branch hint.
inline cplx tangent_direction(const SchwarzFn& s, cplx z, cplx& sqrt_branch_inout) {
  cplx sz = clinant(s, z);
  sqrt_branch_inout = continued_sqrt(sz, sqrt_branch_inout);
  return 1.0 / sqrt_branch_inout;
}

// Signed curvature kappa = (i/2) S_zz / S_z^{3/2}; the sign depends on the
// sqrt branch carried by the caller along the curve ordering.
inline double curvature(const SchwarzFn& s, cplx z, cplx& sqrt_branch_inout) {
  detail::require_on_curve(s, z);
  cplx sz = s.deriv(z, 1);
  cplx szz = s.deriv(z, 2);
  sqrt_branch_inout = continued_sqrt(sz, sqrt_branch_inout);
  cplx pow32 = sz * sqrt_branch_inout;
  cplx kappa = cplx(0.0, 0.5) * szz / pow32;
  return kappa.real();
}

inline double curvature(const SchwarzFn& s, cplx z) {
  cplx hint = 0.0;
  return curvature(s, z, hint);
}

// kappa_s = (i / 2 S_z) {S, z}: arclength derivative of curvature.
inline double curvature_s(const SchwarzFn& s, cplx z) {
  detail::require_on_curve(s, z);
  cplx sz = s.deriv(z, 1);
  cplx v = cplx(0.0, 0.5) / sz * s.schwarzian_at(z);
  return v.real();
}

// Kasner horn-angle invariant K = kappa^2 / kappa_s = (i/2) S_zz^2 / (S_z^2 {S,z}).
inline double kasner(const SchwarzFn& s, cplx z) {
  detail::require_on_curve(s, z);
  cplx sz = s.deriv(z, 1);
  cplx szz = s.deriv(z, 2);
  cplx sch = s.schwarzian_at(z);
  double scale = std::max(std::abs(szz * szz), std::abs(sz * sz));
  if (std::abs(sch) <= 1e-12 * std::max(1.0, scale))
    raise(errc::zero_schwarzian, "{S,z} = 0: Mobius Schwarz function has no Kasner invariant");
  cplx v = cplx(0.0, 0.5) * szz * szz / (sz * sz * sch);
  return v.real();
}

// Horn-angle invariant of two curves in first-order contact at z:
//   (kappa_1 - kappa_2)^2 / (kappa_1s - kappa_2s)
//   = (i/2)(S_1'' - S_2'')^2 / (S_z^2 ({S_1,z} - {S_2,z})).
// kasner(S, z) is this quantity specialized to a straight second curve;
// the pair form is what stays invariant under arbitrary Mobius transport
// (the single-curve form picks up (1 - Im(phi''/phi' e^{i theta})/kappa)^2
// because the tangent line does not stay straight).
inline double kasner_pair(const SchwarzFn& s1, const SchwarzFn& s2, cplx z) {
  detail::require_on_curve(s1, z);
  detail::require_on_curve(s2, z);
  cplx d1 = s1.deriv(z, 1), d2 = s2.deriv(z, 1);
  if (std::abs(d1 - d2) > 1e-8 * std::max(std::abs(d1), 1.0))
    raise(errc::validation, "curves are not in first-order contact at z");
  cplx num = s1.deriv(z, 2) - s2.deriv(z, 2);
  cplx den = d1 * d1 * (s1.schwarzian_at(z) - s2.schwarzian_at(z));
  if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(num * num)))
    raise(errc::zero_schwarzian, "degenerate horn angle");
  cplx v = cplx(0.0, 0.5) * num * num / den;
  return v.real();
}

// lambda(phi) S = sigma(phi) o S o phi^{-1}, Mobius conformal change.
inline SchwarzFn hermitian_conjugate(const MobiusMap& phi, const SchwarzFn& s) {
  cplx new_base = phi(s.base_point());
  if (s.is_mobius()) return SchwarzFn(hermitian_conjugate(phi, s.mobius()), new_base);
  const Jet& j = s.jet();
  Jet phi_inv = mobius_to_jet(phi.adjugate(), new_base, j.order());
  Jet inner = jet_compose(j, phi_inv);
  Jet outer = mobius_to_jet(phi.conjugated(), inner.value(), j.order());
  return SchwarzFn(jet_compose(outer, inner));
}

// General conformal change with phi supplied as a jet about the base point.
inline SchwarzFn hermitian_conjugate(const Jet& phi, const SchwarzFn& s) {
  if (std::abs(phi.center() - s.base_point()) > kCenterMatchTol)
    raise(errc::center_mismatch, "phi must be expanded about the base point of S");
  Jet phi_inv = jet_invert(phi);
  Jet inner = jet_compose(s.as_jet(phi.order()), phi_inv);
  Jet outer = phi.conjugate();  // centered at conj(base), where inner lands
  return SchwarzFn(jet_compose(outer, inner, /*auto_recenter=*/true));
}

struct TangentVector {
  Jet X;
  SchwarzFn base;
};

struct TangentReport {
  bool is_tangent = true;
  double worst_re = 0.0;      // most positive Re[X^2/S_z] seen
  double worst_im_rel = 0.0;  // largest |Im|/|X^2/S_z|
};

// Tangency criterion X^2/S_z < 0 along the curve.
inline TangentReport is_tangent_vector(const Jet& x, const SchwarzFn& s,
                                       const std::vector<cplx>& curve_points) {
  TangentReport rep;
  for (cplx z : curve_points) {
    detail::require_on_curve(s, z);
    cplx q = x(z) * x(z) / s.deriv(z, 1);
    double mag = std::abs(q);
    if (mag == 0.0) continue;
    rep.worst_re = std::max(rep.worst_re, q.real() / mag);
    rep.worst_im_rel = std::max(rep.worst_im_rel, std::abs(q.imag()) / mag);
    if (q.real() >= 0.0 || std::abs(q.imag()) > 1e-8 * mag) rep.is_tangent = false;
  }
  return rep;
}

}  // namespace schwarz
