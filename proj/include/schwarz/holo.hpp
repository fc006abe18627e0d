#pragma once

#include <functional>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/jet.hpp"
#include "schwarz/mobius.hpp"
#include "schwarz/polyrat.hpp"

namespace schwarz {

// w and its first/second partials at one (t, x) sample. All evaluators in
// this module fill these by exact differentiation (chain rule through the
// defining substitution), never by finite differences.
struct WSample {
  cplx w, wx, wt, wxx, wtt, wxt;
};

using WFamily = std::function<WSample(double t, double x)>;

enum class FamilyForm { circle, planar };

// Singular-geodesic family from a meromorphic map: circle form
// w(t, theta) = h(e^{i theta + c t}) or planar form w(t, x) = h(x + i c t).
struct HoloFamily {
  PolyRat h;
  double c = 1.0;
  FamilyForm form = FamilyForm::circle;
  int theta_resolution = 2048;
};

inline Jet rational_to_jet(const PolyRat& r, cplx center, int order = kDefaultJetOrder) {
  Jet num = Jet::of_polynomial(r.num(), center, order);
  if (r.is_polynomial()) return num;
  Jet den = Jet::of_polynomial(r.den(), center, order);
  if (std::abs(den.value()) < 1e-12) raise(errc::pole_on_circle, "expansion at a pole of h");
  return num / den;
}

inline void require_circle_clear(const PolyRat& h, double radius, double margin = 1e-6) {
  for (const auto& p : h.poles())
    if (std::abs(std::abs(p.location) - radius) <= margin)
      raise(errc::pole_on_circle, "pole of h within margin of the evaluated circle");
}

inline WSample evaluate_at(const HoloFamily& fam, double t, double x) {
  WSample s;
  if (fam.form == FamilyForm::circle) {
    cplx u = std::exp(cplx(fam.c * t, x));
    auto d = fam.h.eval_derivatives(u, 2);
    cplx h1u = d[1] * u;
    cplx h2uu_h1u = d[2] * u * u + h1u;
    s.w = d[0];
    s.wx = cplx(0.0, 1.0) * h1u;
    s.wt = fam.c * h1u;
    s.wxx = -h2uu_h1u;
    s.wtt = fam.c * fam.c * h2uu_h1u;
    s.wxt = cplx(0.0, 1.0) * fam.c * h2uu_h1u;
  } else {
    cplx u = cplx(x, fam.c * t);
    auto d = fam.h.eval_derivatives(u, 2);
    s.w = d[0];
    s.wx = d[1];
    s.wt = cplx(0.0, 1.0) * fam.c * d[1];
    s.wxx = d[2];
    s.wtt = -fam.c * fam.c * d[2];
    s.wxt = cplx(0.0, 1.0) * fam.c * d[2];
  }
  return s;
}

inline WFamily family_evaluator(const HoloFamily& fam) {
  return [fam](double t, double x) { return evaluate_at(fam, t, x); };
}

inline std::vector<double> uniform_thetas(int n) {
  std::vector<double> th(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) th[std::size_t(k)] = 2.0 * std::numbers::pi * double(k) / double(n);
  return th;
}

// Curve samples with derivatives at fixed t.
inline std::vector<WSample> evaluate_family(const HoloFamily& fam, double t,
                                            const std::vector<double>& thetas) {
  if (fam.form == FamilyForm::circle) require_circle_clear(fam.h, std::exp(fam.c * t));
  std::vector<WSample> out;
  out.reserve(thetas.size());
  for (double th : thetas) out.push_back(evaluate_at(fam, t, th));
  return out;
}

// The quartic second-order operator whose imaginary part vanishes exactly
// on geodesic families:
//   Q[w] = w_x wbar_x^2 w_tt + (w_x wbar_x w_t + w_x^2 wbar_t) wbar_xt
//        + wbar_x w_t wbar_t w_xx.
inline cplx q_operator(const WSample& s) {
  cplx wxb = std::conj(s.wx), wtb = std::conj(s.wt), wxtb = std::conj(s.wxt);
  return s.wx * wxb * wxb * s.wtt + (s.wx * wxb * s.wt + s.wx * s.wx * wtb) * wxtb +
         wxb * s.wt * wtb * s.wxx;
}

inline double q_term_scale(const WSample& s) {
  cplx wxb = std::conj(s.wx), wtb = std::conj(s.wt), wxtb = std::conj(s.wxt);
  double m1 = std::abs(s.wx * wxb * wxb * s.wtt);
  double m2 = std::abs((s.wx * wxb * s.wt + s.wx * s.wx * wtb) * wxtb);
  double m3 = std::abs(wxb * s.wt * wtb * s.wxx);
  return std::max({m1, m2, m3, 1e-300});
}

struct QResidual {
  double max_abs_im = 0.0;
  double scale = 0.0;  // largest term magnitude seen
  double relative() const { return scale > 0.0 ? max_abs_im / scale : 0.0; }
};

inline QResidual q_residual(const HoloFamily& fam, double t, const std::vector<double>& thetas) {
  QResidual r;
  for (const auto& s : evaluate_family(fam, t, thetas)) {
    r.max_abs_im = std::max(r.max_abs_im, std::abs(q_operator(s).imag()));
    r.scale = std::max(r.scale, q_term_scale(s));
  }
  return r;
}

// Normal-motion system residuals: Im[wbar_x (|w_x|^2 w_tt + |w_t|^2 w_xx)]
// and w_t wbar_x + wbar_t w_x. Both vanish for normal-motion solutions;
// only the first needs to vanish for an Im Q[w] = 0 solution.
struct NormalMotionResidual {
  double evolution = 0.0;
  double tangential = 0.0;
  double scale = 0.0;
  bool is_normal(double tol = 1e-9) const {
    return evolution <= tol * std::max(1.0, scale) && tangential <= tol * std::max(1.0, scale);
  }
};

inline NormalMotionResidual normal_motion_residual(const WFamily& fam, double t,
                                                   const std::vector<double>& xs) {
  NormalMotionResidual r;
  for (double x : xs) {
    WSample s = fam(t, x);
    cplx wxb = std::conj(s.wx);
    cplx ev = wxb * (std::norm(s.wx) * s.wtt + std::norm(s.wt) * s.wxx);
    cplx tg = s.wt * wxb + std::conj(s.wt) * s.wx;
    r.evolution = std::max(r.evolution, std::abs(ev.imag()));
    r.tangential = std::max(r.tangential, std::abs(tg));
    r.scale = std::max({r.scale, std::abs(ev), std::norm(s.wx), std::norm(s.wt)});
  }
  return r;
}

inline NormalMotionResidual normal_motion_residual(const HoloFamily& fam, double t,
                                                   const std::vector<double>& thetas) {
  if (fam.form == FamilyForm::circle) require_circle_clear(fam.h, std::exp(fam.c * t));
  return normal_motion_residual(family_evaluator(fam), t, thetas);
}

// Rotation index of h(|z| = r) two ways: the argument-principle count
// Z[h'] - P[h'] + 1 and the numerically integrated winding number of
// g(z) = i z h'(z). Both must agree exactly.
struct RotationIndex {
  int index = 0;
  int zeros = 0;
  int poles = 0;
};

inline RotationIndex rotation_index(const PolyRat& h, double r) {
  PolyRat hp = h.derivative_reduced();
  DiskCount count = count_zeros_poles(hp, r);
  int by_count = count.zeros - count.poles + 1;
  int by_winding = winding_number(
      [&](cplx z) {
        auto d = h.eval_derivatives(z, 1);
        return cplx(0.0, 1.0) * z * d[1];
      },
      r);
  if (by_count != by_winding)
    raise(errc::winding_mismatch, "index formula " + std::to_string(by_count) +
                                      " disagrees with winding number " + std::to_string(by_winding));
  return RotationIndex{by_count, count.zeros, count.poles};
}

// t-values where the expanding circle meets a zero or pole of h' (or a
// pole of h): t_j = log|z_j| / c, deduplicated on the log-radius.
inline std::vector<double> exceptional_times(const HoloFamily& fam) {
  if (poly::degree(fam.h.num()) == 0 && fam.h.is_polynomial())
    raise(errc::validation, "constant h has no family");
  std::vector<double> logs;
  auto add = [&](cplx z) {
    double m = std::abs(z);
    if (m > 1e-12) logs.push_back(std::log(m));
  };
  PolyRat hp = fam.h.derivative_reduced();
  for (const auto& z : hp.zeros()) add(z.location);
  for (const auto& p : hp.poles()) add(p.location);
  for (const auto& p : fam.h.poles()) add(p.location);
  std::sort(logs.begin(), logs.end());
  std::vector<double> out;
  for (double L : logs) {
    if (out.empty() || std::abs(L - out.back() * fam.c) > 1e-9) out.push_back(L / fam.c);
  }
  return out;
}

struct HomotopySegment {
  double t_lo, t_hi;
  int index;
};

// Rotation indices on the intervals between consecutive exceptional times.
inline std::vector<HomotopySegment> homotopy_segments(const HoloFamily& fam, double t_min, double t_max) {
  std::vector<double> cuts = exceptional_times(fam);
  std::vector<double> edges{t_min};
  for (double t : cuts)
    if (t > t_min && t < t_max) edges.push_back(t);
  edges.push_back(t_max);
  std::vector<HomotopySegment> out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    double mid = 0.5 * (edges[k] + edges[k + 1]);
    RotationIndex ri = rotation_index(fam.h, std::exp(fam.c * mid));
    out.push_back(HomotopySegment{edges[k], edges[k + 1], ri.index});
  }
  return out;
}

// Conformal image w_phi = phi(w) with exact chain-rule partials.
template <typename Phi>
WFamily conformal_transform(WFamily base, Phi phi) {
  return [base = std::move(base), phi](double t, double x) {
    WSample s = base(t, x);
    cplx p1, p2;
    if constexpr (std::is_same_v<Phi, MobiusMap>) {
      p1 = phi.derivative(s.w);
      p2 = phi.second_derivative(s.w);
    } else {
      auto d = phi.eval_derivatives(s.w, 2);
      p1 = d[1];
      p2 = d[2];
    }
    WSample o;
    o.w = phi(s.w);
    o.wx = p1 * s.wx;
    o.wt = p1 * s.wt;
    o.wxx = p2 * s.wx * s.wx + p1 * s.wxx;
    o.wtt = p2 * s.wt * s.wt + p1 * s.wtt;
    o.wxt = p2 * s.wx * s.wt + p1 * s.wxt;
    return o;
  };
}

// Time-independent reparametrization w_sigma(t, x) = w(t, sigma(x)).
struct Reparametrization {
  std::function<double(double)> sigma, sigma_x, sigma_xx;
};

inline WFamily reparametrize(WFamily base, Reparametrization rep) {
  return [base = std::move(base), rep = std::move(rep)](double t, double x) {
    double sx = rep.sigma_x(x), sxx = rep.sigma_xx(x);
    if (!(sx > 0.0)) raise(errc::validation, "reparametrization must be orientation-preserving");
    WSample s = base(t, rep.sigma(x));
    WSample o;
    o.w = s.w;
    o.wx = s.wx * sx;
    o.wxx = s.wxx * sx * sx + s.wx * sxx;
    o.wt = s.wt;
    o.wtt = s.wtt;
    o.wxt = s.wxt * sx;
    return o;
  };
}

// Planar sum f1(x + i c1 t) + f2(x + i c2 t): exact partials, generically
// a non-geodesic family (Im Q != 0), used to exercise the invariance ratios.
inline WFamily planar_sum_family(PolyRat f1, double c1, PolyRat f2, double c2) {
  return [f1 = std::move(f1), c1, f2 = std::move(f2), c2](double t, double x) {
    cplx u1(x, c1 * t), u2(x, c2 * t);
    auto d1 = f1.eval_derivatives(u1, 2);
    auto d2 = f2.eval_derivatives(u2, 2);
    WSample s;
    s.w = d1[0] + d2[0];
    s.wx = d1[1] + d2[1];
    s.wt = cplx(0.0, 1.0) * (c1 * d1[1] + c2 * d2[1]);
    s.wxx = d1[2] + d2[2];
    s.wtt = -(c1 * c1 * d1[2] + c2 * c2 * d2[2]);
    s.wxt = cplx(0.0, 1.0) * (c1 * d1[2] + c2 * d2[2]);
    return s;
  };
}

struct InvarianceReport {
  double max_conformal_error = 0.0;  // |Im Q[w_phi]/Im Q[w] - |phi'(w)|^4|, relative
  double max_reparam_error = 0.0;    // |Im Q[w_sigma]/Im Q[w o sigma] - sigma_x^3|, relative
  int checked = 0;
  int skipped = 0;  // points with |Im Q| below the degeneracy cutoff
};

// Pointwise invariance ratios of Im Q under a conformal map and a
// reparametrization, on a (t, x) grid.
template <typename Phi>
InvarianceReport invariance_check(const WFamily& base, const Phi& phi, const Reparametrization& rep,
                                  const std::vector<double>& t_samples,
                                  const std::vector<double>& x_samples) {
  InvarianceReport out;
  WFamily fam_phi = conformal_transform(base, phi);
  WFamily fam_sigma = reparametrize(base, rep);
  for (double t : t_samples)
    for (double x : x_samples) {
      WSample s = base(t, x);
      double imq = q_operator(s).imag();
      double scale = q_term_scale(s);
      if (std::abs(imq) < 1e-14 * scale) {
        ++out.skipped;
        continue;
      }
      ++out.checked;
      {
        WSample sp = fam_phi(t, x);
        double ratio = q_operator(sp).imag() / imq;
        cplx p1;
        if constexpr (std::is_same_v<Phi, MobiusMap>)
          p1 = phi.derivative(s.w);
        else
          p1 = phi.eval_derivatives(s.w, 1)[1];
        double expect = std::pow(std::abs(p1), 4.0);
        out.max_conformal_error =
            std::max(out.max_conformal_error, std::abs(ratio - expect) / std::max(1.0, expect));
      }
      {
        WSample s_at = base(t, rep.sigma(x));
        double imq_at = q_operator(s_at).imag();
        if (std::abs(imq_at) < 1e-14 * q_term_scale(s_at)) {
          ++out.skipped;
        } else {
          WSample ss = fam_sigma(t, x);
          double ratio = q_operator(ss).imag() / imq_at;
          double sx = rep.sigma_x(x);
          double expect = sx * sx * sx;
          out.max_reparam_error =
              std::max(out.max_reparam_error, std::abs(ratio - expect) / std::max(1.0, std::abs(expect)));
        }
      }
    }
  if (out.checked == 0) raise(errc::degenerate_ratio, "Im Q vanished at every sample point");
  return out;
}

}  // namespace schwarz
