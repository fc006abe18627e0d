#pragma once

#include <optional>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/jet.hpp"
#include "schwarz/polyrat.hpp"

namespace schwarz {

// Real zero of the velocity field with its local data: a pivot point
// (simple zero, the tangent rotates at rate v'(x0) = 1/lambda) or a point
// of tangency (double zero, the Kasner invariant drifts at -2/(3 lambda)).
struct StationaryPoint {
  double x0;
  int multiplicity;
  cplx lambda;  // Res(1/v; x0)
  std::optional<double> theta_rate;
  std::optional<double> kasner_rate;
  double rate_residual = 0.0;  // |v'(x0) - 1/lambda| or |(v'')^2/v''' + 2/(3 lambda)|
};

// Holomorphic extension v(z) of a real-analytic velocity v(x): rational
// with real coefficients, driving dS/dt = -2 i v(S).
class VelocityField {
 public:
  explicit VelocityField(PolyRat v) : v_(std::move(v)) {
    if (!poly::all_real(v_.num(), 1e-12) || !poly::all_real(v_.den(), 1e-12))
      raise(errc::validation, "velocity field must have real coefficients");
  }

  static VelocityField polynomial(coeff_list c) { return VelocityField(PolyRat::polynomial(std::move(c))); }

  const PolyRat& rational() const { return v_; }

  cplx operator()(cplx z) const { return v_(z); }
  cplx deriv(cplx z, int k) const { return v_.eval_derivatives(z, k)[std::size_t(k)]; }

  // Jet-valued evaluation v(S) for a jet S (used by the flow integrator).
  Jet eval_on_jet(const Jet& s) const {
    Jet num = eval_poly_on_jet(v_.num(), s);
    if (v_.is_polynomial()) return num;
    return num / eval_poly_on_jet(v_.den(), s);
  }

  std::vector<Root> zeros() const { return polynomial_roots(v_.num()); }

  double distance_to_zero(cplx z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& r : zeros()) d = std::min(d, std::abs(z - r.location));
    return d;
  }

 private:
  static Jet eval_poly_on_jet(const coeff_list& p, const Jet& s) {
    Jet r = Jet::constant(0.0, s.center(), s.order());
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      r = r * s;
      r = r + Jet::constant(*it, s.center(), s.order());
    }
    return r;
  }

  PolyRat v_;
};

// Res(1/v; x0) for a zero x0 of v of the given multiplicity: with
// v = (z-x0)^m u(z), the residue is the (m-1) coefficient of q/u.
inline cplx residue_of_reciprocal(const VelocityField& v, cplx x0, int multiplicity) {
  const int m = multiplicity;
  const int order = m + 6;
  Jet p = Jet::of_polynomial(v.rational().num(), x0, order);
  Jet q = Jet::of_polynomial(v.rational().den(), x0, order);
  coeff_list u(std::size_t(order - m) + 1);
  for (int k = 0; k <= order - m; ++k) u[std::size_t(k)] = p.coeff(k + m);
  Jet ratio = Jet(x0, detail::truncate_list(q.coeffs(), order - m)) / Jet(x0, std::move(u));
  return ratio.coeff(m - 1);
}

// Real zeros of v with multiplicity and the Prop-3.8 rates.
inline std::vector<StationaryPoint> stationary_points(const VelocityField& v) {
  std::vector<StationaryPoint> out;
  for (const auto& root : v.zeros()) {
    if (std::abs(root.location.imag()) > 1e-8 * std::max(1.0, std::abs(root.location))) continue;
    StationaryPoint sp;
    sp.x0 = root.location.real();
    sp.multiplicity = root.multiplicity;
    sp.lambda = residue_of_reciprocal(v, cplx(sp.x0), root.multiplicity);
    if (root.multiplicity == 1) {
      double vp = v.deriv(cplx(sp.x0), 1).real();
      sp.theta_rate = vp;
      sp.rate_residual = std::abs(cplx(vp) - 1.0 / sp.lambda);
    } else if (std::abs(sp.lambda) > 1e-12) {
      sp.kasner_rate = (-2.0 / (3.0 * sp.lambda)).real();
      if (root.multiplicity == 2) {
        auto d = v.rational().eval_derivatives(cplx(sp.x0), 3);
        sp.rate_residual = std::abs(d[2] * d[2] / d[3] - cplx(*sp.kasner_rate));
      }
    }
    out.push_back(sp);
  }
  std::sort(out.begin(), out.end(), [](const StationaryPoint& a, const StationaryPoint& b) { return a.x0 < b.x0; });
  return out;
}

}  // namespace schwarz
