#pragma once

#include <cmath>
#include <limits>

#include "schwarz/error.hpp"
#include "schwarz/poly.hpp"

namespace schwarz {

inline constexpr int kDefaultJetOrder = 24;
inline constexpr double kCenterMatchTol = 1e-10;

// Truncated power series of a holomorphic function about a center:
//   f(z) = sum_k coeffs[k] (z - center)^k,  k = 0..order.
// The general-curve representation of Schwarz functions, parametrizations
// and tangent vectors. Values are immutable; every operation returns a
// fresh jet truncated to the minimum participating order.
class Jet {
 public:
  Jet(cplx center, coeff_list coeffs) : center_(center), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(cplx(0.0));
  }

  static Jet identity(cplx center, int order = kDefaultJetOrder) {
    coeff_list c(std::size_t(order) + 1, cplx(0.0));
    c[0] = center;
    if (order >= 1) c[1] = 1.0;
    return Jet(center, std::move(c));
  }

  static Jet constant(cplx value, cplx center, int order = kDefaultJetOrder) {
    coeff_list c(std::size_t(order) + 1, cplx(0.0));
    c[0] = value;
    return Jet(center, std::move(c));
  }

  // Jet of a polynomial p(z) (global coefficients) re-expanded about `center`.
  static Jet of_polynomial(const coeff_list& p, cplx center, int order = kDefaultJetOrder) {
    coeff_list shifted = poly::taylor_shift(p, center);
    shifted.resize(std::size_t(order) + 1, cplx(0.0));
    return Jet(center, std::move(shifted));
  }

  cplx center() const { return center_; }
  int order() const { return int(coeffs_.size()) - 1; }
  const coeff_list& coeffs() const { return coeffs_; }
  cplx coeff(int k) const { return k <= order() ? coeffs_[std::size_t(k)] : cplx(0.0); }

  cplx operator()(cplx z) const { return poly::eval(coeffs_, z - center_); }
  cplx value() const { return coeffs_[0]; }

  Jet truncated(int new_order) const {
    coeff_list c = coeffs_;
    c.resize(std::size_t(std::min(new_order, order())) + 1);
    return Jet(center_, std::move(c));
  }

  Jet derivative() const {
    if (order() == 0) return Jet(center_, {cplx(0.0)});
    return Jet(center_, poly::derivative(coeffs_));
  }

  // sigma(f): conjugate series, defined about the conjugate center.
  Jet conjugate() const {
    coeff_list c(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = std::conj(coeffs_[k]);
    return Jet(std::conj(center_), std::move(c));
  }

  // |last retained coefficient| * radius^order: the truncation-error proxy.
  double tail_proxy(double radius = 1.0) const {
    return std::abs(coeffs_.back()) * std::pow(radius, order());
  }

  // Heuristic radius of validity from the decay of high-order coefficients.
  // Polynomial-like tails report +inf.
  double validity_radius() const {
    const double a1 = std::abs(coeff(1));
    double r = std::numeric_limits<double>::infinity();
    const double ref = std::max(a1, std::abs(coeffs_[0]));
    if (ref == 0.0) return 0.0;
    for (int k = std::max(2, order() / 2); k <= order(); ++k) {
      double ak = std::abs(coeffs_[std::size_t(k)]);
      if (ak > 1e-14 * ref) r = std::min(r, std::pow(ref / ak, 1.0 / (k - 1)));
    }
    return 0.75 * r;
  }

  // Taylor shift to a new center. Only trustworthy within validity_radius();
  // callers that cannot tolerate extrapolation pass enforce_radius = true.
  Jet recentered(cplx new_center, bool enforce_radius = false) const {
    cplx delta = new_center - center_;
    if (enforce_radius && std::abs(delta) > validity_radius())
      raise(errc::domain_exhausted, "re-expansion outside jet validity radius");
    return Jet(new_center, poly::taylor_shift(coeffs_, delta));
  }

 private:
  cplx center_;
  coeff_list coeffs_;
};

namespace detail {

inline coeff_list truncate_list(coeff_list c, int order) {
  c.resize(std::size_t(order) + 1, cplx(0.0));
  return c;
}

inline coeff_list mul_trunc(const coeff_list& a, const coeff_list& b, int order) {
  coeff_list r(std::size_t(order) + 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size() && int(i) <= order; ++i) {
    if (a[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < b.size() && int(i + j) <= order; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1/a as a series about 0; requires a[0] != 0.
inline coeff_list recip_trunc(const coeff_list& a, int order) {
  if (a.empty() || std::abs(a[0]) < 1e-300) raise(errc::not_invertible, "series reciprocal: zero constant term");
  coeff_list r(std::size_t(order) + 1, cplx(0.0));
  r[0] = 1.0 / a[0];
  for (int n = 1; n <= order; ++n) {
    cplx acc = 0.0;
    for (int k = 1; k <= n; ++k)
      if (std::size_t(k) < a.size()) acc += a[std::size_t(k)] * r[std::size_t(n - k)];
    r[std::size_t(n)] = -acc / a[0];
  }
  return r;
}

// f(g) for series about 0 where g[0] may carry a tiny residual offset.
inline coeff_list compose_trunc(const coeff_list& f, const coeff_list& g, int order) {
  coeff_list r(std::size_t(order) + 1, cplx(0.0));
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    r = mul_trunc(r, g, order);
    r[0] += *it;
  }
  return r;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b) {
  int n = std::min(a.order(), b.order());
  coeff_list c(std::size_t(n) + 1);
  for (int k = 0; k <= n; ++k) c[std::size_t(k)] = a.coeff(k) + b.coeff(k);
  return Jet(a.center(), std::move(c));
}

inline Jet operator-(const Jet& a, const Jet& b) {
  int n = std::min(a.order(), b.order());
  coeff_list c(std::size_t(n) + 1);
  for (int k = 0; k <= n; ++k) c[std::size_t(k)] = a.coeff(k) - b.coeff(k);
  return Jet(a.center(), std::move(c));
}

inline Jet operator*(const Jet& a, const Jet& b) {
  int n = std::min(a.order(), b.order());
  return Jet(a.center(), detail::mul_trunc(a.coeffs(), b.coeffs(), n));
}

inline Jet operator*(cplx s, const Jet& a) { return Jet(a.center(), poly::scale(a.coeffs(), s)); }

inline Jet reciprocal(const Jet& a) {
  return Jet(a.center(), detail::recip_trunc(a.coeffs(), a.order()));
}

inline Jet operator/(const Jet& a, const Jet& b) {
  int n = std::min(a.order(), b.order());
  return Jet(a.center(), detail::mul_trunc(a.coeffs(), detail::recip_trunc(b.coeffs(), n), n));
}

// f o g about g's center. Requires g(center of g) to land on f's center
// within kCenterMatchTol; with auto_recenter the outer jet is Taylor-shifted
// to the inner value first (subject to the validity-radius heuristic).
inline Jet jet_compose(const Jet& f, const Jet& g, bool auto_recenter = false) {
  cplx inner_value = g.value();
  const Jet* outer = &f;
  Jet shifted = f;
  double mismatch = std::abs(inner_value - f.center());
  if (mismatch > kCenterMatchTol) {
    if (!auto_recenter)
      raise(errc::center_mismatch, "inner value does not match outer center (|delta|=" +
                                       std::to_string(mismatch) + ")");
    shifted = f.recentered(inner_value, /*enforce_radius=*/true);
    outer = &shifted;
  }
  int n = std::min(f.order(), g.order());
  coeff_list g_rel = detail::truncate_list(g.coeffs(), n);
  g_rel[0] = inner_value - outer->center();  // tiny residual kept for accuracy
  coeff_list r = detail::compose_trunc(detail::truncate_list(outer->coeffs(), n), g_rel, n);
  return Jet(g.center(), std::move(r));
}

// Series reversion: g with g o f = identity to truncation order.
// Centers swap: center(g) = f(center(f)).
inline Jet jet_invert(const Jet& f) {
  const int n = f.order();
  if (n < 1 || std::abs(f.coeff(1)) <= 1e-12)
    raise(errc::not_invertible, "derivative vanishes at the center");
  // Work with F(u) = f(center + u) - f(center), revert by series Newton.
  coeff_list F = f.coeffs();
  F[0] = 0.0;
  coeff_list w(std::size_t(n) + 1, cplx(0.0));  // the identity series
  if (n >= 1) w[1] = 1.0;
  coeff_list G = w;
  G[1] = 1.0 / f.coeff(1);
  coeff_list Fd = poly::derivative(F);
  int steps = 1;
  while ((1 << steps) <= n + 1) ++steps;
  for (int it = 0; it <= steps; ++it) {
    coeff_list FG = detail::compose_trunc(F, G, n);
    coeff_list num(std::size_t(n) + 1, cplx(0.0));
    for (int k = 0; k <= n; ++k) num[std::size_t(k)] = FG[std::size_t(k)] - w[std::size_t(k)];
    coeff_list FdG = detail::compose_trunc(detail::truncate_list(Fd, n), G, n);
    coeff_list corr = detail::mul_trunc(num, detail::recip_trunc(FdG, n), n);
    for (int k = 0; k <= n; ++k) G[std::size_t(k)] -= corr[std::size_t(k)];
  }
  coeff_list out = G;
  out[0] = f.center();
  return Jet(f.value(), std::move(out));
}

// Schwarzian derivative {f, z} = (f''/f')' - (1/2)(f''/f')^2, order N-3.
inline Jet schwarzian(const Jet& f) {
  if (f.order() < 3) raise(errc::grid_too_coarse, "schwarzian needs order >= 3");
  if (std::abs(f.coeff(1)) <= 1e-12) raise(errc::not_invertible, "f'(center) = 0");
  const int n = f.order() - 3;
  Jet f1 = f.derivative().truncated(n + 1);
  Jet f2 = f.derivative().derivative().truncated(n + 1);
  Jet u = f2 / f1;                       // order n+1
  Jet u1 = u.derivative();               // order n
  Jet u2 = (u * u).truncated(n);
  return (u1 - 0.5 * u2).truncated(n);
}

inline double jet_distance(const Jet& a, const Jet& b) {
  double d = std::abs(a.center() - b.center());
  int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

}  // namespace schwarz
