#pragma once

#include <cmath>
#include <string>

#include "schwarz/error.hpp"
#include "schwarz/jet.hpp"

namespace schwarz {

// 2x2 complex matrix acting as z -> (az+b)/(cz+d), stored up to nonzero
// complex scale. Schwarz functions of circles live here in the canonical
// form (omega z + iB)/(iA z + conj(omega)) with A, B real.
struct MobiusMap {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MobiusMap translation(cplx t) { return {1.0, t, 0.0, 1.0}; }
  static MobiusMap scaling(cplx s) { return {s, 0.0, 0.0, 1.0}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  double norm() const { return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d))); }

  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  cplx derivative(cplx z) const {
    cplx q = c * z + d;
    return det() / (q * q);
  }
  cplx second_derivative(cplx z) const {
    cplx q = c * z + d;
    return -2.0 * c * det() / (q * q * q);
  }

  MobiusMap adjugate() const { return {d, -b, -c, a}; }
  MobiusMap conjugated() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
  MobiusMap scaled(cplx s) const { return {s * a, s * b, s * c, s * d}; }
};

inline MobiusMap operator*(const MobiusMap& m, const MobiusMap& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Residual of M ~ N as projective points: align N to M by the Frobenius
// inner product, then compare relative to |M|.
inline double projective_distance(const MobiusMap& m, const MobiusMap& n) {
  cplx dot = m.a * std::conj(n.a) + m.b * std::conj(n.b) + m.c * std::conj(n.c) + m.d * std::conj(n.d);
  double nn = std::norm(n.a) + std::norm(n.b) + std::norm(n.c) + std::norm(n.d);
  double nm = std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
  if (nn == 0.0 || nm == 0.0) return nm == 0.0 && nn == 0.0 ? 0.0 : 1.0;
  cplx s = dot / nn;
  MobiusMap r = n.scaled(s);
  double diff = std::sqrt(std::norm(m.a - r.a) + std::norm(m.b - r.b) + std::norm(m.c - r.c) + std::norm(m.d - r.d));
  return diff / nm;
}

// Canonical Schwarz data: S(z) = (omega z + iB)/(iA z + conj(omega)).
struct SchwarzForm {
  cplx omega;
  double A;
  double B;

  double det() const { return std::norm(omega) + A * B; }
  MobiusMap matrix() const { return {omega, cplx(0.0, B), cplx(0.0, A), std::conj(omega)}; }
};

// Rescale a Schwarz-form matrix (given up to complex scale) to canonical
// form. Returns false when no complex scale achieves the form.
inline bool try_schwarz_form(const MobiusMap& m, SchwarzForm& out, double tol = 1e-9) {
  double scale = m.norm();
  if (scale == 0.0) return false;
  double t = tol * scale;
  cplx lambda;
  if (std::max(std::abs(m.a), std::abs(m.d)) > t && std::min(std::abs(m.a), std::abs(m.d)) > 0.0) {
    if (std::abs(std::abs(m.a) - std::abs(m.d)) > t) return false;
    // lambda a = conj(lambda d)  =>  lambda^2/|lambda|^2 = conj(d)/a
    lambda = std::exp(cplx(0.0, 0.5 * std::arg(std::conj(m.d) / m.a)));
  } else {
    // Pure (iB)/(iAz) shape: make the off-diagonals imaginary.
    cplx ref = std::abs(m.b) >= std::abs(m.c) ? m.b : m.c;
    lambda = std::exp(cplx(0.0, 0.5 * std::numbers::pi - std::arg(ref)));
  }
  // |lambda| = 1 keeps the caller's real scale.
  MobiusMap n = m.scaled(lambda);
  double resid = std::abs(n.a - std::conj(n.d)) + std::abs(n.b.real()) + std::abs(n.c.real());
  if (!(resid <= 4.0 * tol * scale)) return false;
  out.omega = 0.5 * (n.a + std::conj(n.d));
  out.B = n.b.imag();
  out.A = n.c.imag();
  return true;
}

inline SchwarzForm schwarz_form(const MobiusMap& m, double tol = 1e-9) {
  SchwarzForm f;
  if (!try_schwarz_form(m, f, tol)) raise(errc::nonreal_trace, "matrix is not a Schwarz-form map");
  return f;
}

inline bool is_schwarz_form(const MobiusMap& m, double tol = 1e-9) {
  SchwarzForm f;
  return try_schwarz_form(m, f, tol);
}

// Schwarz function of the circle M(R): S = sigma(M) o M^{-1}. The matrix
// conj(M) adj(M) lands exactly in canonical form.
inline MobiusMap schwarz_of_mobius(const MobiusMap& m) {
  if (std::abs(m.det()) <= 1e-12 * m.norm() * m.norm()) raise(errc::degenerate, "det(M) = 0");
  return m.conjugated() * m.adjugate();
}

// Symmetric-space product S.T = S o conj(T) o S; the Schwarz function of
// the reflection of circle T in circle S.
inline MobiusMap mobius_product(const MobiusMap& s, const MobiusMap& t) {
  if (std::abs(s.det()) <= 1e-12 * s.norm() * s.norm() || std::abs(t.det()) <= 1e-12 * t.norm() * t.norm())
    raise(errc::degenerate, "singular factor in product");
  return s * t.conjugated() * s;
}

// Hermitian conjugation lambda(phi) S = sigma(phi) o S o phi^{-1}: the
// Schwarz function of phi(Gamma_S).
inline MobiusMap hermitian_conjugate(const MobiusMap& phi, const MobiusMap& s) {
  if (std::abs(phi.det()) <= 1e-12 * phi.norm() * phi.norm()) raise(errc::not_invertible, "phi is singular");
  return phi.conjugated() * s * phi.adjugate();
}

// Taylor expansion of the map about `center` (center must avoid the pole).
inline Jet mobius_to_jet(const MobiusMap& m, cplx center, int order = kDefaultJetOrder) {
  cplx q = m.c * center + m.d;
  if (std::abs(q) <= 1e-14 * m.norm() * std::max(1.0, std::abs(center)))
    raise(errc::out_of_domain, "expansion center at the pole");
  coeff_list c(std::size_t(order) + 1);
  c[0] = (m.a * center + m.b) / q;
  cplx ratio = -m.c / q;
  cplx term = m.det() / (q * q);
  for (int k = 1; k <= order; ++k) {
    c[std::size_t(k)] = term;
    term *= ratio;
  }
  return Jet(center, std::move(c));
}

}  // namespace schwarz
