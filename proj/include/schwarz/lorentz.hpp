#pragma once

#include <array>
#include <cmath>

#include "schwarz/error.hpp"
#include "schwarz/mobius.hpp"

namespace schwarz {

// Homogeneous coordinate of a circle on the hyperboloid <x,x> = 1 in
// Lorentz space R^3_1, identified with -x. The canonical representative
// makes the first component of magnitude > 1e-12 positive.
struct CircleCoord {
  std::array<double, 4> x{0.0, 1.0, 0.0, 0.0};

  double operator[](int i) const { return x[std::size_t(i)]; }
};

inline double minkowski_dot(const CircleCoord& a, const CircleCoord& b) {
  return a.x[0] * b.x[0] + a.x[1] * b.x[1] + a.x[2] * b.x[2] - a.x[3] * b.x[3];
}

inline CircleCoord canonical_sign(CircleCoord a) {
  for (double v : a.x) {
    if (std::abs(v) > 1e-12) {
      if (v < 0.0)
        for (auto& w : a.x) w = -w;
      return a;
    }
  }
  return a;
}

// Distance between antipodal pairs +-x, relative to the component scale
// (the hyperboloid is non-compact, so identities are ulp-level relative).
inline double circle_distance(const CircleCoord& a, const CircleCoord& b) {
  double dp = 0.0, dm = 0.0, scale = 1.0;
  for (int i = 0; i < 4; ++i) {
    dp = std::max(dp, std::abs(a.x[std::size_t(i)] - b.x[std::size_t(i)]));
    dm = std::max(dm, std::abs(a.x[std::size_t(i)] + b.x[std::size_t(i)]));
    scale = std::max({scale, std::abs(a.x[std::size_t(i)]), std::abs(b.x[std::size_t(i)])});
  }
  return std::min(dp, dm) / scale;
}

inline CircleCoord normalized(CircleCoord a) {
  double q = minkowski_dot(a, a);
  if (q <= 1e-12) raise(errc::lightlike_coordinate, "<x,x> <= 0 cannot normalize to 1");
  double s = 1.0 / std::sqrt(q);
  for (auto& v : a.x) v *= s;
  return canonical_sign(a);
}

// omega = x2 + i x1, A = x4 - x3, B = -(x3 + x4).
inline CircleCoord to_lorentz(const MobiusMap& s) {
  SchwarzForm f;
  if (!try_schwarz_form(s, f)) raise(errc::nonreal_trace, "not a Schwarz-form map");
  if (f.det() <= 1e-12) raise(errc::lightlike_coordinate, "det(S) = 0 (point circle)");
  CircleCoord c;
  c.x = {f.omega.imag(), f.omega.real(), -0.5 * (f.A + f.B), 0.5 * (f.A - f.B)};
  return normalized(c);
}

inline MobiusMap from_lorentz(const CircleCoord& c) {
  SchwarzForm f;
  f.omega = cplx(c[1], c[0]);
  f.A = c[3] - c[2];
  f.B = -(c[2] + c[3]);
  return f.matrix();
}

// x.y = 2<x,y> x - y on the unit hyperboloid.
inline CircleCoord quadric_product(const CircleCoord& a, const CircleCoord& b) {
  double s = 2.0 * minkowski_dot(a, b);
  CircleCoord r;
  for (int i = 0; i < 4; ++i) r.x[std::size_t(i)] = s * a.x[std::size_t(i)] - b.x[std::size_t(i)];
  return canonical_sign(r);
}

// Planar geometry of the circle for rendering: a true circle (A != 0) or a
// line through `point` with unit `direction`.
struct CircleGeometry {
  bool is_line = false;
  cplx center;     // circle case
  double radius = 0.0;
  cplx point;      // line case
  cplx direction;
};

inline CircleGeometry circle_geometry(const MobiusMap& s) {
  SchwarzForm f = schwarz_form(s);
  CircleGeometry g;
  double scale = std::abs(f.omega) + std::abs(f.A) + std::abs(f.B);
  if (std::abs(f.A) > 1e-12 * scale) {
    g.is_line = false;
    g.center = cplx(0.0, 1.0) * std::conj(f.omega) / f.A;
    double r2 = f.det() / (f.A * f.A);
    if (r2 <= 0.0) raise(errc::lightlike_coordinate, "point circle has no geometry");
    g.radius = std::sqrt(r2);
  } else {
    // A = 0: the locus 2 Im(omega z) + B = 0.
    g.is_line = true;
    double mod = std::abs(f.omega);
    if (mod == 0.0) raise(errc::degenerate, "no curve: omega = 0 and A = 0");
    g.direction = std::conj(f.omega) / mod;
    g.point = cplx(0.0, -0.5 * f.B) * std::conj(f.omega) / (mod * mod);
  }
  return g;
}

}  // namespace schwarz
