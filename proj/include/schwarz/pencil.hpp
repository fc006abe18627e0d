#pragma once

#include <cmath>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/mobius.hpp"

namespace schwarz {

enum class PencilKind { hyperbolic, elliptic, parabolic };

inline const char* pencil_kind_name(PencilKind k) {
  switch (k) {
    case PencilKind::hyperbolic: return "hyperbolic";
    case PencilKind::elliptic: return "elliptic";
    case PencilKind::parabolic: return "parabolic";
  }
  return "?";
}

struct PencilClass {
  PencilKind kind;
  double trace;
};

enum class CausalType { timelike, spacelike, lightlike };

inline const char* causal_type_name(CausalType c) {
  switch (c) {
    case CausalType::timelike: return "timelike";
    case CausalType::spacelike: return "spacelike";
    case CausalType::lightlike: return "lightlike";
  }
  return "?";
}

// Infinitesimal generator matrix of g(z) = i(a2 z^2 + a1 z + a0).
// Trace-free, so exp(tX) = C(t) I + S(t) X with C'' = -det(X) C.
struct PencilGenerator {
  double a0, a1, a2;

  MobiusMap matrix() const {
    return {cplx(0.0, 0.5 * a1), cplx(0.0, a0), cplx(0.0, -a2), cplx(0.0, -0.5 * a1)};
  }
  // <g,g> = a1^2/4 - a2 a0 = det(X); sign gives the causal type.
  double gg() const { return 0.25 * a1 * a1 - a2 * a0; }
  double magnitude() const { return std::abs(a0) + std::abs(a1) + std::abs(a2); }
};

namespace detail {

// cos(sqrt(d) t) and sin(sqrt(d) t)/sqrt(d), valid for either sign of d.
inline void generator_cos_sin(double d, double t, double& c_out, double& s_out) {
  double u = d * t * t;
  if (std::abs(u) < 1e-8) {
    c_out = 1.0 - 0.5 * u + u * u / 24.0;
    s_out = t * (1.0 - u / 6.0 + u * u / 120.0);
  } else if (d > 0.0) {
    double k = std::sqrt(d);
    c_out = std::cos(k * t);
    s_out = std::sin(k * t) / k;
  } else {
    double k = std::sqrt(-d);
    c_out = std::cosh(k * t);
    s_out = std::sinh(k * t) / k;
  }
}

}  // namespace detail

// Closed-form geodesic through the identity: S(t, z) = exp(t X) z with
// generator g(z) = i(a2 z^2 + a1 z + a0). det(exp(tX)) = 1.
inline MobiusMap pencil_solution(double a0, double a1, double a2, double t) {
  PencilGenerator gen{a0, a1, a2};
  if (gen.magnitude() == 0.0) raise(errc::zero_vector, "zero generator");
  double c, s;
  detail::generator_cos_sin(gen.gg(), t, c, s);
  MobiusMap x = gen.matrix();
  return {c + s * x.a, s * x.b, s * x.c, c + s * x.d};
}

inline double pencil_trace(double a0, double a1, double a2, double t) {
  PencilGenerator gen{a0, a1, a2};
  double c, s;
  detail::generator_cos_sin(gen.gg(), t, c, s);
  return 2.0 * c;
}

// Normalize det = 1, pick the sign with tau >= 0, classify by the trace
// criterion tau > 2 / < 2 / = 2 (tolerance 1e-9).
inline PencilClass classify(const MobiusMap& s, double tol = 1e-9) {
  SchwarzForm f;
  if (!try_schwarz_form(s, f)) raise(errc::nonreal_trace, "no scaling makes the trace real");
  double det = f.det();
  if (det <= 1e-12) raise(errc::degenerate, "det(S) <= 0 cannot be normalized");
  double tau = 2.0 * f.omega.real() / std::sqrt(det);
  tau = std::abs(tau);
  PencilClass out{PencilKind::parabolic, tau};
  if (tau > 2.0 + tol)
    out.kind = PencilKind::hyperbolic;
  else if (tau < 2.0 - tol)
    out.kind = PencilKind::elliptic;
  return out;
}

inline CausalType causal_type(double a0, double a1, double a2, double tol = 1e-12) {
  double disc = a1 * a1 - 4.0 * a2 * a0;
  if (disc < -tol) return CausalType::timelike;
  if (disc > tol) return CausalType::spacelike;
  return CausalType::lightlike;
}

// Max over interior grid points of |tau_tt + <g,g> tau| with tau from the
// pencil traces and tau_tt by central differences.
inline double trace_ode_residual(double a0, double a1, double a2, const std::vector<double>& t_grid) {
  if (t_grid.size() < 5) raise(errc::grid_too_coarse, "need at least 5 grid points");
  double h = t_grid[1] - t_grid[0];
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i)
    if (std::abs((t_grid[i + 1] - t_grid[i]) - h) > 1e-12 * std::max(1.0, std::abs(h)))
      raise(errc::grid_too_coarse, "grid must be uniform");
  PencilGenerator gen{a0, a1, a2};
  double gg = gen.gg();
  std::vector<double> tau(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) tau[i] = pencil_trace(a0, a1, a2, t_grid[i]);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
    double tau_tt = (tau[i + 1] - 2.0 * tau[i] + tau[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(tau_tt + gg * tau[i]));
  }
  return worst;
}

}  // namespace schwarz
