#pragma once

#include <random>

#include "schwarz/jet.hpp"
#include "schwarz/lorentz.hpp"

namespace testutil {

using schwarz::cplx;
using schwarz::coeff_list;
using schwarz::Jet;

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline cplx random_unit_disk(std::mt19937_64& g, double radius = 1.0) {
  for (;;) {
    cplx z(uniform(g, -radius, radius), uniform(g, -radius, radius));
    if (std::abs(z) <= radius) return z;
  }
}

// Random invertible jet with geometrically decaying coefficients.
inline Jet random_jet(std::mt19937_64& g, int order, cplx center = 0.0, double decay = 0.6) {
  coeff_list c(std::size_t(order) + 1);
  c[0] = random_unit_disk(g);
  cplx a1 = random_unit_disk(g);
  while (std::abs(a1) < 0.3) a1 = random_unit_disk(g);
  c[1] = a1;
  double scale = 1.0;
  for (int k = 2; k <= order; ++k) {
    scale *= decay;
    c[std::size_t(k)] = scale * random_unit_disk(g);
  }
  return Jet(center, std::move(c));
}

// Coefficients about `center` recovered from point values on a small
// circle: the discrete Cauchy integral at n sample points.
template <typename F>
coeff_list cauchy_coefficients(F&& f, cplx center, int count, int n_points = 12, double rho = 0.15) {
  coeff_list out(std::size_t(count) + 1, cplx(0.0));
  std::vector<cplx> values(static_cast<std::size_t>(n_points));
  for (int j = 0; j < n_points; ++j) {
    cplx w = center + rho * std::exp(cplx(0.0, 2.0 * std::numbers::pi * j / n_points));
    values[std::size_t(j)] = f(w);
  }
  for (int k = 0; k <= count; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < n_points; ++j)
      acc += values[std::size_t(j)] * std::exp(cplx(0.0, -2.0 * std::numbers::pi * j * k / n_points));
    out[std::size_t(k)] = acc / (double(n_points) * std::pow(rho, k));
  }
  return out;
}

inline schwarz::CircleCoord random_circle_coord(std::mt19937_64& g) {
  for (;;) {
    schwarz::CircleCoord c{{uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0),
                            0.7 * uniform(g, -1.0, 1.0)}};
    if (schwarz::minkowski_dot(c, c) > 0.05) return schwarz::normalized(c);
  }
}

inline schwarz::MobiusMap random_schwarz_mobius(std::mt19937_64& g) {
  return schwarz::from_lorentz(random_circle_coord(g));
}

}  // namespace testutil
