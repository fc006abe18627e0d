#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace schwarz {

using cplx = std::complex<double>;
using coeff_list = std::vector<cplx>;

// Dense polynomial helpers on coefficient lists c[0] + c[1] z + ... + c[n] z^n.
namespace poly {

inline cplx eval(const coeff_list& c, cplx z) {
  cplx r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

inline coeff_list derivative(const coeff_list& c) {
  if (c.size() <= 1) return {cplx(0.0)};
  coeff_list d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
  return d;
}

inline coeff_list add(const coeff_list& a, const coeff_list& b) {
  coeff_list r(std::max(a.size(), b.size()), cplx(0.0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

inline coeff_list scale(coeff_list a, cplx s) {
  for (auto& x : a) x *= s;
  return a;
}

inline coeff_list mul(const coeff_list& a, const coeff_list& b) {
  coeff_list r(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Drop trailing coefficients below `tol` relative to the largest one.
inline coeff_list trim(coeff_list c, double tol = 0.0) {
  double big = 0.0;
  for (const auto& x : c) big = std::max(big, std::abs(x));
  double cut = tol * big;
  while (c.size() > 1 && std::abs(c.back()) <= cut) c.pop_back();
  return c;
}

inline int degree(const coeff_list& c) {
  for (int k = int(c.size()) - 1; k >= 0; --k)
    if (c[std::size_t(k)] != cplx(0.0)) return k;
  return 0;
}

inline coeff_list from_roots(const std::vector<cplx>& roots, cplx lead = 1.0) {
  coeff_list c{lead};
  for (const auto& r : roots) {
    coeff_list next(c.size() + 1, cplx(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

// Coefficients of p(z + a): the Taylor shift used to re-center series.
inline coeff_list taylor_shift(const coeff_list& c, cplx a) {
  coeff_list r = c;
  // Synthetic division by (z - a), repeated; classical Horner scheme.
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    for (std::size_t k = r.size() - 1; k >= i + 1; --k) r[k - 1] += a * r[k];
  return r;
}

inline bool all_real(const coeff_list& c, double tol) {
  double big = 0.0;
  for (const auto& x : c) big = std::max(big, std::abs(x));
  for (const auto& x : c)
    if (std::abs(x.imag()) > tol * std::max(1.0, big)) return false;
  return true;
}

}  // namespace poly
}  // namespace schwarz
