#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/roots.hpp"

namespace schwarz {

struct DiskCount {
  int zeros = 0;
  int poles = 0;
};

// Rational function p(z)/q(z), denominator normalized monic. Factories that
// can introduce common factors go through root-cancelled reduction so the
// no-common-root invariant holds.
class PolyRat {
 public:
  PolyRat() : num_{cplx(0.0)}, den_{cplx(1.0)} {}

  PolyRat(coeff_list num, coeff_list den) : num_(poly::trim(std::move(num), 1e-300)), den_(poly::trim(std::move(den), 1e-300)) {
    double dmax = 0.0;
    for (const auto& d : den_) dmax = std::max(dmax, std::abs(d));
    if (dmax == 0.0) raise(errc::degenerate, "denominator identically zero");
    cplx lead = den_.back();
    for (auto& d : den_) d /= lead;
    for (auto& n : num_) n /= lead;
  }

  static PolyRat polynomial(coeff_list num) { return PolyRat(std::move(num), {cplx(1.0)}); }

  // Cancel common zero/pole pairs (root clustering) and rebuild.
  static PolyRat reduced(const coeff_list& num, const coeff_list& den, double tol = kRootClusterTol) {
    std::vector<Root> zs = polynomial_roots(num, tol);
    std::vector<Root> ps = polynomial_roots(den, tol);
    for (auto& z : zs) {
      for (auto& p : ps) {
        if (p.multiplicity == 0 || z.multiplicity == 0) continue;
        if (std::abs(z.location - p.location) <= tol * std::max(1.0, std::abs(z.location))) {
          int cancel = std::min(z.multiplicity, p.multiplicity);
          z.multiplicity -= cancel;
          p.multiplicity -= cancel;
        }
      }
    }
    std::vector<cplx> zr, pr;
    for (const auto& z : zs)
      for (int k = 0; k < z.multiplicity; ++k) zr.push_back(z.location);
    for (const auto& p : ps)
      for (int k = 0; k < p.multiplicity; ++k) pr.push_back(p.location);
    cplx lead_num = poly::trim(num, 1e-14).back();
    cplx lead_den = poly::trim(den, 1e-14).back();
    return PolyRat(poly::from_roots(zr, lead_num / lead_den), poly::from_roots(pr));
  }

  const coeff_list& num() const { return num_; }
  const coeff_list& den() const { return den_; }
  bool is_polynomial() const { return den_.size() == 1; }

  cplx operator()(cplx z) const { return poly::eval(num_, z) / poly::eval(den_, z); }

  // Value and first `n_derivs` derivatives at z via quotient rules (no
  // cancellation noise). Supports n_derivs <= 3.
  std::array<cplx, 4> eval_derivatives(cplx z, int n_derivs = 2) const {
    std::array<cplx, 4> out{};
    cplx p = poly::eval(num_, z), q = poly::eval(den_, z);
    out[0] = p / q;
    if (n_derivs >= 1) {
      cplx p1 = poly::eval(poly::derivative(num_), z);
      cplx q1 = poly::eval(poly::derivative(den_), z);
      out[1] = (p1 * q - p * q1) / (q * q);
      if (n_derivs >= 2) {
        cplx p2 = poly::eval(poly::derivative(poly::derivative(num_)), z);
        cplx q2 = poly::eval(poly::derivative(poly::derivative(den_)), z);
        out[2] = (p2 * q * q - 2.0 * p1 * q1 * q - p * q2 * q + 2.0 * p * q1 * q1) / (q * q * q);
        if (n_derivs >= 3) {
          cplx p3 = poly::eval(poly::derivative(poly::derivative(poly::derivative(num_))), z);
          cplx q3 = poly::eval(poly::derivative(poly::derivative(poly::derivative(den_))), z);
          // Third quotient derivative, assembled from N = p'q - pq' and its derivatives.
          cplx N = p1 * q - p * q1;
          cplx N1 = p2 * q - p * q2;
          cplx N2 = p3 * q + p2 * q1 - p1 * q2 - p * q3;
          // h'' = (N'q - 2Nq')/q^3; differentiate once more.
          cplx M = N1 * q - 2.0 * N * q1;
          cplx M1 = N2 * q + N1 * q1 - 2.0 * (N1 * q1 + N * q2);
          out[3] = (M1 * q - 3.0 * M * q1) / (q * q * q * q);
        }
      }
    }
    return out;
  }

  // Derivative as a reduced rational function (for root analysis).
  PolyRat derivative_reduced() const {
    if (is_polynomial()) return PolyRat::polynomial(poly::derivative(num_));
    coeff_list n = poly::add(poly::mul(poly::derivative(num_), den_),
                             poly::scale(poly::mul(num_, poly::derivative(den_)), -1.0));
    coeff_list d = poly::mul(den_, den_);
    return PolyRat::reduced(n, d);
  }

  std::vector<Root> zeros() const { return polynomial_roots(num_); }
  std::vector<Root> poles() const { return polynomial_roots(den_); }

 private:
  coeff_list num_, den_;
};

inline constexpr double kBoundaryRootTol = 1e-8;

// Multiplicity-counted zeros and poles strictly inside |z| < radius.
inline DiskCount count_zeros_poles(const PolyRat& r, double radius) {
  DiskCount out;
  for (const auto& z : r.zeros()) {
    double d = std::abs(std::abs(z.location) - radius);
    if (d <= kBoundaryRootTol) raise(errc::boundary_root, "zero on the counting circle");
    if (std::abs(z.location) < radius) out.zeros += z.multiplicity;
  }
  for (const auto& p : r.poles()) {
    double d = std::abs(std::abs(p.location) - radius);
    if (d <= kBoundaryRootTol) raise(errc::boundary_root, "pole on the counting circle");
    if (std::abs(p.location) < radius) out.poles += p.multiplicity;
  }
  return out;
}

// Winding number of t -> f(radius e^{it}) about 0, by adaptive argument
// tracking with |delta arg| < pi/2 per accepted step.
template <typename F>
int winding_number(F&& f, double radius, int initial_samples = 256, int max_depth = 24) {
  const double pi = std::numbers::pi;
  double total = 0.0;
  cplx prev = f(radius);
  double t_prev = 0.0;
  auto advance = [&](double t1, cplx w1, auto&& self, int depth) -> void {
    double darg = std::arg(w1 / prev);
    if (std::abs(darg) >= 0.5 * pi && depth < max_depth) {
      double tm = 0.5 * (t_prev + t1);
      cplx wm = f(radius * std::exp(cplx(0.0, tm)));
      self(tm, wm, self, depth + 1);
      self(t1, w1, self, depth + 1);
      return;
    }
    total += darg;
    prev = w1;
    t_prev = t1;
  };
  for (int k = 1; k <= initial_samples; ++k) {
    double t = 2.0 * pi * double(k) / double(initial_samples);
    cplx w = f(radius * std::exp(cplx(0.0, t)));
    advance(t, w, advance, 0);
  }
  return int(std::lround(total / (2.0 * pi)));
}

}  // namespace schwarz
