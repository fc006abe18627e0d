#pragma once

#include <functional>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/poly.hpp"

namespace schwarz {

struct OdeOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double max_step_fraction = 1e-2;  // of the span
  double min_step = 1e-14;
};

// Dormand-Prince 5(4) embedded pair on a complex state vector. Integrates
// from t0 through every requested output time; `observe` is called at each
// of them (including t0).
inline void integrate_rk45(const std::function<void(double, const std::vector<cplx>&, std::vector<cplx>&)>& rhs,
                           std::vector<cplx> y, double t0, const std::vector<double>& t_out,
                           const std::function<void(double, const std::vector<cplx>&)>& observe,
                           const OdeOptions& opt = {}) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  if (t_out.empty()) return;
  const std::size_t n = y.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);

  double span = std::abs(t_out.back() - t0);
  for (double t : t_out) span = std::max(span, std::abs(t - t0));
  if (span == 0.0) {
    for (double t : t_out) observe(t, y);
    return;
  }
  double max_step = std::max(opt.max_step_fraction * span, 16.0 * opt.min_step);

  double t = t0;
  for (double target : t_out) {
    if (target == t) {
      observe(target, y);
      continue;
    }
    double dir = target > t ? 1.0 : -1.0;
    double h = dir * std::min(max_step, std::abs(target - t));
    rhs(t, y, k1);
    while (dir * (target - t) > 0.0) {
      bool final_step = std::abs(h) >= std::abs(target - t);
      if (final_step) h = target - t;
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
      rhs(t + h / 5.0, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      rhs(t + 3.0 * h / 10.0, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(t + 4.0 * h / 5.0, tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs(t + 8.0 * h / 9.0, tmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs(t + h, tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      rhs(t + h, ynew, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err = std::max(err, std::abs(e) / sc);
      }
      if (err <= 1.0) {
        y.swap(ynew);
        k1.swap(k7);  // FSAL
        if (final_step) {
          t = target;
          break;
        }
        t += h;
      }
      double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      factor = std::min(5.0, std::max(0.2, factor));
      h *= factor;
      if (std::abs(h) > max_step) h = dir * max_step;
      if (std::abs(h) < opt.min_step)
        raise(errc::step_failure, "step size collapsed");
    }
    observe(target, y);
  }
}

// Adaptive Gauss-Kronrod 15(7) along the straight segment [z0, z1].
inline cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx z0, cplx z1, double tol = 1e-12,
                              int max_depth = 30) {
  static const double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                                0.741531185599394, 0.586087235467691, 0.405845151377397,
                                0.207784955007898, 0.0};
  static const double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                0.140653259715525, 0.169004726639267, 0.190350578064785,
                                0.204432940075298, 0.209482141084728};
  static const double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                               0.417959183673469};

  std::function<cplx(cplx, cplx, int)> go = [&](cplx a, cplx b, int depth) -> cplx {
    cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx gk = 0.0, g = 0.0;
    cplx f_mid = f(mid);
    gk += wgk[7] * f_mid;
    g += wg[3] * f_mid;
    for (int j = 0; j < 7; ++j) {
      cplx f1 = f(mid - half * xgk[j]);
      cplx f2 = f(mid + half * xgk[j]);
      gk += wgk[j] * (f1 + f2);
      if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
    }
    gk *= half;
    g *= half;
    double err = std::abs(gk - g);
    if (err <= tol * std::max(1.0, std::abs(gk)) || depth >= max_depth) return gk;
    return go(a, mid, depth + 1) + go(mid, b, depth + 1);
  };
  return go(z0, z1, 0);
}

}  // namespace schwarz
