#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <vector>

#include "schwarz/poly.hpp"

namespace schwarz {

struct Root {
  cplx location;
  int multiplicity;
};

inline constexpr double kRootClusterTol = 1e-7;

// All complex roots of a polynomial: companion-matrix eigenvalues, cluster
// into multiplicities, then polish each cluster on the (m-1)-th derivative
// (an m-fold root of p is a simple root of p^{(m-1)}).
//
// Eigenvalues of an m-fold root scatter like eps^{1/m}, so the merge radius
// has to grow with the candidate multiplicity; cluster_tol is the floor.
inline std::vector<Root> polynomial_roots(const coeff_list& c_in, double cluster_tol = kRootClusterTol) {
  coeff_list c = poly::trim(c_in, 1e-14);
  int deg = int(c.size()) - 1;
  if (deg <= 0) return {};

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  cplx lead = c[std::size_t(deg)];
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[std::size_t(i)] / lead;
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);

  struct Cluster {
    cplx sum;
    int count;
    cplx center() const { return sum / double(count); }
  };
  std::vector<Cluster> clusters;
  for (int i = 0; i < deg; ++i) clusters.push_back({solver.eigenvalues()(i), 1});

  // Members of an m-fold cluster may still scatter like eps^{1/m'} for a
  // larger m' they belong to, so the pair radius anticipates two extra
  // orders; capped so well-separated genuine roots never merge.
  auto merge_radius = [&](int m, double mag) {
    double r = 2.0 * std::pow(1e-13, 1.0 / double(m + 2));
    r = std::min(std::max(r, cluster_tol), 5e-3);
    return r * std::max(1.0, mag);
  };
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        int m = clusters[i].count + clusters[j].count;
        double d = std::abs(clusters[i].center() - clusters[j].center());
        if (d <= merge_radius(m, std::abs(clusters[i].center()))) {
          clusters[i].sum += clusters[j].sum;
          clusters[i].count += clusters[j].count;
          clusters.erase(clusters.begin() + long(j));
          merged = true;
        }
      }
  }

  std::vector<Root> out;
  out.reserve(clusters.size());
  for (const auto& cl : clusters) {
    Root root{cl.center(), cl.count};
    coeff_list d = c;
    for (int k = 1; k < root.multiplicity; ++k) d = poly::derivative(d);
    coeff_list dd = poly::derivative(d);
    for (int it = 0; it < 3; ++it) {
      cplx pv = poly::eval(d, root.location);
      cplx dv = poly::eval(dd, root.location);
      if (std::abs(dv) <= 1e3 * std::abs(pv) || std::abs(dv) == 0.0) break;
      root.location -= pv / dv;
    }
    out.push_back(root);
  }
  return out;
}

}  // namespace schwarz
