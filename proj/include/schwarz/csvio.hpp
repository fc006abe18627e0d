#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/poly.hpp"

namespace schwarz {

struct CsvRow {
  double t;
  double x;
  cplx w;
  std::optional<double> kappa;
  std::optional<double> clinant_angle;
};

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC-4180-style CSV, 17 significant digits, fixed t-major row order.
inline void write_csv(const std::string& path, const std::vector<CsvRow>& rows, bool with_kappa,
                      bool with_clinant) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_failure, "cannot open " + path);
  out << "t,x,re_w,im_w";
  if (with_kappa) out << ",kappa";
  if (with_clinant) out << ",clinant_angle";
  out << "\n";
  for (const auto& r : rows) {
    out << format_g17(r.t) << ',' << format_g17(r.x) << ',' << format_g17(r.w.real()) << ','
        << format_g17(r.w.imag());
    if (with_kappa) out << ',' << format_g17(r.kappa.value_or(0.0));
    if (with_clinant) out << ',' << format_g17(r.clinant_angle.value_or(0.0));
    out << "\n";
  }
  if (!out) raise(errc::io_failure, "write failed for " + path);
}

}  // namespace schwarz
