#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "schwarz/error.hpp"
#include "schwarz/poly.hpp"

namespace schwarz {

struct RenderStyle {
  double stroke_width = 1.2;
  std::array<double, 3> color_from{0.13, 0.33, 0.65};
  std::array<double, 3> color_to{0.80, 0.25, 0.20};
  std::optional<std::array<double, 4>> viewport;  // xmin, xmax, ymin, ymax (auto if absent)
  int width_px = 720;
  int height_px = 720;
  double marker_radius = 3.0;
};

// Minimal deterministic SVG 1.1 writer: curves are emitted as polyline
// paths at the sampled resolution, one path element per curve.
class SvgWriter {
 public:
  explicit SvgWriter(RenderStyle style = {}) : style_(style) {}

  // u in [0,1] picks the colour along the per-t ramp.
  void add_curve(const std::vector<cplx>& points, double u) { curves_.push_back({points, u}); }
  void add_marker(cplx p) { markers_.push_back(p); }

  void write(const std::string& path) const {
    std::array<double, 4> box = viewport();
    double sx = style_.width_px / (box[1] - box[0]);
    double sy = style_.height_px / (box[3] - box[2]);
    double s = std::min(sx, sy);
    auto px = [&](cplx z) {
      double x = (z.real() - box[0]) * s;
      double y = style_.height_px - (z.imag() - box[2]) * s;
      return std::pair<double, double>{x, y};
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::io_failure, "cannot open " + path);
    char buf[160];
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  style_.width_px, style_.height_px, style_.width_px, style_.height_px);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : curves_) {
      if (c.points.size() < 2) continue;
      out << "<path fill=\"none\" stroke=\"" << ramp_color(c.u) << "\" stroke-width=\"";
      std::snprintf(buf, sizeof(buf), "%.3f", style_.stroke_width);
      out << buf << "\" d=\"";
      for (std::size_t i = 0; i < c.points.size(); ++i) {
        auto [x, y] = px(c.points[i]);
        std::snprintf(buf, sizeof(buf), "%c%.3f %.3f", i == 0 ? 'M' : 'L', x, y);
        out << buf;
      }
      out << "\"/>\n";
    }
    for (cplx m : markers_) {
      auto [x, y] = px(m);
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"black\"/>\n", x, y,
                    style_.marker_radius);
      out << buf;
    }
    out << "</svg>\n";
    if (!out) raise(errc::io_failure, "write failed for " + path);
  }

  std::array<double, 4> viewport() const {
    if (style_.viewport) {
      auto v = *style_.viewport;
      if (v[1] <= v[0] || v[3] <= v[2]) raise(errc::validation, "viewport must be nonempty");
      return v;
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& c : curves_)
      for (cplx p : c.points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
      }
    for (cplx p : markers_) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
    if (xmin > xmax) raise(errc::validation, "nothing to render");
    double padx = 0.05 * std::max(xmax - xmin, 1e-9);
    double pady = 0.05 * std::max(ymax - ymin, 1e-9);
    return {xmin - padx, xmax + padx, ymin - pady, ymax + pady};
  }

 private:
  struct Curve {
    std::vector<cplx> points;
    double u;
  };

  std::string ramp_color(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    char buf[8];
    auto ch = [&](int i) {
      double v = style_.color_from[std::size_t(i)] +
                 u * (style_.color_to[std::size_t(i)] - style_.color_from[std::size_t(i)]);
      return int(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    };
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", ch(0), ch(1), ch(2));
    return buf;
  }

  RenderStyle style_;
  std::vector<Curve> curves_;
  std::vector<cplx> markers_;
};

}  // namespace schwarz
