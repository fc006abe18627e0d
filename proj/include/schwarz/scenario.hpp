#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "schwarz/checks.hpp"
#include "schwarz/csvio.hpp"
#include "schwarz/svg.hpp"

namespace schwarz {

using nlohmann::json;

struct ScenarioResult {
  std::vector<std::string> artifacts;
  std::vector<std::string> log;
  bool ok = true;
};

namespace scenariodetail {

inline void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) raise(errc::config_parse, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) raise(errc::validation, "unknown key '" + it.key() + "' in " + where);
}

inline double number_at(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) raise(errc::validation, key + " must be a number");
  return j.at(key).get<double>();
}

inline coeff_list coefficients(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) raise(errc::validation, where + " must be a nonempty array");
  coeff_list out;
  for (const auto& e : j) {
    if (e.is_number())
      out.push_back(cplx(e.get<double>(), 0.0));
    else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
      out.push_back(cplx(e[0].get<double>(), e[1].get<double>()));
    else
      raise(errc::validation, where + " entries must be numbers or [re, im] pairs");
  }
  return out;
}

inline PolyRat rational(const json& j, const std::string& where) {
  require_keys(j, {"num", "den"}, where);
  if (!j.contains("num")) raise(errc::validation, where + " needs a num array");
  coeff_list num = coefficients(j.at("num"), where + ".num");
  coeff_list den = j.contains("den") ? coefficients(j.at("den"), where + ".den") : coeff_list{cplx(1.0)};
  return PolyRat(std::move(num), std::move(den));
}

inline std::vector<double> t_values(const json& j, const std::string& where) {
  if (j.contains("t_values")) {
    std::vector<double> out;
    for (const auto& e : j.at("t_values")) {
      if (!e.is_number()) raise(errc::validation, where + ".t_values entries must be numbers");
      out.push_back(e.get<double>());
    }
    if (out.empty()) raise(errc::validation, where + ".t_values must be nonempty");
    return out;
  }
  if (!j.contains("t_range")) raise(errc::validation, where + " needs t_values or t_range");
  const json& r = j.at("t_range");
  require_keys(r, {"from", "to", "count"}, where + ".t_range");
  double from = number_at(r, "from", 0.0), to = number_at(r, "to", 1.0);
  int count = int(number_at(r, "count", 9.0));
  if (count < 1) raise(errc::validation, "t_range.count must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? from : from + (to - from) * double(i) / double(count - 1));
  return out;
}

inline std::vector<double> real_grid(const json& r, const std::string& where) {
  require_keys(r, {"from", "to", "count"}, where);
  double from = number_at(r, "from", -1.0), to = number_at(r, "to", 1.0);
  int count = int(number_at(r, "count", 33.0));
  if (count < 2) raise(errc::validation, where + ".count must be >= 2");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(from + (to - from) * double(i) / double(count - 1));
  return out;
}

inline RenderStyle style(const json& j) {
  RenderStyle s;
  if (!j.contains("style")) return s;
  const json& st = j.at("style");
  require_keys(st, {"stroke_width", "color_from", "color_to", "viewport", "width_px", "height_px",
                    "marker_radius"},
               "output.style");
  s.stroke_width = number_at(st, "stroke_width", s.stroke_width);
  s.width_px = int(number_at(st, "width_px", s.width_px));
  s.height_px = int(number_at(st, "height_px", s.height_px));
  s.marker_radius = number_at(st, "marker_radius", s.marker_radius);
  auto rgb = [&](const char* key, std::array<double, 3>& into) {
    if (!st.contains(key)) return;
    const json& a = st.at(key);
    if (!a.is_array() || a.size() != 3) raise(errc::validation, std::string(key) + " must be [r,g,b]");
    for (int i = 0; i < 3; ++i) into[std::size_t(i)] = a[std::size_t(i)].get<double>();
  };
  rgb("color_from", s.color_from);
  rgb("color_to", s.color_to);
  if (st.contains("viewport")) {
    const json& v = st.at("viewport");
    if (!v.is_array() || v.size() != 4) raise(errc::validation, "viewport must be [xmin,xmax,ymin,ymax]");
    s.viewport = std::array<double, 4>{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                                       v[3].get<double>()};
  }
  return s;
}

struct OutputSpec {
  std::string svg, csv;
  bool kappa = false, clinant = false;
  RenderStyle render_style;
};

inline OutputSpec output_spec(const json& j, const std::filesystem::path& out_dir) {
  OutputSpec spec;
  if (!j.contains("output")) return spec;
  const json& o = j.at("output");
  require_keys(o, {"svg", "csv", "columns", "style"}, "output");
  if (o.contains("svg")) spec.svg = (out_dir / o.at("svg").get<std::string>()).string();
  if (o.contains("csv")) spec.csv = (out_dir / o.at("csv").get<std::string>()).string();
  if (o.contains("columns"))
    for (const auto& c : o.at("columns")) {
      std::string name = c.get<std::string>();
      if (name == "kappa")
        spec.kappa = true;
      else if (name == "clinant_angle")
        spec.clinant = true;
      else
        raise(errc::validation, "unknown csv column: " + name);
    }
  spec.render_style = style(o);
  return spec;
}

// Polyline of the circle/line Gamma_S, windowed for lines.
inline std::vector<cplx> mobius_curve_points(const MobiusMap& s, int samples, double line_extent) {
  CircleGeometry g = circle_geometry(s);
  std::vector<cplx> pts;
  pts.reserve(std::size_t(samples) + 1);
  if (g.is_line) {
    for (int i = 0; i <= samples; ++i) {
      double u = -line_extent + 2.0 * line_extent * double(i) / double(samples);
      pts.push_back(g.point + u * g.direction);
    }
  } else {
    for (int i = 0; i <= samples; ++i) {
      double a = 2.0 * std::numbers::pi * double(i) / double(samples);
      pts.push_back(g.center + g.radius * std::exp(cplx(0.0, a)));
    }
  }
  return pts;
}

inline void emit(const OutputSpec& spec, SvgWriter& svg, const std::vector<CsvRow>& rows,
                 ScenarioResult& result) {
  if (!spec.svg.empty()) {
    svg.write(spec.svg);
    result.artifacts.push_back(spec.svg);
  }
  if (!spec.csv.empty()) {
    write_csv(spec.csv, rows, spec.kappa, spec.clinant);
    result.artifacts.push_back(spec.csv);
  }
}

inline MobiusMap circle_spec(const json& j, const std::string& where) {
  if (j.contains("omega")) {
    require_keys(j, {"omega", "A", "B"}, where);
    coeff_list om = coefficients(j.at("omega"), where + ".omega");
    SchwarzForm f{om.size() == 1 ? om[0] : cplx(om[0].real(), om[1].real()), number_at(j, "A", 0.0),
                  number_at(j, "B", 0.0)};
    if (f.det() <= 0.0) raise(errc::validation, where + ": det <= 0 is a point circle");
    return f.matrix();
  }
  if (j.contains("center")) {
    require_keys(j, {"center", "radius"}, where);
    coeff_list c = coefficients(j.at("center"), where + ".center");
    cplx center = c.size() == 1 ? c[0] : cplx(c[0].real(), c[1].real());
    double r = number_at(j, "radius", 1.0);
    if (r <= 0.0) raise(errc::validation, where + ": radius must be positive");
    SchwarzForm f{cplx(0.0, 1.0) * std::conj(center), 1.0, r * r - std::norm(center)};
    return f.matrix();
  }
  if (j.contains("line")) {
    const json& l = j.at("line");
    require_keys(l, {"point", "angle"}, where + ".line");
    coeff_list p = coefficients(l.at("point"), where + ".line.point");
    cplx point = p.size() == 1 ? p[0] : cplx(p[0].real(), p[1].real());
    double alpha = number_at(l, "angle", 0.0);
    cplx e = std::exp(cplx(0.0, -2.0 * alpha));
    return MobiusMap{e, std::conj(point) - e * point, 0.0, 1.0};
  }
  raise(errc::validation, where + " must provide omega/A/B, center/radius, or line");
}

}  // namespace scenariodetail

inline ScenarioResult run_scenario_json(const json& cfg, const std::filesystem::path& out_dir) {
  using namespace scenariodetail;
  if (!cfg.is_object() || !cfg.contains("kind")) raise(errc::validation, "scenario needs a kind");
  std::string kind = cfg.at("kind").get<std::string>();
  ScenarioResult result;
  std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);

  if (kind == "pencil") {
    require_keys(cfg, {"kind", "coefficients", "case", "t_values", "t_range", "curve_samples",
                       "line_extent", "output"},
                 "pencil scenario");
    double a0 = 1.0, a1 = 0.0, a2 = 1.0;
    if (cfg.contains("case")) {
      std::string c = cfg.at("case").get<std::string>();
      if (c == "hyperbolic") {
        a0 = 1.0; a2 = 1.0;
      } else if (c == "elliptic") {
        a0 = 1.0; a2 = -1.0;
      } else if (c == "parabolic") {
        a0 = 0.0; a2 = 1.0;
      } else {
        raise(errc::validation, "unknown pencil case: " + c);
      }
    } else if (cfg.contains("coefficients")) {
      coeff_list c = coefficients(cfg.at("coefficients"), "coefficients");
      if (c.size() != 3) raise(errc::validation, "coefficients must be [a0, a1, a2]");
      a0 = c[0].real();
      a1 = c[1].real();
      a2 = c[2].real();
    }
    if (std::abs(a0) + std::abs(a1) + std::abs(a2) == 0.0) raise(errc::validation, "zero generator");
    std::vector<double> ts = t_values(cfg, "pencil");
    int samples = int(number_at(cfg, "curve_samples", 256));
    double extent = number_at(cfg, "line_extent", 4.0);
    OutputSpec spec = output_spec(cfg, out_dir);
    SvgWriter svg(spec.render_style);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      MobiusMap s = pencil_solution(a0, a1, a2, ts[i]);
      auto pts = mobius_curve_points(s, samples, extent);
      svg.add_curve(pts, ts.size() > 1 ? double(i) / double(ts.size() - 1) : 0.0);
      for (std::size_t k = 0; k < pts.size(); ++k)
        rows.push_back({ts[i], double(k) / double(pts.size() - 1), pts[k], {}, {}});
    }
    emit(spec, svg, rows, result);
    result.log.push_back("pencil family with " + std::to_string(ts.size()) + " curves");
    return result;
  }

  if (kind == "velocity-flow") {
    require_keys(cfg, {"kind", "v", "x_range", "t_values", "t_range", "tolerance", "output"},
                 "velocity-flow scenario");
    if (!cfg.contains("v")) raise(errc::validation, "velocity-flow needs v");
    VelocityField v(rational(cfg.at("v"), "v"));
    std::vector<double> xs = real_grid(cfg.contains("x_range") ? cfg.at("x_range")
                                                               : json{{"from", -2.0}, {"to", 2.0}, {"count", 65}},
                                       "x_range");
    std::vector<double> ts = t_values(cfg, "velocity-flow");
    double tol = number_at(cfg, "tolerance", 1e-9);
    FlowOptions opt;
    opt.abs_tol = opt.rel_tol = tol;
    opt.jet_order = 4;
    opt.x_grid = xs;
    std::vector<cplx> seeds;
    for (double x : xs) seeds.push_back(cplx(x));
    FlowFamily fam = integrate_reflection(v, seeds, ts, opt);
    OutputSpec spec = output_spec(cfg, out_dir);
    SvgWriter svg(spec.render_style);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::vector<cplx> pts;
      for (const Jet& gj : fam.gamma[i]) pts.push_back(gj.value());
      svg.add_curve(pts, ts.size() > 1 ? double(i) / double(ts.size() - 1) : 0.0);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const Jet& gj = fam.gamma[i][k];
        CsvRow row{ts[i], xs[k], gj.value(), {}, {}};
        cplx g1 = gj.coeff(1), g2 = 2.0 * gj.coeff(2);
        if (spec.kappa && std::abs(g1) > 0.0)
          row.kappa = (g2 * std::conj(g1)).imag() / std::pow(std::abs(g1), 3.0);
        if (spec.clinant) row.clinant_angle = std::arg(g1);
        rows.push_back(row);
      }
    }
    for (const auto& sp : stationary_points(v)) svg.add_marker(cplx(sp.x0));
    emit(spec, svg, rows, result);
    result.log.push_back("velocity flow on " + std::to_string(ts.size()) + " times");
    return result;
  }

  if (kind == "davis") {
    require_keys(cfg, {"kind", "s0", "s1", "steps", "curve_samples", "line_extent", "output"},
                 "davis scenario");
    if (!cfg.contains("s0") || !cfg.contains("s1")) raise(errc::validation, "davis needs s0 and s1");
    MobiusMap m0 = circle_spec(cfg.at("s0"), "s0");
    MobiusMap m1 = circle_spec(cfg.at("s1"), "s1");
    int steps = int(number_at(cfg, "steps", 6));
    int samples = int(number_at(cfg, "curve_samples", 256));
    double extent = number_at(cfg, "line_extent", 4.0);
    auto base_point = [](const MobiusMap& m) {
      CircleGeometry geom = circle_geometry(m);
      return geom.is_line ? geom.point : geom.center + geom.radius;
    };
    DavisFamily fam = davis_iterate(SchwarzFn(m0, base_point(m0)), SchwarzFn(m1, base_point(m1)), steps);
    OutputSpec spec = output_spec(cfg, out_dir);
    SvgWriter svg(spec.render_style);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < fam.fns.size(); ++i) {
      double t = double(fam.first_index + int(i));
      auto pts = mobius_curve_points(fam.fns[i].mobius(), samples, extent);
      svg.add_curve(pts, fam.fns.size() > 1 ? double(i) / double(fam.fns.size() - 1) : 0.0);
      for (std::size_t k = 0; k < pts.size(); ++k)
        rows.push_back({t, double(k) / double(pts.size() - 1), pts[k], {}, {}});
    }
    emit(spec, svg, rows, result);
    result.log.push_back("davis iteration, " + std::to_string(fam.fns.size()) + " curves");
    return result;
  }

  if (kind == "holo-family") {
    require_keys(cfg, {"kind", "h", "gallery", "speed", "t_values", "t_range", "theta_count",
                       "mark_cusps", "output"},
                 "holo-family scenario");
    PolyRat h = cfg.contains("gallery") ? gallery_map(cfg.at("gallery").get<std::string>())
                                        : rational(cfg.at("h"), "h");
    HoloFamily fam{h, number_at(cfg, "speed", 1.0), FamilyForm::circle,
                   int(number_at(cfg, "theta_count", 2048))};
    std::vector<double> ts = t_values(cfg, "holo-family");
    std::vector<double> thetas = uniform_thetas(fam.theta_resolution);
    thetas.push_back(2.0 * std::numbers::pi);  // close the loop
    OutputSpec spec = output_spec(cfg, out_dir);
    SvgWriter svg(spec.render_style);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto samples = evaluate_family(fam, ts[i], thetas);
      std::vector<cplx> pts;
      pts.reserve(samples.size());
      for (const auto& s : samples) pts.push_back(s.w);
      svg.add_curve(pts, ts.size() > 1 ? double(i) / double(ts.size() - 1) : 0.0);
      for (std::size_t k = 0; k < samples.size(); ++k) {
        CsvRow row{ts[i], thetas[k], samples[k].w, {}, {}};
        if (spec.kappa && std::abs(samples[k].wx) > 0.0)
          row.kappa = (samples[k].wxx * std::conj(samples[k].wx)).imag() /
                      std::pow(std::abs(samples[k].wx), 3.0);
        if (spec.clinant) row.clinant_angle = std::arg(samples[k].wx);
        rows.push_back(row);
      }
    }
    if (cfg.contains("mark_cusps") && cfg.at("mark_cusps").get<bool>()) {
      PolyRat hp = h.derivative_reduced();
      for (const auto& z : hp.zeros()) svg.add_marker(h(z.location));
    }
    emit(spec, svg, rows, result);
    result.log.push_back("holo family with " + std::to_string(ts.size()) + " curves");
    return result;
  }

  if (kind == "check-suite") {
    require_keys(cfg, {"kind", "suites", "output"}, "check-suite scenario");
    if (!cfg.contains("suites")) raise(errc::validation, "check-suite needs a suites array");
    for (const auto& s : cfg.at("suites")) {
      CheckReport rep = run_check_suite(s.get<std::string>());
      for (const auto& line : rep.lines) {
        std::ostringstream os;
        os << (line.pass() ? "PASS " : "FAIL ") << s.get<std::string>() << ": " << line.name
           << "  residual=" << line.residual << " tol=" << line.tolerance;
        result.log.push_back(os.str());
      }
      if (!rep.ok()) result.ok = false;
    }
    return result;
  }

  raise(errc::validation, "unknown scenario kind: " + kind);
}

inline ScenarioResult run_scenario_file(const std::string& path, const std::filesystem::path& out_dir) {
  std::ifstream in(path);
  if (!in) raise(errc::io_failure, "cannot read scenario file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    raise(errc::config_parse, e.what());
  }
  return run_scenario_json(cfg, out_dir);
}

}  // namespace schwarz
