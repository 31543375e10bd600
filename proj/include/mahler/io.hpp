#pragma once

// JSON bodies, CSV records, run manifests and log-log SVG plots.

#include "mahler/body.hpp"
#include "mahler/lab.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mahler {

/// Round-trip text for a double.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string fmt_array(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
  return s + "]";
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

/// {"kind": "polygon", "vertices": [[x, y], ...]}
/// {"kind": "fourier", "a0": c, "cos": [a1, ...], "sin": [b1, ...]}
/// {"kind": "support", "values": [h0, ...]}
inline std::string body_to_json(const Body& b) {
  std::string s = "{\"label\": " + detail::json_string(b.label) + ", ";
  if (b.is_polygon()) {
    s += "\"kind\": \"polygon\", \"vertices\": [";
    const auto& v = b.polygon().vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? ", [" : "[") + fmt(v[i].x()) + ", " + fmt(v[i].y()) + "]";
    s += "]";
  } else if (b.is_support()) {
    s += "\"kind\": \"support\", \"values\": " + detail::fmt_array(b.support_vector().values);
  } else {
    const auto& h = b.fourier().h;
    s += "\"kind\": \"fourier\", \"a0\": " + fmt(h.c0) + ", \"cos\": " + detail::fmt_array(h.a) +
         ", \"sin\": " + detail::fmt_array(h.b);
  }
  return s + "}";
}

inline Body body_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string label = j.value("label", std::string{});
    if (kind == "polygon") {
      std::vector<Vec2> v;
      for (const auto& p : j.at("vertices")) v.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      return make_polygon(std::move(v), label);
    }
    if (kind == "support") return make_support_vector(j.at("values").get<std::vector<double>>(), label);
    if (kind == "fourier")
      return make_fourier(j.at("a0").get<double>(), j.value("cos", std::vector<double>{}),
                          j.value("sin", std::vector<double>{}), label);
    throw GeometryError(ErrorCode::ParseError, "unknown body kind " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(ErrorCode::ParseError, e.what());
  }
}

inline Body body_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GeometryError(ErrorCode::ParseError, e.what());
  }
  return body_from_json(j);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw GeometryError(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

/// Body file; the label defaults to the file stem.
inline Body read_body(const std::string& path) {
  Body b = body_from_json(read_text(path));
  if (b.label.empty()) {
    auto s = path.substr(path.find_last_of('/') + 1);
    b.label = s.substr(0, s.find('.'));
  }
  return b;
}

// ---------------------------------------------------------------------------
// records

inline const char* kCsvHeader = "body_id,epsilon,delta,volume_product,bm_spread,family_param";

inline std::string records_to_csv(const std::vector<DeficitRecord>& records) {
  std::string s = std::string(kCsvHeader) + "\n";
  auto diag = [](const DeficitRecord& r, const char* key) {
    const auto it = r.diagnostics.find(key);
    return it == r.diagnostics.end() ? 0.0 : it->second;
  };
  for (const auto& r : records)
    s += r.body_id + "," + fmt(r.epsilon) + "," + fmt(r.delta) + "," + fmt(r.volume_product) + "," +
         fmt(diag(r, "bm_spread")) + "," + fmt(diag(r, "family_param")) + "\n";
  return s;
}

inline std::vector<DeficitRecord> records_from_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("body_id,", 0) != 0)
    throw GeometryError(ErrorCode::ParseError, "missing CSV header");
  std::vector<DeficitRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() < 4) throw GeometryError(ErrorCode::ParseError, "short CSV row: " + line);
    DeficitRecord r;
    try {
      r.body_id = f[0];
      r.epsilon = std::stod(f[1]);
      r.delta = std::stod(f[2]);
      r.volume_product = std::stod(f[3]);
      if (f.size() > 4) r.diagnostics["bm_spread"] = std::stod(f[4]);
      if (f.size() > 5) r.diagnostics["family_param"] = std::stod(f[5]);
    } catch (const std::exception&) {
      throw GeometryError(ErrorCode::ParseError, "bad CSV row: " + line);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Manifest written next to a sweep CSV. Everything except "timestamp" is deterministic.
inline nlohmann::json sweep_manifest(const std::string& family, const SweepOptions& opt, const SweepResult& r) {
  nlohmann::json m;
  m["family"] = family;
  m["seed"] = opt.seed;
  m["grid"] = opt.grid.size();
  m["bm_starts"] = opt.bm_starts;
  m["symmetric"] = r.symmetric;
  m["records"] = r.records.size();
  m["fit_window"] = {opt.epsilon_min, opt.epsilon_max};
  m["fit"] = {{"slope", r.fit.slope},
              {"intercept", r.fit.intercept},
              {"gamma", r.fit.gamma},
              {"residual_spread", r.fit.residual_spread},
              {"count", r.fit.count}};
  m["timestamp"] = utc_timestamp();
  return m;
}

// ---------------------------------------------------------------------------
// plot

/// Log-log scatter of (epsilon, delta) with the fitted line and, if given, a reference slope.
inline std::string loglog_svg(const std::vector<DeficitRecord>& records, const FitResult& fit,
                              double reference_slope = 0.5) {
  const double W = 640, H = 480, pad = 60;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (r.epsilon > 0 && r.delta > 0) pts.emplace_back(std::log10(r.epsilon), std::log10(r.delta));
  if (pts.empty()) throw GeometryError(ErrorCode::InsufficientData, "nothing to plot");
  double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
  for (const auto& [x, y] : pts) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1);
  auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - (y - y0) / (y1 - y0) * (H - 2 * pad); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<g stroke=\"#ccc\" font-size=\"11\" font-family=\"sans-serif\">\n";
  for (double x = x0; x <= x1; x += 1)
    s << "<line x1=\"" << sx(x) << "\" y1=\"" << sy(y0) << "\" x2=\"" << sx(x) << "\" y2=\"" << sy(y1)
      << "\"/><text stroke=\"none\" x=\"" << sx(x) - 12 << "\" y=\"" << H - pad + 16 << "\">1e" << x << "</text>\n";
  for (double y = y0; y <= y1; y += 1)
    s << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(y) << "\" x2=\"" << sx(x1) << "\" y2=\"" << sy(y)
      << "\"/><text stroke=\"none\" x=\"" << 8 << "\" y=\"" << sy(y) + 4 << "\">1e" << y << "</text>\n";
  s << "</g>\n";
  s << "<text x=\"" << W / 2 - 20 << "\" y=\"" << H - 12 << "\" font-family=\"sans-serif\">epsilon</text>\n";
  s << "<text x=\"12\" y=\"" << pad - 20 << "\" font-family=\"sans-serif\">delta</text>\n";
  for (const auto& [x, y] : pts)
    s << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  // fitted line: log10 delta = slope log10 eps + intercept / ln 10
  auto line = [&](double slope, double icpt, const char* color, const char* dash) {
    s << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(slope * x0 + icpt) << "\" x2=\"" << sx(x1) << "\" y2=\""
      << sy(slope * x1 + icpt) << "\" stroke=\"" << color << "\" stroke-dasharray=\"" << dash << "\"/>\n";
  };
  if (fit.count > 0) line(fit.slope, fit.intercept / std::log(10.0), "#d62728", "none");
  if (fit.gamma > 0) line(reference_slope, std::log10(fit.gamma), "#2ca02c", "6,4");
  s << "<text x=\"" << W - pad - 160 << "\" y=\"" << pad - 20 << "\" font-family=\"sans-serif\" font-size=\"12\">slope "
    << fmt(std::round(fit.slope * 1000) / 1000) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace mahler
