#pragma once

// Body families, (epsilon, delta) stability sweeps, exponent fits, and the
// numerical check of the inequality chain behind the symmetric stability bound.

#include "mahler/affine_metrics.hpp"
#include "mahler/body.hpp"
#include "mahler/minkowski.hpp"
#include "mahler/parallel.hpp"
#include "mahler/santalo.hpp"

#include <cstdio>
#include <map>
#include <random>
#include <sstream>

namespace mahler {

// ---------------------------------------------------------------------------
// Families

enum class FamilyKind { FourierMode, RandomPolygon, SmoothedNgon, Ellipse };

struct FamilySpec {
  FamilyKind kind = FamilyKind::FourierMode;
  /// Mode k, vertex count, or n of the n-gon.
  int order = 4;
  /// Amplitudes t, heat-kernel widths sigma, or aspect ratios; empty for random polygons.
  std::vector<double> values;
  std::size_t count = 1;
  bool symmetric = false;
  std::uint64_t seed = 0;

  /// fourier-mode bodies are symmetric iff k is even.
  bool origin_symmetric() const {
    switch (kind) {
      case FamilyKind::FourierMode: return order % 2 == 0;
      case FamilyKind::RandomPolygon: return symmetric;
      case FamilyKind::SmoothedNgon: return order % 2 == 0;
      case FamilyKind::Ellipse: return true;
    }
    return false;
  }
};

namespace detail {

inline std::vector<double> parse_values(const std::string& text, std::size_t count) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const double lo = std::stod(text.substr(0, dots));
    const double hi = std::stod(text.substr(dots + 2));
    if (!(lo > 0.0) || !(hi >= lo)) throw GeometryError(ErrorCode::ParseError, "range needs 0 < lo <= hi: " + text);
    std::vector<double> v;
    if (count <= 1) return {lo};
    for (std::size_t i = 0; i < count; ++i)
      v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(count - 1)));
    return v;
  }
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  return v;
}

}  // namespace detail

/// Parses "kind:key=value:..." e.g. "fourier-mode:k=4:t=0.002..0.02:count=8",
/// "random-polygon:vertices=3:count=20:symmetric=0", "smoothed-ngon:n=6:sigma=0.01,0.05",
/// "ellipse:ratio=1.5..4:count=4". Ranges a..b are geometric.
inline FamilySpec parse_family(const std::string& text, std::uint64_t seed = 0) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw GeometryError(ErrorCode::ParseError, "empty family spec");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw GeometryError(ErrorCode::ParseError, "expected key=value in " + parts[i]);
    kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }
  auto take = [&](const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  FamilySpec spec;
  spec.seed = seed;
  try {
    spec.count = static_cast<std::size_t>(std::stoul(take("count", "1")));
    if (const auto s = take("seed", ""); !s.empty()) spec.seed = std::stoull(s);
    if (parts[0] == "fourier-mode") {
      spec.kind = FamilyKind::FourierMode;
      spec.order = std::stoi(take("k", "4"));
      spec.values = detail::parse_values(take("t", "0.01"), spec.count);
    } else if (parts[0] == "random-polygon") {
      spec.kind = FamilyKind::RandomPolygon;
      spec.order = std::stoi(take("vertices", "6"));
      spec.symmetric = take("symmetric", "0") == "1";
    } else if (parts[0] == "smoothed-ngon") {
      spec.kind = FamilyKind::SmoothedNgon;
      spec.order = std::stoi(take("n", "6"));
      spec.values = detail::parse_values(take("sigma", "0.01"), spec.count);
    } else if (parts[0] == "ellipse") {
      spec.kind = FamilyKind::Ellipse;
      spec.values = detail::parse_values(take("ratio", "2"), spec.count);
    } else {
      throw GeometryError(ErrorCode::ParseError, "unknown family kind " + parts[0]);
    }
  } catch (const std::invalid_argument&) {
    throw GeometryError(ErrorCode::ParseError, "malformed number in family spec " + text);
  } catch (const std::out_of_range&) {
    throw GeometryError(ErrorCode::ParseError, "number out of range in family spec " + text);
  }
  if (!kv.empty()) throw GeometryError(ErrorCode::ParseError, "unknown key " + kv.begin()->first + " in " + text);
  return spec;
}

struct FamilyMember {
  Body body;
  double param = 0.0;
};

inline std::string format_id(const std::string& tag, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-%03zu", i);
  return tag + buf;
}

/// Random convex polygon: hull of points at sorted random angles and radii in [0.6, 1].
inline Body random_polygon(std::size_t vertices, bool symmetric, std::mt19937_64& rng, std::string label) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> radius(0.6, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec2> pts;
    const std::size_t m = symmetric ? std::max<std::size_t>(2, vertices / 2) : vertices;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 p = radius(rng) * unit(angle(rng));
      pts.push_back(p);
      if (symmetric) pts.push_back(-p);
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 3) continue;
    Body b{Polygon{std::move(hull)}, label};
    if (area(b) < 0.05) continue;
    validate(b);
    return b;
  }
  throw GeometryError(ErrorCode::InvalidBody, "could not draw a non-degenerate random polygon");
}

inline std::vector<FamilyMember> generate_family_members(const FamilySpec& spec, const AngleGrid& grid = AngleGrid{}) {
  std::vector<FamilyMember> out;
  switch (spec.kind) {
    case FamilyKind::FourierMode: {
      const int k = spec.order;
      if (k < 1) throw GeometryError(ErrorCode::InvalidBody, "mode must be >= 1");
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const double t = spec.values[i];
        if (k >= 2 && !(std::abs(t) * static_cast<double>(k * k - 1) < 1.0))
          throw GeometryError(ErrorCode::ConvexityViolation,
                              "mode " + std::to_string(k) + " needs |t| < 1/(k^2-1); got " + std::to_string(t));
        std::vector<double> c(static_cast<std::size_t>(k), 0.0);
        c.back() = t;
        out.push_back({make_fourier(1.0, c, {}, format_id("mode" + std::to_string(k), i)), t});
      }
      break;
    }
    case FamilyKind::RandomPolygon: {
      for (std::size_t i = 0; i < spec.count; ++i) {
        std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + i);
        const std::string tag = (spec.symmetric ? "sympoly" : "poly") + std::to_string(spec.order);
        out.push_back({random_polygon(static_cast<std::size_t>(spec.order), spec.symmetric, rng, format_id(tag, i)),
                       static_cast<double>(i)});
      }
      break;
    }
    case FamilyKind::SmoothedNgon: {
      const Body ngon = make_regular_polygon(static_cast<std::size_t>(spec.order));
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        Body b = mollify(ngon, spec.values[i], grid);
        b.label = format_id("ngon" + std::to_string(spec.order), i);
        out.push_back({std::move(b), spec.values[i]});
      }
      break;
    }
    case FamilyKind::Ellipse: {
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const double r = spec.values[i];
        out.push_back({make_ellipse(std::sqrt(r), 1.0 / std::sqrt(r), grid, format_id("ellipse", i)), r});
      }
      break;
    }
  }
  return out;
}

inline std::vector<Body> generate_family(const FamilySpec& spec, const AngleGrid& grid = AngleGrid{}) {
  std::vector<Body> out;
  for (auto& m : generate_family_members(spec, grid)) out.push_back(std::move(m.body));
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps and fits

struct DeficitRecord {
  std::string body_id;
  double epsilon = 0.0;
  double delta = 0.0;
  double volume_product = 0.0;
  std::map<std::string, double> diagnostics;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  /// max delta / epsilon^alpha over the fitted records
  double gamma = 0.0;
  /// max |residual| of the log-log fit
  double residual_spread = 0.0;
  std::size_t count = 0;
};

struct SweepOptions {
  AngleGrid grid{};
  std::uint64_t seed = 0;
  int bm_starts = 8;
  double epsilon_min = 1e-9;
  /// Empirical stand-in for the theorem's epsilon_0.
  double epsilon_max = 0.05;
};

struct SweepResult {
  std::vector<DeficitRecord> records;
  FitResult fit;
  bool symmetric = true;
};

inline DeficitRecord deficit_record(const Body& body, bool symmetric, const SweepOptions& opt = {}, double param = 0.0) {
  SantaloOptions so;
  so.grid = opt.grid;
  const SantaloResult s = santalo_point(body, so);
  BmOptions bo;
  bo.grid = opt.grid;
  bo.seed = opt.seed;
  bo.starts = opt.bm_starts;
  bo.translate = !symmetric;
  const BmEstimate bm = bm_distance_disk(body, bo);
  DeficitRecord r;
  r.body_id = body.label;
  r.volume_product = area(body) * s.polar_area;
  r.epsilon = kPi * kPi / r.volume_product - 1.0;
  if (r.epsilon < 0.0 && r.epsilon >= -1e-9) r.epsilon = 0.0;
  r.delta = std::max(0.0, bm.distance - 1.0);
  r.diagnostics["bm_spread"] = bm.multistart_spread;
  r.diagnostics["family_param"] = param;
  r.diagnostics["santalo_residual"] = s.gradient_norm;
  return r;
}

/// Least-squares slope of log delta against log epsilon; gamma = max delta / epsilon^alpha.
inline FitResult exponent_fit(const std::vector<DeficitRecord>& records, double alpha = 0.5) {
  std::vector<double> xs, ys;
  FitResult f;
  for (const auto& r : records) {
    if (!(r.epsilon > 0.0) || !(r.delta > 0.0)) continue;
    xs.push_back(std::log(r.epsilon));
    ys.push_back(std::log(r.delta));
    f.gamma = std::max(f.gamma, r.delta / std::pow(r.epsilon, alpha));
  }
  f.count = xs.size();
  if (xs.size() < 3) throw GeometryError(ErrorCode::InsufficientData, "exponent fit needs at least 3 records with epsilon, delta > 0");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw GeometryError(ErrorCode::InsufficientData, "all records share one epsilon");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.residual_spread = std::max(f.residual_spread, std::abs(ys[i] - (f.intercept + f.slope * xs[i])));
  return f;
}

/// Records inside the fit window (epsilon_min, epsilon_max].
inline std::vector<DeficitRecord> fit_window(const std::vector<DeficitRecord>& records, const SweepOptions& opt = {}) {
  std::vector<DeficitRecord> in;
  for (const auto& r : records)
    if (r.epsilon > opt.epsilon_min && r.epsilon <= opt.epsilon_max) in.push_back(r);
  return in;
}

/// Deficit records for every body, computed in parallel and sorted by body id.
inline std::vector<DeficitRecord> sweep_records(const std::vector<Body>& family, bool symmetric,
                                                const SweepOptions& opt = {}, const std::vector<double>& params = {}) {
  if (family.empty()) throw GeometryError(ErrorCode::InsufficientData, "empty family");
  std::vector<DeficitRecord> records(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    SweepOptions o = opt;
    o.seed = opt.seed * 7919ULL + i;
    records[i] = deficit_record(family[i], symmetric, o, i < params.size() ? params[i] : static_cast<double>(i));
  });
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.body_id < b.body_id; });
  return records;
}

inline SweepResult stability_sweep(const std::vector<Body>& family, bool symmetric, const SweepOptions& opt = {},
                                   const std::vector<double>& params = {}) {
  SweepResult r;
  r.symmetric = symmetric;
  r.records = sweep_records(family, symmetric, opt, params);
  r.fit = exponent_fit(fit_window(r.records, opt), symmetric ? 0.5 : 0.25);
  return r;
}

// ---------------------------------------------------------------------------
// Proof-chain verifier

/// Constants of the chain, overridable for mutation testing.
struct ChainConstants {
  double groemer_pointwise = 32.0 / kPi;
  double deviation = 64.0;
  double pinch_deviation = 64.0 * std::pow(4.0, 2.0 / 3.0);
  double pinch_oscillation = std::pow(2.0, 25.0 / 6.0);
  double ratio = 8.0;
};

struct ChainCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs
  double slack = 0.0;
  bool passed = true;
  /// bound is infinite at this epsilon, so the check holds trivially
  bool vacuous = false;
};

struct ChainReport {
  std::string body_id;
  bool mollified = false;
  double epsilon = 0.0;
  double area = 0.0;
  double lambda_area = 0.0;
  double polar_area = 0.0;
  double john_h_min = 0.0;
  double john_h_max = 0.0;
  double bm_lambda_disk = 0.0;
  double bm_body_lambda = 0.0;
  double bm_body_disk = 0.0;
  std::vector<ChainCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.passed; });
  }
};

struct ChainOptions {
  AngleGrid grid{};
  /// relative slack allowed on every inequality
  double tol = 1e-9;
  std::uint64_t seed = 0;
  ChainConstants constants{};
};

inline ChainReport verify_proof_chain(const Body& input, const ChainOptions& opt = {}) {
  const AngleGrid& grid = opt.grid;
  if (!is_origin_symmetric(input, grid, 1e-9))
    throw GeometryError(ErrorCode::NotSymmetric, "the chain is stated for origin-symmetric bodies");
  ChainReport rep;
  rep.body_id = input.label;
  Body smooth = input;
  if (!input.is_fourier()) {
    smooth = mollify(input, mollifier_width(input, grid), grid);
    rep.mollified = true;
  }

  auto add = [&](const std::string& name, double lhs, double rhs, bool vacuous = false) {
    ChainCheck c{name, lhs, rhs, rhs - lhs, true, vacuous};
    if (!vacuous) c.passed = lhs <= rhs + opt.tol * std::max(1.0, std::abs(rhs));
    rep.checks.push_back(c);
  };

  // John position, 1 <= h <= sqrt 2
  JohnOptions jo;
  jo.grid = grid;
  jo.symmetric = true;
  Body k;
  try {
    k = john_position(smooth, jo).first;
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::NotJohnNormalizable, e.what());
  }
  const auto hk = support_on_grid(k, grid);
  rep.john_h_min = *std::min_element(hk.begin(), hk.end());
  rep.john_h_max = *std::max_element(hk.begin(), hk.end());
  if (rep.john_h_min < 1.0 - 1e-6 || rep.john_h_max > std::sqrt(2.0) + 1e-6)
    throw GeometryError(ErrorCode::NotJohnNormalizable, "John position support leaves [1, sqrt 2]");
  add("john_lower", 1.0, rep.john_h_min + 1e-6);
  add("john_upper", rep.john_h_max, std::sqrt(2.0) + 1e-6);

  LambdaOptions lo;
  lo.grid = grid;
  const LambdaResult lam = lambda_transform(k, lo);
  const double v = area(k);
  const double vl = area(lam.body);
  const double vp = lam.santalo.polar_area;
  const double eps = std::max(0.0, kPi * kPi / (v * vp) - 1.0);
  rep.epsilon = eps;
  rep.area = v;
  rep.lambda_area = vl;
  rep.polar_area = vp;
  const double ratio = vl / v;
  add("area_ratio_upper", ratio, 1.0);
  add("area_ratio_lower", 1.0 / (1.0 + eps), ratio);

  const double vkl = mixed_area(k, lam.body);
  add("mixed_area_rewrite", vkl * vkl / (vl * v) - 1.0, eps);

  const auto hl = support_on_grid(lam.body, grid);
  const auto fl = curvature_samples(lam.body.fourier(), grid);
  const double d = 2.0 * rep.john_h_max;
  const double root = std::sqrt(vl / v);
  double groemer = 0.0, left_minus_mid = -std::numeric_limits<double>::infinity(), mid = 0.0, dev = 0.0;
  double pinch_dev = 0.0, pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  double qmin = std::numeric_limits<double>::infinity(), qmax = 0.0;
  const double pinch_center = root * std::cbrt(v / vp);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = hk[i] / std::sqrt(v) - hl[i] / std::sqrt(vl);
    groemer = std::max(groemer, g * g);
    const double q = hl[i] / hk[i];
    const double w = (root - q) * (root - q);
    left_minus_mid = std::max(left_minus_mid, hk[i] * hk[i] / v * w - hk[i] * hk[i] / vl * w);
    mid = std::max(mid, hk[i] * hk[i] / vl * w);
    dev = std::max(dev, w);
    const double p = hl[i] * std::cbrt(fl[i]);
    pinch_dev = std::max(pinch_dev, (pinch_center - p) * (pinch_center - p));
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  const ChainConstants& c = opt.constants;
  add("groemer_consequence", v / (4.0 * d * d) * groemer, eps);
  add("pointwise_left_le_middle", left_minus_mid, 0.0);
  add("pointwise_bound", mid, c.groemer_pointwise * eps);
  add("deviation_bound", dev, c.deviation * eps);
  add("pinch_scaled_deviation", std::pow(vp / v, 2.0 / 3.0) * pinch_dev, c.deviation * eps);
  add("pinch_deviation", pinch_dev, c.pinch_deviation * eps);
  add("pinch_oscillation", pmax - pmin, c.pinch_oscillation * std::sqrt(eps));

  BmOptions bo;
  bo.grid = grid;
  bo.seed = opt.seed;
  bo.translate = false;
  rep.bm_lambda_disk = bm_distance_disk(lam.body, bo).distance;
  rep.bm_body_lambda = bm_distance_pair(k, lam.body, bo).distance;
  rep.bm_body_disk = bm_distance_disk(k, bo).distance;

  const PinchBounds pb = pinch_bounds(lam.body.fourier(), grid);
  add("pinch_corollary", rep.bm_lambda_disk, std::pow(pb.M / pb.m, 1.5) + 1e-6);

  const double cc = c.pinch_oscillation * std::sqrt(eps) * std::pow(1.0 + eps, 2.0 / 3.0);
  const bool bm1_vacuous = !(cc < 1.0);
  const double bm1 = bm1_vacuous ? std::numeric_limits<double>::infinity() : std::pow((1.0 + cc) / (1.0 - cc), 1.5);
  add("bm1", rep.bm_lambda_disk, bm1, bm1_vacuous);

  const double band_lo = -c.ratio * std::sqrt(eps) + 1.0 / std::sqrt(1.0 + eps);
  const double band_hi = 1.0 + c.ratio * std::sqrt(eps);
  add("ratio_lower", band_lo, qmin);
  add("ratio_upper", qmax, band_hi);
  const bool bm2_vacuous = !(band_lo > 0.0);
  const double bm2 = bm2_vacuous ? std::numeric_limits<double>::infinity() : band_hi / band_lo;
  add("bm2", rep.bm_body_lambda, bm2, bm2_vacuous);
  add("bm_product", rep.bm_body_disk, bm1 * bm2, bm1_vacuous || bm2_vacuous);
  return rep;
}

}  // namespace mahler
