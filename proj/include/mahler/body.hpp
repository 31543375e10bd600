#pragma once

// Planar convex bodies: exact polygons, support-value grids and band-limited
// Fourier support functions, with the basic functionals on them.

#include "mahler/core.hpp"
#include "mahler/fourier.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mahler {

/// Convex polygon, vertices counterclockwise.
struct Polygon {
  std::vector<Vec2> vertices;
};

/// Support values h_i at theta_i = 2*pi*i/n; the body is the circumscribed polygon.
struct SupportVector {
  std::vector<double> values;

  AngleGrid grid() const { return AngleGrid(values.size()); }
};

/// h(theta) = a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
struct FourierBody {
  TrigSeries h;
};

struct Body {
  std::variant<Polygon, SupportVector, FourierBody> shape;
  std::string label;

  bool is_polygon() const { return std::holds_alternative<Polygon>(shape); }
  bool is_support() const { return std::holds_alternative<SupportVector>(shape); }
  bool is_fourier() const { return std::holds_alternative<FourierBody>(shape); }
  const Polygon& polygon() const { return std::get<Polygon>(shape); }
  const SupportVector& support_vector() const { return std::get<SupportVector>(shape); }
  const FourierBody& fourier() const { return std::get<FourierBody>(shape); }
};

/// Atomic measure on the circle: (outer normal angle, weight).
struct SurfaceMeasure {
  std::vector<std::pair<double, double>> atoms;

  double total() const {
    double s = 0.0;
    for (const auto& [t, w] : atoms) s += w;
    return s;
  }
  Vec2 resultant() const {
    Vec2 r = Vec2::Zero();
    for (const auto& [t, w] : atoms) r += w * unit(t);
    return r;
  }
};

/// x -> m x + t.
struct AffineMap {
  Mat2 m = Mat2::Identity();
  Vec2 t = Vec2::Zero();

  Vec2 operator()(const Vec2& x) const { return m * x + t; }
  AffineMap inverse() const {
    const Mat2 mi = m.inverse();
    return {mi, -mi * t};
  }
  /// this after other
  AffineMap compose(const AffineMap& other) const { return {m * other.m, m * other.t + t}; }
};

struct BodyStats {
  double area = 0.0;
  double perimeter = 0.0;
  /// 2 * max h, the D(K) of Groemer's stability estimate.
  double d_groemer = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
};

// ---------------------------------------------------------------------------
// Polygon helpers

namespace detail {

inline double polygon_scale(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (const auto& p : v) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

/// Removes consecutive near-duplicates and near-collinear vertices of a CCW convex chain,
/// one vertex at a time so that each decision sees the current neighbours.
inline std::vector<Vec2> prune_polygon(std::vector<Vec2> v, double rel_tol = 1e-12) {
  const double scale = polygon_scale(v);
  std::vector<Vec2> d;
  d.reserve(v.size());
  for (const auto& p : v)
    if (d.empty() || (p - d.back()).norm() > rel_tol * scale) d.push_back(p);
  while (d.size() > 1 && (d.front() - d.back()).norm() <= rel_tol * scale) d.pop_back();
  bool changed = true;
  while (changed && d.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < d.size() && d.size() >= 3; ++i) {
      const std::size_t n = d.size();
      const Vec2 a = d[i] - d[(i + n - 1) % n];
      const Vec2 b = d[(i + 1) % n] - d[i];
      if (cross(a, b) <= rel_tol * a.norm() * b.norm() && a.dot(b) > 0.0) {
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return d;
}

}  // namespace detail

/// Convex hull (Andrew's monotone chain), CCW, collinear points removed.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return detail::prune_polygon(std::move(hull));
}

inline double shoelace(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& v) {
  Vec2 c = Vec2::Zero();
  double a = 0.0;
  const Vec2 o = v.front();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double w = cross(v[i] - o, v[i + 1] - o);
    c += w * (o + v[i] + v[i + 1]) / 3.0;
    a += w;
  }
  return c / a;
}

/// Edge j joins vertex j to vertex j+1; its outward normal angle and offset.
struct PolygonEdge {
  double normal_angle;
  Vec2 normal;
  double offset;
  double length;
};

inline std::vector<PolygonEdge> polygon_edges(const Polygon& p) {
  std::vector<PolygonEdge> edges;
  const auto& v = p.vertices;
  edges.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 d = v[(i + 1) % v.size()] - v[i];
    const double len = d.norm();
    const Vec2 n(d.y() / len, -d.x() / len);
    edges.push_back({std::atan2(n.y(), n.x()), n, n.dot(v[i]), len});
  }
  return edges;
}

inline void validate_polygon(const Polygon& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) throw GeometryError(ErrorCode::InvalidBody, "polygon needs at least 3 vertices");
  for (const auto& x : v)
    if (!x.allFinite()) throw GeometryError(ErrorCode::InvalidBody, "non-finite polygon vertex");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[(i + 1) % n] - v[i];
    const Vec2 b = v[(i + 2) % n] - v[(i + 1) % n];
    if (a.norm() == 0.0) throw GeometryError(ErrorCode::InvalidBody, "repeated polygon vertex");
    if (!(cross(a, b) > 0.0))
      throw GeometryError(ErrorCode::ConvexityViolation, "polygon is not strictly convex and counterclockwise");
  }
  // total turning must be exactly one revolution
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[(i + 1) % n] - v[i];
    const Vec2 b = v[(i + 2) % n] - v[(i + 1) % n];
    turn += std::atan2(cross(a, b), a.dot(b));
  }
  if (std::abs(turn - kTwoPi) > 1e-6) throw GeometryError(ErrorCode::ConvexityViolation, "polygon winds more than once");
}

// ---------------------------------------------------------------------------
// Support-vector helpers

/// l_i = (h_{i-1} + h_{i+1} - 2 h_i cos D) / sin D, the edge length on the i-th supporting line.
inline std::vector<double> support_edge_lengths(const std::vector<double>& h) {
  const std::size_t n = h.size();
  const double d = kTwoPi / static_cast<double>(n);
  const double c = std::cos(d);
  const double s = std::sin(d);
  std::vector<double> len(n);
  for (std::size_t i = 0; i < n; ++i) len[i] = (h[(i + n - 1) % n] + h[(i + 1) % n] - 2.0 * h[i] * c) / s;
  return len;
}

inline void validate_support_vector(const SupportVector& sv) {
  if (sv.values.size() < 3) throw GeometryError(ErrorCode::InvalidBody, "support vector needs at least 3 samples");
  double scale = 0.0;
  for (double x : sv.values) {
    if (!std::isfinite(x)) throw GeometryError(ErrorCode::InvalidBody, "non-finite support value");
    scale = std::max(scale, std::abs(x));
  }
  const auto len = support_edge_lengths(sv.values);
  for (std::size_t i = 0; i < len.size(); ++i)
    if (len[i] < -1e-12 * scale)
      throw GeometryError(ErrorCode::ConvexityViolation,
                          "discrete convexity fails at sample " + std::to_string(i));
}

/// Vertices of the circumscribed polygon of a support vector.
inline Polygon circumscribed_polygon(const SupportVector& sv) {
  const std::size_t n = sv.values.size();
  const AngleGrid g(n);
  const double s = std::sin(g.step());
  std::vector<Vec2> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double ti = g.angle(i);
    const double tj = g.angle(j);
    const double hi = sv.values[i];
    const double hj = sv.values[j];
    v.emplace_back((hi * std::sin(tj) - hj * std::sin(ti)) / s, (hj * std::cos(ti) - hi * std::cos(tj)) / s);
  }
  return {detail::prune_polygon(std::move(v))};
}

// ---------------------------------------------------------------------------
// Fourier helpers

/// Curvature radius f = h + h'' as a series (degree-k factor 1 - k^2).
inline TrigSeries curvature_series(const FourierBody& fb) {
  return fb.h.scaled([](std::size_t k) { return 1.0 - static_cast<double>(k * k); });
}

inline void validate_fourier(const FourierBody& fb, const AngleGrid& grid = AngleGrid{}) {
  if (!std::isfinite(fb.h.c0) || fb.h.a.size() != fb.h.b.size())
    throw GeometryError(ErrorCode::InvalidBody, "malformed Fourier coefficients");
  for (std::size_t k = 0; k < fb.h.a.size(); ++k)
    if (!std::isfinite(fb.h.a[k]) || !std::isfinite(fb.h.b[k]))
      throw GeometryError(ErrorCode::InvalidBody, "non-finite Fourier coefficient");
  const AngleGrid g(std::max(grid.size(), 4 * fb.h.degree()));
  const auto f = sample_series(curvature_series(fb), g);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] > 0.0))
      throw GeometryError(ErrorCode::ConvexityViolation,
                          "curvature radius h + h'' is not positive at theta = " + std::to_string(g.angle(i)));
}

/// Boundary point with outer normal u(theta): h u + h' u_perp.
inline Vec2 fourier_boundary_point(const FourierBody& fb, const TrigSeries& dh, double theta) {
  const double h = fb.h(theta);
  const double hp = dh(theta);
  const Vec2 u = unit(theta);
  return h * u + hp * Vec2(-u.y(), u.x());
}

// ---------------------------------------------------------------------------
// Validation and constructors

inline void validate(const Body& body) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) validate_polygon(s);
        else if constexpr (std::is_same_v<T, SupportVector>) validate_support_vector(s);
        else validate_fourier(s);
      },
      body.shape);
}

inline Body make_polygon(std::vector<Vec2> vertices, std::string label = "polygon") {
  Body b{Polygon{std::move(vertices)}, std::move(label)};
  validate(b);
  return b;
}

/// Convex hull of arbitrary points.
inline Body make_hull(std::vector<Vec2> points, std::string label = "polygon") {
  return make_polygon(convex_hull(std::move(points)), std::move(label));
}

inline Body make_support_vector(std::vector<double> values, std::string label = "support") {
  Body b{SupportVector{std::move(values)}, std::move(label)};
  validate(b);
  return b;
}

inline Body make_fourier(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                         std::string label = "fourier") {
  if (cos_coeffs.size() < sin_coeffs.size()) cos_coeffs.resize(sin_coeffs.size(), 0.0);
  if (sin_coeffs.size() < cos_coeffs.size()) sin_coeffs.resize(cos_coeffs.size(), 0.0);
  Body b{FourierBody{TrigSeries{a0, std::move(cos_coeffs), std::move(sin_coeffs)}}, std::move(label)};
  validate(b);
  return b;
}

inline Body make_disk(double radius = 1.0, std::string label = "disk") {
  return make_fourier(radius, {}, {}, std::move(label));
}

inline Body make_square(double half_side = 1.0, std::string label = "square") {
  const double s = half_side;
  return make_polygon({{-s, -s}, {s, -s}, {s, s}, {-s, s}}, std::move(label));
}

/// Regular n-gon with the given circumradius, one vertex on the positive x-axis.
inline Body make_regular_polygon(std::size_t n, double circumradius = 1.0, std::string label = "") {
  std::vector<Vec2> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(circumradius * unit(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
  return make_polygon(std::move(v), label.empty() ? std::to_string(n) + "-gon" : std::move(label));
}

/// Polygonal form: exact for polygons and support vectors, inscribed on the grid for Fourier bodies.
inline Polygon to_polygon(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  if (body.is_polygon()) return body.polygon();
  if (body.is_support()) return circumscribed_polygon(body.support_vector());
  const auto& fb = body.fourier();
  const TrigSeries dh = fb.h.derivative();
  std::vector<Vec2> v;
  v.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v.push_back(fourier_boundary_point(fb, dh, grid.angle(i)));
  return {detail::prune_polygon(std::move(v))};
}

// ---------------------------------------------------------------------------
// Support function evaluation

/// Support function of a body, with the polygonal form cached for repeated queries.
class SupportFunction {
 public:
  explicit SupportFunction(const Body& body) {
    if (body.is_fourier()) {
      series_ = body.fourier().h;
      return;
    }
    poly_ = to_polygon(body);
    const auto edges = polygon_edges(*poly_);
    base_ = edges.front().normal_angle;
    offsets_.reserve(edges.size());
    for (const auto& e : edges) offsets_.push_back(wrap_angle(e.normal_angle - base_));
    // numerical wrap of the last offset
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      if (offsets_[i] < offsets_[i - 1]) offsets_[i] = offsets_[i - 1];
  }

  double operator()(double theta) const {
    if (series_) return (*series_)(theta);
    const auto& v = poly_->vertices;
    const std::size_t n = v.size();
    const double beta = wrap_angle(theta - base_);
    // edge j (normal offsets_[j]) ends at vertex j+1, which is optimal on [offsets_[j], offsets_[j+1]]
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), beta);
    const std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - offsets_.begin() - 1, 0));
    const Vec2 u = unit(theta);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < 3; ++d) best = std::max(best, v[(j + d) % n].dot(u));
    return best;
  }

  /// 1-homogeneous extension h(x) = |x| h(x/|x|).
  double at(const Vec2& x) const {
    if (poly_) {
      const double r = x.norm();
      if (r == 0.0) return 0.0;
      return r * (*this)(std::atan2(x.y(), x.x()));
    }
    const double r = x.norm();
    if (r == 0.0) return 0.0;
    return r * (*series_)(std::atan2(x.y(), x.x()));
  }

  std::vector<double> on_grid(const AngleGrid& grid) const {
    if (series_) return sample_series(*series_, grid);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.angle(i));
    return out;
  }

  const Polygon* polygon() const { return poly_ ? &*poly_ : nullptr; }
  const TrigSeries* series() const { return series_ ? &*series_ : nullptr; }

 private:
  std::optional<Polygon> poly_;
  std::optional<TrigSeries> series_;
  double base_ = 0.0;
  std::vector<double> offsets_;
};

inline double support_eval(const Body& body, double theta) { return SupportFunction(body)(theta); }

inline std::vector<double> support_on_grid(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  return SupportFunction(body).on_grid(grid);
}

inline SupportVector to_support_vector(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  SupportVector sv{support_on_grid(body, grid)};
  validate_support_vector(sv);
  return sv;
}

// ---------------------------------------------------------------------------
// Area, surface measure, mixed area

inline double fourier_area(const TrigSeries& h) {
  // (1/2) int h (h + h'') = pi c0^2 + (pi/2) sum (1 - k^2)(a_k^2 + b_k^2)
  double s = kPi * h.c0 * h.c0;
  for (std::size_t k = 1; k <= h.degree(); ++k) {
    const double kk = static_cast<double>(k);
    s += 0.5 * kPi * (1.0 - kk * kk) * (h.a[k - 1] * h.a[k - 1] + h.b[k - 1] * h.b[k - 1]);
  }
  return s;
}

inline double area(const Body& body) {
  if (body.is_polygon()) return shoelace(body.polygon().vertices);
  if (body.is_fourier()) return fourier_area(body.fourier().h);
  const auto& h = body.support_vector().values;
  const auto len = support_edge_lengths(h);
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * len[i];
  return 0.5 * s;
}

inline SurfaceMeasure surface_measure(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  SurfaceMeasure m;
  if (body.is_polygon()) {
    for (const auto& e : polygon_edges(body.polygon())) m.atoms.emplace_back(wrap_angle(e.normal_angle), e.length);
  } else if (body.is_support()) {
    const auto& h = body.support_vector().values;
    const auto len = support_edge_lengths(h);
    const AngleGrid g(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) m.atoms.emplace_back(g.angle(i), std::max(len[i], 0.0));
  } else {
    const auto f = sample_series(curvature_series(body.fourier()), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) m.atoms.emplace_back(grid.angle(i), f[i] * grid.step());
  }
  return m;
}

/// (1/2) int h_L dS_K, without symmetrization.
inline double mixed_area_oneway(const Body& k, const Body& l) {
  if (k.is_fourier() && l.is_fourier()) {
    const auto& hk = k.fourier().h;
    const auto& hl = l.fourier().h;
    double s = kPi * hk.c0 * hl.c0;
    const std::size_t d = std::min(hk.degree(), hl.degree());
    for (std::size_t i = 1; i <= d; ++i) {
      const double kk = static_cast<double>(i);
      s += 0.5 * kPi * (1.0 - kk * kk) * (hk.a[i - 1] * hl.a[i - 1] + hk.b[i - 1] * hl.b[i - 1]);
    }
    return s;
  }
  if (k.is_fourier()) {
    // exact arc-by-arc integral of h_L f_K; h_L is linear on each vertex normal cone
    const TrigSeries f = curvature_series(k.fourier());
    const Polygon lp = to_polygon(l);
    const auto edges = polygon_edges(lp);
    const std::size_t n = edges.size();
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = edges[j].normal_angle;
      double hi = edges[(j + 1) % n].normal_angle;
      while (hi <= lo) hi += kTwoPi;
      s += integrate_linear_times_series(lp.vertices[(j + 1) % n], f, lo, hi);
    }
    return 0.5 * s;
  }
  const Polygon kp = to_polygon(k);
  const SupportFunction hl(l);
  double s = 0.0;
  for (const auto& e : polygon_edges(kp)) s += hl(e.normal_angle) * e.length;
  return 0.5 * s;
}

inline double mixed_area(const Body& k, const Body& l) {
  return 0.5 * (mixed_area_oneway(k, l) + mixed_area_oneway(l, k));
}

// ---------------------------------------------------------------------------
// Affine images

inline double determinant(const AffineMap& map) { return map.m.determinant(); }

inline Body affine_image(const Body& body, const AffineMap& map, const AngleGrid& grid = AngleGrid{}) {
  const double det = map.m.determinant();
  if (!(std::abs(det) > 1e-300) || !map.m.allFinite() || !map.t.allFinite())
    throw GeometryError(ErrorCode::SingularMap, "affine map is singular");
  if (body.is_polygon()) {
    std::vector<Vec2> v;
    for (const auto& p : body.polygon().vertices) v.push_back(map(p));
    if (det < 0.0) std::reverse(v.begin(), v.end());
    return make_polygon(std::move(v), body.label);
  }
  const SupportFunction h(body);
  const Mat2 mt = map.m.transpose();
  const AngleGrid g = body.is_support() ? body.support_vector().grid() : grid;
  std::vector<double> samples(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 u = g.direction(i);
    samples[i] = h.at(mt * u) + map.t.dot(u);
  }
  if (body.is_support()) return make_support_vector(std::move(samples), body.label);
  TrigSeries s = analyze_samples(samples);
  s.truncate(g.max_degree());
  // sampled coefficients carry rounding noise near 1e-16; anything at that level is not signal
  s.trim(1e-15);
  Body out{FourierBody{std::move(s)}, body.label};
  validate(out);
  return out;
}

inline Body translate(const Body& body, const Vec2& t, const AngleGrid& grid = AngleGrid{}) {
  if (body.is_fourier()) {
    // exact: a translation only moves the first harmonic
    TrigSeries s = body.fourier().h;
    if (s.a.empty()) {
      s.a.assign(1, 0.0);
      s.b.assign(1, 0.0);
    }
    s.a[0] += t.x();
    s.b[0] += t.y();
    return Body{FourierBody{std::move(s)}, body.label};
  }
  return affine_image(body, AffineMap{Mat2::Identity(), t}, grid);
}

inline Body scale(const Body& body, double factor, const AngleGrid& grid = AngleGrid{}) {
  if (body.is_fourier()) {
    TrigSeries s = body.fourier().h.scaled([factor](std::size_t) { return factor; });
    return Body{FourierBody{std::move(s)}, body.label};
  }
  return affine_image(body, AffineMap{factor * Mat2::Identity(), Vec2::Zero()}, grid);
}

/// Ellipse {c + a v : |v| <= 1} with semi-axes along the coordinate axes, as a Fourier body.
inline Body make_ellipse(double semi_x, double semi_y, const AngleGrid& grid = AngleGrid{},
                         std::string label = "ellipse") {
  Mat2 m = Mat2::Zero();
  m(0, 0) = semi_x;
  m(1, 1) = semi_y;
  Body e = affine_image(make_disk(), AffineMap{m, Vec2::Zero()}, grid);
  e.label = std::move(label);
  return e;
}

// ---------------------------------------------------------------------------
// Polar body

inline Body polar(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  if (body.is_fourier()) {
    const auto h = support_on_grid(body, grid);
    std::vector<Vec2> v;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(h[i] > 0.0)) throw GeometryError(ErrorCode::OriginNotInterior, "origin is not interior to the body");
      v.push_back(grid.direction(i) / h[i]);
    }
    return make_polygon(detail::prune_polygon(std::move(v)), body.label + "*");
  }
  const Polygon p = to_polygon(body);
  std::vector<Vec2> v;
  for (const auto& e : polygon_edges(p)) {
    if (!(e.offset > 0.0)) throw GeometryError(ErrorCode::OriginNotInterior, "origin is not interior to the body");
    v.push_back(e.normal / e.offset);
  }
  return make_polygon(detail::prune_polygon(std::move(v)), body.label + "*");
}

// ---------------------------------------------------------------------------
// Stats and curvature

inline BodyStats stats(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  BodyStats s;
  s.area = area(body);
  s.perimeter = surface_measure(body, grid).total();
  const auto h = support_on_grid(body, grid);
  s.h_min = *std::min_element(h.begin(), h.end());
  s.h_max = *std::max_element(h.begin(), h.end());
  s.d_groemer = 2.0 * s.h_max;
  return s;
}

inline std::vector<double> curvature_samples(const FourierBody& body, const AngleGrid& grid = AngleGrid{}) {
  auto f = sample_series(curvature_series(body), grid);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] > 0.0))
      throw GeometryError(ErrorCode::NonConvex, "h + h'' <= 0 at theta = " + std::to_string(grid.angle(i)));
  return f;
}

/// True when h(theta) and h(theta + pi) agree within rel_tol * max h on the grid.
inline bool is_origin_symmetric(const Body& body, const AngleGrid& grid = AngleGrid{}, double rel_tol = 1e-9) {
  if (body.is_polygon()) {
    const auto& v = body.polygon().vertices;
    if (v.size() % 2 != 0) return false;
    const double s = detail::polygon_scale(v);
    const std::size_t half = v.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
      if ((v[i] + v[i + half]).norm() > rel_tol * s) return false;
    return true;
  }
  const AngleGrid g = grid.size() % 2 == 0 ? grid : AngleGrid(2 * grid.size());
  const auto h = support_on_grid(body, g);
  const double hmax = *std::max_element(h.begin(), h.end());
  const std::size_t half = g.size() / 2;
  for (std::size_t i = 0; i < half; ++i)
    if (std::abs(h[i] - h[i + half]) > rel_tol * std::max(hmax, 1e-300)) return false;
  return true;
}

inline Vec2 centroid(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  return polygon_centroid(to_polygon(body, grid).vertices);
}

}  // namespace mahler
