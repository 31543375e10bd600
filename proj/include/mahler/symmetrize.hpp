#pragma once

// Exact Steiner symmetrization of polygons about lines through the origin,
// Meyer-Pajor monotonicity checks, and finite symmetrization flows.

#include "mahler/body.hpp"
#include "mahler/nelder_mead.hpp"
#include "mahler/santalo.hpp"

namespace mahler {

namespace detail {

/// y on an x-monotone chain at abscissa x; exact at chain vertices.
class ChainWalker {
 public:
  explicit ChainWalker(std::vector<Vec2> chain) : c_(std::move(chain)) {}

  double at(double x) {
    while (k_ + 1 < c_.size() && c_[k_ + 1].x() <= x) ++k_;
    if (c_[k_].x() == x || k_ + 1 == c_.size()) return c_[k_].y();
    const Vec2& a = c_[k_];
    const Vec2& b = c_[k_ + 1];
    return a.y() + (x - a.x()) / (b.x() - a.x()) * (b.y() - a.y());
  }

 private:
  std::vector<Vec2> c_;
  std::size_t k_ = 0;
};

/// Symmetral about the x-axis of a CCW convex polygon.
inline std::vector<Vec2> symmetral_about_x_axis(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  auto less_lb = [](const Vec2& a, const Vec2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); };
  std::size_t lb = 0, lt = 0, rb = 0, rt = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (less_lb(v[i], v[lb])) lb = i;
    if (v[i].x() < v[lt].x() || (v[i].x() == v[lt].x() && v[i].y() > v[lt].y())) lt = i;
    if (v[i].x() > v[rb].x() || (v[i].x() == v[rb].x() && v[i].y() < v[rb].y())) rb = i;
    if (v[i].x() > v[rt].x() || (v[i].x() == v[rt].x() && v[i].y() > v[rt].y())) rt = i;
  }
  std::vector<Vec2> lower, upper;
  for (std::size_t i = lb;; i = (i + 1) % n) {
    lower.push_back(v[i]);
    if (i == rb) break;
  }
  for (std::size_t i = rt;; i = (i + 1) % n) {
    upper.push_back(v[i]);
    if (i == lt) break;
  }
  std::reverse(upper.begin(), upper.end());

  std::vector<double> xs;
  for (const auto& p : v) xs.push_back(p.x());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  ChainWalker lo(lower), hi(upper);
  std::vector<double> half(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) half[i] = 0.5 * std::max(0.0, hi.at(xs[i]) - lo.at(xs[i]));

  std::vector<Vec2> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.emplace_back(xs[i], -half[i]);
  for (std::size_t i = xs.size(); i-- > 0;)
    if (half[i] > 0.0 || (i != xs.size() - 1 && i != 0)) out.emplace_back(xs[i], half[i]);
  return prune_polygon(std::move(out));
}

}  // namespace detail

/// Steiner symmetral about the line through the origin at angle axis.
/// Smooth bodies are replaced by their inscribed polygon on the grid first.
inline Body steiner_symmetral(const Body& body, double axis, const AngleGrid& grid = AngleGrid{}) {
  const Polygon p = to_polygon(body, grid);
  const Mat2 to_axis = rotation(-axis);
  const Mat2 back = rotation(axis);
  std::vector<Vec2> v;
  v.reserve(p.vertices.size());
  for (const auto& x : p.vertices) v.push_back(axis == 0.0 ? x : Vec2(to_axis * x));
  auto s = detail::symmetral_about_x_axis(v);
  if (axis != 0.0)
    for (auto& x : s) x = back * x;
  return make_polygon(std::move(s), body.label);
}

struct MeyerPajorReport {
  /// V((K_H)^{s'}) - V(K^s)
  double gap = 0.0;
  double polar_area = 0.0;
  double symmetral_polar_area = 0.0;
  /// distance of s' from the axis, relative to sqrt(V(K))
  double axis_offset = 0.0;
};

inline MeyerPajorReport meyer_pajor_gap(const Body& body, double axis, const AngleGrid& grid = AngleGrid{}) {
  SantaloOptions so;
  so.grid = grid;
  const Body sym = steiner_symmetral(body, axis, grid);
  // both sides on the same polygonal body
  const Body base = body.is_fourier() ? Body{to_polygon(body, grid), body.label} : body;
  const SantaloResult s0 = santalo_point(base, so);
  const SantaloResult s1 = santalo_point(sym, so);
  MeyerPajorReport r;
  r.polar_area = s0.polar_area;
  r.symmetral_polar_area = s1.polar_area;
  r.gap = s1.polar_area - s0.polar_area;
  const Vec2 normal(-std::sin(axis), std::cos(axis));
  r.axis_offset = std::abs(normal.dot(s1.point)) / std::sqrt(area(sym));
  return r;
}

/// min over x of sup |h_{K-x}(t) - h_{K-x}(t + pi)| / max h_{K-x}.
inline double asymmetry(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  const AngleGrid g = grid.size() % 2 == 0 ? grid : AngleGrid(2 * grid.size());
  const auto h = support_on_grid(body, g);
  const std::size_t half = g.size() / 2;
  std::vector<double> odd(half);
  std::vector<Vec2> dirs(half);
  Vec2 x0 = Vec2::Zero();
  for (std::size_t i = 0; i < half; ++i) {
    odd[i] = h[i] - h[i + half];
    dirs[i] = g.direction(i);
    x0 += odd[i] * dirs[i];
  }
  x0 /= static_cast<double>(half);
  const double scale = std::sqrt(std::abs(area(body)));
  auto sup = [&](const Eigen::VectorXd& z) {
    const Vec2 x(scale * z(0), scale * z(1));
    double m = 0.0;
    for (std::size_t i = 0; i < half; ++i) m = std::max(m, std::abs(odd[i] - 2.0 * x.dot(dirs[i])));
    return m;
  };
  Eigen::VectorXd z0(2);
  z0 << x0.x() / scale, x0.y() / scale;
  NelderMeadOptions nm;
  nm.initial_step = 0.01;
  const auto best = nelder_mead(sup, z0, nm);
  const Vec2 x(scale * best.x(0), scale * best.x(1));
  double hmax = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) hmax = std::max(hmax, h[i] - x.dot(g.direction(i)));
  return best.value / hmax;
}

struct FlowStep {
  double axis = 0.0;
  double volume_product = 0.0;
  double asymmetry = 0.0;
};

struct FlowHistory {
  /// Entry 0 is the (polygonized) input; entry i the state after step i.
  std::vector<FlowStep> steps;
  Body final;
};

/// Cyclic Steiner symmetrization; records volume product and asymmetry after each step.
inline FlowHistory symmetrization_flow(const Body& body, const std::vector<double>& axes, std::size_t steps,
                                       const AngleGrid& grid = AngleGrid{}) {
  if (axes.empty()) throw GeometryError(ErrorCode::InvalidBody, "symmetrization flow needs at least one axis");
  SantaloOptions so;
  so.grid = grid;
  Body cur{to_polygon(body, grid), body.label};
  FlowHistory hist;
  hist.steps.push_back({std::numeric_limits<double>::quiet_NaN(), volume_product(cur, so), asymmetry(cur, grid)});
  for (std::size_t i = 0; i < steps; ++i) {
    const double axis = axes[i % axes.size()];
    cur = steiner_symmetral(cur, axis, grid);
    hist.steps.push_back({axis, volume_product(cur, so), asymmetry(cur, grid)});
  }
  hist.final = std::move(cur);
  return hist;
}

}  // namespace mahler
