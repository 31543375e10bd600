#pragma once

// Santalo point, volume product, Blaschke-Santalo deficit and Groemer's gap.

#include "mahler/body.hpp"

namespace mahler {

struct SantaloResult {
  Vec2 point = Vec2::Zero();
  /// Area of (K - s)^*.
  double polar_area = 0.0;
  /// |grad| * sqrt(V(K)) / V(K^s) at return.
  double gradient_norm = 0.0;
  int iterations = 0;
};

struct SantaloOptions {
  int max_iterations = 100;
  double gradient_tol = 1e-10;
  AngleGrid grid{};
};

/// Area of (K - x)^* as a function of x, with gradient and Hessian.
///
/// Polygons (and support vectors, via their circumscribed polygon) use the
/// exact polar polygon; smooth bodies use the trapezoid rule for
/// (1/2) int (h - <x,u>)^{-2}, which is spectrally accurate.
class PolarAreaFunction {
 public:
  PolarAreaFunction(const Body& body, const AngleGrid& grid) : grid_(grid) {
    if (body.is_fourier()) {
      h_ = support_on_grid(body, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) u_.push_back(grid.direction(i));
      exact_ = false;
    } else {
      const auto edges = polygon_edges(to_polygon(body));
      for (const auto& e : edges) {
        h_.push_back(e.offset);
        u_.push_back(e.normal);
      }
      exact_ = true;
    }
  }

  /// Offsets h_i - <x, u_i>; all positive iff x is interior.
  bool interior(const Vec2& x) const {
    for (std::size_t i = 0; i < h_.size(); ++i)
      if (!(h_[i] - u_[i].dot(x) > 0.0)) return false;
    return true;
  }

  /// Largest step along d keeping x + a d interior (infinity when unbounded).
  double max_step(const Vec2& x, const Vec2& d) const {
    double a = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h_.size(); ++i) {
      const double rate = u_[i].dot(d);
      if (rate > 0.0) a = std::min(a, (h_[i] - u_[i].dot(x)) / rate);
    }
    return a;
  }

  double value(const Vec2& x) const {
    double v = 0.0;
    gradient_hessian(x, &v, nullptr, nullptr);
    return v;
  }

  void gradient_hessian(const Vec2& x, double* value, Vec2* grad, Mat2* hess) const {
    const std::size_t n = h_.size();
    double v = 0.0;
    Vec2 g = Vec2::Zero();
    Mat2 hm = Mat2::Zero();
    if (!exact_) {
      const double dt = grid_.step();
      for (std::size_t i = 0; i < n; ++i) {
        const double c = h_[i] - u_[i].dot(x);
        const double c2 = 1.0 / (c * c);
        v += 0.5 * c2 * dt;
        g += u_[i] * (c2 / c) * dt;
        hm += 3.0 * (c2 * c2) * dt * u_[i] * u_[i].transpose();
      }
    } else {
      // area of the polar polygon with vertices u_e / c_e
      for (std::size_t e = 0; e < n; ++e) {
        const std::size_t f = (e + 1) % n;
        const double ce = h_[e] - u_[e].dot(x);
        const double cf = h_[f] - u_[f].dot(x);
        const double s = cross(u_[e], u_[f]);
        const double q = 1.0 / (ce * cf);
        v += 0.5 * s * q;
        const Vec2 w = u_[e] / ce + u_[f] / cf;
        g += 0.5 * s * q * w;
        hm += 0.5 * s * q *
              (w * w.transpose() + u_[e] * u_[e].transpose() / (ce * ce) + u_[f] * u_[f].transpose() / (cf * cf));
      }
    }
    if (value) *value = v;
    if (grad) *grad = g;
    if (hess) *hess = hm;
  }

  bool exact() const { return exact_; }
  const std::vector<double>& offsets() const { return h_; }
  const std::vector<Vec2>& normals() const { return u_; }

 private:
  AngleGrid grid_;
  std::vector<double> h_;
  std::vector<Vec2> u_;
  bool exact_ = true;
};

/// Area of (K - x)^*; throws OriginNotInterior when x is not interior.
inline double polar_area_about(const Body& body, const Vec2& x, const AngleGrid& grid = AngleGrid{}) {
  const PolarAreaFunction f(body, grid);
  if (!f.interior(x)) throw GeometryError(ErrorCode::OriginNotInterior, "point is not interior to the body");
  return f.value(x);
}

/// Minimizer of x -> V((K - x)^*) by damped Newton from the centroid.
inline SantaloResult santalo_point(const Body& body, const SantaloOptions& opt = {}) {
  const PolarAreaFunction f(body, opt.grid);
  const double scale = std::sqrt(std::abs(area(body)));
  Vec2 x = centroid(body, opt.grid);
  if (!f.interior(x)) throw GeometryError(ErrorCode::NoConvergence, "centroid is not interior; body is degenerate");

  SantaloResult r;
  for (int it = 0; it <= opt.max_iterations; ++it) {
    double v = 0.0;
    Vec2 g;
    Mat2 h;
    f.gradient_hessian(x, &v, &g, &h);
    r.point = x;
    r.polar_area = v;
    r.gradient_norm = g.norm() * scale / v;
    r.iterations = it;
    if (r.gradient_norm <= opt.gradient_tol) return r;
    if (it == opt.max_iterations) break;

    const Vec2 d = -h.ldlt().solve(g);
    // fraction-to-boundary 0.9, then Armijo backtracking
    double a = std::min(1.0, 0.9 * f.max_step(x, d));
    const double slope = g.dot(d);
    // close to the minimum the decrease is below the rounding of v
    const bool quadratic = r.gradient_norm < 1e-6;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vec2 trial = x + a * d;
      if (f.interior(trial)) {
        const double vt = f.value(trial);
        if (quadratic || vt <= v + 1e-4 * a * slope || (vt <= v && a < 1e-8)) {
          x = trial;
          moved = true;
          break;
        }
      }
      a *= 0.5;
    }
    if (!moved) break;
  }
  // line search can stall at round-off level just above the tolerance
  if (r.gradient_norm <= 10.0 * opt.gradient_tol) return r;
  throw GeometryError(ErrorCode::NoConvergence,
                      "Santalo Newton iteration stalled with residual " + std::to_string(r.gradient_norm));
}

inline double volume_product(const Body& body, const SantaloOptions& opt = {}) {
  return area(body) * santalo_point(body, opt).polar_area;
}

/// pi^2 / (V(K) V(K^s)) - 1, with round-off below zero clipped.
inline double santalo_deficit(const Body& body, const SantaloOptions& opt = {}) {
  const double eps = kPi * kPi / volume_product(body, opt) - 1.0;
  if (eps < 0.0 && eps >= -1e-9) return 0.0;
  return eps;
}

/// LHS - RHS of Groemer's stability form of Minkowski's inequality for symmetric K, L.
inline double groemer_gap(const Body& k, const Body& l, const AngleGrid& grid = AngleGrid{}) {
  if (!is_origin_symmetric(k, grid) || !is_origin_symmetric(l, grid))
    throw GeometryError(ErrorCode::NotSymmetric, "Groemer's estimate needs origin-symmetric bodies");
  const double vk = area(k);
  const double vl = area(l);
  const double vkl = mixed_area(k, l);
  const double d = stats(k, grid).d_groemer;
  const auto hk = support_on_grid(k, grid);
  const auto hl = support_on_grid(l, grid);
  double dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    dev = std::max(dev, std::abs(hk[i] / std::sqrt(vk) - hl[i] / std::sqrt(vl)));
  const double lhs = vkl * vkl / (vk * vl) - 1.0;
  const double rhs = vk / (4.0 * d * d) * dev * dev;
  return lhs - rhs;
}

}  // namespace mahler
