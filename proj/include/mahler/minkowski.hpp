#pragma once

// Spectral solver for the planar Minkowski problem h + h'' = f, the Lambda
// body whose curvature radius is (V(K)/V(K^s)) h_{K-s}^{-3}, the pinching
// bounds of h f^{1/3}, and Lutwak's volume-product estimate.

#include "mahler/body.hpp"
#include "mahler/santalo.hpp"

#include <numeric>

namespace mahler {

/// Prescribed curvature radius on a uniform grid.
struct MinkowskiData {
  std::vector<double> f_values;
  /// Allowed first harmonic, relative to int f.
  double solvability_tol = 1e-8;

  AngleGrid grid() const { return AngleGrid(f_values.size()); }
};

struct MinkowskiSolution {
  TrigSeries h;
  /// max |(h + h'') - f| on the grid.
  double residual = 0.0;
};

struct PinchBounds {
  double m = 0.0;
  double M = 0.0;
};

/// Solves h + h'' = f mode by mode; the first harmonics of h are set to zero (Steiner point at the origin).
inline MinkowskiSolution solve_minkowski_series(const MinkowskiData& data) {
  const auto& f = data.f_values;
  if (f.size() < 8) throw GeometryError(ErrorCode::InvalidBody, "Minkowski data needs at least 8 samples");
  for (double x : f)
    if (!(x > 0.0) || !std::isfinite(x)) throw GeometryError(ErrorCode::InvalidBody, "curvature data must be positive");
  const TrigSeries fs = analyze_samples(f);
  // int f cos = pi a_1, int f = 2 pi c0
  if (std::abs(fs.a[0]) > 2.0 * data.solvability_tol * fs.c0 || std::abs(fs.b[0]) > 2.0 * data.solvability_tol * fs.c0)
    throw GeometryError(ErrorCode::SolvabilityViolation, "curvature data has a nonzero first harmonic");

  MinkowskiSolution sol;
  sol.h = fs.scaled([](std::size_t k) { return k == 1 ? 0.0 : 1.0 / (1.0 - static_cast<double>(k * k)); });

  const AngleGrid grid(f.size());
  const auto back = sample_series(sol.h.scaled([](std::size_t k) { return 1.0 - static_cast<double>(k * k); }), grid);
  for (std::size_t i = 0; i < f.size(); ++i) sol.residual = std::max(sol.residual, std::abs(back[i] - f[i]));
  return sol;
}

inline SupportVector solve_minkowski(const MinkowskiData& data) {
  const MinkowskiSolution sol = solve_minkowski_series(data);
  SupportVector sv{sample_series(sol.h, data.grid())};
  try {
    validate_support_vector(sv);
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::NonConvexSolution, e.what());
  }
  return sv;
}

namespace detail {

/// Fourier coefficients (degree <= max_degree) of a function given arc by arc.
/// On arc j, g(theta) = fn(j, theta); integrated by composite Gauss-Legendre.
template <class Fn>
TrigSeries arcwise_coefficients(const std::vector<std::pair<double, double>>& arcs, std::size_t max_degree, Fn&& fn) {
  std::vector<double> nodes, weights;
  gauss_legendre(16, nodes, weights);
  const double max_len = std::min(0.05, 2.0 / static_cast<double>(max_degree + 1));
  std::vector<std::complex<double>> acc(max_degree + 1, {0.0, 0.0});
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    const auto [lo, hi] = arcs[j];
    const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / max_len));
    if (pieces == 0) continue;
    const double len = (hi - lo) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
      const double a = lo + len * static_cast<double>(p);
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        const double t = a + 0.5 * len * (nodes[q] + 1.0);
        const double w = 0.5 * len * weights[q] * fn(j, t);
        const std::complex<double> step(std::cos(t), std::sin(t));
        std::complex<double> z(1.0, 0.0);
        for (std::size_t k = 0; k <= max_degree; ++k) {
          acc[k] += w * z;
          z *= step;
        }
      }
    }
  }
  TrigSeries s;
  s.c0 = acc[0].real() / kTwoPi;
  s.a.resize(max_degree);
  s.b.resize(max_degree);
  for (std::size_t k = 1; k <= max_degree; ++k) {
    s.a[k - 1] = acc[k].real() / kPi;
    s.b[k - 1] = acc[k].imag() / kPi;
  }
  return s;
}

/// Normal-cone arcs of a polygon: arc j belongs to vertex j+1.
inline std::vector<std::pair<double, double>> vertex_arcs(const Polygon& p) {
  const auto edges = polygon_edges(p);
  std::vector<std::pair<double, double>> arcs;
  const std::size_t n = edges.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = edges[j].normal_angle;
    double hi = edges[(j + 1) % n].normal_angle;
    while (hi <= lo) hi += kTwoPi;
    arcs.emplace_back(lo, hi);
  }
  return arcs;
}

}  // namespace detail

/// Exact Fourier series of a polygon's support function, up to max_degree.
inline TrigSeries polygon_support_series(const Polygon& p, std::size_t max_degree) {
  const auto arcs = detail::vertex_arcs(p);
  const std::size_t n = p.vertices.size();
  TrigSeries s;
  double c0 = 0.0;
  for (std::size_t j = 0; j < n; ++j) c0 += integrate_linear_times_mode(p.vertices[(j + 1) % n], 0, arcs[j].first, arcs[j].second).first;
  s.c0 = c0 / kTwoPi;
  s.a.assign(max_degree, 0.0);
  s.b.assign(max_degree, 0.0);
  for (std::size_t k = 1; k <= max_degree; ++k) {
    double c = 0.0, si = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto [ck, sk] = integrate_linear_times_mode(p.vertices[(j + 1) % n], k, arcs[j].first, arcs[j].second);
      c += ck;
      si += sk;
    }
    s.a[k - 1] = c / kPi;
    s.b[k - 1] = si / kPi;
  }
  return s;
}

/// Smallest heat-kernel width whose weight at the grid's top degree is below 1e-16.
inline double default_mollifier_width(const AngleGrid& grid) {
  const double k = static_cast<double>(grid.max_degree());
  return std::max(1e-3, 37.0 / (k * k));
}

/// Width that also keeps h + h'' visibly positive midway along every edge of a polygon:
/// the kernel tail there is exp(-gap^2 / (16 sigma)) >= exp(-18).
inline double mollifier_width(const Body& body, const AngleGrid& grid = AngleGrid{}) {
  double sigma = default_mollifier_width(grid);
  if (body.is_fourier()) return sigma;
  const auto edges = polygon_edges(to_polygon(body));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double gap = wrap_angle(edges[(i + 1) % edges.size()].normal_angle - edges[i].normal_angle);
    sigma = std::max(sigma, gap * gap / 288.0);
  }
  return sigma;
}

/// Smooth surrogate: support function convolved with the heat kernel exp(-sigma k^2),
/// a positive kernel, so the result stays convex. Degree capped at n/4.
inline Body mollify(const Body& body, double sigma, const AngleGrid& grid = AngleGrid{}) {
  TrigSeries s = body.is_fourier() ? body.fourier().h : polygon_support_series(to_polygon(body), grid.max_degree());
  s = s.scaled([sigma](std::size_t k) { return std::exp(-sigma * static_cast<double>(k * k)); });
  s.truncate(grid.max_degree());
  s.trim(1e-16);
  Body out{FourierBody{std::move(s)}, body.label + "~"};
  validate_fourier(out.fourier(), grid);
  return out;
}

struct LambdaResult {
  Body body;
  SantaloResult santalo;
  /// V(K) / V(K^s)
  double normalization = 0.0;
  /// |first harmonic| / mean of f_Lambda, a check of the Santalo condition
  double first_harmonic = 0.0;
};

struct LambdaOptions {
  AngleGrid grid{};
  double first_harmonic_tol = 1e-7;
  double tail_energy_tol = 1e-10;
};

/// Lambda body with its Santalo data; the result is a Fourier body with Steiner point at the origin.
inline LambdaResult lambda_transform(const Body& body, const LambdaOptions& opt = {}) {
  SantaloOptions sopt;
  sopt.grid = opt.grid;
  LambdaResult r;
  r.santalo = santalo_point(body, sopt);
  const double vk = area(body);
  r.normalization = vk / r.santalo.polar_area;
  const Vec2 s = r.santalo.point;
  const std::size_t top = opt.grid.max_degree();

  TrigSeries f;
  if (body.is_fourier()) {
    auto h = support_on_grid(body, opt.grid);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double c = h[i] - s.dot(opt.grid.direction(i));
      h[i] = r.normalization / (c * c * c);
    }
    f = analyze_samples(h);
    double total = f.c0 * f.c0 * 2.0;
    double tail = 0.0;
    for (std::size_t k = 1; k <= f.degree(); ++k) {
      const double e = f.a[k - 1] * f.a[k - 1] + f.b[k - 1] * f.b[k - 1];
      total += e;
      if (3 * k > opt.grid.size()) tail += e;
    }
    if (tail > opt.tail_energy_tol * total)
      throw GeometryError(ErrorCode::AliasingError, "h^-3 is not resolved on this grid; refine the grid");
    f.truncate(top);
  } else {
    Polygon p = to_polygon(body);
    for (auto& v : p.vertices) v -= s;
    const auto arcs = detail::vertex_arcs(p);
    const std::size_t n = p.vertices.size();
    const double c = r.normalization;
    f = detail::arcwise_coefficients(arcs, top, [&](std::size_t j, double t) {
      const double h = p.vertices[(j + 1) % n].dot(unit(t));
      return c / (h * h * h);
    });
  }
  r.first_harmonic = std::hypot(f.a[0], f.b[0]) / f.c0;
  if (r.first_harmonic > opt.first_harmonic_tol)
    throw GeometryError(ErrorCode::SolvabilityViolation,
                        "Lambda data violates the Santalo condition: " + std::to_string(r.first_harmonic));
  TrigSeries h = f.scaled([](std::size_t k) { return k == 1 ? 0.0 : 1.0 / (1.0 - static_cast<double>(k * k)); });
  h.trim();
  r.body = Body{FourierBody{std::move(h)}, "Lambda(" + body.label + ")"};
  try {
    validate_fourier(r.body.fourier(), opt.grid);
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::NonConvexSolution, e.what());
  }
  return r;
}

inline Body lambda_body(const Body& body, const LambdaOptions& opt = {}) { return lambda_transform(body, opt).body; }

inline PinchBounds pinch_bounds(const FourierBody& body, const AngleGrid& grid = AngleGrid{}) {
  const auto f = curvature_samples(body, grid);
  const auto h = sample_series(body.h, grid);
  PinchBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = h[i] * std::cbrt(f[i]);
    b.m = std::min(b.m, x);
    b.M = std::max(b.M, x);
  }
  if (!(b.m > 0.0)) throw GeometryError(ErrorCode::NonConvex, "h f^{1/3} is not positive");
  return b;
}

/// pi^2 V(Lambda K)/V(K) - V(K) V(K^s), nonnegative by Lutwak's inequality.
inline double lutwak_gap(const Body& body, const LambdaOptions& opt = {}) {
  const LambdaResult r = lambda_transform(body, opt);
  const double vk = area(body);
  return kPi * kPi * area(r.body) / vk - vk * r.santalo.polar_area;
}

}  // namespace mahler
