#include "mahler/mahler.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mahler;

namespace {

std::vector<oracle::P> pairs(const Polygon& p) {
  std::vector<oracle::P> v;
  for (const auto& x : p.vertices) v.emplace_back(x.x(), x.y());
  return v;
}

Body from_pairs(const std::vector<oracle::P>& v, const std::string& label = "poly") {
  std::vector<Vec2> w;
  for (const auto& [x, y] : v) w.emplace_back(x, y);
  return make_polygon(std::move(w), label);
}

}  // namespace

TEST(Grid, RejectsTooFewPoints) {
  EXPECT_THROW(AngleGrid(2), GeometryError);
  EXPECT_NO_THROW(AngleGrid(3));
  EXPECT_EQ(AngleGrid(1024).max_degree(), 256u);
}

TEST(Fourier, SampleAnalyzeRoundTrip) {
  const TrigSeries s{1.0, {0.1, -0.02, 0.0, 0.003}, {0.0, 0.05, -0.01, 0.0}};
  const AngleGrid g(64);
  const auto x = sample_series(s, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(x[i], oracle::trig(s.c0, s.a, s.b, g.angle(i)), 1e-14);
  const TrigSeries back = analyze_samples(x);
  EXPECT_NEAR(back.c0, 1.0, 1e-15);
  for (std::size_t k = 0; k < s.degree(); ++k) {
    EXPECT_NEAR(back.a[k], s.a[k], 1e-15);
    EXPECT_NEAR(back.b[k], s.b[k], 1e-15);
  }
}

TEST(Fourier, DirectEvaluationMatchesTermwise) {
  std::vector<double> a(300), b(300);
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = 1.0 / ((k + 1.0) * (k + 1.0));
    b[k] = std::sin(k + 0.5) / ((k + 1.0) * (k + 2.0));
  }
  const TrigSeries s{0.5, a, b};
  for (double t : {0.0, 0.3, 1.7, 3.14, 5.9}) EXPECT_NEAR(s(t), oracle::trig(0.5, a, b, t), 1e-12);
}

TEST(Fourier, GaussLegendreIntegratesPolynomials) {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  for (int p = 0; p <= 15; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], p);
    EXPECT_NEAR(s, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << "degree " << p;
  }
}

TEST(Fourier, LinearTimesModeIntegral) {
  const Vec2 v(0.7, -0.3);
  for (std::size_t k : {0u, 1u, 2u, 5u}) {
    const auto [c, s] = integrate_linear_times_mode(v, k, 0.2, 1.3);
    double rc = 0.0, rs = 0.0;
    const int n = 200000;
    const double dt = 1.1 / n;
    for (int i = 0; i < n; ++i) {
      const double t = 0.2 + (i + 0.5) * dt;
      const double lin = v.x() * std::cos(t) + v.y() * std::sin(t);
      rc += lin * std::cos(k * t) * dt;
      rs += lin * std::sin(k * t) * dt;
    }
    EXPECT_NEAR(c, rc, 1e-10);
    EXPECT_NEAR(s, rs, 1e-10);
  }
}

TEST(Body, PolygonValidation) {
  EXPECT_THROW(make_polygon({{0, 0}, {1, 0}}), GeometryError);
  try {
    make_polygon({{0, 0}, {2, 0}, {1, 0.1}, {2, 2}, {0, 2}});
    FAIL() << "reflex vertex accepted";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConvexityViolation);
  }
  // vertices must be counterclockwise; make_hull takes any order
  EXPECT_THROW(make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), GeometryError);
  EXPECT_NEAR(area(make_hull({{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0.5, 0.5}})), 1.0, 1e-15);
}

TEST(Body, FourierConvexityBoundary) {
  EXPECT_NO_THROW(make_fourier(1.0, {0, 0, 0, 0.066}, {}));
  try {
    make_fourier(1.0, {0, 0, 0, 0.1}, {});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConvexityViolation);
  }
}

TEST(Body, SupportVectorValidation) {
  EXPECT_NO_THROW(make_support_vector({1, 1, 1, 1}));
  // with 8 directions a single raised value creates a negative edge; with 4 any positive h is a rectangle
  EXPECT_NO_THROW(make_support_vector({1, 2.0, 1, 1}));
  EXPECT_THROW(make_support_vector({1, 2.0, 1, 1, 1, 1, 1, 1}), GeometryError);
}

TEST(Body, PolygonSupportMatchesVertexMaximum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = oracle::random_convex(rng, 9, false);
    const Body b = from_pairs(v);
    for (int i = 0; i < 50; ++i) {
      const double t = 2.0 * kPi * i / 50.0 + 0.013;
      EXPECT_NEAR(support_eval(b, t), oracle::support(v, t), 1e-13);
    }
  }
}

TEST(Body, AreasAgreeWithIndependentFormulas) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = oracle::random_convex(rng, 8, false);
    EXPECT_NEAR(area(from_pairs(v)), oracle::shoelace(v), 1e-13);
  }
  const std::vector<double> a{0.0, 0.05, 0.01, -0.02}, b{0.0, 0.0, 0.015, 0.005};
  const Body f = make_fourier(1.0, a, b);
  EXPECT_NEAR(area(f), oracle::trig_area(1.0, a, b), 1e-13);
}

TEST(Body, SupportVectorIsItsCircumscribedPolygon) {
  // h = 1 on 4 directions is the square of side 2
  const Body s = make_support_vector({1, 1, 1, 1});
  EXPECT_NEAR(area(s), 4.0, 1e-14);
  const Body o = make_support_vector(std::vector<double>(8, 1.0));
  EXPECT_NEAR(area(o), 8.0 * std::tan(kPi / 8.0), 1e-13);
}

TEST(Body, MixedAreaMatchesMinkowskiSumPolarization) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracle::random_convex(rng, 7, false);
    const auto q = oracle::random_convex(rng, 5, false);
    const double expected =
        0.5 * (oracle::shoelace(oracle::minkowski_sum(p, q)) - oracle::shoelace(p) - oracle::shoelace(q));
    EXPECT_NEAR(mixed_area(from_pairs(p), from_pairs(q)), expected, 1e-12);
  }
}

TEST(Body, MixedAreaFourierPolygonMatchesQuadrature) {
  const Body f = make_fourier(1.0, {0.0, 0.04, 0.0, 0.01}, {0.0, 0.0, 0.02, 0.0});
  const Body q = make_polygon({{-1, -0.5}, {1.2, -0.7}, {0.8, 1.1}, {-0.9, 0.6}});
  // (1/2) int h_Q f dtheta with f = h + h'' of the smooth body
  const int n = 400000;
  double s = 0.0;
  std::vector<oracle::P> qv = pairs(q.polygon());
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * oracle::pi * (i + 0.5) / n;
    const double fv = 1.0 - 3.0 * 0.04 * std::cos(2 * t) - 15.0 * 0.01 * std::cos(4 * t) - 8.0 * 0.02 * std::sin(3 * t);
    s += oracle::support(qv, t) * fv;
  }
  s *= 0.5 * 2.0 * oracle::pi / n;
  EXPECT_NEAR(mixed_area_oneway(f, q), s, 1e-9);
  EXPECT_NEAR(mixed_area(f, q), mixed_area(q, f), 1e-9);
  // Minkowski's inequality
  EXPECT_GE(mixed_area(f, q) * mixed_area(f, q) - area(f) * area(q), -1e-12);
}

TEST(Body, MixedAreaWithItselfIsArea) {
  const Body f = make_fourier(1.0, {0.0, 0.04}, {0.0, 0.02});
  EXPECT_NEAR(mixed_area(f, f), area(f), 1e-14);
  EXPECT_NEAR(mixed_area(make_square(), make_square()), 4.0, 1e-14);
  // V(B, Q) = perimeter / 2
  EXPECT_NEAR(mixed_area(make_disk(), make_square()), 4.0, 1e-12);
}

TEST(Body, AffineImageScalesArea) {
  AffineMap m;
  m.m << 2.0, 0.3, -0.1, 0.7;
  m.t = Vec2(0.2, -0.4);
  const double det = m.m.determinant();
  const Body p = make_regular_polygon(7);
  EXPECT_NEAR(area(affine_image(p, m)), det * area(p), 1e-13);
  const Body f = make_fourier(1.0, {0.0, 0.05}, {});
  EXPECT_NEAR(area(affine_image(f, m)), det * area(f), 1e-10);
  AffineMap flip;
  flip.m << 1.0, 0.0, 0.0, -1.0;
  EXPECT_NEAR(area(affine_image(p, flip)), area(p), 1e-13);
  AffineMap sing;
  sing.m << 1.0, 2.0, 0.5, 1.0;
  EXPECT_THROW(affine_image(p, sing), GeometryError);
}

TEST(Body, EllipseArea) {
  const Body e = make_ellipse(2.0, 0.5);
  EXPECT_NEAR(area(e), kPi, 1e-9);
}

TEST(Body, PolarOfPolygonAndDisk) {
  const Body sq = make_square();
  // polar of [-1,1]^2 is the cross-polytope of area 2
  EXPECT_NEAR(area(polar(sq)), 2.0, 1e-14);
  const Body tri = make_polygon({{-1, -1}, {2, -1}, {-1, 2}});
  const Body tp = polar(tri);
  const auto v = pairs(tri.polygon());
  EXPECT_NEAR(area(tp), oracle::polar_area([&](double t) { return oracle::support(v, t); }, 0.0, 0.0), 1e-6);
  EXPECT_THROW(polar(make_polygon({{0, 0}, {1, 0}, {0, 1}})), GeometryError);
}

TEST(Body, StatsAndSymmetry) {
  const BodyStats s = stats(make_square());
  EXPECT_NEAR(s.area, 4.0, 1e-14);
  EXPECT_NEAR(s.perimeter, 8.0, 1e-12);
  EXPECT_NEAR(s.h_max, std::sqrt(2.0), 1e-5);
  EXPECT_NEAR(s.h_min, 1.0, 1e-12);
  EXPECT_TRUE(is_origin_symmetric(make_square()));
  EXPECT_FALSE(is_origin_symmetric(make_polygon({{-1, -1}, {2, -1}, {-1, 2}})));
  EXPECT_TRUE(is_origin_symmetric(make_fourier(1.0, {0, 0.05, 0, 0.01}, {})));
  EXPECT_FALSE(is_origin_symmetric(make_fourier(1.0, {0, 0, 0.05}, {})));
}

TEST(Body, CentroidOfTriangleAndTranslatedDisk) {
  const Vec2 c = centroid(make_polygon({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_NEAR(c.x(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.y(), 1.0 / 3.0, 1e-15);
  const Vec2 d = centroid(translate(make_disk(), Vec2(0.3, -0.2)));
  EXPECT_NEAR(d.x(), 0.3, 1e-12);
  EXPECT_NEAR(d.y(), -0.2, 1e-12);
}

TEST(Body, SurfaceMeasureClosesUp) {
  for (const Body& b : {make_regular_polygon(5), make_fourier(1.0, {0.0, 0.03, 0.01}, {0.0, 0.0, 0.02})}) {
    const SurfaceMeasure m = surface_measure(b);
    EXPECT_LT(m.resultant().norm(), 1e-12);
  }
}
