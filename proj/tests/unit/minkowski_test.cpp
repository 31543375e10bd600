#include "mahler/mahler.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mahler;

namespace {

std::vector<double> sample(const std::function<double(double)>& f, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
  return v;
}

Body random_body(std::mt19937_64& rng, int n, bool symmetric) {
  std::vector<Vec2> v;
  for (const auto& [x, y] : oracle::random_convex(rng, n, symmetric)) v.emplace_back(x, y);
  return make_polygon(std::move(v));
}

}  // namespace

TEST(Minkowski, ModeDivision) {
  MinkowskiData d{sample([](double t) { return 1.0 - 0.3 * std::cos(2 * t); }, 256)};
  const MinkowskiSolution s = solve_minkowski_series(d);
  EXPECT_NEAR(s.h.c0, 1.0, 1e-12);
  EXPECT_NEAR(s.h.a[1], 0.1, 1e-12);
  for (std::size_t k = 0; k < s.h.degree(); ++k)
    if (k != 1) {
      EXPECT_NEAR(s.h.a[k], 0.0, 1e-12);
      EXPECT_NEAR(s.h.b[k], 0.0, 1e-12);
    }
  const SupportVector sv = solve_minkowski(d);
  for (std::size_t i = 0; i < sv.values.size(); ++i)
    EXPECT_NEAR(sv.values[i], 1.0 + 0.1 * std::cos(2 * sv.grid().angle(i)), 1e-12);
}

TEST(Minkowski, ResidualOnBandLimitedData) {
  auto f = [](double t) { return 2.0 + 0.3 * std::cos(3 * t) - 0.2 * std::sin(5 * t) + 0.05 * std::cos(17 * t); };
  MinkowskiData d{sample(f, 512)};
  const MinkowskiSolution s = solve_minkowski_series(d);
  EXPECT_LE(s.residual, 1e-10 * 2.55);
  // independent check: h + h'' evaluated term by term
  for (double t : {0.1, 1.0, 2.5}) {
    double hh = s.h.c0;
    for (std::size_t k = 0; k < s.h.degree(); ++k) {
      const double kk = k + 1.0;
      hh += (1 - kk * kk) * (s.h.a[k] * std::cos(kk * t) + s.h.b[k] * std::sin(kk * t));
    }
    EXPECT_NEAR(hh, f(t), 1e-12);
  }
}

TEST(Minkowski, RejectsFirstHarmonicAndBadData) {
  try {
    solve_minkowski(MinkowskiData{sample([](double t) { return 1.0 + 0.2 * std::cos(t); }, 128)});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SolvabilityViolation);
  }
  EXPECT_THROW(solve_minkowski(MinkowskiData{sample([](double t) { return std::cos(2 * t); }, 128)}), GeometryError);
}

TEST(Lambda, DiskIsFixed) {
  const LambdaResult r = lambda_transform(make_disk());
  const auto h = support_on_grid(r.body);
  for (double x : h) EXPECT_NEAR(x, 1.0, 1e-9);
}

TEST(Lambda, EllipseIsAnEqualityCase) {
  const Body e = make_ellipse(1.6, 1.0 / 1.6);
  const LambdaResult r = lambda_transform(e);
  EXPECT_NEAR(area(r.body) / area(e), 1.0, 1e-8);
  EXPECT_NEAR(lutwak_gap(e), 0.0, 1e-7);
}

TEST(Lambda, CurvatureIsScaledInverseCube) {
  const Body k = make_fourier(1.0, {0.0, 0.02, 0.01, 0.005}, {0.0, 0.0, 0.015, 0.0});
  const AngleGrid g;
  const LambdaResult r = lambda_transform(k);
  const auto f = curvature_samples(r.body.fourier(), g);
  const Vec2 s = r.santalo.point;
  for (std::size_t i = 0; i < g.size(); i += 37) {
    const double t = g.angle(i);
    const double h = oracle::trig(1.0, {0.0, 0.02, 0.01, 0.005}, {0.0, 0.0, 0.015, 0.0}, t) - s.dot(unit(t));
    EXPECT_NEAR(f[i], r.normalization / (h * h * h), 1e-10);
  }
}

TEST(Lambda, MixedAreaWithBodyEqualsArea) {
  // V(K - s, Lambda K) = (1/2) int h f_Lambda = c (1/2) int h^-2 = V(K)
  const Body tri = make_polygon({{0, 0}, {1, 0}, {0, 1}});
  const LambdaResult r = lambda_transform(tri);
  const Body centred = translate(tri, -r.santalo.point);
  EXPECT_NEAR(mixed_area_oneway(r.body, centred), area(tri), 1e-6);

  const Body f = make_fourier(1.0, {0.0, 0.0, 0.03}, {});
  const LambdaResult rf = lambda_transform(f);
  EXPECT_NEAR(mixed_area(rf.body, translate(f, -rf.santalo.point)), area(f), 1e-12);
}

TEST(Lambda, LutwakOnRandomPolygons) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Body b = random_body(rng, 3 + trial % 6, trial % 3 == 0);
    const LambdaResult r = lambda_transform(b);
    EXPECT_LE(area(r.body), area(b) * (1 + 1e-8));
    EXPECT_GE(lutwak_gap(b), -1e-8);
    EXPECT_LE(r.first_harmonic, 1e-7);
  }
}

TEST(Lambda, AliasingOnCoarseGrid) {
  LambdaOptions o;
  o.grid = AngleGrid(16);
  try {
    lambda_transform(make_fourier(1.0, {0.0, 0.3}, {}), o);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::AliasingError);
  }
}

TEST(Lambda, PinchBoundsOfDisk) {
  const PinchBounds b = pinch_bounds(make_disk().fourier());
  EXPECT_NEAR(b.m, 1.0, 1e-15);
  EXPECT_NEAR(b.M, 1.0, 1e-15);
}

TEST(Mollify, StaysConvexAndKeepsPerimeter) {
  const Body sq = make_square();
  const Body m = mollify(sq, mollifier_width(sq));
  EXPECT_TRUE(m.is_fourier());
  EXPECT_EQ(m.label, "square~");
  EXPECT_TRUE(is_origin_symmetric(m));
  // the heat kernel averages rotated copies: mean width is kept, area grows (Brunn-Minkowski)
  EXPECT_NEAR(stats(m).perimeter, 8.0, 1e-9);
  EXPECT_GT(area(m), 4.0);
  const Body coarse = mollify(sq, 0.05);
  EXPECT_GT(area(coarse), area(m));
  EXPECT_LT(area(coarse), 16.0 / kPi);
}
