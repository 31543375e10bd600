#include "mahler/mahler.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mahler;

namespace {

std::vector<oracle::P> pairs(const Body& b) {
  std::vector<oracle::P> v;
  for (const auto& x : b.polygon().vertices) v.emplace_back(x.x(), x.y());
  return v;
}

Body random_body(std::mt19937_64& rng, int n, bool symmetric) {
  std::vector<Vec2> v;
  for (const auto& [x, y] : oracle::random_convex(rng, n, symmetric)) v.emplace_back(x, y);
  return make_polygon(std::move(v));
}

}  // namespace

TEST(Steiner, TriangleAboutXAxis) {
  const Body s = steiner_symmetral(make_polygon({{0, 0}, {1, 0}, {0, 1}}), 0.0);
  const auto& v = s.polygon().vertices;
  ASSERT_EQ(v.size(), 3u);
  std::vector<std::pair<double, double>> got;
  for (const auto& p : v) got.emplace_back(p.x(), p.y());
  std::sort(got.begin(), got.end());
  EXPECT_NEAR(got[0].first, 0.0, 1e-12);
  EXPECT_NEAR(got[0].second, -0.5, 1e-12);
  EXPECT_NEAR(got[1].first, 0.0, 1e-12);
  EXPECT_NEAR(got[1].second, 0.5, 1e-12);
  EXPECT_NEAR(got[2].first, 1.0, 1e-12);
  EXPECT_NEAR(got[2].second, 0.0, 1e-12);
}

TEST(Steiner, ChordsMatchBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Body b = random_body(rng, 9, false);
    const Body s = steiner_symmetral(b, 0.0);
    const auto bv = pairs(b), sv = pairs(s);
    double xmin = 1e9, xmax = -1e9;
    for (const auto& [x, y] : bv) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
    for (int i = 1; i < 40; ++i) {
      const double x = xmin + (xmax - xmin) * i / 40.0;
      double mid = 0.0;
      EXPECT_NEAR(oracle::chord(sv, x, &mid), oracle::chord(bv, x), 1e-12);
      EXPECT_NEAR(mid, 0.0, 1e-12);
    }
  }
}

TEST(Steiner, AreaInvarianceAxisSymmetryIdempotence) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const Body b = random_body(rng, 4 + trial % 6, false);
    const double axis = ang(rng);
    const Body s = steiner_symmetral(b, axis);
    EXPECT_NEAR(area(s), area(b), 1e-12 * area(b));
    // reflection across the axis: h(2 axis - t) = h(t)
    for (int i = 0; i < 16; ++i) {
      const double t = 0.1 + i * kPi / 8.0;
      EXPECT_NEAR(support_eval(s, 2 * axis - t), support_eval(s, t), 1e-10);
    }
    const Body s2 = steiner_symmetral(s, axis);
    const auto& v1 = s.polygon().vertices;
    const auto& v2 = s2.polygon().vertices;
    ASSERT_EQ(v1.size(), v2.size());
    for (const auto& p : v1) {
      double best = 1e9;
      for (const auto& q : v2) best = std::min(best, (p - q).norm());
      EXPECT_LT(best, 1e-10);
    }
  }
}

TEST(Steiner, SymmetricBodyIsFixedByItsAxis) {
  const Body p = make_polygon({{0, -1}, {2, -0.5}, {2, 0.5}, {0, 1}, {-1, 0}});
  const Body s = steiner_symmetral(p, 0.0);
  EXPECT_NEAR(area(s), area(p), 1e-14);
  EXPECT_NEAR(meyer_pajor_gap(p, 0.0).gap, 0.0, 1e-7);
}

TEST(MeyerPajor, TriangleBaseline) {
  const Body t = make_polygon({{0, 0}, {1, 0}, {0, 1}});
  const MeyerPajorReport r = meyer_pajor_gap(t, 0.0);
  EXPECT_NEAR(r.polar_area, 13.5, 1e-9);
  // the symmetral of a triangle is a triangle of the same area, so the gap is zero
  EXPECT_NEAR(r.gap, 0.0, 1e-9);
  EXPECT_LT(r.axis_offset, 1e-7);
}

TEST(MeyerPajor, RandomBodiesAndAxes) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const Body b = random_body(rng, 3 + trial % 7, false);
    const MeyerPajorReport r = meyer_pajor_gap(b, ang(rng));
    EXPECT_GE(r.gap, -1e-7);
    EXPECT_LT(r.axis_offset, 1e-7);
  }
}

TEST(Flow, DiskStaysRound) {
  const FlowHistory h = symmetrization_flow(make_disk(), {0.3, 1.1}, 3);
  for (const auto& s : h.steps) EXPECT_LT(s.asymmetry, 1e-9);
}

TEST(Flow, SquareVolumeProductDoesNotDecrease) {
  const FlowHistory h = symmetrization_flow(make_square(), {kPi / 8}, 1);
  EXPECT_GE(h.steps[1].volume_product, h.steps[0].volume_product * (1 - 1e-7));
}

TEST(Flow, TriangleBecomesMoreSymmetric) {
  const FlowHistory h =
      symmetrization_flow(make_polygon({{0, 0}, {1, 0}, {0, 1}}), {0.0, kPi / 3, 2 * kPi / 3}, 12);
  ASSERT_EQ(h.steps.size(), 13u);
  EXPECT_LT(h.steps.back().asymmetry, h.steps[1].asymmetry);
  for (std::size_t i = 1; i < h.steps.size(); ++i)
    EXPECT_GE(h.steps[i].volume_product, h.steps[i - 1].volume_product * (1 - 1e-7));
  EXPECT_LE(h.steps.back().volume_product, kPi * kPi);
}

TEST(Flow, NeedsAnAxis) { EXPECT_THROW(symmetrization_flow(make_square(), {}, 2), GeometryError); }

TEST(Asymmetry, ZeroForSymmetricAndPositiveForTriangle) {
  EXPECT_LT(asymmetry(make_square()), 1e-9);
  EXPECT_LT(asymmetry(translate(make_regular_polygon(6), Vec2(0.3, -0.2))), 1e-9);
  EXPECT_GT(asymmetry(make_polygon({{0, 0}, {1, 0}, {0, 1}})), 0.1);
}
