#include "mahler/io.hpp"
#include "mahler/mahler.hpp"

#include <gtest/gtest.h>

#include <optional>

using namespace mahler;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  return std::nullopt;
}

DeficitRecord rec(const std::string& id, double eps, double delta) {
  DeficitRecord r;
  r.body_id = id;
  r.epsilon = eps;
  r.delta = delta;
  r.volume_product = kPi * kPi / (1 + eps);
  r.diagnostics["bm_spread"] = 0.0;
  r.diagnostics["family_param"] = eps;
  return r;
}

}  // namespace

TEST(Family, ParsesRangesAndLists) {
  const FamilySpec s = parse_family("fourier-mode:k=4:t=0.002..0.02:count=5");
  EXPECT_EQ(s.kind, FamilyKind::FourierMode);
  EXPECT_EQ(s.order, 4);
  ASSERT_EQ(s.values.size(), 5u);
  EXPECT_NEAR(s.values.front(), 0.002, 1e-15);
  EXPECT_NEAR(s.values.back(), 0.02, 1e-15);
  EXPECT_NEAR(s.values[1] / s.values[0], s.values[4] / s.values[3], 1e-12);
  EXPECT_TRUE(s.origin_symmetric());

  const FamilySpec l = parse_family("smoothed-ngon:n=5:sigma=0.01,0.05");
  EXPECT_EQ(l.values, (std::vector<double>{0.01, 0.05}));
  EXPECT_FALSE(l.origin_symmetric());

  const FamilySpec r = parse_family("random-polygon:vertices=8:count=3:symmetric=1", 7);
  EXPECT_TRUE(r.symmetric);
  EXPECT_EQ(r.seed, 7u);
}

TEST(Family, ParseErrors) {
  EXPECT_EQ(code_of([] { parse_family("blob:k=2"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_family("fourier-mode:k=4:q=1"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_family("fourier-mode:k=x"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_family("fourier-mode:k"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_family("fourier-mode:t=0.1..0.01:count=3"); }), ErrorCode::ParseError);
}

TEST(Family, ModeFourMembers) {
  const auto fam = generate_family(parse_family("fourier-mode:k=4:t=0.01"));
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_EQ(fam[0].label, "mode4-000");
  for (double t : {0.0, 0.4, 1.3, 2.9})
    EXPECT_NEAR(support_eval(fam[0], t), 1.0 + 0.01 * std::cos(4 * t), 1e-14);
  EXPECT_EQ(code_of([] { generate_family(parse_family("fourier-mode:k=4:t=0.1")); }), ErrorCode::ConvexityViolation);
}

TEST(Family, RandomPolygonsAreReproducible) {
  const auto a = generate_family(parse_family("random-polygon:vertices=7:count=4", 7));
  const auto b = generate_family(parse_family("random-polygon:vertices=7:count=4", 7));
  const auto c = generate_family(parse_family("random-polygon:vertices=7:count=4", 8));
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(body_to_json(a[i]), body_to_json(b[i]));
  EXPECT_NE(body_to_json(a[0]), body_to_json(c[0]));
  for (const auto& s : generate_family(parse_family("random-polygon:vertices=8:count=5:symmetric=1", 3)))
    EXPECT_TRUE(is_origin_symmetric(s));
}

TEST(Fit, RecoversSyntheticSlope) {
  std::vector<DeficitRecord> rs;
  for (int i = 0; i < 6; ++i) {
    const double eps = 1e-5 * std::pow(3.0, i);
    rs.push_back(rec("r" + std::to_string(i), eps, 2.5 * std::sqrt(eps)));
  }
  const FitResult f = exponent_fit(rs, 0.5);
  EXPECT_NEAR(f.slope, 0.5, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 2.5, 1e-10);
  EXPECT_NEAR(f.gamma, 2.5, 1e-12);
  EXPECT_LT(f.residual_spread, 1e-12);
  EXPECT_EQ(f.count, 6u);
}

TEST(Fit, NeedsThreePositiveRecords) {
  const std::vector<DeficitRecord> two{rec("a", 1e-3, 1e-2), rec("b", 1e-2, 3e-2), rec("c", 0.0, 0.0)};
  EXPECT_EQ(code_of([&] { exponent_fit(two); }), ErrorCode::InsufficientData);
}

TEST(Sweep, EllipsesHaveNothingToFit) {
  // every ellipse sits at epsilon = delta = 0
  const auto fam = generate_family(parse_family("ellipse:ratio=1.5..4:count=4"));
  const auto rs = sweep_records(fam, true);
  for (const auto& r : rs) {
    EXPECT_LT(r.epsilon, 1e-8);
    EXPECT_LT(r.delta, 1e-6);
  }
  EXPECT_EQ(code_of([&] { stability_sweep(fam, true); }), ErrorCode::InsufficientData);
}

TEST(Io, CsvRoundTrip) {
  const std::vector<DeficitRecord> rs{rec("mode4-000", 6e-4, 0.02), rec("mode4-001", 1.0 / 3.0, 0.1)};
  const std::string csv = records_to_csv(rs);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  const auto back = records_from_csv(csv);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].body_id, "mode4-001");
  EXPECT_EQ(back[1].epsilon, 1.0 / 3.0);
  EXPECT_EQ(records_to_csv(back), csv);
  EXPECT_EQ(code_of([] { records_from_csv("x,y\n"); }), ErrorCode::ParseError);
}

TEST(Io, BodyJsonRoundTrip) {
  const std::vector<Body> bodies{make_polygon({{0, 0}, {1, 0}, {0.3, 0.9}}, "tri"),
                                 make_fourier(1.0, {0.0, 0.02}, {0.0, 0.0, -0.01}, "f"),
                                 Body{to_support_vector(make_square(), AngleGrid(8)), "sv"}};
  for (const auto& b : bodies) {
    const Body c = body_from_json(body_to_json(b));
    EXPECT_EQ(c.label, b.label);
    EXPECT_EQ(body_to_json(c), body_to_json(b));
    EXPECT_NEAR(area(c), area(b), 1e-15);
  }
  EXPECT_EQ(code_of([] { body_from_json(std::string("{\"kind\":\"blob\"}")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { body_from_json(std::string("not json")); }), ErrorCode::ParseError);
}

TEST(Chain, DiskAndModeFourPass) {
  for (const Body& b : {make_disk(), make_fourier(1.0, {0.0, 0.0, 0.0, 0.005}, {}, "m4")}) {
    const ChainReport r = verify_proof_chain(b);
    EXPECT_TRUE(r.passed()) << b.label;
    EXPECT_FALSE(r.mollified);
    for (const auto& c : r.checks)
      if (!c.vacuous) EXPECT_TRUE(c.passed) << b.label << " " << c.name << " " << c.lhs << " > " << c.rhs;
  }
}

TEST(Chain, PolygonsAreMollified) {
  const ChainReport r = verify_proof_chain(make_square());
  EXPECT_TRUE(r.mollified);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(code_of([] { verify_proof_chain(make_polygon({{0, 0}, {1, 0}, {0, 1}})); }), ErrorCode::NotSymmetric);
}

TEST(Chain, CorruptedConstantIsCaught) {
  ChainOptions o;
  o.constants.deviation = 1e-3;
  const ChainReport r = verify_proof_chain(make_fourier(1.0, {0.0, 0.0, 0.0, 0.005}, {}), o);
  EXPECT_FALSE(r.passed());
}
