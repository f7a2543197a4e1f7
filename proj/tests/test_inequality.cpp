#include <gtest/gtest.h>

#include <cmath>

#include "meanlab/calculus.hpp"
#include "meanlab/elliptic.hpp"
#include "meanlab/harmonic.hpp"
#include "meanlab/inequality.hpp"

using namespace meanlab;
using namespace meanlab::inequality;

namespace {

double harmonic2(double a, double b) { return 2 * a * b / (a + b); }

double value_of(const ChainPoint& p, std::size_t i) { return p.values.at(i); }

}  // namespace

TEST(Bounds, HarmonicAndGeometricAtOneThree) {
  auto h = hh_bounds("H", {1, 3});
  EXPECT_NEAR(h.lower, 12.0 / 7.0, 1e-15);
  EXPECT_NEAR(h.upper, 1.875, 1e-15);
  auto g = hh_bounds("G", {1, 3});
  EXPECT_NEAR(g.upper, std::sqrt(3.75), 1e-15);
  EXPECT_NEAR(g.lower, harmonic2(2, std::sqrt(3)), 1e-15);
  auto a = hh_bounds("A", {1, 3});
  EXPECT_EQ(a.lower, 2.0);
  EXPECT_EQ(a.upper, 2.0);
  EXPECT_THROW(hh_bounds("ZZ", {1, 3}), UnknownMean);
}

TEST(Bounds, UpperIsQuarterPointMean) {
  auto pairs = pair_grid(20, 1e-3, 0.99, 5);
  for (const auto& id : catalog_ids()) {
    const auto& n = catalog_mean(id);
    for (const auto& p : pairs) {
      double q = n((3 * p.x() + p.y()) / 4, (p.x() + 3 * p.y()) / 4);
      EXPECT_NEAR(hh_bounds(n, p).upper, q, 1e-13 * q) << id;
    }
  }
}

TEST(Bounds, RefinedLowerClosedForms) {
  EXPECT_NEAR(hh_refined_lower("G", {1, 3}), 1.895603586531874, 1e-14);
  EXPECT_NEAR(hh_refined_lower("H", {1, 3}), 120.0 / 67.0, 1e-14);
  EXPECT_NEAR(hh_refined_lower("V", {1, 3}), 1.841103790216372, 1e-12);
  for (const auto& p : pair_grid(20, 1e-3, 0.99, 5)) {
    double a = p.arithmetic(), g = std::sqrt(p.x()) * std::sqrt(p.y());
    double half = std::sqrt(3 * a * a + g * g) / 2;
    double closed = 4 / (1 / a + 2 / half + 1 / g);
    EXPECT_NEAR(hh_refined_lower("G", p), closed, 1e-13 * closed);
    EXPECT_NEAR(hh_refined_lower("A", p), a, 1e-13 * a);
  }
}

TEST(Bounds, HalfDeformationClosedForms) {
  for (const auto& p : pair_grid(20, 1e-3, 0.99, 5)) {
    double a = p.arithmetic(), g2 = p.x() * p.y();
    EXPECT_NEAR(hh_bounds("G", p).upper, std::sqrt(3 * a * a + g2) / 2, 1e-12 * a);
    EXPECT_NEAR(hh_bounds("C", p).upper, (5 * a * a - g2) / (4 * a), 1e-12 * a);
    EXPECT_NEAR(hh_bounds("R", p).upper, std::sqrt(5 * a * a - g2) / 2, 1e-12 * a);
  }
}

TEST(Lemma, EnvelopeValues) {
  auto at = envelope_lemma(LemmaKind::arctan, 0.5);
  EXPECT_NEAR(at.lower, 0.5 * 2.25 / 2.5, 1e-15);
  EXPECT_NEAR(at.upper, 2.0 / 4.25, 1e-15);
  EXPECT_EQ(at.value, std::atan(0.5));
  auto as = envelope_lemma(LemmaKind::arsinh, 0.5);
  EXPECT_NEAR(as.upper, 1.0 / std::sqrt(4.25), 1e-15);
  EXPECT_THROW(envelope_lemma(LemmaKind::arctan, 0.0), std::domain_error);
  EXPECT_THROW(envelope_lemma(LemmaKind::arsinh, 1.0), std::domain_error);
  EXPECT_THROW(envelope_lemma(LemmaKind::arsinh, -0.3), std::domain_error);
}

TEST(Lemma, EnvelopesHoldAndCloseUpNearZero) {
  for (auto kind : {LemmaKind::arctan, LemmaKind::arsinh}) {
    for (int i = 1; i <= 1000; ++i) {
      double u = i / 1001.0;
      auto e = envelope_lemma(kind, u);
      EXPECT_LT(e.lower, e.value);
      EXPECT_LT(e.value, e.upper);
      EXPECT_LE(e.upper - e.lower, u * u * u) << u;
    }
  }
}

TEST(Chains, BuiltinsAreKnown) {
  EXPECT_EQ(builtin_chain_names().size(), 8u);
  for (const auto& name : builtin_chain_names()) EXPECT_EQ(builtin_chain(name).name, name);
  EXPECT_THROW(builtin_chain("hh-nope"), std::invalid_argument);
  EXPECT_EQ(builtin_chain("hh-T-C").direction, Direction::reversed);
  EXPECT_EQ(builtin_chain("hh-P-G").direction, Direction::convex);
  EXPECT_EQ(builtin_chain("hh-P-G").terms.size(), 4u);
  EXPECT_EQ(builtin_chain("hh-T-C").terms.size(), 3u);
}

TEST(Chains, SpotValuesAtOneThree) {
  auto report = run_chain_suite(builtin_chain("hh-NS-R"), {{1, 3}});
  ASSERT_TRUE(report.pass);
  const auto& p = report.points[0];
  EXPECT_NEAR(value_of(p, 0), 2.111456180001682, 1e-12);
  EXPECT_NEAR(value_of(p, 1), 1 / std::asinh(0.5), 1e-14);
  EXPECT_NEAR(value_of(p, 2), 2.061552812808830, 1e-12);

  auto sin_chain = run_chain_suite(builtin_chain("hh-SIN"), {{1, 3}});
  ASSERT_TRUE(sin_chain.pass);
  EXPECT_NEAR(value_of(sin_chain.points[0], 2), 1 / std::sin(0.5), 1e-14);

  auto agm = run_chain_suite(builtin_chain("hh-AGM-V"), {{1, 3}});
  ASSERT_TRUE(agm.pass);
  EXPECT_NEAR(value_of(agm.points[0], 1), 1.841103790216372, 1e-12);
  EXPECT_NEAR(value_of(agm.points[0], 2), 1.863616783244897, 1e-13);
  EXPECT_NEAR(value_of(agm.points[0], 3), 1.905125837799688, 1e-12);
}

TEST(Chains, AllBuiltinsHoldOnTheDefaultGrid) {
  auto pairs = default_pair_grid();
  EXPECT_EQ(pairs.size(), 110u);
  for (const auto& name : builtin_chain_names()) {
    auto r = run_chain_suite(builtin_chain(name), pairs);
    EXPECT_TRUE(r.pass) << name << " min margin " << r.min_margin;
    EXPECT_GT(r.min_margin, 0.0) << name;
    EXPECT_EQ(r.skipped, 0u);
    EXPECT_FALSE(r.failing_point);
  }
}

TEST(Chains, EqualArgumentsGiveZeroMargins) {
  auto r = run_chain_suite(builtin_chain("hh-L-H"), {{2, 2}});
  EXPECT_TRUE(r.pass);
  for (double m : r.points[0].margins) EXPECT_EQ(m, 0.0);
}

TEST(Chains, ReversingTheDirectionFails) {
  auto spec = builtin_chain("hh-P-G");
  spec.direction = Direction::reversed;
  auto r = run_chain_suite(spec, {{1, 1.5}, {1, 3}});
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.failing_point);
  EXPECT_EQ(*r.failing_point, 0u);
  EXPECT_LT(r.min_margin, 0.0);
}

TEST(Chains, ThrowingTermIsSkipped) {
  auto spec = generic_chain("custom", "L", "H", Direction::convex, false);
  spec.terms.push_back({"boom", [](const PositivePair& p) -> double {
                          if (p.hi() > 2 * p.lo()) throw std::runtime_error("boom");
                          return p.hi();
                        }});
  auto r = run_chain_suite(spec, {{1, 1.5}, {1, 3}});
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.points[1].error, "boom");
}

TEST(Chains, PairGridIsDeterministic) {
  auto a = pair_grid(10, 1e-3, 0.9, 5, 7);
  auto b = pair_grid(10, 1e-3, 0.9, 5, 7);
  auto c = pair_grid(10, 1e-3, 0.9, 5, 8);
  ASSERT_EQ(a.size(), 15u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x(), b[i].x());
    EXPECT_EQ(a[i].y(), b[i].y());
    differs = differs || a[i].x() != c[i].x();
  }
  EXPECT_TRUE(differs);
  EXPECT_NEAR(relative_half_spread(a.front()), 1e-3, 1e-15);
  EXPECT_NEAR(relative_half_spread(a[9]), 0.9, 1e-15);
}

// Shape of n(u)/u decides the chain direction.

TEST(Shape, ConvexRepresentersGiveForwardChains) {
  calculus::GridSpec grid{0.01, 0.99, 99};
  for (const auto& e : harmonic::pair_catalog()) {
    auto n = seiffert_of_mean(catalog_mean(e.representer));
    auto shape = calculus::probe_shape([&](double u) { return n(u) / u; }, grid);
    auto spec = builtin_chain("hh-" + (e.represented == "SIN" || e.represented == "TAN" ||
                                               e.represented == "SINH"
                                           ? e.represented
                                           : e.represented + "-" + e.representer));
    if (shape.is_convex()) {
      EXPECT_EQ(spec.direction, Direction::convex) << e.represented;
    } else if (shape.is_concave()) {
      EXPECT_EQ(spec.direction, Direction::reversed) << e.represented;
    }
  }
}

TEST(Shape, NeitherCasesAreCoveredByTheLemma) {
  // c(u)/u and r(u)/u change convexity, yet the reversed chains still hold.
  calculus::GridSpec grid{0.01, 0.99, 99};
  for (const char* id : {"C", "R"}) {
    auto n = seiffert_of_mean(catalog_mean(id));
    EXPECT_EQ(calculus::probe_shape([&](double u) { return n(u) / u; }, grid).classification,
              calculus::Shape::neither)
        << id;
  }
  for (int i = 1; i <= 999; ++i) {
    double u = i / 1000.0;
    // T(1-u,1+u) = u/arctan u sits inside [u/upper, u/lower]
    auto at = envelope_lemma(LemmaKind::arctan, u);
    EXPECT_LT(at.lower, std::atan(u));
    auto as = envelope_lemma(LemmaKind::arsinh, u);
    EXPECT_LE(as.lower, std::asinh(u));
  }
  for (const char* name : {"hh-T-C", "hh-NS-R"}) {
    EXPECT_TRUE(run_chain_suite(builtin_chain(name), pair_grid(60, 1e-4, 0.999, 10)).pass)
        << name;
  }
}

TEST(Shape, VOverZIsConvex) {
  EXPECT_TRUE(calculus::probe_shape([](double u) { return elliptic::v_seiffert(u) / u; },
                                    {0.001, 0.95, 200})
                  .is_convex());
}
