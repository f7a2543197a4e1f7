#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "meanlab/calculus.hpp"

using namespace meanlab;
using namespace meanlab::calculus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Integrate, ClosedForms) {
  EXPECT_NEAR(integrate([](double) { return 1.0; }, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(integrate([](double u) { return 1 / std::sqrt(1 - u * u); }, 0, 0.5), kPi / 6,
              1e-14);
  EXPECT_NEAR(integrate([](double u) { return std::exp(u); }, -2, 3), std::exp(3) - std::exp(-2),
              1e-12);
  // Complete elliptic integral of the second kind at 1/2.
  EXPECT_NEAR(integrate([](double p) { return std::sqrt(1 - 0.25 * std::pow(std::sin(p), 2)); },
                        0, kPi / 2, {1e-14, 60}),
              1.467462209339427, 1e-14);
}

TEST(Integrate, EndpointSingularityIsNotCertified) {
  // Per-panel tolerance halves with depth, so a singular panel never settles;
  // the estimate carried by the exception is still good.
  try {
    integrate([](double u) { return 1 / std::sqrt(u); }, 0, 1, {1e-10, 60});
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_NEAR(e.estimate(), 2.0, 1e-9);
  }
}

TEST(Integrate, EmptyAndReversedIntervals) {
  EXPECT_EQ(integrate([](double u) { return u; }, 0.3, 0.3), 0.0);
  EXPECT_THROW(integrate([](double u) { return u; }, 1, 0), std::invalid_argument);
}

TEST(Integrate, NonConvergenceCarriesEstimate) {
  auto wild = [](double u) { return std::sin(1 / u); };
  try {
    integrate(wild, 1e-6, 1, {1e-14, 5});
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
    EXPECT_GT(e.error_bound(), 1e-14);
  }
}

TEST(IntegrateProperties, LinearityOnRandomIntegrands) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> c(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    double a0 = c(rng), a1 = c(rng), b0 = c(rng), b1 = c(rng);
    double al = c(rng), be = c(rng);
    ScalarFn f = [=](double u) { return a0 * std::exp(a1 * u); };
    ScalarFn g = [=](double u) { return b0 * std::sin(b1 * u) + u * u; };
    double lo = 0.0, hi = 1.0 + std::abs(c(rng));
    double lhs = integrate([&](double u) { return al * f(u) + be * g(u); }, lo, hi);
    double rhs = al * integrate(f, lo, hi) + be * integrate(g, lo, hi);
    EXPECT_NEAR(lhs, rhs, 1e-9 * (1 + std::abs(rhs)));
    // exact antiderivative of f
    double exact = a1 == 0 ? a0 * hi : a0 * (std::exp(a1 * hi) - 1) / a1;
    EXPECT_NEAR(integrate(f, lo, hi), exact, 1e-10 * (1 + std::abs(exact)));
  }
}

TEST(IntegrateProperties, Additivity) {
  auto f = [](double u) { return std::cos(3 * u) / (1 + u); };
  for (double m : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(integrate(f, 0, m) + integrate(f, m, 1), integrate(f, 0, 1), 1e-12);
  }
}

TEST(IOperator, KnownTransforms) {
  SeiffertFunction f1{"u/sqrt(1-u^2)", [](double u) { return u / std::sqrt(1 - u * u); }, {}};
  EXPECT_NEAR(apply_i_operator(f1, 0.5), kPi / 6, 1e-12);
  SeiffertFunction f2{"u/(1+u^2)", [](double u) { return u / (1 + u * u); }, {}};
  EXPECT_NEAR(apply_i_operator(f2, 0.5), std::atan(0.5), 1e-12);
  EXPECT_NEAR(apply_i_operator(seiffert::identity(), 0.7), 0.7, 1e-14);
  EXPECT_EQ(apply_i_operator(seiffert::identity(), 0.0), 0.0);
  EXPECT_THROW(apply_i_operator(seiffert::identity(), 1.0), std::domain_error);
  EXPECT_THROW(apply_i_operator(seiffert::identity(), -0.1), std::domain_error);
}

TEST(IOperator, AsSeiffertFunction) {
  SeiffertFunction f{"u/(1-u^2)", [](double u) { return u / (1 - u * u); }, {}};
  auto g = i_operator(f);
  ASSERT_TRUE(g.has_derivative());
  EXPECT_NEAR(g(0.5), std::atanh(0.5), 1e-12);
  EXPECT_NEAR((*g.derivative)(0.5), 1 / 0.75, 1e-14);
}

TEST(IOperatorProperties, MonotoneInTheIntegrand) {
  // f <= g pointwise implies I(f) <= I(g).
  auto lo = seiffert_of_mean(catalog_mean("C"));
  auto hi = seiffert_of_mean(catalog_mean("H"));
  for (int i = 1; i <= 20; ++i) {
    double z = 0.045 * i;
    EXPECT_LE(apply_i_operator(lo, z), apply_i_operator(hi, z));
  }
}

TEST(Derivative, CentralAndOneSided) {
  auto as = [](double u) { return std::asin(u); };
  EXPECT_NEAR(derivative_estimate(as, 0.5), 1 / std::sqrt(0.75), 1e-8);
  EXPECT_NEAR(derivative_estimate([](double u) { return 3 * u + 1; }, 2.0), 3.0, 1e-8);
  // Domain [0,1] forces a one-sided stencil at the edges.
  auto th = [](double u) {
    if (u > 1.0) throw std::domain_error("outside");
    return std::tanh(u);
  };
  EXPECT_NEAR(derivative_estimate(th, 1.0, 1e-5, {0.0, 1.0}), 1 / std::pow(std::cosh(1.0), 2),
              1e-8);
  EXPECT_NEAR(derivative_estimate(as, 0.0, 1e-5, {0.0, 1.0}), 1.0, 1e-8);
  EXPECT_THROW(derivative_estimate(as, 0.5, 1e-3, {0.4999, 0.5001}), std::domain_error);
  EXPECT_GT(default_step(100.0), default_step(1.0));
}

TEST(Grid, PointsAndValidation) {
  auto u = GridSpec{0.0, 1.0, 5}.points();
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u.front(), 0.0);
  EXPECT_EQ(u.back(), 1.0);
  EXPECT_DOUBLE_EQ(u[2], 0.5);
  auto l = GridSpec{1e-3, 1.0, 4, Spacing::log}.points();
  EXPECT_NEAR(l[1], 1e-2, 1e-15);
  EXPECT_EQ(l.back(), 1.0);
  EXPECT_THROW((GridSpec{1.0, 0.0, 5}.points()), std::invalid_argument);
  EXPECT_THROW((GridSpec{0.0, 1.0, 1}.points()), std::invalid_argument);
  EXPECT_THROW((GridSpec{0.0, 1.0, 5, Spacing::log}.points()), std::invalid_argument);
}

TEST(Shape, Classification) {
  GridSpec g{0.01, 0.99, 99};
  EXPECT_EQ(probe_shape([](double u) { return u * u; }, g).classification, Shape::convex);
  EXPECT_EQ(probe_shape([](double u) { return 1 / std::sqrt(1 - u * u); }, g).classification,
            Shape::convex);
  EXPECT_EQ(probe_shape([](double u) { return std::cos(u); }, g).classification, Shape::concave);
  auto line = probe_shape([](double u) { return 2 * u - 1; }, g);
  EXPECT_EQ(line.classification, Shape::convex);
  EXPECT_TRUE(line.is_concave());
  // 1/(1+u^2): concave below 1/sqrt(3), convex above.
  auto mixed = probe_shape([](double u) { return 1 / (1 + u * u); }, g);
  EXPECT_EQ(mixed.classification, Shape::neither);
  ASSERT_TRUE(mixed.convex_witness);
  ASSERT_TRUE(mixed.concave_witness);
  EXPECT_LT((*mixed.convex_witness)[1], 1 / std::sqrt(3.0));
  EXPECT_GT((*mixed.concave_witness)[1], 1 / std::sqrt(3.0));
  EXPECT_EQ(to_string(Shape::neither), "neither");
  EXPECT_EQ(to_string(Shape::convex), "convex");
}

TEST(Shape, LogGridAndTie) {
  GridSpec g{1e-3, 0.999, 200, Spacing::log};
  EXPECT_EQ(probe_shape([](double u) { return -std::log1p(-u); }, g).classification,
            Shape::convex);
  // A bump far below the tie tolerance is ignored.
  auto tiny = [](double u) { return 1e-15 * std::sin(50 * u); };
  EXPECT_EQ(probe_shape(tiny, GridSpec{0.0, 1.0, 100}).classification, Shape::convex);
}
