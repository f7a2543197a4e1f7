#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meanlab/calculus.hpp"
#include "meanlab/elliptic.hpp"
#include "meanlab/harmonic.hpp"
#include "meanlab/inequality.hpp"

using namespace meanlab;
using namespace meanlab::harmonic;

namespace {

constexpr double kPi = std::numbers::pi;

SeiffertFunction without_derivative(SeiffertFunction f) {
  f.derivative.reset();
  return f;
}

// log(1+z) <= g(z) <= -log(1-z) on (0,1), but g' dips below 1/(1+z).
SeiffertFunction wiggle() {
  return {"z + z^2 sin(40z)/6",
          [](double z) { return z + z * z * std::sin(40 * z) / 6; },
          [](double z) {
            return 1 + z * std::sin(40 * z) / 3 + z * z * 40 * std::cos(40 * z) / 6;
          }};
}

std::vector<PositivePair> some_pairs() {
  return inequality::pair_grid(12, 1e-3, 0.95, 3);
}

}  // namespace

TEST(Candidate, ClosedFormsFromCatalog) {
  auto n = construct_candidate(seiffert::artanh());
  auto h = seiffert_of_mean(catalog_mean("H"));
  auto g = seiffert_of_mean(catalog_mean("G"));
  auto r = seiffert_of_mean(catalog_mean("R"));
  auto from_arcsin = construct_candidate(seiffert::arcsin());
  auto from_arsinh = construct_candidate(seiffert::arsinh());
  for (int i = 1; i <= 19; ++i) {
    double z = 0.05 * i;
    EXPECT_NEAR(n(z), h(z), 1e-14 * h(z));
    EXPECT_NEAR(from_arcsin(z), g(z), 1e-14 * g(z));
    EXPECT_NEAR(from_arsinh(z), r(z), 1e-14 * r(z));
  }
}

TEST(Candidate, FiniteDifferenceFallbackAgrees) {
  auto exact = construct_candidate(seiffert::arctan());
  auto numeric = construct_candidate(without_derivative(seiffert::arctan()));
  for (double z : {1e-3, 0.2, 0.5, 0.9, 0.999}) {
    EXPECT_NEAR(numeric(z), exact(z), 1e-7) << z;
  }
  EXPECT_NEAR(seiffert_slope(without_derivative(seiffert::arcsin()), 0.5), 1 / std::sqrt(0.75),
              1e-7);
}

TEST(Candidate, CatalogPairsAreConsistent) {
  for (const auto& e : pair_catalog()) {
    auto n = construct_candidate(seiffert_of_mean(catalog_mean(e.represented)));
    auto expected = seiffert_of_mean(catalog_mean(e.representer));
    for (int i = 1; i <= 99; ++i) {
      double z = i / 100.0;
      EXPECT_NEAR(n(z), expected(z), 1e-8 * expected(z)) << e.represented << " z=" << z;
    }
  }
}

TEST(Representable, TanhIsFalsifiedAtTheRightEnd) {
  auto v = check_representable(seiffert::tanh(), default_z_grid());
  EXPECT_EQ(v.status, Status::falsified);
  ASSERT_TRUE(v.witness_z);
  EXPECT_EQ(*v.violated_bound, Bound::lower);
  EXPECT_LT(*v.witness_slope, 1 / (1 + *v.witness_z));
  EXPECT_LT(v.margin, 0.0);
  // tanh'(1) = sech^2(1)
  EXPECT_NEAR(seiffert_slope(seiffert::tanh(), 1.0), 0.41997434161402, 1e-12);
}

TEST(Representable, GeometricMeanBreaksTheUpperBound) {
  auto g = seiffert_of_mean(catalog_mean("G"));
  auto v = check_representable(g, default_z_grid());
  EXPECT_EQ(v.status, Status::falsified);
  EXPECT_EQ(*v.violated_bound, Bound::upper);
  EXPECT_NEAR(construct_candidate(g)(0.9), 10.86706107807924, 1e-10);
  // n_G(0.9) = 0.9 (1 - 0.81)^{-3/2} would push G outside its own band.
  EXPECT_FALSE(within_seiffert_bounds(0.9, construct_candidate(g)(0.9)));
}

TEST(Representable, CatalogAndNumericPathAgree) {
  for (const auto& e : pair_catalog()) {
    auto m = seiffert_of_mean(catalog_mean(e.represented));
    auto exact = check_representable(m, default_z_grid());
    auto numeric = check_representable(without_derivative(m), default_z_grid());
    EXPECT_EQ(exact.status, Status::representable) << e.represented;
    EXPECT_EQ(numeric.status, Status::representable) << e.represented;
    EXPECT_FALSE(exact.witness_z);
    EXPECT_EQ(exact.grid_points, 999u);
    EXPECT_FALSE(exact.note.empty());
  }
  EXPECT_EQ(check_representable(seiffert::sin(), default_z_grid()).status, Status::representable);
  EXPECT_EQ(check_representable(elliptic::agm_seiffert_function(), default_z_grid()).status,
            Status::representable);
}

TEST(Representable, MarginSignMatchesVerdict) {
  for (const auto& id : catalog_ids()) {
    auto v = check_representable(seiffert_of_mean(catalog_mean(id)), default_z_grid());
    if (v.status == Status::falsified) {
      EXPECT_LT(v.margin, -kSlopeTieTolerance) << id;
    } else {
      EXPECT_GE(v.margin, -kSlopeTieTolerance) << id;
    }
  }
}

TEST(Representable, WiggleSatisfiesTheLogBandButIsFalsified) {
  auto g = wiggle();
  for (int i = 1; i <= 999; ++i) {
    double z = i / 1000.0;
    EXPECT_LE(std::log1p(z), g(z)) << z;
    EXPECT_LE(g(z), -std::log1p(-z)) << z;
  }
  auto v = check_representable(g, default_z_grid());
  EXPECT_EQ(v.status, Status::falsified);
  EXPECT_EQ(*v.violated_bound, Bound::lower);
  EXPECT_EQ(check_representable(without_derivative(g), default_z_grid()).status,
            Status::falsified);
}

TEST(Representable, NonFiniteSlopeIsInconclusive) {
  SeiffertFunction f{"nan", [](double z) { return z; }, [](double) { return std::nan(""); }};
  EXPECT_EQ(check_representable(f, {0.1, 0.9, 9}).status, Status::inconclusive);
  EXPECT_EQ(to_string(Status::inconclusive), "inconclusive");
}

TEST(Identity, ScaledIntegralClosedForm) {
  // int_0^1 dt / sqrt(4 - t^2) = pi/6 at (1,3), so A * that = pi/3.
  EXPECT_NEAR(scaled_harmonic_integral(catalog_mean("G"), {1, 3}), kPi / 3, 1e-13);
  EXPECT_NEAR(scaled_harmonic_integral(catalog_mean("A"), {1, 3}), 1.0, 1e-15);
  EXPECT_NEAR(scaled_harmonic_integral(catalog_mean("G"), {2, 2}), 1.0, 1e-15);
}

TEST(Identity, EveryCatalogPairHolds) {
  for (const auto& e : pair_catalog()) {
    auto r = verify_identity(e.represented, e.representer, some_pairs());
    EXPECT_TRUE(r.all_pass()) << e.represented << " max residual " << r.max_abs_residual();
    EXPECT_LE(r.max_abs_residual(), kIdentityTolerance);
  }
}

TEST(Identity, WrongPairFails) {
  auto r = verify_identity("P", "H", some_pairs());
  EXPECT_FALSE(r.all_pass());
  EXPECT_GT(r.max_abs_residual(), 1e-3);
}

TEST(Identity, ErrorsAreRecordedPerPoint) {
  MeanDescriptor broken("BROKEN", "broken", "", [](double lo, double hi) -> double {
    if (hi > 2 * lo) throw std::runtime_error("too wide");
    return 0.5 * (lo + hi);
  });
  auto r = verify_identity(catalog_mean("A"), broken, {{1, 1.5}, {1, 3}});
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_TRUE(r.points[0].pass);
  EXPECT_FALSE(r.points[1].pass);
  EXPECT_EQ(r.points[1].error, "too wide");
}

TEST(Identity, RoundTripThroughCandidate) {
  // For a representable m, the mean of I(z m') is the mean of m.
  for (const auto& f : {seiffert::arcsin(), seiffert::arctan(), seiffert::sin(),
                        elliptic::agm_seiffert_function()}) {
    auto m = mean_of_seiffert(f);
    auto n = mean_of_seiffert(construct_candidate(f));
    auto r = verify_identity(m, n, some_pairs());
    EXPECT_TRUE(r.all_pass()) << f.label << " " << r.max_abs_residual();
  }
}

TEST(LogEnvelope, ValuesAndTightness) {
  auto [lo, hi] = log_envelope({1, 3});
  EXPECT_NEAR(lo, 1.442695040888963, 1e-14);
  EXPECT_NEAR(hi, 2.466303462376432, 1e-14);
  auto [a, b] = log_envelope({5, 5});
  EXPECT_EQ(a, 5.0);
  EXPECT_EQ(b, 5.0);
}

TEST(LogEnvelope, RepresentedMeansStayInside) {
  for (const auto& e : pair_catalog()) {
    EXPECT_TRUE(log_envelope_check(catalog_mean(e.represented), some_pairs()).all_pass())
        << e.represented;
  }
}

TEST(LogEnvelope, GeometricMeanInsideOnModerateSpreadsOnly) {
  auto g = catalog_mean("G");
  EXPECT_TRUE(log_envelope_check(g, inequality::pair_grid(16, 0.05, 0.9, 4)).all_pass());
  // For spreads near 1 the envelope alone already rules G out.
  EXPECT_FALSE(log_envelope_check(g, {pair_with_spread(0.99)}).all_pass());
}
