#pragma once

// Adaptive quadrature, the operator I(f)(z) = int_0^z f(u)/u du, numerical
// differentiation and midpoint shape probing.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "meanlab/means.hpp"

namespace meanlab::calculus {

struct QuadratureConfig {
  double abs_tolerance = 1e-11;
  int max_depth = 60;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double estimate, double error_bound);
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Adaptive bisection over 15-point Gauss-Kronrod panels with the embedded
/// 7-point Gauss-Legendre rule as error estimate. Requires a <= b.
double integrate(const ScalarFn& fn, double a, double b,
                 const QuadratureConfig& cfg = {});

/// I(f)(z) for z in [0,1). The integrand is replaced by its limit 1 below
/// u = 1e-14.
double apply_i_operator(const SeiffertFunction& f, double z,
                        const QuadratureConfig& cfg = {});

/// I(f) as a SeiffertFunction; its derivative is f(z)/z.
SeiffertFunction i_operator(const SeiffertFunction& f,
                            const QuadratureConfig& cfg = {});

/// Closed interval on which a function may be evaluated.
struct Domain {
  double lo;
  double hi;
};

inline constexpr Domain kWholeLine{-1e308, 1e308};

double default_step(double z);

/// Central difference, or a second-order one-sided difference when z+-h
/// leaves the domain. Throws std::domain_error if neither fits.
double derivative_estimate(const ScalarFn& g, double z, double h,
                           Domain domain = kWholeLine);
double derivative_estimate(const ScalarFn& g, double z,
                           Domain domain = kWholeLine);

enum class Spacing { uniform, log };

struct GridSpec {
  double start;
  double end;
  std::size_t count;
  Spacing spacing = Spacing::uniform;

  /// Throws std::invalid_argument on start >= end, count < 2, or a
  /// non-positive start with log spacing.
  std::vector<double> points() const;
};

enum class Shape { convex, concave, neither };

std::string to_string(Shape s);

struct ShapeVerdict {
  using Triple = std::array<double, 3>;

  Shape classification;
  /// Present iff convexity was refuted on the grid.
  std::optional<Triple> convex_witness;
  /// Present iff concavity was refuted on the grid.
  std::optional<Triple> concave_witness;

  bool is_convex() const { return !convex_witness; }
  bool is_concave() const { return !concave_witness; }
};

inline constexpr double kShapeTieTolerance = 1e-12;

/// Midpoint test over every pair (p[i-1], p[i+1]) of the grid. A function that
/// passes both tests is reported as convex.
ShapeVerdict probe_shape(const ScalarFn& fn, const GridSpec& grid,
                         double tie = kShapeTieTolerance);

}  // namespace meanlab::calculus
