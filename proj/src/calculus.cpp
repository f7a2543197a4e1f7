#include "meanlab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace meanlab::calculus {

namespace {

// 15-point Kronrod abscissae on [-1,1] (non-negative half); odd indices are
// the 7-point Gauss-Legendre nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

Panel gauss_kronrod(const ScalarFn& fn, double a, double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double fc = fn(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    double dx = half * kNodes[i];
    double pair = fn(center - dx) + fn(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct Accumulator {
  double value = 0.0;
  double error = 0.0;
};

bool refine(const ScalarFn& fn, double a, double b, double tol, Panel whole,
            int depth, int max_depth, Accumulator& acc) {
  double rounding_floor = 50.0 * std::numeric_limits<double>::epsilon() *
                          std::abs(whole.value);
  if (whole.error <= tol || whole.error <= rounding_floor) {
    acc.value += whole.value;
    acc.error += whole.error;
    return true;
  }
  if (depth >= max_depth) {
    acc.value += whole.value;
    acc.error += whole.error;
    return false;
  }
  double mid = 0.5 * (a + b);
  Panel left = gauss_kronrod(fn, a, mid);
  Panel right = gauss_kronrod(fn, mid, b);
  bool ok = refine(fn, a, mid, 0.5 * tol, left, depth + 1, max_depth, acc);
  ok = refine(fn, mid, b, 0.5 * tol, right, depth + 1, max_depth, acc) && ok;
  return ok;
}

}  // namespace

NonConvergence::NonConvergence(const std::string& what, double estimate,
                               double error_bound)
    : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

double integrate(const ScalarFn& fn, double a, double b,
                 const QuadratureConfig& cfg) {
  if (!(cfg.abs_tolerance > 0.0))
    throw std::invalid_argument("quadrature tolerance must be positive");
  if (!(a <= b)) throw std::invalid_argument("integration bounds must satisfy a <= b");
  if (a == b) return 0.0;
  Accumulator acc;
  bool ok = refine(fn, a, b, cfg.abs_tolerance, gauss_kronrod(fn, a, b), 0,
                   cfg.max_depth, acc);
  if (!ok || !std::isfinite(acc.value)) {
    std::ostringstream os;
    os.precision(15);
    os << "adaptive quadrature did not converge on [" << a << ", " << b
       << "]: estimate " << acc.value << ", error bound " << acc.error;
    throw NonConvergence(os.str(), acc.value, acc.error);
  }
  return acc.value;
}

double apply_i_operator(const SeiffertFunction& f, double z,
                        const QuadratureConfig& cfg) {
  if (!(z >= 0.0 && z < 1.0))
    throw std::domain_error("I(f)(z) requires z in [0,1)");
  return integrate(
      [&f](double u) { return u < 1e-14 ? 1.0 : f(u) / u; }, 0.0, z, cfg);
}

SeiffertFunction i_operator(const SeiffertFunction& f,
                            const QuadratureConfig& cfg) {
  SeiffertFunction g;
  g.label = "I(" + f.label + ")";
  g.value = [f, cfg](double z) { return apply_i_operator(f, z, cfg); };
  g.derivative = [f](double z) { return z < 1e-14 ? 1.0 : f(z) / z; };
  return g;
}

double default_step(double z) { return 1e-6 * std::max(1.0, std::abs(z)); }

double derivative_estimate(const ScalarFn& g, double z, double h,
                           Domain domain) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  if (z < domain.lo || z > domain.hi)
    throw std::domain_error("derivative point outside the domain");
  if (z - h >= domain.lo && z + h <= domain.hi)
    return (g(z + h) - g(z - h)) / (2.0 * h);
  if (z + 2.0 * h <= domain.hi)
    return (-3.0 * g(z) + 4.0 * g(z + h) - g(z + 2.0 * h)) / (2.0 * h);
  if (z - 2.0 * h >= domain.lo)
    return (3.0 * g(z) - 4.0 * g(z - h) + g(z - 2.0 * h)) / (2.0 * h);
  throw std::domain_error("domain too narrow for a finite difference");
}

double derivative_estimate(const ScalarFn& g, double z, Domain domain) {
  return derivative_estimate(g, z, default_step(z), domain);
}

std::vector<double> GridSpec::points() const {
  if (!(start < end)) throw std::invalid_argument("grid requires start < end");
  if (count < 2) throw std::invalid_argument("grid requires at least 2 points");
  if (spacing == Spacing::log && !(start > 0.0))
    throw std::invalid_argument("log grid requires a positive start");
  std::vector<double> p(count);
  double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    double s = static_cast<double>(i) / n;
    p[i] = spacing == Spacing::uniform
               ? start + (end - start) * s
               : std::exp(std::log(start) + (std::log(end) - std::log(start)) * s);
  }
  p.front() = start;
  p.back() = end;
  return p;
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::convex:
      return "convex";
    case Shape::concave:
      return "concave";
    case Shape::neither:
      return "neither";
  }
  return "?";
}

ShapeVerdict probe_shape(const ScalarFn& fn, const GridSpec& grid, double tie) {
  auto pts = grid.points();
  std::vector<double> values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) values[i] = fn(pts[i]);

  ShapeVerdict v{Shape::neither, std::nullopt, std::nullopt};
  double worst_convex = 0.0;
  double worst_concave = 0.0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    double a = pts[i - 1];
    double b = pts[i + 1];
    double mid = 0.5 * (a + b);
    double fm = grid.spacing == Spacing::uniform ? values[i] : fn(mid);
    double chord = 0.5 * (values[i - 1] + values[i + 1]);
    double excess = fm - chord;
    if (excess > tie && excess > worst_convex) {
      worst_convex = excess;
      v.convex_witness = ShapeVerdict::Triple{a, mid, b};
    }
    if (-excess > tie && -excess > worst_concave) {
      worst_concave = -excess;
      v.concave_witness = ShapeVerdict::Triple{a, mid, b};
    }
  }
  if (v.is_convex())
    v.classification = Shape::convex;
  else if (v.is_concave())
    v.classification = Shape::concave;
  return v;
}

}  // namespace meanlab::calculus
