#include "meanlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace meanlab::harmonic {

namespace {

constexpr calculus::Domain kOpenUnit{0.0, 1.0 - 1e-15};

}  // namespace

double seiffert_slope(const SeiffertFunction& m, double z) {
  if (m.derivative) return (*m.derivative)(z);
  return calculus::derivative_estimate(m.value, z, kOpenUnit);
}

SeiffertFunction construct_candidate(const SeiffertFunction& m) {
  SeiffertFunction n;
  n.label = "z*(" + m.label + ")'";
  n.value = [m](double z) {
    if (z == 0.0) return 0.0;
    double slope = seiffert_slope(m, z);
    if (!std::isfinite(slope))
      throw std::domain_error("derivative of " + m.label + " unavailable");
    return z * slope;
  };
  return n;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::representable:
      return "representable";
    case Status::falsified:
      return "falsified";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "?";
}

calculus::GridSpec default_z_grid() { return {1e-3, 0.999, 999}; }

RepresentationVerdict check_representable(const SeiffertFunction& m,
                                          const calculus::GridSpec& grid) {
  auto pts = grid.points();
  if (pts.front() <= 0.0 || pts.back() >= 1.0)
    throw std::invalid_argument("representability grid must lie inside (0,1)");

  RepresentationVerdict v;
  v.grid_points = pts.size();
  v.margin = std::numeric_limits<double>::infinity();
  double worst_z = 0.0;
  double worst_slope = 0.0;
  Bound worst_bound = Bound::lower;
  for (double z : pts) {
    double slope = seiffert_slope(m, z);
    if (!std::isfinite(slope)) {
      v.status = Status::inconclusive;
      std::ostringstream os;
      os.precision(15);
      os << "non-finite derivative at z=" << z;
      v.note = os.str();
      v.margin = std::numeric_limits<double>::quiet_NaN();
      return v;
    }
    double lower_slack = slope - 1.0 / (1.0 + z);
    double upper_slack = 1.0 / (1.0 - z) - slope;
    double slack = std::min(lower_slack, upper_slack);
    if (slack < v.margin) {
      v.margin = slack;
      worst_z = z;
      worst_slope = slope;
      worst_bound = lower_slack <= upper_slack ? Bound::lower : Bound::upper;
    }
  }

  std::ostringstream note;
  note.precision(15);
  note << (m.derivative ? "closed-form" : "finite-difference")
       << " derivative checked at " << pts.size() << " points in ["
       << pts.front() << ", " << pts.back() << "]";
  if (v.margin < -kSlopeTieTolerance) {
    v.status = Status::falsified;
    v.witness_z = worst_z;
    v.witness_slope = worst_slope;
    v.violated_bound = worst_bound;
  } else {
    v.status = Status::representable;
    note << "; no violation found on this grid";
  }
  v.note = note.str();
  return v;
}

const std::vector<PairCatalogEntry>& pair_catalog() {
  static const std::vector<PairCatalogEntry> entries = {
      {"P", "G", "first Seiffert mean from the geometric mean"},
      {"T", "C", "second Seiffert mean from the contraharmonic mean"},
      {"L", "H", "logarithmic mean from the harmonic mean"},
      {"NS", "R", "Neuman-Sandor mean from the root-mean-square"},
      {"SIN", "COSMEAN", "sine mean from A/cos z"},
      {"TAN", "COS2MEAN", "tangent mean from A cos^2 z"},
      {"SINH", "COSHMEAN", "hyperbolic sine mean from A/cosh z"},
      {"AGM", "V", "arithmetic-geometric mean from V"},
  };
  return entries;
}

bool IdentityReport::all_pass() const {
  return std::all_of(points.begin(), points.end(),
                     [](const IdentityPoint& p) { return p.pass; });
}

double IdentityReport::max_abs_residual() const {
  double worst = 0.0;
  for (const auto& p : points) {
    worst = std::max({worst, std::abs(p.product_residual),
                      std::abs(p.seiffert_residual)});
  }
  return worst;
}

double scaled_harmonic_integral(const MeanDescriptor& representer,
                                const PositivePair& p,
                                const calculus::QuadratureConfig& cfg) {
  double a = p.arithmetic();
  double d = 0.5 * (p.hi() - p.lo());
  return calculus::integrate(
      [&](double t) {
        double dt = t * d;
        return a / representer(PositivePair(a - dt, a + dt));
      },
      0.0, 1.0, cfg);
}

IdentityReport verify_identity(const MeanDescriptor& represented,
                               const MeanDescriptor& representer,
                               const std::vector<PositivePair>& points,
                               const calculus::QuadratureConfig& cfg,
                               double tolerance) {
  IdentityReport report{represented.id(), representer.id(), tolerance, {}};
  auto m = seiffert_of_mean(represented);
  auto n = seiffert_of_mean(representer);
  for (const auto& p : points) {
    IdentityPoint pt{p};
    pt.z = relative_half_spread(p);
    try {
      double scaled = scaled_harmonic_integral(representer, p, cfg);
      pt.product_residual = represented(p) / p.arithmetic() * scaled - 1.0;
      pt.seiffert_residual = m(pt.z) - calculus::apply_i_operator(n, pt.z, cfg);
      pt.pass = std::abs(pt.product_residual) <= tolerance &&
                std::abs(pt.seiffert_residual) <= tolerance;
    } catch (const std::exception& e) {
      pt.error = e.what();
      pt.pass = false;
    }
    report.points.push_back(std::move(pt));
  }
  return report;
}

IdentityReport verify_identity(const std::string& represented_id,
                               const std::string& representer_id,
                               const std::vector<PositivePair>& points,
                               const calculus::QuadratureConfig& cfg,
                               double tolerance) {
  return verify_identity(catalog_mean(represented_id),
                         catalog_mean(representer_id), points, cfg, tolerance);
}

std::pair<double, double> log_envelope(const PositivePair& p) {
  double a = p.arithmetic();
  double z = relative_half_spread(p);
  if (z == 0.0) return {a, a};
  // log(A/min) = -log(1-z), log(max/A) = log(1+z)
  return {a * z / -std::log1p(-z), a * z / std::log1p(z)};
}

bool EnvelopeReport::all_pass() const {
  return std::all_of(points.begin(), points.end(),
                     [](const EnvelopePoint& p) { return p.pass; });
}

EnvelopeReport log_envelope_check(const MeanDescriptor& mean,
                                  const std::vector<PositivePair>& points) {
  constexpr double kSlack = 1e-12;
  EnvelopeReport report{mean.id(), {}};
  for (const auto& p : points) {
    auto [lower, upper] = log_envelope(p);
    double value = mean(p);
    bool pass = lower <= value * (1.0 + kSlack) && value <= upper * (1.0 + kSlack);
    report.points.push_back({p, lower, value, upper, pass});
  }
  return report;
}

}  // namespace meanlab::harmonic
