#include "meanlab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace meanlab::inequality {

namespace {

double harmonic2(double a, double b) { return 2.0 * a * b / (a + b); }

}  // namespace

Bounds hh_bounds(const MeanDescriptor& representer, const PositivePair& p) {
  double a = p.arithmetic();
  double n = representer(p);
  double half = deform_mean(representer, DeformParameter(0.5))(p);
  return {harmonic2(a, n), half};
}

Bounds hh_bounds(const std::string& representer_id, const PositivePair& p) {
  return hh_bounds(catalog_mean(representer_id), p);
}

double hh_refined_lower(const MeanDescriptor& representer,
                        const PositivePair& p) {
  double a = p.arithmetic();
  double n = representer(p);
  double half = deform_mean(representer, DeformParameter(0.5))(p);
  return 4.0 / (1.0 / a + 2.0 / half + 1.0 / n);
}

double hh_refined_lower(const std::string& representer_id,
                        const PositivePair& p) {
  return hh_refined_lower(catalog_mean(representer_id), p);
}

Envelope envelope_lemma(LemmaKind kind, double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("envelope lemmas hold for 0 < u < 1");
  double u2 = u * u;
  switch (kind) {
    case LemmaKind::arctan:
      return {u * (2.0 + u2) / (2.0 + 2.0 * u2), std::atan(u),
              4.0 * u / (4.0 + u2)};
    case LemmaKind::arsinh:
      return {0.5 * u + u / (2.0 * std::sqrt(u2 + 1.0)), std::asinh(u),
              2.0 * u / std::sqrt(u2 + 4.0)};
  }
  throw std::invalid_argument("unknown lemma");
}

ChainReport run_chain_suite(const ChainSpec& spec,
                            const std::vector<PositivePair>& points,
                            double tolerance) {
  if (spec.terms.size() < 2)
    throw std::invalid_argument("a chain needs at least two terms");
  ChainReport report;
  report.name = spec.name;
  report.tolerance = tolerance;
  report.min_margin = std::numeric_limits<double>::infinity();
  report.pass = true;
  double sign = spec.direction == Direction::convex ? 1.0 : -1.0;

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    ChainPoint pt{p};
    pt.z = relative_half_spread(p);
    try {
      for (const auto& term : spec.terms) pt.values.push_back(term.eval(p));
    } catch (const std::exception& e) {
      pt.error = e.what();
      ++report.skipped;
      report.pass = false;
      if (!report.failing_point) report.failing_point = i;
      report.points.push_back(std::move(pt));
      continue;
    }
    double scale = p.arithmetic();
    pt.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < pt.values.size(); ++k) {
      double margin = sign * (pt.values[k + 1] - pt.values[k]) / scale;
      pt.margins.push_back(margin);
      pt.min_margin = std::min(pt.min_margin, margin);
    }
    pt.pass = pt.min_margin >= -tolerance;
    report.min_margin = std::min(report.min_margin, pt.min_margin);
    if (!pt.pass) {
      report.pass = false;
      if (!report.failing_point) report.failing_point = i;
    }
    report.points.push_back(std::move(pt));
  }
  return report;
}

ChainSpec generic_chain(std::string name, const std::string& represented_id,
                        const std::string& representer_id, Direction direction,
                        bool refined, std::string source) {
  const MeanDescriptor& m = catalog_mean(represented_id);
  const MeanDescriptor& n = catalog_mean(representer_id);
  ChainSpec spec;
  spec.name = std::move(name);
  spec.direction = direction;
  spec.source = std::move(source);
  spec.terms.push_back({"H(A," + n.id() + ")", [n](const PositivePair& p) {
                          return hh_bounds(n, p).lower;
                        }});
  if (refined) {
    spec.terms.push_back(
        {"H(A," + n.id() + "^{1/2}," + n.id() + "^{1/2}," + n.id() + ")",
         [n](const PositivePair& p) { return hh_refined_lower(n, p); }});
  }
  spec.terms.push_back({m.id(), [m](const PositivePair& p) { return m(p); }});
  spec.terms.push_back({n.id() + "^{1/2}", [n](const PositivePair& p) {
                          return hh_bounds(n, p).upper;
                        }});
  return spec;
}

const std::vector<std::string>& builtin_chain_names() {
  static const std::vector<std::string> names = {
      "hh-P-G", "hh-T-C", "hh-L-H",  "hh-NS-R",
      "hh-SIN", "hh-TAN", "hh-SINH", "hh-AGM-V"};
  return names;
}

ChainSpec builtin_chain(const std::string& name) {
  using enum Direction;
  if (name == "hh-P-G")
    return generic_chain(name, "P", "G", convex, true,
                         "n(u)/u = (1-u^2)^{-1/2} convex");
  if (name == "hh-T-C")
    return generic_chain(name, "T", "C", reversed, false,
                         "arctan envelope lemma");
  if (name == "hh-L-H")
    return generic_chain(name, "L", "H", convex, true,
                         "n(u)/u = 1/(1-u^2) convex");
  if (name == "hh-NS-R")
    return generic_chain(name, "NS", "R", reversed, false,
                         "arsinh envelope lemma");
  if (name == "hh-SIN")
    return generic_chain(name, "SIN", "COSMEAN", reversed, true,
                         "n(u)/u = cos u concave");
  if (name == "hh-TAN")
    return generic_chain(name, "TAN", "COS2MEAN", convex, true,
                         "n(u)/u = 1/cos^2 u convex");
  if (name == "hh-SINH")
    return generic_chain(name, "SINH", "COSHMEAN", convex, true,
                         "n(u)/u = cosh u convex");
  if (name == "hh-AGM-V")
    return generic_chain(name, "AGM", "V", convex, true,
                         "v(u)/u = (2/pi) E(u)/(1-u^2) convex");
  throw std::invalid_argument("unknown chain: " + name);
}

std::vector<PositivePair> pair_grid(std::size_t count, double zmin, double zmax,
                                    std::size_t rescalings,
                                    std::uint64_t seed) {
  if (count < 2 || !(zmin > 0.0) || !(zmin < zmax) || !(zmax < 1.0))
    throw std::invalid_argument("pair grid requires 0 < zmin < zmax < 1");
  std::vector<PositivePair> pairs;
  pairs.reserve(count + rescalings);
  double lo = std::log(zmin);
  double hi = std::log(zmax);
  for (std::size_t i = 0; i < count; ++i) {
    double s = static_cast<double>(i) / static_cast<double>(count - 1);
    double z = i + 1 == count ? zmax : std::exp(lo + (hi - lo) * s);
    pairs.push_back(pair_with_spread(z));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, count - 1);
  std::uniform_real_distribution<double> log_scale(-6.0, 6.0);
  for (std::size_t k = 0; k < rescalings; ++k) {
    PositivePair base = pairs[pick(rng)];
    double lambda = std::pow(10.0, log_scale(rng));
    pairs.emplace_back(lambda * base.x(), lambda * base.y());
  }
  return pairs;
}

std::vector<PositivePair> default_pair_grid() {
  return pair_grid(100, 1e-4, 0.999, 10);
}

}  // namespace meanlab::inequality
