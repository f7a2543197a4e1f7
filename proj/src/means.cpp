#include "meanlab/means.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "meanlab/elliptic.hpp"

namespace meanlab {

namespace {

double spread(double lo, double hi) {
  double sum = lo + hi;
  double z = std::isfinite(sum) ? (hi - lo) / sum : (1.0 - lo / hi) / (1.0 + lo / hi);
  if (z >= 1.0) z = std::nextafter(1.0, 0.0);
  return z;
}

// A * z / f(z) for the Seiffert-type means, with the z = 0 limit A.
OrderedMeanFn from_profile(double (*f)(double)) {
  return [f](double lo, double hi) {
    double a = 0.5 * (lo + hi);
    double z = spread(lo, hi);
    if (z == 0.0) return a;
    return a * (z / f(z));
  };
}

double sec2(double z) {
  double c = std::cos(z);
  return 1.0 / (c * c);
}

double sech2(double z) {
  double c = std::cosh(z);
  return 1.0 / (c * c);
}

std::map<std::string, MeanDescriptor, std::less<>> build_catalog() {
  std::map<std::string, MeanDescriptor, std::less<>> c;
  auto add = [&c](MeanDescriptor m) { c.emplace(m.id(), std::move(m)); };

  add({"A", "arithmetic mean", "(x+y)/2",
       [](double lo, double hi) { return 0.5 * (lo + hi); },
       [](double) { return 1.0; }});
  add({"G", "geometric mean", "sqrt(xy)",
       [](double lo, double hi) { return std::sqrt(lo) * std::sqrt(hi); },
       [](double z) { return std::pow(1.0 - z * z, -1.5); }});
  add({"H", "harmonic mean", "2xy/(x+y)",
       [](double lo, double hi) { return 2.0 * lo * (hi / (lo + hi)); },
       [](double z) {
         double w = 1.0 - z * z;
         return (1.0 + z * z) / (w * w);
       }});
  add({"C", "contraharmonic mean", "(x^2+y^2)/(x+y)",
       [](double lo, double hi) {
         return (lo * lo + hi * hi) / (lo + hi);
       },
       [](double z) {
         double w = 1.0 + z * z;
         return (1.0 - z * z) / (w * w);
       }});
  add({"R", "root-mean-square", "sqrt((x^2+y^2)/2)",
       [](double lo, double hi) {
         return std::hypot(lo, hi) / std::numbers::sqrt2;
       },
       [](double z) { return std::pow(1.0 + z * z, -1.5); }});
  add({"L", "logarithmic mean", "(x-y)/(log x - log y) = |x-y|/(2 artanh z)",
       [](double lo, double hi) {
         double a = 0.5 * (lo + hi);
         double z = spread(lo, hi);
         if (z == 0.0) return a;
         // z/artanh z = 1 - z^2/3 - 4z^4/45 - ...
         if (z < 1e-8) return a * (1.0 - z * z / 3.0);
         return a * (z / std::atanh(z));
       },
       [](double z) { return 1.0 / (1.0 - z * z); }});
  add({"P", "first Seiffert mean", "|x-y|/(2 arcsin z)",
       from_profile([](double z) { return std::asin(z); }),
       [](double z) { return 1.0 / std::sqrt(1.0 - z * z); }});
  add({"T", "second Seiffert mean", "|x-y|/(2 arctan z)",
       from_profile([](double z) { return std::atan(z); }),
       [](double z) { return 1.0 / (1.0 + z * z); }});
  add({"NS", "Neuman-Sandor mean", "|x-y|/(2 arsinh z)",
       from_profile([](double z) { return std::asinh(z); }),
       [](double z) { return 1.0 / std::sqrt(1.0 + z * z); }});
  add({"AGM", "arithmetic-geometric mean", "Gauss iteration",
       [](double lo, double hi) {
         return elliptic::agm(PositivePair(lo, hi));
       },
       [](double z) { return elliptic::agm_seiffert_prime(z); }});
  add({"V", "harmonic representation of AGM", "pi H/(2 E(z))",
       [](double lo, double hi) {
         return elliptic::v_mean(PositivePair(lo, hi));
       },
       [](double z) { return elliptic::v_seiffert_prime(z); }});
  add({"SIN", "sine mean", "|x-y|/(2 sin z)",
       from_profile([](double z) { return std::sin(z); }),
       [](double z) { return std::cos(z); }});
  add({"TAN", "tangent mean", "|x-y|/(2 tan z)",
       from_profile([](double z) { return std::tan(z); }), sec2});
  add({"SINH", "hyperbolic sine mean", "|x-y|/(2 sinh z)",
       from_profile([](double z) { return std::sinh(z); }),
       [](double z) { return std::cosh(z); }});
  add({"TANH", "hyperbolic tangent mean", "|x-y|/(2 tanh z)",
       from_profile([](double z) { return std::tanh(z); }), sech2});
  add({"COSMEAN", "A/cos z", "Seiffert function z cos z",
       [](double lo, double hi) {
         return 0.5 * (lo + hi) / std::cos(spread(lo, hi));
       },
       [](double z) { return std::cos(z) - z * std::sin(z); }});
  add({"COS2MEAN", "A cos^2 z", "Seiffert function z / cos^2 z",
       [](double lo, double hi) {
         double c = std::cos(spread(lo, hi));
         return 0.5 * (lo + hi) * c * c;
       },
       [](double z) {
         double c = std::cos(z);
         return (c + 2.0 * z * std::sin(z)) / (c * c * c);
       }});
  add({"COSHMEAN", "A/cosh z", "Seiffert function z cosh z",
       [](double lo, double hi) {
         return 0.5 * (lo + hi) / std::cosh(spread(lo, hi));
       },
       [](double z) { return std::cosh(z) + z * std::sinh(z); }});
  return c;
}

const std::map<std::string, MeanDescriptor, std::less<>>& catalog() {
  static const auto c = build_catalog();
  return c;
}

}  // namespace

PositivePair::PositivePair(double x, double y) : x_(x), y_(y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw std::invalid_argument("arguments must be positive");
}

double relative_half_spread(const PositivePair& p) {
  return spread(p.lo(), p.hi());
}

PositivePair pair_with_spread(double z, double scale) {
  if (!(z >= 0.0 && z < 1.0)) throw std::domain_error("spread must lie in [0,1)");
  return PositivePair(scale * (1.0 - z), scale * (1.0 + z));
}

bool within_seiffert_bounds(double z, double fz, double rel_slack) {
  if (!std::isfinite(fz)) return false;
  double lower = z / (1.0 + z);
  double upper = z / (1.0 - z);
  return fz >= lower * (1.0 - rel_slack) && fz <= upper * (1.0 + rel_slack);
}

namespace {
std::string violation_message(double z, double value) {
  std::ostringstream os;
  os.precision(15);
  os << "Seiffert bounds violated at z=" << z << ": f(z)=" << value;
  return os.str();
}
}  // namespace

SeiffertBoundViolation::SeiffertBoundViolation(double z, double value)
    : std::domain_error(violation_message(z, value)), z_(z), value_(value) {}

MeanDescriptor::MeanDescriptor(std::string id, std::string display_name,
                               std::string note, OrderedMeanFn evaluator,
                               std::optional<ScalarFn> seiffert_derivative)
    : id_(std::move(id)),
      display_name_(std::move(display_name)),
      note_(std::move(note)),
      evaluator_(std::move(evaluator)),
      seiffert_derivative_(std::move(seiffert_derivative)) {}

double MeanDescriptor::operator()(const PositivePair& p) const {
  if (p.x() == p.y()) return p.x();
  return evaluator_(p.lo(), p.hi());
}

UnknownMean::UnknownMean(std::string_view id)
    : std::invalid_argument("unknown mean id: " + std::string(id)) {}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {
      "A",   "G",   "H",   "C",    "R",    "L",       "P",        "T",
      "NS",  "AGM", "V",   "SIN",  "TAN",  "SINH",    "TANH",     "COSMEAN",
      "COS2MEAN", "COSHMEAN"};
  return ids;
}

const MeanDescriptor& catalog_mean(std::string_view id) {
  const auto& c = catalog();
  auto it = c.find(id);
  if (it == c.end()) throw UnknownMean(id);
  return it->second;
}

double eval_mean(std::string_view id, const PositivePair& p) {
  return catalog_mean(id)(p);
}

SeiffertFunction seiffert_of_mean(const MeanDescriptor& mean) {
  SeiffertFunction f;
  f.label = "f_" + mean.id();
  f.value = [mean](double z) {
    if (z == 0.0) return 0.0;
    return z / mean(PositivePair(1.0 - z, 1.0 + z));
  };
  f.derivative = mean.seiffert_derivative();
  return f;
}

MeanDescriptor mean_of_seiffert(const SeiffertFunction& f) {
  return MeanDescriptor(
      "M[" + f.label + "]", "mean of " + f.label, "|x-y|/(2 f(z))",
      [f](double lo, double hi) {
        double z = spread(lo, hi);
        if (z == 0.0) return lo;
        double fz = f(z);
        if (!within_seiffert_bounds(z, fz)) throw SeiffertBoundViolation(z, fz);
        return (hi - lo) / (2.0 * fz);
      });
}

DeformParameter::DeformParameter(double t) : t_(t) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::domain_error("deformation parameter must lie in (0,1]");
}

SeiffertFunction deform(const SeiffertFunction& f, DeformParameter t) {
  double tv = t.value();
  if (tv == 1.0) return f;
  SeiffertFunction g;
  std::ostringstream label;
  label << f.label << "^{" << tv << "}";
  g.label = label.str();
  g.value = [f, tv](double z) { return f(tv * z) / tv; };
  if (f.derivative) {
    g.derivative = [d = *f.derivative, tv](double z) { return d(tv * z); };
  }
  return g;
}

MeanDescriptor deform_mean(const MeanDescriptor& mean, DeformParameter t) {
  double tv = t.value();
  if (tv == 1.0) return mean;
  std::ostringstream id;
  id << mean.id() << "^{" << tv << "}";
  std::optional<ScalarFn> derivative;
  if (mean.seiffert_derivative()) {
    derivative = [d = *mean.seiffert_derivative(), tv](double z) {
      return d(tv * z);
    };
  }
  return MeanDescriptor(
      id.str(), mean.display_name() + " deformed", mean.note(),
      [mean, tv](double lo, double hi) {
        double a = 0.5 * (lo + hi);
        double d = 0.5 * (hi - lo) * tv;
        return mean(PositivePair(a - d, a + d));
      },
      std::move(derivative));
}

namespace seiffert {

namespace {
SeiffertFunction make(std::string label, double (*f)(double),
                      double (*df)(double)) {
  return {std::move(label), ScalarFn(f), ScalarFn(df)};
}
}  // namespace

SeiffertFunction identity() {
  return make("identity", [](double z) { return z; }, [](double) { return 1.0; });
}
SeiffertFunction arcsin() {
  return make("arcsin", [](double z) { return std::asin(z); },
              [](double z) { return 1.0 / std::sqrt(1.0 - z * z); });
}
SeiffertFunction arctan() {
  return make("arctan", [](double z) { return std::atan(z); },
              [](double z) { return 1.0 / (1.0 + z * z); });
}
SeiffertFunction artanh() {
  return make("artanh", [](double z) { return std::atanh(z); },
              [](double z) { return 1.0 / (1.0 - z * z); });
}
SeiffertFunction arsinh() {
  return make("arsinh", [](double z) { return std::asinh(z); },
              [](double z) { return 1.0 / std::sqrt(1.0 + z * z); });
}
SeiffertFunction sin() {
  return make("sin", [](double z) { return std::sin(z); },
              [](double z) { return std::cos(z); });
}
SeiffertFunction tan() {
  return make("tan", [](double z) { return std::tan(z); }, sec2);
}
SeiffertFunction sinh() {
  return make("sinh", [](double z) { return std::sinh(z); },
              [](double z) { return std::cosh(z); });
}
SeiffertFunction tanh() {
  return make("tanh", [](double z) { return std::tanh(z); }, sech2);
}

}  // namespace seiffert

}  // namespace meanlab
