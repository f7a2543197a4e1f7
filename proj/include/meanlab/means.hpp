#pragma once

// Symmetric homogeneous bivariate means and their Seiffert functions.
//
// A mean M on positive pairs and a function f on (0,1) with
//
//     z/(1+z) <= f(z) <= z/(1-z)
//
// determine each other through
//
//     f_M(z) = z / M(1-z, 1+z),      M(x,y) = |x-y| / (2 f(|x-y|/(x+y))).
//
// Everything here is an immutable value; all evaluators are pure.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meanlab {

/// A pair of strictly positive reals, the argument of every mean.
class PositivePair {
 public:
  /// Throws std::invalid_argument("arguments must be positive") unless x,y > 0
  /// and finite.
  PositivePair(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }
  double lo() const { return x_ < y_ ? x_ : y_; }
  double hi() const { return x_ < y_ ? y_ : x_; }
  double arithmetic() const { return 0.5 * (x_ + y_); }

 private:
  double x_;
  double y_;
};

/// z = |x-y|/(x+y), always in [0,1).
double relative_half_spread(const PositivePair& p);

/// (scale (1-z), scale (1+z)), the pair with spread z and arithmetic mean
/// scale.
PositivePair pair_with_spread(double z, double scale = 1.0);

using ScalarFn = std::function<double(double)>;

/// A function on (0,1) meant to satisfy the Seiffert bounds. The derivative is
/// attached when a closed form is known.
struct SeiffertFunction {
  std::string label;
  ScalarFn value;
  std::optional<ScalarFn> derivative;

  double operator()(double z) const { return value(z); }
  bool has_derivative() const { return derivative.has_value(); }
};

/// Seiffert bounds z/(1+z) <= f(z) <= z/(1-z) with a relative slack.
bool within_seiffert_bounds(double z, double fz, double rel_slack = 1e-12);

/// Raised when a Seiffert function leaves the admissible band.
class SeiffertBoundViolation : public std::domain_error {
 public:
  SeiffertBoundViolation(double z, double value);
  double witness_z() const { return z_; }
  double value() const { return value_; }

 private:
  double z_;
  double value_;
};

/// Evaluator for an ordered pair lo <= hi; MeanDescriptor takes care of the
/// ordering, which makes every mean symmetric by construction.
using OrderedMeanFn = std::function<double(double lo, double hi)>;

class MeanDescriptor {
 public:
  MeanDescriptor(std::string id, std::string display_name, std::string note,
                 OrderedMeanFn evaluator,
                 std::optional<ScalarFn> seiffert_derivative = std::nullopt);

  const std::string& id() const { return id_; }
  const std::string& display_name() const { return display_name_; }
  const std::string& note() const { return note_; }

  /// M(x,y). Equal arguments return x exactly.
  double operator()(const PositivePair& p) const;
  double operator()(double x, double y) const {
    return (*this)(PositivePair(x, y));
  }

  /// Closed-form derivative of f_M, when registered.
  const std::optional<ScalarFn>& seiffert_derivative() const {
    return seiffert_derivative_;
  }

 private:
  std::string id_;
  std::string display_name_;
  std::string note_;
  OrderedMeanFn evaluator_;
  std::optional<ScalarFn> seiffert_derivative_;
};

class UnknownMean : public std::invalid_argument {
 public:
  explicit UnknownMean(std::string_view id);
};

/// Catalog ids in a fixed order.
const std::vector<std::string>& catalog_ids();

/// Looks a mean up by id; throws UnknownMean.
const MeanDescriptor& catalog_mean(std::string_view id);

double eval_mean(std::string_view id, const PositivePair& p);

/// f_M(z) = z / M(1-z, 1+z). Carries the catalog's closed-form derivative if
/// one is registered for the mean.
SeiffertFunction seiffert_of_mean(const MeanDescriptor& mean);

/// M(x,y) = |x-y| / (2 f(z)). Evaluation throws SeiffertBoundViolation when f
/// leaves the band at the z it is asked about.
MeanDescriptor mean_of_seiffert(const SeiffertFunction& f);

/// Deformation parameter t in (0,1].
class DeformParameter {
 public:
  explicit DeformParameter(double t);
  double value() const { return t_; }

 private:
  double t_;
};

/// f^{t}(z) = f(tz)/t.
SeiffertFunction deform(const SeiffertFunction& f, DeformParameter t);

/// M^{t}(x,y) = M(a + t d, a - t d) with a = (x+y)/2, d = (x-y)/2.
MeanDescriptor deform_mean(const MeanDescriptor& mean, DeformParameter t);

/// Named Seiffert functions with closed-form derivatives.
namespace seiffert {
SeiffertFunction identity();
SeiffertFunction arcsin();
SeiffertFunction arctan();
SeiffertFunction artanh();
SeiffertFunction arsinh();
SeiffertFunction sin();
SeiffertFunction tan();
SeiffertFunction sinh();
SeiffertFunction tanh();
}  // namespace seiffert

}  // namespace meanlab
