#pragma once

// Harmonic representations: N represents M when
//
//     1/M(x,y) = int_0^1 dt / N^{t}(x,y),
//
// which holds exactly when the Seiffert functions satisfy m = I(n), and such an
// n exists iff 1/(1+z) <= m'(z) <= 1/(1-z) on (0,1). In that case n = z m'(z).

#include <optional>
#include <string>
#include <vector>

#include "meanlab/calculus.hpp"
#include "meanlab/means.hpp"

namespace meanlab::harmonic {

/// n(z) = z m'(z), using the closed-form derivative when m carries one.
SeiffertFunction construct_candidate(const SeiffertFunction& m);

/// m'(z) from the closed form if attached, else a finite difference on (0,1).
double seiffert_slope(const SeiffertFunction& m, double z);

enum class Status { representable, falsified, inconclusive };

std::string to_string(Status s);

enum class Bound { lower, upper };

inline constexpr double kSlopeTieTolerance = 1e-12;

struct RepresentationVerdict {
  Status status = Status::inconclusive;
  /// Grid point with the most negative slack; set iff falsified.
  std::optional<double> witness_z;
  /// m'(witness_z) and the bound it breaks.
  std::optional<double> witness_slope;
  std::optional<Bound> violated_bound;
  /// min over the grid of min(m' - 1/(1+z), 1/(1-z) - m').
  double margin = 0.0;
  std::size_t grid_points = 0;
  std::string note;
};

/// Grid check of 1/(1+z) <= m'(z) <= 1/(1-z). "representable" only means no
/// violation was found on the grid; the note records the grid.
RepresentationVerdict check_representable(const SeiffertFunction& m,
                                          const calculus::GridSpec& grid);

calculus::GridSpec default_z_grid();

struct PairCatalogEntry {
  std::string represented;
  std::string representer;
  std::string source;
};

/// (P,G), (T,C), (L,H), (NS,R), (SIN,COSMEAN), (TAN,COS2MEAN),
/// (SINH,COSHMEAN), (AGM,V).
const std::vector<PairCatalogEntry>& pair_catalog();

inline constexpr double kIdentityTolerance = 1e-9;

struct IdentityPoint {
  PositivePair pair;
  double z = 0.0;
  /// M(x,y) * int_0^1 dt/N^{t}(x,y) - 1
  double product_residual = 0.0;
  /// m(z) - I(n)(z)
  double seiffert_residual = 0.0;
  bool pass = false;
  std::string error;
};

struct IdentityReport {
  std::string represented;
  std::string representer;
  double tolerance = kIdentityTolerance;
  std::vector<IdentityPoint> points;

  bool all_pass() const;
  double max_abs_residual() const;
};

/// A(x,y) * int_0^1 dt / N^{t}(x,y); equals A/M when N represents M.
double scaled_harmonic_integral(const MeanDescriptor& representer,
                                const PositivePair& p,
                                const calculus::QuadratureConfig& cfg = {});

IdentityReport verify_identity(const MeanDescriptor& represented,
                               const MeanDescriptor& representer,
                               const std::vector<PositivePair>& points,
                               const calculus::QuadratureConfig& cfg = {},
                               double tolerance = kIdentityTolerance);

IdentityReport verify_identity(const std::string& represented_id,
                               const std::string& representer_id,
                               const std::vector<PositivePair>& points,
                               const calculus::QuadratureConfig& cfg = {},
                               double tolerance = kIdentityTolerance);

struct EnvelopePoint {
  PositivePair pair;
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct EnvelopeReport {
  std::string mean;
  std::vector<EnvelopePoint> points;
  bool all_pass() const;
};

/// |x-y|/(2 log(A/min)) <= M(x,y) <= |x-y|/(2 log(max/A)).
std::pair<double, double> log_envelope(const PositivePair& p);

EnvelopeReport log_envelope_check(const MeanDescriptor& mean,
                                  const std::vector<PositivePair>& points);

}  // namespace meanlab::harmonic
