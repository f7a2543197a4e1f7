#pragma once

// Hermite-Hadamard sandwiches for harmonically represented means.
//
// If N represents M and n(u)/u is convex,
//
//     H(A, N) <= H(A, N^{1/2}, N^{1/2}, N) <= M <= N^{1/2},
//
// with every inequality reversed when n(u)/u is concave.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "meanlab/means.hpp"

namespace meanlab::inequality {

struct Bounds {
  double lower;
  double upper;
};

/// lower = H(A, N), upper = N^{1/2} = N((3x+y)/4, (x+3y)/4).
Bounds hh_bounds(const MeanDescriptor& representer, const PositivePair& p);
Bounds hh_bounds(const std::string& representer_id, const PositivePair& p);

/// 4 / (1/A + 2/N^{1/2} + 1/N).
double hh_refined_lower(const MeanDescriptor& representer,
                        const PositivePair& p);
double hh_refined_lower(const std::string& representer_id,
                        const PositivePair& p);

enum class LemmaKind { arctan, arsinh };

struct Envelope {
  double lower;
  double value;
  double upper;
};

/// arctan: u(2+u^2)/(2+2u^2) < arctan u < 4u/(4+u^2)
/// arsinh: u/2 + u/(2 sqrt(u^2+1)) <= arsinh u <= 2u/sqrt(u^2+4)
/// Throws std::domain_error outside (0,1).
Envelope envelope_lemma(LemmaKind kind, double u);

enum class Direction { convex, reversed };

struct Term {
  std::string label;
  std::function<double(const PositivePair&)> eval;
};

/// Terms are listed lower-to-upper for the convex case; a reversed chain
/// asserts the opposite ordering of the same list.
struct ChainSpec {
  std::string name;
  std::vector<Term> terms;
  Direction direction = Direction::convex;
  std::string source;
};

inline constexpr double kChainTolerance = 1e-10;

struct ChainPoint {
  PositivePair pair;
  double z = 0.0;
  std::vector<double> values;
  /// Adjacent differences in the asserted direction, divided by A(x,y).
  std::vector<double> margins;
  double min_margin = 0.0;
  bool pass = false;
  std::string error;
};

struct ChainReport {
  std::string name;
  double tolerance = kChainTolerance;
  std::vector<ChainPoint> points;
  double min_margin = 0.0;
  bool pass = false;
  std::optional<std::size_t> failing_point;
  std::size_t skipped = 0;
};

ChainReport run_chain_suite(const ChainSpec& spec,
                            const std::vector<PositivePair>& points,
                            double tolerance = kChainTolerance);

/// H(A,N) [, H(A,N^{1/2},N^{1/2},N)], M, N^{1/2}.
ChainSpec generic_chain(std::string name, const std::string& represented_id,
                        const std::string& representer_id, Direction direction,
                        bool refined, std::string source = {});

/// hh-P-G, hh-T-C, hh-L-H, hh-NS-R, hh-SIN, hh-TAN, hh-SINH, hh-AGM-V.
const std::vector<std::string>& builtin_chain_names();
/// Throws std::invalid_argument for unknown names.
ChainSpec builtin_chain(const std::string& name);

/// `count` pairs (1-z, 1+z) with z log-spaced in [zmin, zmax], followed by
/// `rescalings` copies of randomly chosen grid pairs scaled by 10^U(-6,6).
std::vector<PositivePair> pair_grid(std::size_t count, double zmin, double zmax,
                                    std::size_t rescalings,
                                    std::uint64_t seed = 20131010);

/// 100 pairs (1-z, 1+z) with z log-spaced in [1e-4, 0.999], followed by 10
/// seeded random rescalings of grid pairs.
std::vector<PositivePair> default_pair_grid();

}  // namespace meanlab::inequality
