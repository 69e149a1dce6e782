#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "meqlab/estimators.hpp"
#include "meqlab/factor_map.hpp"

namespace meqlab {

struct Tolerances {
  double zero_tol = 1e-2;  // estimates below this count as 0
  double sep_tol = 1e-1;   // estimates above this count as bounded away from 0

  /// Throws PreconditionError unless 0 < zero_tol < sep_tol.
  void validate() const;
};

enum class PairClass { diagonal, banach_proximal, proximal, distal, inconclusive };

std::string to_string(PairClass c);

struct PairVerdict {
  bool in_R_pi = true;
  double check_val = 0.0;
  double hat_val = 0.0;
  double besi_val = 0.0;
  double weyl_val = 0.0;
  std::vector<PairClass> classes;  // sorted, no duplicates

  bool has(PairClass c) const;
  /// diagonal => banach_proximal => proximal, and distal excludes proximal.
  bool respects_lattice() const;
};

/// Labels from already computed estimates.
PairVerdict verdict_from(const PairEstimates& estimates, bool diagonal, bool in_R_pi,
                         const Tolerances& tol);

PairVerdict classify_pair(const System& system, const Point& x, const Point& y, const FactorMap* pi,
                          const Tolerances& tol, const FolnerSchedule& schedule);
PairVerdict classify_pair(const Point& x, const Point& y, const FactorMap* pi, const Tolerances& tol,
                          const FolnerSchedule& schedule);

struct AsymptoticResult {
  bool holds = false;
  std::vector<double> weyl_series;  // one value per pair
  std::size_t tail_begin = 0;
};

/// True iff the weyl estimates of the last `tail_fraction` of the pairs all
/// stay below zero_tol.
AsymptoticResult is_asymptotically_banach_proximal(const System& system, const PairSequence& seq,
                                                   const Tolerances& tol, const FolnerSchedule& schedule,
                                                   double tail_fraction = 0.5);

/// A sampled fibre pair with its distance and the relevant estimate.
struct PairWitness {
  PointPair pair;
  double distance = 0.0;
  double estimate = 0.0;
};

struct EpsilonRow {
  double eps = 0.0;
  /// min d(x, x') over sampled pairs whose estimate is >= eps (infinity if none).
  double delta_star = std::numeric_limits<double>::infinity();
  bool violated = false;
};

/// Grid eps in {sep, 2 sep, 4 sep}; a pair violates row eps when its estimate
/// is >= eps while d(x, x') < zero_tol.
struct EpsilonDeltaScan {
  std::vector<EpsilonRow> rows;
  std::vector<PairWitness> violations;
  bool holds() const;
};

EpsilonDeltaScan epsilon_delta_scan(const std::vector<PairWitness>& samples, const Tolerances& tol);

struct PropertyMReport {
  bool holds = false;  // "no violation found at tolerances", never a proof
  EpsilonDeltaScan scan;
  std::size_t pairs_tested = 0;
  std::vector<PairWitness> samples;
  std::vector<PseudometricEstimate> weyl;  // parallel to samples
  std::string note;
};

PropertyMReport test_property_M(const FactorMap& pi, const Tolerances& tol,
                                const FolnerSchedule& schedule, std::uint64_t seed,
                                std::size_t samples = 16);

enum class MeqDirection { limit_bp_but_sequence_not_abp, sequence_abp_but_limit_not_bp };

std::string to_string(MeqDirection d);

struct SequenceWitness {
  std::string label;
  AsymptoticResult sequence;
  double limit_weyl = 0.0;
  bool limit_bp = false;
  std::optional<MeqDirection> failure;
};

struct MeanEquicontinuityReport {
  bool holds = false;
  std::optional<MeqDirection> direction_failed;
  std::vector<SequenceWitness> sequences;
  std::vector<SequenceWitness> witnesses;  // the failing ones
};

MeanEquicontinuityReport test_mean_equicontinuity(const FactorMap& pi, const Tolerances& tol,
                                                  const FolnerSchedule& schedule, std::uint64_t seed,
                                                  std::size_t samples = 4);

enum class RelationWitnessKind { regionally_banach_proximal, regionally_proximal };

struct RegionalWitness {
  RelationWitnessKind kind = RelationWitnessKind::regionally_banach_proximal;
  PointPair pair;
  double pair_distance = 0.0;  // max(d(x, u), d(y, v))
  double weyl_val = 0.0;
  double check_val = 0.0;
};

struct RegionalSearchResult {
  std::optional<RegionalWitness> witness;
  std::size_t candidates = 0;
  std::string note;
};

RegionalSearchResult regional_witness_search(const Point& x, const Point& y, const FactorMap& pi,
                                             double eps_pair, const Tolerances& tol,
                                             const FolnerSchedule& schedule, std::uint64_t seed);

}  // namespace meqlab
