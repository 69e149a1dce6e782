#pragma once

#include <memory>
#include <string>
#include <vector>

#include "meqlab/relations.hpp"

namespace meqlab {

struct FactorMapReport {
  std::string map_id;
  /// How topo-isomorphy is decided: Banach proximality of sampled fibres.
  std::string criterion;

  bool equicontinuous = false;
  bool distal = false;
  bool banach_distal = false;
  bool banach_proximal = false;  // = topo-isomorphic
  bool proximal = false;
  bool mean_equicontinuous = false;
  bool property_M = false;

  /// equicontinuous <=> mean_equicontinuous and distal;
  /// banach_proximal <=> mean_equicontinuous and proximal.
  bool consistent = true;
  std::vector<std::string> notes;
  /// One line per refuted property naming the offending sample.
  std::vector<std::string> witnesses;

  std::vector<PointPair> pairs;
  std::vector<PairVerdict> verdicts;
  std::vector<PairEstimates> estimates;  // parallel to pairs
  EpsilonDeltaScan equicontinuity_scan;  // hat-based (eps, delta) scan
  PropertyMReport property_m;
  MeanEquicontinuityReport mean_eq;
};

FactorMapReport classify_factor_map(const FactorMap& pi, const Tolerances& tol,
                                    const FolnerSchedule& schedule, std::uint64_t seed,
                                    std::size_t samples = 16);

struct DecompositionReport {
  std::size_t points_checked = 0;
  bool phi_banach_proximal = false;
  bool psi_equicontinuous = false;
  bool verified = false;
  FactorMapReport phi;
  FactorMapReport psi;
  std::vector<std::string> notes;
};

/// Checks psi(phi(x)) = pi(x) on sampled points (CompositionMismatchError
/// otherwise), then that phi is Banach proximal and psi equicontinuous.
DecompositionReport verify_decomposition(const FactorMap& pi, const FactorMap& phi, const FactorMap& psi,
                                         const Tolerances& tol, const FolnerSchedule& schedule,
                                         std::uint64_t seed, std::size_t samples = 16);

}  // namespace meqlab
