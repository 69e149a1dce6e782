#include "meqlab/classification.hpp"

#include <algorithm>
#include <cstdio>

#include "meqlab/errors.hpp"
#include "meqlab/parallel.hpp"

namespace meqlab {

namespace {

std::string describe(const char* what, const PointPair& p, const char* kind, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", kind, value);
  return std::string(what) + ": " + p.label + " (" + buf + ")";
}

}  // namespace

FactorMapReport classify_factor_map(const FactorMap& pi, const Tolerances& tol,
                                    const FolnerSchedule& schedule, std::uint64_t seed,
                                    std::size_t samples) {
  tol.validate();
  Rng rng(seed);
  FactorMapReport r;
  r.map_id = pi.id();
  r.criterion = "topo-isomorphic iff every sampled fibre pair is Banach proximal (weyl < zero_tol)";
  r.pairs = pi.sampler().sample_pairs(rng, samples);
  if (r.pairs.empty()) throw PreconditionError("sampler of " + pi.id() + " produced no pairs");

  const System& sys = pi.source();
  r.estimates = parallel_map(r.pairs.size(), [&](std::size_t i) {
    return estimate_pair(sys, r.pairs[i].x, r.pairs[i].y, schedule);
  });

  r.distal = r.banach_distal = r.banach_proximal = r.proximal = true;
  std::vector<PairWitness> scan_samples;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const PointPair& p = r.pairs[i];
    const bool diagonal = p.x == p.y;
    const bool in_R = pi.same_fibre(p.x, p.y, tol.zero_tol);
    if (!in_R) throw PreconditionError("sampler of " + pi.id() + " produced a pair outside R(pi)");
    const PairEstimates& e = r.estimates[i];
    r.verdicts.push_back(verdict_from(e, diagonal, in_R, tol));
    scan_samples.push_back({p, sys.dist(p.x, p.y), e.hat.value});

    if (e.weyl.value >= tol.zero_tol && r.banach_proximal) {
      r.banach_proximal = false;
      r.witnesses.push_back(describe("not banach_proximal", p, "weyl", e.weyl.value));
    }
    if (!diagonal && e.check.value >= tol.zero_tol && r.proximal) {
      r.proximal = false;
      r.witnesses.push_back(describe("not proximal", p, "check", e.check.value));
    }
    if (!diagonal && e.check.value <= tol.sep_tol && r.distal) {
      r.distal = false;
      r.witnesses.push_back(describe("not distal", p, "check", e.check.value));
    }
    if (!diagonal && e.weyl.value <= tol.sep_tol && r.banach_distal) {
      r.banach_distal = false;
      r.witnesses.push_back(describe("not banach_distal", p, "weyl", e.weyl.value));
    }
  }

  // Converging pair sequences are the close-pair probes; sampled fibre pairs
  // alone rarely come within zero_tol of the diagonal.
  Rng probe_rng(seed + 3);
  std::vector<PointPair> probes;
  for (const PairSequence& s : pi.sampler().sample_sequences(probe_rng, std::max<std::size_t>(1, samples / 4))) {
    probes.insert(probes.end(), s.pairs.begin(), s.pairs.end());
    if (s.limit) probes.push_back(*s.limit);
  }
  const auto probe_hats = parallel_map(probes.size(), [&](std::size_t i) {
    return hat_estimate(sys, probes[i].x, probes[i].y, schedule).value;
  });
  for (std::size_t i = 0; i < probes.size(); ++i) {
    scan_samples.push_back({probes[i], sys.dist(probes[i].x, probes[i].y), probe_hats[i]});
  }

  r.equicontinuity_scan = epsilon_delta_scan(scan_samples, tol);
  r.equicontinuous = r.equicontinuity_scan.holds();
  if (!r.equicontinuous) {
    const PairWitness& w = r.equicontinuity_scan.violations.front();
    r.witnesses.push_back(describe("not equicontinuous", w.pair, "hat", w.estimate));
  }

  r.property_m = test_property_M(pi, tol, schedule, seed + 1, samples);
  r.property_M = r.property_m.holds;
  if (!r.property_M) {
    const PairWitness& w = r.property_m.scan.violations.front();
    r.witnesses.push_back(describe("property (M) violated", w.pair, "weyl", w.estimate));
  }

  r.mean_eq = test_mean_equicontinuity(pi, tol, schedule, seed + 2);
  r.mean_equicontinuous = r.mean_eq.holds;
  if (!r.mean_equicontinuous) {
    const SequenceWitness& w = r.mean_eq.witnesses.front();
    r.witnesses.push_back("not mean_equicontinuous: " + w.label + " (" +
                          to_string(*r.mean_eq.direction_failed) + ")");
  }

  if (r.equicontinuous != (r.mean_equicontinuous && r.distal)) {
    r.consistent = false;
    r.notes.push_back(
        "equicontinuous disagrees with mean_equicontinuous and distal; treat as a tolerance artifact");
  }
  if (r.banach_proximal != (r.mean_equicontinuous && r.proximal)) {
    r.consistent = false;
    r.notes.push_back(
        "banach_proximal disagrees with mean_equicontinuous and proximal; treat as a tolerance artifact");
  }
  if (r.property_M && !r.mean_equicontinuous && r.banach_proximal) {
    r.notes.push_back("property (M) holds but a sampled sequence breaks mean equicontinuity");
  }
  return r;
}

DecompositionReport verify_decomposition(const FactorMap& pi, const FactorMap& phi, const FactorMap& psi,
                                         const Tolerances& tol, const FolnerSchedule& schedule,
                                         std::uint64_t seed, std::size_t samples) {
  tol.validate();
  if (phi.source().id() != pi.source().id() || phi.target().id() != psi.source().id() ||
      psi.target().id() != pi.target().id()) {
    throw CompositionMismatchError("systems of " + psi.id() + " o " + phi.id() + " do not match " + pi.id());
  }
  DecompositionReport r;
  Rng rng(seed);
  for (std::size_t i = 0; i < 4 * samples; ++i) {
    const Point x = pi.source().random_point(rng);
    if (psi.apply(phi.apply(x)) != pi.apply(x)) {
      throw CompositionMismatchError(psi.id() + " o " + phi.id() + " differs from " + pi.id() + " at " +
                                     pi.source().format_point(x));
    }
    ++r.points_checked;
  }
  r.phi = classify_factor_map(phi, tol, schedule, seed + 10, samples);
  r.psi = classify_factor_map(psi, tol, schedule, seed + 20, samples);
  r.phi_banach_proximal = r.phi.banach_proximal;
  r.psi_equicontinuous = r.psi.equicontinuous;
  r.verified = r.phi_banach_proximal && r.psi_equicontinuous;
  if (!r.phi_banach_proximal) r.notes.push_back(phi.id() + " is not Banach proximal on sampled fibres");
  if (!r.psi_equicontinuous) r.notes.push_back(psi.id() + " is not equicontinuous on sampled fibres");
  return r;
}

}  // namespace meqlab
