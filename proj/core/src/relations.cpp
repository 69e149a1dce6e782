#include "meqlab/relations.hpp"

#include <algorithm>
#include <cmath>

#include "meqlab/errors.hpp"
#include "meqlab/parallel.hpp"
#include "meqlab/registry.hpp"

namespace meqlab {

void Tolerances::validate() const {
  if (!(zero_tol > 0.0) || !(sep_tol > zero_tol)) {
    throw PreconditionError("tolerances must satisfy 0 < zero_tol < sep_tol");
  }
}

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::diagonal:
      return "diagonal";
    case PairClass::banach_proximal:
      return "banach_proximal";
    case PairClass::proximal:
      return "proximal";
    case PairClass::distal:
      return "distal";
    case PairClass::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string to_string(MeqDirection d) {
  return d == MeqDirection::limit_bp_but_sequence_not_abp ? "limit BP but sequence not aBP"
                                                          : "sequence aBP but limit not BP";
}

bool PairVerdict::has(PairClass c) const {
  return std::find(classes.begin(), classes.end(), c) != classes.end();
}

bool PairVerdict::respects_lattice() const {
  if (has(PairClass::diagonal) && !has(PairClass::banach_proximal)) return false;
  if (has(PairClass::banach_proximal) && !has(PairClass::proximal)) return false;
  if (has(PairClass::distal) && has(PairClass::proximal)) return false;
  return true;
}

PairVerdict verdict_from(const PairEstimates& e, bool diagonal, bool in_R_pi, const Tolerances& tol) {
  PairVerdict v;
  v.in_R_pi = in_R_pi;
  v.check_val = e.check.value;
  v.hat_val = e.hat.value;
  v.besi_val = e.besicovitch.value;
  v.weyl_val = e.weyl.value;
  if (diagonal) v.classes.push_back(PairClass::diagonal);
  if (diagonal || v.weyl_val < tol.zero_tol) v.classes.push_back(PairClass::banach_proximal);
  // check <= besicovitch <= weyl, so banach_proximal implies proximal.
  if (diagonal || v.check_val < tol.zero_tol) {
    v.classes.push_back(PairClass::proximal);
  } else if (v.check_val > tol.sep_tol) {
    v.classes.push_back(PairClass::distal);
  } else {
    v.classes.push_back(PairClass::inconclusive);
  }
  std::sort(v.classes.begin(), v.classes.end());
  return v;
}

PairVerdict classify_pair(const System& system, const Point& x, const Point& y, const FactorMap* pi,
                          const Tolerances& tol, const FolnerSchedule& schedule) {
  tol.validate();
  system.require_owned(x);
  system.require_owned(y);
  const bool in_R = pi == nullptr || pi->same_fibre(x, y, tol.zero_tol);
  return verdict_from(estimate_pair(system, x, y, schedule), x.payload == y.payload, in_R, tol);
}

PairVerdict classify_pair(const Point& x, const Point& y, const FactorMap* pi, const Tolerances& tol,
                          const FolnerSchedule& schedule) {
  return classify_pair(common_system(x, y), x, y, pi, tol, schedule);
}

AsymptoticResult is_asymptotically_banach_proximal(const System& system, const PairSequence& seq,
                                                   const Tolerances& tol, const FolnerSchedule& schedule,
                                                   double tail_fraction) {
  tol.validate();
  if (seq.pairs.empty()) throw PreconditionError("empty pair sequence");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw PreconditionError("tail fraction must lie in (0, 1]");
  }
  AsymptoticResult r;
  r.weyl_series = parallel_map(seq.pairs.size(), [&](std::size_t i) {
    return weyl_estimate(system, seq.pairs[i].x, seq.pairs[i].y, schedule).value;
  });
  const auto n = r.weyl_series.size();
  const auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
  r.tail_begin = n - std::max<std::size_t>(1, std::min(tail, n));
  r.holds = std::all_of(r.weyl_series.begin() + static_cast<std::ptrdiff_t>(r.tail_begin),
                        r.weyl_series.end(), [&](double w) { return w < tol.zero_tol; });
  return r;
}

bool EpsilonDeltaScan::holds() const {
  return std::none_of(rows.begin(), rows.end(), [](const EpsilonRow& r) { return r.violated; });
}

EpsilonDeltaScan epsilon_delta_scan(const std::vector<PairWitness>& samples, const Tolerances& tol) {
  EpsilonDeltaScan scan;
  for (double eps : {tol.sep_tol, 2.0 * tol.sep_tol, 4.0 * tol.sep_tol}) {
    EpsilonRow row;
    row.eps = eps;
    for (const PairWitness& w : samples) {
      if (w.estimate < eps) continue;
      row.delta_star = std::min(row.delta_star, w.distance);
      if (w.distance < tol.zero_tol) {
        row.violated = true;
        scan.violations.push_back(w);
      }
    }
    scan.rows.push_back(row);
  }
  return scan;
}

namespace {

/// Sampled pairs plus every pair and limit of the sampled sequences.
std::vector<PointPair> collect_fibre_pairs(const FactorMap& pi, Rng& rng, std::size_t samples) {
  std::vector<PointPair> pairs = pi.sampler().sample_pairs(rng, samples);
  for (const PairSequence& s : pi.sampler().sample_sequences(rng, std::max<std::size_t>(1, samples / 4))) {
    pairs.insert(pairs.end(), s.pairs.begin(), s.pairs.end());
    if (s.limit) pairs.push_back(*s.limit);
  }
  return pairs;
}

void require_fibres(const FactorMap& pi, const std::vector<PointPair>& pairs, const Tolerances& tol) {
  for (const PointPair& p : pairs) {
    if (!pi.same_fibre(p.x, p.y, tol.zero_tol)) {
      throw PreconditionError("sampler of " + pi.id() + " produced a pair outside R(pi) (" + p.label + ")");
    }
  }
}

}  // namespace

PropertyMReport test_property_M(const FactorMap& pi, const Tolerances& tol,
                                const FolnerSchedule& schedule, std::uint64_t seed,
                                std::size_t samples) {
  tol.validate();
  Rng rng(seed);
  const auto pairs = collect_fibre_pairs(pi, rng, samples);
  if (pairs.empty()) throw PreconditionError("sampler of " + pi.id() + " produced no pairs");
  require_fibres(pi, pairs, tol);
  const System& sys = pi.source();
  PropertyMReport r;
  r.weyl = parallel_map(pairs.size(), [&](std::size_t i) {
    return weyl_estimate(sys, pairs[i].x, pairs[i].y, schedule);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    r.samples.push_back({pairs[i], sys.dist(pairs[i].x, pairs[i].y), r.weyl[i].value});
  }
  r.scan = epsilon_delta_scan(r.samples, tol);
  r.holds = r.scan.holds();
  r.pairs_tested = pairs.size();
  r.note = r.holds ? "no violation found at tolerances" : "violations found: small d with large weyl";
  return r;
}

MeanEquicontinuityReport test_mean_equicontinuity(const FactorMap& pi, const Tolerances& tol,
                                                  const FolnerSchedule& schedule, std::uint64_t seed,
                                                  std::size_t samples) {
  tol.validate();
  Rng rng(seed);
  const auto seqs = pi.sampler().sample_sequences(rng, samples);
  if (seqs.empty()) throw PreconditionError("sampler of " + pi.id() + " produced no pair sequences");
  const System& sys = pi.source();
  MeanEquicontinuityReport r;
  for (const PairSequence& s : seqs) {
    if (!s.limit) throw PreconditionError("pair sequence '" + s.label + "' has no declared limit");
    require_fibres(pi, s.pairs, tol);
    SequenceWitness w;
    w.label = s.label;
    w.sequence = is_asymptotically_banach_proximal(sys, s, tol, schedule);
    w.limit_weyl = weyl_estimate(sys, s.limit->x, s.limit->y, schedule).value;
    w.limit_bp = w.limit_weyl < tol.zero_tol;
    if (w.limit_bp && !w.sequence.holds) w.failure = MeqDirection::limit_bp_but_sequence_not_abp;
    if (!w.limit_bp && w.sequence.holds) w.failure = MeqDirection::sequence_abp_but_limit_not_bp;
    if (w.failure) {
      if (!r.direction_failed) r.direction_failed = w.failure;
      r.witnesses.push_back(w);
    }
    r.sequences.push_back(std::move(w));
  }
  r.holds = r.witnesses.empty();
  return r;
}

RegionalSearchResult regional_witness_search(const Point& x, const Point& y, const FactorMap& pi,
                                             double eps_pair, const Tolerances& tol,
                                             const FolnerSchedule& schedule, std::uint64_t seed) {
  tol.validate();
  if (!(eps_pair > 0.0)) throw PreconditionError("eps_pair must be positive");
  const System& sys = pi.source();
  RegionalSearchResult r;
  if (x == y) {
    r.witness = RegionalWitness{RelationWitnessKind::regionally_banach_proximal, {x, y, "itself"}, 0.0, 0.0, 0.0};
    r.candidates = 1;
    r.note = "the pair is diagonal";
    return r;
  }
  Rng rng(seed);
  std::vector<PointPair> candidates = pi.sampler().sample_neighbours(x, y, eps_pair, rng);
  for (PointPair& p : collect_fibre_pairs(pi, rng, 16)) candidates.push_back(std::move(p));

  std::vector<std::pair<PointPair, double>> near;
  for (PointPair& c : candidates) {
    if (!pi.same_fibre(c.x, c.y, tol.zero_tol)) continue;
    const double d = std::max(sys.dist(x, c.x), sys.dist(y, c.y));
    if (d < eps_pair) near.emplace_back(std::move(c), d);
  }
  r.candidates = near.size();
  const auto est = parallel_map(near.size(), [&](std::size_t i) {
    return estimate_pair(sys, near[i].first.x, near[i].first.y, schedule);
  });
  for (std::size_t i = 0; i < near.size(); ++i) {
    const double weyl = est[i].weyl.value;
    const double check = est[i].check.value;
    RegionalWitness w{RelationWitnessKind::regionally_banach_proximal, near[i].first, near[i].second, weyl, check};
    if (weyl < tol.zero_tol) {
      if (!r.witness || r.witness->kind != RelationWitnessKind::regionally_banach_proximal ||
          weyl < r.witness->weyl_val) {
        r.witness = w;
      }
    } else if (check < tol.zero_tol) {
      w.kind = RelationWitnessKind::regionally_proximal;
      if (!r.witness || (r.witness->kind == RelationWitnessKind::regionally_proximal &&
                         check < r.witness->check_val)) {
        r.witness = w;
      }
    }
  }
  r.note = r.witness ? "witness found among sampled fibre pairs"
                     : "no witness among sampled fibre pairs; this does not prove non-membership";
  return r;
}

}  // namespace meqlab
