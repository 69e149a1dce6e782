#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meqlab/exact_sum.hpp"
#include "meqlab/group.hpp"
#include "meqlab/system.hpp"

namespace meqlab {

struct PointPair {
  Point x;
  Point y;
  std::string label;
};

/// Pairs from one system, optionally with a declared limit pair.
struct PairSequence {
  std::vector<PointPair> pairs;
  std::optional<PointPair> limit;
  std::string label;
};

/// Seeded generators of fibre pairs. Every hook is optional; a hook that is
/// not provided yields nothing.
struct FibreSampler {
  std::function<std::vector<PointPair>(Rng&, std::size_t)> pairs;
  std::function<std::vector<PairSequence>(Rng&, std::size_t)> sequences;
  /// Fibre pairs close to a given (not necessarily fibre) pair.
  std::function<std::vector<PointPair>(const Point&, const Point&, double, Rng&)> neighbours;

  std::vector<PointPair> sample_pairs(Rng& rng, std::size_t count) const;
  std::vector<PairSequence> sample_sequences(Rng& rng, std::size_t count) const;
  std::vector<PointPair> sample_neighbours(const Point& x, const Point& y, double eps, Rng& rng) const;
};

/// An equivariant surjection between two systems.
class FactorMap {
 public:
  using Apply = std::function<Point(const Point&)>;

  FactorMap(std::string id, std::shared_ptr<const System> source,
            std::shared_ptr<const System> target, Apply apply, bool exact, FibreSampler sampler,
            std::string description = {});

  const std::string& id() const { return id_; }
  const std::string& description() const { return description_; }
  const System& source() const { return *source_; }
  const System& target() const { return *target_; }
  std::shared_ptr<const System> source_ptr() const { return source_; }
  std::shared_ptr<const System> target_ptr() const { return target_; }
  /// Exact maps decide fibre membership by payload equality of images.
  bool exact() const { return exact_; }
  const FibreSampler& sampler() const { return sampler_; }

  Point apply(const Point& x) const;
  Point operator()(const Point& x) const { return apply(x); }

  /// (x, y) in R(pi): equal images for exact maps, image distance below
  /// zero_tol otherwise.
  bool same_fibre(const Point& x, const Point& y, double zero_tol) const;

 private:
  std::string id_;
  std::string description_;
  std::shared_ptr<const System> source_;
  std::shared_ptr<const System> target_;
  Apply apply_;
  bool exact_;
  FibreSampler sampler_;
};

/// psi o phi. Throws CompositionMismatchError when phi's target is not psi's
/// source. Without an explicit sampler the composite reuses phi's, since
/// phi-fibres lie in the fibres of the composite.
std::shared_ptr<const FactorMap> compose(const std::shared_ptr<const FactorMap>& psi,
                                         const std::shared_ptr<const FactorMap>& phi,
                                         std::string id = {},
                                         std::optional<FibreSampler> sampler = std::nullopt);

/// Identity factor map of a system; its fibres are the diagonal.
std::shared_ptr<const FactorMap> identity_map(std::shared_ptr<const System> system, std::string id = {});

/// The source system re-metrized by d_X + d_Y o pi. Owns the same points as
/// the source and acts identically.
std::shared_ptr<const System> lift_metric(const std::shared_ptr<const FactorMap>& pi);

// ---------------------------------------------------------------------------

using PointFunction = std::function<double(const Point&)>;

/// Functions f_1, f_2, ... on one system with |f_m| <= 1.
struct FunctionFamily {
  std::string system;
  std::vector<PointFunction> functions;
  std::vector<std::string> names;
  bool separating = false;

  std::size_t size() const { return functions.size(); }
  double operator()(std::size_t m, const Point& x) const { return functions.at(m)(x); }
};

/// Largest |f_m(x)| seen on `samples` random points; <= 1 for a valid family.
double sampled_sup_norm(const FunctionFamily& family, const System& system, Rng& rng,
                        std::size_t samples);

struct FamilyDistance {
  double value = 0.0;
  /// Upper bound for the omitted terms m > M.
  double truncation_bound = 0.0;
};

/// sum_{m <= M} 2^-m |f_m(x) - f_m(x')|, weights starting at 1/2.
FamilyDistance d_family(const FunctionFamily& family, const Point& x, const Point& y, int truncation);
/// The same sum without rounding.
ExactSum d_family_exact(const FunctionFamily& family, const Point& x, const Point& y, int truncation);

struct DominationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  ExactSum exact_slack;  // window sum of rhs - lhs terms
};

/// Window averages of d_f versus d_h + phi with
/// phi(x, x') = sum 2^-m (|f_m - h_m|(x) + |f_m - h_m|(x')), all exact.
DominationResult domination_check(const System& system, const Point& x1, const Point& x2,
                                  const FunctionFamily& fam_f, const FunctionFamily& fam_h,
                                  const FolnerWindow& window, int truncation);

/// (1/|F|) sum_{g in F} f(g.x) for every test function.
std::vector<double> empirical_measure(const System& system, const Point& x, const FolnerWindow& window,
                                      const std::vector<PointFunction>& test_functions);

}  // namespace meqlab
