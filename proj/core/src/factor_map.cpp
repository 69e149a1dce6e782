#include "meqlab/factor_map.hpp"

#include <algorithm>
#include <cmath>

#include "meqlab/errors.hpp"

namespace meqlab {

std::vector<PointPair> FibreSampler::sample_pairs(Rng& rng, std::size_t count) const {
  return pairs ? pairs(rng, count) : std::vector<PointPair>{};
}

std::vector<PairSequence> FibreSampler::sample_sequences(Rng& rng, std::size_t count) const {
  return sequences ? sequences(rng, count) : std::vector<PairSequence>{};
}

std::vector<PointPair> FibreSampler::sample_neighbours(const Point& x, const Point& y, double eps,
                                                       Rng& rng) const {
  return neighbours ? neighbours(x, y, eps, rng) : std::vector<PointPair>{};
}

FactorMap::FactorMap(std::string id, std::shared_ptr<const System> source,
                     std::shared_ptr<const System> target, Apply apply, bool exact,
                     FibreSampler sampler, std::string description)
    : id_(std::move(id)),
      description_(std::move(description)),
      source_(std::move(source)),
      target_(std::move(target)),
      apply_(std::move(apply)),
      exact_(exact),
      sampler_(std::move(sampler)) {
  if (!source_ || !target_ || !apply_) throw PreconditionError("factor map needs source, target and apply");
}

Point FactorMap::apply(const Point& x) const {
  source_->require_owned(x);
  return apply_(x);
}

bool FactorMap::same_fibre(const Point& x, const Point& y, double zero_tol) const {
  const Point a = apply(x);
  const Point b = apply(y);
  if (exact_) return a == b;
  return target_->dist(a, b) < zero_tol;
}

std::shared_ptr<const FactorMap> compose(const std::shared_ptr<const FactorMap>& psi,
                                         const std::shared_ptr<const FactorMap>& phi, std::string id,
                                         std::optional<FibreSampler> sampler) {
  if (phi->target().id() != psi->source().id()) {
    throw CompositionMismatchError("cannot compose " + psi->id() + " after " + phi->id() + ": '" +
                                   phi->target().id() + "' is not '" + psi->source().id() + "'");
  }
  if (id.empty()) id = psi->id() + "*" + phi->id();
  auto apply = [psi, phi](const Point& x) { return psi->apply(phi->apply(x)); };
  return std::make_shared<FactorMap>(std::move(id), phi->source_ptr(), psi->target_ptr(), apply,
                                     psi->exact() && phi->exact(),
                                     sampler ? std::move(*sampler) : phi->sampler(),
                                     psi->description() + " after " + phi->description());
}

std::shared_ptr<const FactorMap> identity_map(std::shared_ptr<const System> system, std::string id) {
  if (id.empty()) id = system->id() + ".id";
  FibreSampler sampler;
  sampler.pairs = [system](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = system->random_point(rng);
      out.push_back({x, x, "diagonal"});
    }
    return out;
  };
  sampler.sequences = [system](Rng& rng, std::size_t count) {
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = system->random_point(rng);
      PairSequence seq;
      seq.label = "constant diagonal at " + system->format_point(x);
      seq.pairs.assign(4, PointPair{x, x, "diagonal"});
      seq.limit = PointPair{x, x, "limit"};
      out.push_back(std::move(seq));
    }
    return out;
  };
  sampler.neighbours = [](const Point& x, const Point& y, double, Rng&) {
    return std::vector<PointPair>{{x, x, "diagonal"}, {y, y, "diagonal"}};
  };
  auto s = system;
  return std::make_shared<FactorMap>(std::move(id), s, system, [](const Point& x) { return x; }, true,
                                     std::move(sampler), "identity of " + s->id());
}

namespace {

class LiftedSystem final : public System {
 public:
  explicit LiftedSystem(std::shared_ptr<const FactorMap> pi)
      : System("lift(" + pi->id() + ")", "source of " + pi->id() + " with metric d_X + d_Y o pi",
               pi->source().literal_syntax(), pi->source().exact() && pi->target().exact()),
        pi_(std::move(pi)) {}

  double diameter() const override { return pi_->source().diameter() + pi_->target().diameter(); }
  bool owns(const Point& x) const override { return pi_->source().owns(x); }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override { return pi_->source().act(x, {g}); }

  double do_dist(const Point& x, const Point& y) const override {
    return pi_->source().dist(x, y) + pi_->target().dist(pi_->apply(x), pi_->apply(y));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    auto out = pi_->source().orbit_distances(x, y, lo, hi);
    // d_Y(pi(g.x), pi(g.y)) = d_Y(g.pi(x), g.pi(y)) by equivariance.
    const auto down = pi_->target().orbit_distances(pi_->apply(x), pi_->apply(y), lo, hi);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += down[i];
    return out;
  }

  Point do_random_point(Rng& rng) const override { return pi_->source().random_point(rng); }
  Point do_parse_point(const std::string& literal) const override {
    return pi_->source().parse_point(literal);
  }
  std::string do_format_point(const Point& x) const override { return pi_->source().format_point(x); }

 private:
  std::shared_ptr<const FactorMap> pi_;
};

void check_truncation(const FunctionFamily& family, int truncation) {
  if (truncation < 1) throw PreconditionError("truncation M must be at least 1");
  (void)family;
}

/// |a - b| added to `acc` without rounding.
void add_abs_difference(ExactSum& acc, double a, double b) {
  ExactSum d(a);
  d.subtract(b);
  if (d.sign() < 0) {
    acc -= d;
  } else {
    acc += d;
  }
}

}  // namespace

std::shared_ptr<const System> lift_metric(const std::shared_ptr<const FactorMap>& pi) {
  return std::make_shared<LiftedSystem>(pi);
}

double sampled_sup_norm(const FunctionFamily& family, const System& system, Rng& rng,
                        std::size_t samples) {
  double sup = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = system.random_point(rng);
    for (std::size_t m = 0; m < family.size(); ++m) sup = std::max(sup, std::fabs(family(m, x)));
  }
  return sup;
}

ExactSum d_family_exact(const FunctionFamily& family, const Point& x, const Point& y, int truncation) {
  check_truncation(family, truncation);
  ExactSum acc;
  if (x == y) return acc;
  const std::size_t terms = std::min<std::size_t>(family.size(), static_cast<std::size_t>(truncation));
  for (std::size_t m = 0; m < terms; ++m) {
    const int weight = -static_cast<int>(m + 1);
    add_abs_difference(acc, std::ldexp(family(m, x), weight), std::ldexp(family(m, y), weight));
  }
  return acc;
}

FamilyDistance d_family(const FunctionFamily& family, const Point& x, const Point& y, int truncation) {
  FamilyDistance out;
  out.value = d_family_exact(family, x, y, truncation).to_double();
  out.truncation_bound =
      family.size() > static_cast<std::size_t>(truncation) ? std::ldexp(1.0, 1 - truncation) : 0.0;
  return out;
}

DominationResult domination_check(const System& system, const Point& x1, const Point& x2,
                                  const FunctionFamily& fam_f, const FunctionFamily& fam_h,
                                  const FolnerWindow& window, int truncation) {
  check_truncation(fam_f, truncation);
  const auto needed = static_cast<std::size_t>(truncation);
  if (fam_f.size() < needed || fam_h.size() < needed) {
    throw PreconditionError("both families need at least M functions");
  }
  if (fam_f.system != fam_h.system) throw PreconditionError("families live on different systems");
  const auto xs = system.orbit(x1, window.lo(), window.hi());
  const auto ys = system.orbit(x2, window.lo(), window.hi());
  ExactSum lhs;
  ExactSum rhs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t m = 0; m < needed; ++m) {
      const int w = -static_cast<int>(m + 1);
      const double fx = std::ldexp(fam_f(m, xs[i]), w);
      const double fy = std::ldexp(fam_f(m, ys[i]), w);
      const double hx = std::ldexp(fam_h(m, xs[i]), w);
      const double hy = std::ldexp(fam_h(m, ys[i]), w);
      add_abs_difference(lhs, fx, fy);
      add_abs_difference(rhs, hx, hy);
      add_abs_difference(rhs, fx, hx);
      add_abs_difference(rhs, fy, hy);
    }
  }
  DominationResult r;
  const auto n = static_cast<std::uint64_t>(window.size());
  r.lhs = lhs.divided_by(n);
  r.rhs = rhs.divided_by(n);
  r.exact_slack = rhs - lhs;
  r.slack = r.exact_slack.divided_by(n);
  return r;
}

std::vector<double> empirical_measure(const System& system, const Point& x, const FolnerWindow& window,
                                      const std::vector<PointFunction>& test_functions) {
  const auto orbit = system.orbit(x, window.lo(), window.hi());
  std::vector<double> out;
  out.reserve(test_functions.size());
  for (const auto& f : test_functions) {
    ExactSum s;
    for (const Point& p : orbit) s.add(f(p));
    out.push_back(s.divided_by(static_cast<std::uint64_t>(window.size())));
  }
  return out;
}

}  // namespace meqlab
