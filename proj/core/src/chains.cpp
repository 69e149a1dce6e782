// Concrete factor maps of the example systems and their fibre samplers.

#include "meqlab/chains.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <mutex>

#include "meqlab/errors.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {

namespace {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string num(std::int64_t v) { return std::to_string(v); }

// --- Thue-Morse chain ------------------------------------------------------

Point tm_point(const ThueMorseState& s) { return Point{ids::kThueMorse, s}; }
Point toeplitz_point(const ToeplitzState& s) { return Point{ids::kToeplitz, s}; }

ThueMorseState tm_state(std::int64_t a, FibreFlag flag, std::uint8_t bit0) {
  return ThueMorseState{make_toeplitz_state(DyadicInteger::from_integer(a), flag), bit0};
}

/// Limit of sigma^{fibre_shift(a, m)} applied to a fibre point over a: the
/// marked coordinate escapes, leaving the primed base and bit0 flipped.
ThueMorseState tm_limit(std::int64_t a, std::uint8_t bit0) {
  return tm_state(a, FibreFlag::primed, static_cast<std::uint8_t>(bit0 ^ 1U));
}

constexpr int kSequenceLength = 8;

PairSequence shifted_sequence(const System& sys, const Point& x, const Point& y, std::int64_t a,
                              PointPair limit, std::string label) {
  PairSequence seq;
  seq.label = std::move(label);
  for (int m = 1; m <= kSequenceLength; ++m) {
    const GroupElement g{fibre_shift(a, m)};
    seq.pairs.push_back({sys.act(x, g), sys.act(y, g), seq.label + " m=" + num(m)});
  }
  seq.limit = std::move(limit);
  return seq;
}

FibreSampler tm_phi_sampler() {
  FibreSampler s;
  s.pairs = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kThueMorse);
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = sys.random_point(rng);
      out.push_back({x, tm_point(thue_morse_negation(state_of<ThueMorseState>(x))),
                     "(x, x-bar) x=" + sys.format_point(x)});
    }
    return out;
  };
  s.sequences = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kThueMorse);
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t a = uniform(rng, -50, 50);
      const auto b = static_cast<std::uint8_t>(rng() & 1U);
      const FibreFlag flag = (rng() & 1U) ? FibreFlag::primed : FibreFlag::plain;
      const ThueMorseState x = tm_state(a, flag, b);
      const ThueMorseState lim = tm_limit(a, b);
      out.push_back(shifted_sequence(sys, tm_point(x), tm_point(thue_morse_negation(x)), a,
                                     {tm_point(lim), tm_point(thue_morse_negation(lim)), "limit"},
                                     "(x, x-bar) over a=" + num(a)));
    }
    return out;
  };
  s.neighbours = [](const Point& x, const Point& y, double, Rng&) {
    std::vector<PointPair> out{{x, x, "diagonal at x"}, {y, y, "diagonal at y"}};
    for (const Point* p : {&x, &y}) {
      if (p->system != ids::kThueMorse) continue;
      out.push_back({*p, tm_point(thue_morse_negation(state_of<ThueMorseState>(*p))), "negation pair"});
    }
    return out;
  };
  return s;
}

FibreSampler tm_psi_sampler() {
  FibreSampler s;
  auto pair_at = [](std::int64_t a) {
    const auto addr = DyadicInteger::from_integer(a);
    return PointPair{toeplitz_point(make_toeplitz_state(addr, FibreFlag::plain)),
                     toeplitz_point(make_toeplitz_state(addr, FibreFlag::primed)),
                     "(gamma, gamma') over a=" + num(a)};
  };
  s.pairs = [pair_at](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pair_at(uniform(rng, -1000, 1000)));
    return out;
  };
  s.sequences = [pair_at](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kToeplitz);
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t a = uniform(rng, -50, 50);
      const PointPair p = pair_at(a);
      const Point lim = toeplitz_point(make_toeplitz_state(DyadicInteger::from_integer(a), FibreFlag::primed));
      out.push_back(shifted_sequence(sys, p.x, p.y, a, {lim, lim, "limit"}, p.label));
    }
    return out;
  };
  s.neighbours = [pair_at](const Point& x, const Point& y, double, Rng& rng) {
    std::vector<PointPair> out{{x, x, "diagonal at x"}, {y, y, "diagonal at y"}};
    for (int i = 0; i < 8; ++i) out.push_back(pair_at(uniform(rng, -1000, 1000)));
    return out;
  };
  return s;
}

FibreSampler tm_pi_sampler() {
  FibreSampler s;
  s.pairs = [](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t a = uniform(rng, -1000, 1000);
      const auto fibre = thue_morse_fibre(a, static_cast<std::uint8_t>(rng() & 1U));
      const auto first = static_cast<std::size_t>(uniform(rng, 0, 3));
      const auto second = (first + static_cast<std::size_t>(uniform(rng, 1, 3))) % 4;
      out.push_back({fibre[first], fibre[second],
                     "fibre over a=" + num(a) + " points " + num(static_cast<std::int64_t>(first)) +
                         "," + num(static_cast<std::int64_t>(second))});
    }
    return out;
  };
  s.sequences = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kThueMorse);
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t a = uniform(rng, -50, 50);
      const auto b = static_cast<std::uint8_t>(rng() & 1U);
      const Point lim = tm_point(tm_limit(a, b));
      out.push_back(shifted_sequence(sys, tm_point(tm_state(a, FibreFlag::plain, b)),
                                     tm_point(tm_state(a, FibreFlag::primed, b)), a, {lim, lim, "limit"},
                                     "(alpha.beta, alpha.beta-bar) over a=" + num(a)));
    }
    return out;
  };
  s.neighbours = [](const Point& x, const Point& y, double, Rng&) {
    return std::vector<PointPair>{{x, x, "diagonal at x"}, {y, y, "diagonal at y"}};
  };
  return s;
}

// --- Sturmian chain --------------------------------------------------------

Point sturmian_point(const GoldenPhase& ph, CodingSide side) {
  return Point{ids::kSturmian, make_sturmian_state(ph, side)};
}

constexpr int kSturmianSequenceLength = 10;

FibreSampler sturm_phi_sampler() {
  FibreSampler s;
  auto pair_at = [](std::int64_t j) {
    const GoldenPhase ph = GoldenPhase::make(0, 1, j);
    return PointPair{sturmian_point(ph, CodingSide::lower), sturmian_point(ph, CodingSide::upper),
                     "(lower, upper) at phase " + ph.to_string()};
  };
  s.pairs = [pair_at](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pair_at(uniform(rng, -1000, 1000)));
    return out;
  };
  s.sequences = [pair_at](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kSturmian);
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t j = uniform(rng, -100, 100);
      const PointPair p = pair_at(j);
      PairSequence seq;
      seq.label = p.label + " shifted by F_2m";
      for (int m = 1; m <= kSturmianSequenceLength; ++m) {
        const GroupElement g{fibonacci(2 * m)};
        seq.pairs.push_back({sys.act(p.x, g), sys.act(p.y, g), seq.label + " m=" + num(m)});
      }
      // F_2m alpha - F_2m-1 < 0: the orbit of 0 is approached from below.
      const Point lim = sturmian_point(GoldenPhase::make(0, 1, j), CodingSide::upper);
      seq.limit = PointPair{lim, lim, "limit"};
      out.push_back(std::move(seq));
    }
    return out;
  };
  s.neighbours = [pair_at](const Point& x, const Point& y, double, Rng&) {
    std::vector<PointPair> out{{x, x, "diagonal at x"}, {y, y, "diagonal at y"}};
    for (const Point* p : {&x, &y}) {
      if (p->system != ids::kSturmian) continue;
      const GoldenPhase& ph = state_of<SturmianState>(*p).phase;
      if (ph.num == 0) out.push_back(pair_at(ph.turns));
    }
    return out;
  };
  return s;
}

GoldenPhase phase_plus(const GoldenPhase& p, std::int64_t k, std::int64_t den) {
  return GoldenPhase::make(p.num * den + k * p.den, p.den * den, p.turns);
}

FibreSampler rotation_point_sampler() {
  FibreSampler s;
  s.pairs = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kRotation);
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = sys.random_point(rng);
      const Point y{ids::kRotation, phase_plus(state_of<GoldenPhase>(x), uniform(rng, 2, 6), 8)};
      out.push_back({x, y, "(" + sys.format_point(x) + ", " + sys.format_point(y) + ")"});
    }
    return out;
  };
  s.sequences = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kRotation);
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = sys.random_point(rng);
      PairSequence seq;
      seq.label = "(p, p + 2^-m) p=" + sys.format_point(x);
      for (int m = 1; m <= 12; ++m) {
        const Point y{ids::kRotation, phase_plus(state_of<GoldenPhase>(x), 1, std::int64_t{1} << m)};
        seq.pairs.push_back({x, y, seq.label + " m=" + num(m)});
      }
      seq.limit = PointPair{x, x, "limit"};
      out.push_back(std::move(seq));
    }
    return out;
  };
  s.neighbours = [](const Point& x, const Point& y, double, Rng&) {
    return std::vector<PointPair>{{x, y, "the pair itself"}, {x, x, "diagonal at x"}};
  };
  return s;
}

FibreSampler sturm_pi_sampler() {
  FibreSampler s = sturm_phi_sampler();
  s.pairs = [](Rng& rng, std::size_t count) {
    const System& sys = system_by_id(ids::kSturmian);
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x = sys.random_point(rng);
      const Point y = sys.random_point(rng);
      out.push_back({x, y, "(" + sys.format_point(x) + ", " + sys.format_point(y) + ")"});
    }
    return out;
  };
  return s;
}

// --- Examples with floating dynamics ---------------------------------------

Point interval_point(double y, Branch b) { return Point{ids::kInterval, interval_map(IntervalState{y, b, 0}, 0)}; }

FibreSampler interval_sampler() {
  FibreSampler s;
  s.pairs = [](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      const double y = uniform_real(rng, 0.0, 1.0);
      out.push_back({interval_point(y, Branch::hat), interval_point(y, Branch::check),
                     "(y-hat, y-check) y=" + std::to_string(y)});
    }
    return out;
  };
  s.sequences = [](Rng& rng, std::size_t count) {
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const auto n = uniform(rng, 1, 5);
      const double b = 1.0 / static_cast<double>(n);
      const double a = 1.0 / static_cast<double>(n + 1);
      PairSequence seq;
      seq.label = "y_k -> 1/" + num(n) + " from below";
      for (int k = 1; k <= 12; ++k) {
        const double y = b - (b - a) * std::ldexp(1.0, -k);
        seq.pairs.push_back({interval_point(y, Branch::hat), interval_point(y, Branch::check),
                             seq.label + " k=" + num(k)});
      }
      seq.limit = PointPair{interval_point(b, Branch::hat), interval_point(b, Branch::check), "limit"};
      out.push_back(std::move(seq));
    }
    return out;
  };
  return s;
}

Point shell_point(std::uint32_t level, double t) { return Point{ids::kShells, shell_map(ShellState{level, t, 0}, 0)}; }

constexpr std::uint32_t kMaxSampledShell = 8;

FibreSampler shell_sampler() {
  FibreSampler s;
  s.pairs = [](Rng& rng, std::size_t count) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < count; ++i) {
      double t1 = uniform_real(rng, 0.1, 6.2);
      double t2 = uniform_real(rng, 0.1, 6.2);
      const bool on_limit = i % 4 == 3;
      if (i % 4 == 1) {
        // Close points on either side of the fixed point c_k.
        t1 = uniform_real(rng, 1e-3, 2e-3);
        t2 = 2.0 * std::numbers::pi - uniform_real(rng, 1e-3, 2e-3);
      }
      const auto level = on_limit ? kLimitLevel : static_cast<std::uint32_t>(uniform(rng, 1, kMaxSampledShell));
      const std::string name = on_limit ? "C" : "C_" + num(level);
      out.push_back({shell_point(level, t1), shell_point(level, t2),
                     "angles " + std::to_string(t1) + ", " + std::to_string(t2) + " on " + name});
    }
    return out;
  };
  s.sequences = [](Rng& rng, std::size_t count) {
    std::vector<PairSequence> out;
    for (std::size_t i = 0; i < count; ++i) {
      const double t1 = uniform_real(rng, 0.5, 2.5);
      const double t2 = uniform_real(rng, 3.5, 5.5);
      PairSequence seq;
      seq.label = "angles " + std::to_string(t1) + ", " + std::to_string(t2) + " on C_k, k -> inf";
      for (std::uint32_t k = 1; k <= kMaxSampledShell; ++k) {
        seq.pairs.push_back({shell_point(k, t1), shell_point(k, t2), seq.label + " k=" + num(k)});
      }
      seq.limit = PointPair{shell_point(kLimitLevel, t1), shell_point(kLimitLevel, t2), "limit on C"};
      out.push_back(std::move(seq));
    }
    return out;
  };
  s.neighbours = [](const Point& x, const Point& y, double eps, Rng&) {
    std::vector<PointPair> out;
    if (x.system != ids::kShells || y.system != ids::kShells) return out;
    const ShellState& p = state_of<ShellState>(x);
    const ShellState& q = state_of<ShellState>(y);
    if (p.level != kLimitLevel || q.level != kLimitLevel) return out;
    // Same angles one shell up: the pair distance is the height 1/k.
    const auto first = static_cast<std::uint32_t>(1.0 / eps) + 1;
    for (std::uint32_t k = first; k < first + kMaxSampledShell; ++k) {
      out.push_back({shell_point(k, shell_angle(p)), shell_point(k, shell_angle(q)), "same angles on C_" + num(k)});
    }
    return out;
  };
  return s;
}

}  // namespace

std::int64_t fibre_shift(std::int64_t address, int m) {
  const std::int64_t step = std::int64_t{1} << (2 * m);
  return address > 0 ? step : -step;
}

std::int64_t fibonacci(int n) {
  std::int64_t a = 0;
  std::int64_t b = 1;
  for (int i = 0; i < n; ++i) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

std::vector<Point> thue_morse_fibre(std::int64_t address, std::uint8_t bit0) {
  const auto nb = static_cast<std::uint8_t>(bit0 ^ 1U);
  return {tm_point(tm_state(address, FibreFlag::plain, bit0)), tm_point(tm_state(address, FibreFlag::plain, nb)),
          tm_point(tm_state(address, FibreFlag::primed, bit0)), tm_point(tm_state(address, FibreFlag::primed, nb))};
}

ChainMaps chain_maps() {
  auto& reg = SystemRegistry::global();
  ChainMaps c;
  c.phi = std::make_shared<FactorMap>(
      "tm.phi", reg.get(ids::kThueMorse), reg.get(ids::kToeplitz),
      [](const Point& x) { return toeplitz_point(state_of<ThueMorseState>(x).base); }, true, tm_phi_sampler(),
      "block code y_n = [x_n != x_n+1]");
  c.psi = std::make_shared<FactorMap>(
      "tm.psi", reg.get(ids::kToeplitz), reg.get(ids::kOdometer),
      [](const Point& x) { return Point{ids::kOdometer, state_of<ToeplitzState>(x).address}; }, true,
      tm_psi_sampler(), "Toeplitz point to its odometer address");
  c.pi = compose(c.psi, c.phi, "tm.pi", tm_pi_sampler());
  return c;
}

ChainMaps sturmian_chain() {
  auto& reg = SystemRegistry::global();
  const Point single{ids::kPoint, SinglePoint{}};
  ChainMaps c;
  c.phi = std::make_shared<FactorMap>(
      "sturm.phi", reg.get(ids::kSturmian), reg.get(ids::kRotation),
      [](const Point& x) { return Point{ids::kRotation, state_of<SturmianState>(x).phase}; }, true,
      sturm_phi_sampler(), "Sturmian coding to its phase");
  c.psi = std::make_shared<FactorMap>(
      "rot.pt", reg.get(ids::kRotation), reg.get(ids::kPoint), [single](const Point&) { return single; }, true,
      rotation_point_sampler(), "rotation to the one-point system");
  c.pi = compose(c.psi, c.phi, "sturm.pi", sturm_pi_sampler());
  return c;
}

std::shared_ptr<const FactorMap> thue_morse_identity() {
  return identity_map(SystemRegistry::global().get(ids::kThueMorse), "tm.id");
}

std::shared_ptr<const FactorMap> interval_projection() {
  auto& reg = SystemRegistry::global();
  return std::make_shared<FactorMap>(
      "ex61.pi", reg.get(ids::kInterval), reg.get(ids::kUnitInterval),
      [](const Point& x) {
        const auto& p = state_of<IntervalState>(x);
        return Point{ids::kUnitInterval, UnitIntervalState{p.y, p.steps}};
      },
      true, interval_sampler(), "(y, +-y) to y");
}

std::shared_ptr<const FactorMap> shell_projection() {
  auto& reg = SystemRegistry::global();
  return std::make_shared<FactorMap>(
      "ex62.pi", reg.get(ids::kShells), reg.get(ids::kLevels),
      [](const Point& x) { return Point{ids::kLevels, LevelState{state_of<ShellState>(x).level}}; }, true,
      shell_sampler(), "shell point to its level");
}

// --- registry --------------------------------------------------------------

struct FactorMapRegistry::Impl {
  mutable std::mutex mutex;
  std::map<std::string, std::shared_ptr<const FactorMap>> maps;
};

FactorMapRegistry::FactorMapRegistry() : impl_(std::make_shared<Impl>()) {
  const ChainMaps tm = chain_maps();
  const ChainMaps st = sturmian_chain();
  for (const auto& m : {tm.phi, tm.psi, tm.pi, thue_morse_identity(), st.phi, st.psi, st.pi,
                        interval_projection(), shell_projection()}) {
    add(m);
  }
}

FactorMapRegistry& FactorMapRegistry::global() {
  static FactorMapRegistry registry;
  return registry;
}

void FactorMapRegistry::add(std::shared_ptr<const FactorMap> map) {
  std::lock_guard lock(impl_->mutex);
  const std::string id = map->id();
  impl_->maps[id] = std::move(map);
}

std::shared_ptr<const FactorMap> FactorMapRegistry::get(const std::string& id) const {
  std::lock_guard lock(impl_->mutex);
  const auto it = impl_->maps.find(id);
  if (it == impl_->maps.end()) throw UnknownFactorMapError(id);
  return it->second;
}

bool FactorMapRegistry::contains(const std::string& id) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->maps.count(id) != 0;
}

std::vector<std::string> FactorMapRegistry::ids() const {
  std::lock_guard lock(impl_->mutex);
  std::vector<std::string> out;
  for (const auto& [id, _] : impl_->maps) out.push_back(id);
  return out;
}

}  // namespace meqlab
