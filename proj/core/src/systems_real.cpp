// Iterated real maps: Example-style interval and shell systems, their base
// spaces, and the one-point system.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "meqlab/errors.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ParseError("bad number '" + text + "'");
  return v;
}

/// Splits "<head>@<steps>" and returns the step count (0 if absent).
std::int64_t split_steps(std::string& text) {
  const auto at = text.rfind('@');
  if (at == std::string::npos) return 0;
  const std::string tail = text.substr(at + 1);
  text.resize(at);
  try {
    std::size_t used = 0;
    const std::int64_t steps = std::stoll(tail, &used);
    if (used != tail.size()) throw ParseError("bad step count '" + tail + "'");
    return steps;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad step count '" + tail + "'");
  }
}

std::uint32_t parse_level(const std::string& text) {
  if (text == "inf") return kLimitLevel;
  try {
    std::size_t used = 0;
    const long long k = std::stoll(text, &used);
    if (used != text.size() || k < 1 || k > 1'000'000'000) throw ParseError("bad level '" + text + "'");
    return static_cast<std::uint32_t>(k);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad level '" + text + "'");
  }
}

std::string format_level(std::uint32_t level) {
  return level == kLimitLevel ? "inf" : std::to_string(level);
}

double level_height(std::uint32_t level) { return level == kLimitLevel ? 0.0 : 1.0 / level; }

/// Values f^s(base) for s = s0..s1, each computed along the same path as a
/// direct evaluation from `base`, so results do not depend on the range.
template <class Step, class Inverse>
std::vector<double> lazy_orbit(double base, std::int64_t s0, std::int64_t s1, Step step,
                               Inverse inverse) {
  std::vector<double> out(static_cast<std::size_t>(s1 - s0 + 1));
  auto at = [&](std::int64_t s) -> double& { return out[static_cast<std::size_t>(s - s0)]; };
  double cur = base;
  std::int64_t s = 0;
  for (; s < s0; ++s) cur = step(cur);
  for (; s > s1; --s) cur = inverse(cur);
  const double pivot = cur;
  const std::int64_t pivot_s = s;
  for (; s <= s1; ++s) {
    at(s) = cur;
    if (s < s1) cur = step(cur);
  }
  cur = pivot;
  for (s = pivot_s - 1; s >= s0; --s) {
    cur = inverse(cur);
    at(s) = cur;
  }
  return out;
}

std::vector<double> interval_positions(double y, std::int64_t steps, std::int64_t lo,
                                       std::int64_t hi) {
  return lazy_orbit(y, steps + lo, steps + hi, interval_step, interval_step_inverse);
}

// ----------------------------------------------------------------------------

class IntervalSystem final : public System {
 public:
  IntervalSystem()
      : System(ids::kInterval, "two copies {(y,y)} u {(y,-y)} of [0,1] in R^2 moved by S",
               "<y>:hat|check[@<steps>]", false) {}

  double diameter() const override { return 2.0 * std::sqrt(2.0); }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(interval_map(state_of<IntervalState>(x), g));
  }

  double do_dist(const Point& x, const Point& y) const override {
    const auto& p = state_of<IntervalState>(x);
    const auto& q = state_of<IntervalState>(y);
    return planar_distance(interval_position(p), p.branch, interval_position(q), q.branch);
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    const auto& p = state_of<IntervalState>(x);
    const auto& q = state_of<IntervalState>(y);
    const auto a = interval_positions(p.y, p.steps, lo, hi);
    const auto b = interval_positions(q.y, q.steps, lo, hi);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = planar_distance(a[i], p.branch, b[i], q.branch);
    return out;
  }

  Point do_random_point(Rng& rng) const override {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double y = unit(rng);
    const Branch branch = (rng() & 1U) ? Branch::check : Branch::hat;
    return make_point(interval_map(IntervalState{y, branch, 0}, 0));
  }

  Point do_parse_point(const std::string& literal) const override {
    std::string text = literal;
    const std::int64_t steps = split_steps(text);
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("interval point needs ':hat' or ':check'");
    const std::string tag = text.substr(colon + 1);
    Branch branch;
    if (tag == "hat") {
      branch = Branch::hat;
    } else if (tag == "check") {
      branch = Branch::check;
    } else {
      throw ParseError("unknown interval branch '" + tag + "'");
    }
    const double y = parse_double(text.substr(0, colon));
    if (y < 0.0 || y > 1.0) throw ParseError("interval coordinate must lie in [0,1]");
    return make_point(interval_map(IntervalState{y, branch, 0}, steps));
  }

  std::string do_format_point(const Point& x) const override {
    const auto& p = state_of<IntervalState>(x);
    std::string out = format_double(p.y) + (p.branch == Branch::hat ? ":hat" : ":check");
    if (p.steps != 0) out += "@" + std::to_string(p.steps);
    return out;
  }

 private:
  static double planar_distance(double y1, Branch b1, double y2, Branch b2) {
    const double dx = y1 - y2;
    const double dy = (b1 == Branch::hat ? y1 : -y1) - (b2 == Branch::hat ? y2 : -y2);
    return std::sqrt(dx * dx + dy * dy);
  }
};

class UnitIntervalSystem final : public System {
 public:
  UnitIntervalSystem()
      : System(ids::kUnitInterval, "[0,1] moved by S (base of the interval system)",
               "<y>[@<steps>]", false) {}

  double diameter() const override { return 1.0; }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override {
    const auto& p = state_of<UnitIntervalState>(x);
    if (interval_piece(p.y).fixed) return x;
    return make_point(UnitIntervalState{p.y, p.steps + g});
  }

  double do_dist(const Point& x, const Point& y) const override {
    const auto& p = state_of<UnitIntervalState>(x);
    const auto& q = state_of<UnitIntervalState>(y);
    return std::fabs(interval_power(p.y, p.steps) - interval_power(q.y, q.steps));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    const auto& p = state_of<UnitIntervalState>(x);
    const auto& q = state_of<UnitIntervalState>(y);
    const auto a = interval_positions(p.y, p.steps, lo, hi);
    const auto b = interval_positions(q.y, q.steps, lo, hi);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::fabs(a[i] - b[i]);
    return out;
  }

  Point do_random_point(Rng& rng) const override {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return make_point(UnitIntervalState{unit(rng), 0});
  }

  Point do_parse_point(const std::string& literal) const override {
    std::string text = literal;
    const std::int64_t steps = split_steps(text);
    const double y = parse_double(text);
    if (y < 0.0 || y > 1.0) throw ParseError("unit interval coordinate must lie in [0,1]");
    return make_point(UnitIntervalState{y, interval_piece(y).fixed ? 0 : steps});
  }

  std::string do_format_point(const Point& x) const override {
    const auto& p = state_of<UnitIntervalState>(x);
    std::string out = format_double(p.y);
    if (p.steps != 0) out += "@" + std::to_string(p.steps);
    return out;
  }
};

// ----------------------------------------------------------------------------

std::vector<double> shell_angles(const ShellState& p, std::int64_t lo, std::int64_t hi) {
  return lazy_orbit(
      p.angle, p.steps + lo, p.steps + hi, [&](double t) { return shell_step(t, p.level); },
      [&](double t) { return shell_step_inverse(t, p.level); });
}

double euclid3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

class ShellSystem final : public System {
 public:
  ShellSystem()
      : System(ids::kShells, "circles C_k at height 1/k and the fixed limit circle C in R^3",
               "<k|inf>:<angle>[@<steps>]", false) {}

  double diameter() const override { return std::sqrt(5.0); }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(shell_map(state_of<ShellState>(x), g));
  }

  double do_dist(const Point& x, const Point& y) const override {
    const auto& p = state_of<ShellState>(x);
    const auto& q = state_of<ShellState>(y);
    return euclid3(shell_embedding(p.level, shell_angle(p)), shell_embedding(q.level, shell_angle(q)));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    const auto& p = state_of<ShellState>(x);
    const auto& q = state_of<ShellState>(y);
    const auto a = shell_angles(p, lo, hi);
    const auto b = shell_angles(q, lo, hi);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = euclid3(shell_embedding(p.level, a[i]), shell_embedding(q.level, b[i]));
    }
    return out;
  }

  Point do_random_point(Rng& rng) const override {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_int_distribution<std::uint32_t> level(0, 16);
    return make_point(shell_map(ShellState{level(rng), angle(rng), 0}, 0));
  }

  Point do_parse_point(const std::string& literal) const override {
    std::string text = literal;
    const std::int64_t steps = split_steps(text);
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("shell point needs '<k|inf>:<angle>'");
    const std::uint32_t level = parse_level(text.substr(0, colon));
    double t = parse_double(text.substr(colon + 1));
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    return make_point(shell_map(ShellState{level, t, 0}, steps));
  }

  std::string do_format_point(const Point& x) const override {
    const auto& p = state_of<ShellState>(x);
    std::string out = format_level(p.level) + ":" + format_double(p.angle);
    if (p.steps != 0) out += "@" + std::to_string(p.steps);
    return out;
  }
};

class LevelSystem final : public System {
 public:
  LevelSystem()
      : System(ids::kLevels, "{0} u {1/k} with the trivial action", "<k|inf>", false) {}

  double diameter() const override { return 1.0; }

 protected:
  Point do_act(const Point& x, std::int64_t) const override { return x; }

  double do_dist(const Point& x, const Point& y) const override {
    return std::fabs(level_height(state_of<LevelState>(x).level) -
                     level_height(state_of<LevelState>(y).level));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    return std::vector<double>(static_cast<std::size_t>(hi - lo + 1), do_dist(x, y));
  }

  Point do_random_point(Rng& rng) const override {
    std::uniform_int_distribution<std::uint32_t> level(0, 16);
    return make_point(LevelState{level(rng)});
  }

  Point do_parse_point(const std::string& literal) const override {
    return make_point(LevelState{parse_level(literal)});
  }

  std::string do_format_point(const Point& x) const override {
    return format_level(state_of<LevelState>(x).level);
  }
};

class PointSystem final : public System {
 public:
  PointSystem() : System(ids::kPoint, "the one-point system", "*", true) {}

  double diameter() const override { return 0.0; }

 protected:
  Point do_act(const Point& x, std::int64_t) const override { return x; }
  double do_dist(const Point&, const Point&) const override { return 0.0; }
  Point do_random_point(Rng&) const override { return make_point(SinglePoint{}); }
  Point do_parse_point(const std::string& literal) const override {
    if (literal != "*") throw ParseError("the one-point system only has '*'");
    return make_point(SinglePoint{});
  }
  std::string do_format_point(const Point&) const override { return "*"; }
};

}  // namespace

IntervalPiece interval_piece(double y) {
  if (y <= 0.0 || y >= 1.0) return {y, y, true};
  auto n = static_cast<std::int64_t>(std::floor(1.0 / y));
  if (n < 1) n = 1;
  while (n > 1 && y > 1.0 / static_cast<double>(n)) --n;
  while (y < 1.0 / static_cast<double>(n + 1)) ++n;
  const double a = 1.0 / static_cast<double>(n + 1);
  const double b = 1.0 / static_cast<double>(n);
  if (y == a || y == b) return {y, y, true};
  return {a, b, false};
}

double interval_step(double y) {
  const IntervalPiece piece = interval_piece(y);
  if (piece.fixed) return y;
  const double s = y - (y - piece.a) * (piece.b - y);
  return std::clamp(s, piece.a, piece.b);
}

double interval_step_inverse(double s) {
  const IntervalPiece piece = interval_piece(s);
  if (piece.fixed) return s;
  // S(a + u) = a + u(1 - w) + u^2 with w = b - a.
  const double w = piece.b - piece.a;
  const double c = s - piece.a;
  const double u = 2.0 * c / ((1.0 - w) + std::sqrt((1.0 - w) * (1.0 - w) + 4.0 * c));
  return std::clamp(piece.a + u, piece.a, piece.b);
}

double interval_power(double y, std::int64_t g) {
  for (; g > 0; --g) {
    if (interval_piece(y).fixed) break;
    y = interval_step(y);
  }
  for (; g < 0; ++g) {
    if (interval_piece(y).fixed) break;
    y = interval_step_inverse(y);
  }
  return y;
}

IntervalState interval_map(const IntervalState& p, std::int64_t g) {
  if (interval_piece(p.y).fixed) return IntervalState{p.y, p.branch, 0};
  return IntervalState{p.y, p.branch, p.steps + g};
}

double interval_position(const IntervalState& p) { return interval_power(p.y, p.steps); }

double shell_step(double angle, std::uint32_t level) {
  if (level == kLimitLevel || angle == 0.0) return angle;
  const double s = std::sin(0.5 * angle);
  const double next = angle + 2.0 * s * s / static_cast<double>(level);
  return next >= kTwoPi ? 0.0 : next;
}

double shell_step_inverse(double target, std::uint32_t level) {
  if (level == kLimitLevel || target == 0.0) return target;
  const double eps = 1.0 / static_cast<double>(level);
  auto f = [&](double t) {
    const double s = std::sin(0.5 * t);
    return t + 2.0 * eps * s * s - target;
  };
  // f is nondecreasing with f(target - 2 eps) <= 0 <= f(target).
  double lo = std::max(0.0, target - 2.0 * eps);
  double hi = target;
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double v = f(t);
    if (v == 0.0) return t;
    if (v < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double slope = 1.0 + eps * std::sin(t);
    double next = slope > 0.0 ? t - v / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

ShellState shell_map(const ShellState& p, std::int64_t g) {
  if (p.level == kLimitLevel || p.angle == 0.0) return ShellState{p.level, p.angle, 0};
  return ShellState{p.level, p.angle, p.steps + g};
}

double shell_angle(const ShellState& p) {
  double t = p.angle;
  for (std::int64_t g = p.steps; g > 0 && t != 0.0; --g) t = shell_step(t, p.level);
  for (std::int64_t g = p.steps; g < 0 && t != 0.0; ++g) t = shell_step_inverse(t, p.level);
  return t;
}

std::array<double, 3> shell_embedding(std::uint32_t level, double angle) {
  const double s = std::sin(0.5 * angle);
  return {std::sin(angle), 2.0 * s * s, level_height(level)};
}

std::shared_ptr<const System> make_interval_system() { return std::make_shared<IntervalSystem>(); }
std::shared_ptr<const System> make_unit_interval_system() {
  return std::make_shared<UnitIntervalSystem>();
}
std::shared_ptr<const System> make_shell_system() { return std::make_shared<ShellSystem>(); }
std::shared_ptr<const System> make_level_system() { return std::make_shared<LevelSystem>(); }
std::shared_ptr<const System> make_point_system() { return std::make_shared<PointSystem>(); }

}  // namespace meqlab
