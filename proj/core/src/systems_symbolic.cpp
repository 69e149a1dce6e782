// Odometer, Toeplitz, Thue-Morse, Sturmian and rotation systems.

#include <bit>
#include <cmath>
#include <limits>

#include "meqlab/errors.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {

namespace {

double dyadic_distance(const DyadicInteger& a, const DyadicInteger& b) {
  const auto k = DyadicInteger::agreeing_prefix(a, b);
  if (!k) return 0.0;
  if (*k > 1074) return std::numeric_limits<double>::denorm_min();
  return std::ldexp(1.0, -static_cast<int>(*k));
}

DyadicInteger random_dyadic(Rng& rng) {
  if (rng() % 2 == 0) {
    std::uniform_int_distribution<std::int64_t> n(-1000, 1000);
    return DyadicInteger::from_integer(n(rng));
  }
  std::uniform_int_distribution<std::size_t> pre_len(0, 6);
  std::uniform_int_distribution<std::size_t> per_len(1, 4);
  std::vector<std::uint8_t> pre(pre_len(rng));
  std::vector<std::uint8_t> per(per_len(rng));
  for (auto& d : pre) d = static_cast<std::uint8_t>(rng() & 1U);
  for (auto& d : per) d = static_cast<std::uint8_t>(rng() & 1U);
  return DyadicInteger(std::move(pre), std::move(per));
}

ToeplitzState random_toeplitz(Rng& rng) {
  const DyadicInteger address = random_dyadic(rng);
  return make_toeplitz_state(address, (rng() & 1U) ? FibreFlag::primed : FibreFlag::plain);
}

ToeplitzState parse_toeplitz(const std::string& literal) {
  const auto colon = literal.find(':');
  FibreFlag flag = FibreFlag::plain;
  if (colon != std::string::npos) {
    const std::string tag = literal.substr(colon + 1);
    if (tag == "plain") {
      flag = FibreFlag::plain;
    } else if (tag == "primed") {
      flag = FibreFlag::primed;
    } else {
      throw ParseError("unknown fibre flag '" + tag + "'");
    }
  }
  return make_toeplitz_state(DyadicInteger::parse(literal.substr(0, colon)), flag);
}

std::string format_toeplitz(const ToeplitzState& p) {
  std::string out = p.address.to_string();
  if (p.flag == FibreFlag::primed) out += ":primed";
  return out;
}

GoldenPhase random_phase(Rng& rng) {
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  std::uniform_int_distribution<std::int64_t> turns(-1000, 1000);
  const std::int64_t d = den(rng);
  std::uniform_int_distribution<std::int64_t> num(0, d - 1);
  return GoldenPhase::make(num(rng), d, turns(rng));
}

// ----------------------------------------------------------------------------

class OdometerSystem final : public System {
 public:
  OdometerSystem()
      : System(ids::kOdometer, "dyadic integers Z_2 with z -> z + 1",
               "<int> | <preperiod>|<period> (digits least significant first)", true) {}

  double diameter() const override { return 1.0; }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(odometer_add(state_of<DyadicInteger>(x), g));
  }

  double do_dist(const Point& x, const Point& y) const override {
    return dyadic_distance(state_of<DyadicInteger>(x), state_of<DyadicInteger>(y));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    // The action is an isometry.
    return std::vector<double>(static_cast<std::size_t>(hi - lo + 1), do_dist(x, y));
  }

  Point do_random_point(Rng& rng) const override { return make_point(random_dyadic(rng)); }

  Point do_parse_point(const std::string& literal) const override {
    return make_point(DyadicInteger::parse(literal));
  }

  std::string do_format_point(const Point& x) const override {
    return state_of<DyadicInteger>(x).to_string();
  }
};

class ToeplitzSystem final : public SubshiftSystem {
 public:
  ToeplitzSystem()
      : SubshiftSystem(ids::kToeplitz, "orbit closure of the Toeplitz sequence gamma over Z_2",
                       "<dyadic>[:plain|:primed]", true) {}

 protected:
  std::vector<std::uint8_t> do_coordinates(const Point& x, std::int64_t lo,
                                           std::int64_t hi) const override {
    return toeplitz_window(state_of<ToeplitzState>(x), lo, hi);
  }

  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(toeplitz_shift(state_of<ToeplitzState>(x), g));
  }

  Point do_random_point(Rng& rng) const override { return make_point(random_toeplitz(rng)); }

  Point do_parse_point(const std::string& literal) const override {
    return make_point(parse_toeplitz(literal));
  }

  std::string do_format_point(const Point& x) const override {
    return format_toeplitz(state_of<ToeplitzState>(x));
  }
};

class ThueMorseSystem final : public SubshiftSystem {
 public:
  ThueMorseSystem()
      : SubshiftSystem(ids::kThueMorse, "Thue-Morse subshift as a two-to-one cover of the Toeplitz subshift",
                       "<toeplitz point>@<bit0>", true) {}

 protected:
  std::vector<std::uint8_t> do_coordinates(const Point& x, std::int64_t lo,
                                           std::int64_t hi) const override {
    return thue_morse_window(state_of<ThueMorseState>(x), lo, hi);
  }

  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(thue_morse_shift(state_of<ThueMorseState>(x), g));
  }

  Point do_random_point(Rng& rng) const override {
    return make_point(ThueMorseState{random_toeplitz(rng), static_cast<std::uint8_t>(rng() & 1U)});
  }

  Point do_parse_point(const std::string& literal) const override {
    const auto at = literal.rfind('@');
    if (at == std::string::npos) throw ParseError("Thue-Morse point needs '@<bit0>'");
    const std::string bit = literal.substr(at + 1);
    if (bit != "0" && bit != "1") throw ParseError("bit0 must be 0 or 1");
    return make_point(
        ThueMorseState{parse_toeplitz(literal.substr(0, at)), static_cast<std::uint8_t>(bit == "1")});
  }

  std::string do_format_point(const Point& x) const override {
    const auto& p = state_of<ThueMorseState>(x);
    return format_toeplitz(p.base) + "@" + std::to_string(p.bit0);
  }
};

class SturmianSystem final : public SubshiftSystem {
 public:
  SturmianSystem()
      : SubshiftSystem(ids::kSturmian, "Sturmian subshift coding the golden rotation",
                       "<num>/<den>[+<j>a][:lower|:upper]", true) {}

 protected:
  std::vector<std::uint8_t> do_coordinates(const Point& x, std::int64_t lo,
                                           std::int64_t hi) const override {
    return sturmian_window(state_of<SturmianState>(x), lo, hi);
  }

  Point do_act(const Point& x, std::int64_t g) const override {
    const auto& p = state_of<SturmianState>(x);
    return make_point(SturmianState{p.phase.shifted(g), p.side});
  }

  Point do_random_point(Rng& rng) const override {
    if (rng() % 8 == 0) {
      std::uniform_int_distribution<std::int64_t> turns(-1000, 1000);
      return make_point(make_sturmian_state(GoldenPhase::make(0, 1, turns(rng)),
                                            (rng() & 1U) ? CodingSide::upper : CodingSide::lower));
    }
    return make_point(make_sturmian_state(random_phase(rng), CodingSide::lower));
  }

  Point do_parse_point(const std::string& literal) const override {
    const auto colon = literal.find(':');
    CodingSide side = CodingSide::lower;
    if (colon != std::string::npos) {
      const std::string tag = literal.substr(colon + 1);
      if (tag == "lower") {
        side = CodingSide::lower;
      } else if (tag == "upper") {
        side = CodingSide::upper;
      } else {
        throw ParseError("unknown coding side '" + tag + "'");
      }
    }
    return make_point(make_sturmian_state(GoldenPhase::parse(literal.substr(0, colon)), side));
  }

  std::string do_format_point(const Point& x) const override {
    const auto& p = state_of<SturmianState>(x);
    return p.phase.to_string() + (p.side == CodingSide::upper ? ":upper" : "");
  }
};

class RotationSystem final : public System {
 public:
  RotationSystem()
      : System(ids::kRotation, "R/Z rotated by the golden mean conjugate", "<num>/<den>[+<j>a]",
               false) {}

  double diameter() const override { return 0.5; }

 protected:
  Point do_act(const Point& x, std::int64_t g) const override {
    return make_point(state_of<GoldenPhase>(x).shifted(g));
  }

  double do_dist(const Point& x, const Point& y) const override {
    return circle_distance(state_of<GoldenPhase>(x), state_of<GoldenPhase>(y));
  }

  std::vector<double> do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                         std::int64_t hi) const override {
    return std::vector<double>(static_cast<std::size_t>(hi - lo + 1), do_dist(x, y));
  }

  Point do_random_point(Rng& rng) const override { return make_point(random_phase(rng)); }

  Point do_parse_point(const std::string& literal) const override {
    return make_point(GoldenPhase::parse(literal));
  }

  std::string do_format_point(const Point& x) const override {
    return state_of<GoldenPhase>(x).to_string();
  }
};

}  // namespace

DyadicInteger odometer_add(const DyadicInteger& z, std::int64_t g) { return g == 0 ? z : z + g; }

ToeplitzState make_toeplitz_state(DyadicInteger address, FibreFlag flag) {
  if (!address.is_integer()) return ToeplitzState{std::move(address), FibreFlag::unique};
  if (flag == FibreFlag::unique) flag = FibreFlag::plain;
  return ToeplitzState{std::move(address), flag};
}

ToeplitzState toeplitz_shift(const ToeplitzState& p, std::int64_t g) {
  return ToeplitzState{odometer_add(p.address, g), p.flag};
}

std::uint8_t toeplitz_eval(const ToeplitzState& p, std::int64_t n) {
  const std::uint64_t low = p.address.low_bits() + static_cast<std::uint64_t>(n);
  if (low != 0) return static_cast<std::uint8_t>(std::countr_zero(low) % 2 == 0);
  const DyadicInteger z = p.address + n;
  const auto v = z.valuation();
  if (!v) return p.flag == FibreFlag::primed ? 1 : 0;
  return static_cast<std::uint8_t>(*v % 2 == 0);
}

std::vector<std::uint8_t> toeplitz_window(const ToeplitzState& p, std::int64_t lo, std::int64_t hi) {
  std::vector<std::uint8_t> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(toeplitz_eval(p, n));
  return out;
}

std::vector<std::uint8_t> thue_morse_window(const ThueMorseState& p, std::int64_t lo,
                                            std::int64_t hi) {
  if (hi < lo) return {};
  const std::int64_t first = std::min<std::int64_t>(lo, 0);
  const std::int64_t last = std::max<std::int64_t>(hi, 0);
  const auto y = toeplitz_window(p.base, first, last - 1);  // y_k for k = first..last-1
  std::uint8_t x = p.bit0;
  for (std::int64_t k = first; k < 0; ++k) x ^= y[static_cast<std::size_t>(k - first)];
  // x is now x_first.
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = first; n <= last; ++n) {
    if (n >= lo && n <= hi) out.push_back(x);
    if (n < last) x ^= y[static_cast<std::size_t>(n - first)];
  }
  return out;
}

std::uint8_t thue_morse_eval(const ThueMorseState& p, std::int64_t n) {
  return thue_morse_window(p, n, n).front();
}

ThueMorseState thue_morse_shift(const ThueMorseState& p, std::int64_t g) {
  if (g == 0) return p;
  return ThueMorseState{toeplitz_shift(p.base, g), thue_morse_eval(p, g)};
}

ThueMorseState thue_morse_negation(const ThueMorseState& p) {
  return ThueMorseState{p.base, static_cast<std::uint8_t>(p.bit0 ^ 1U)};
}

std::vector<std::uint8_t> thue_morse_block_code(const std::vector<std::uint8_t>& x) {
  std::vector<std::uint8_t> y;
  if (x.size() < 2) return y;
  y.reserve(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) y.push_back(static_cast<std::uint8_t>(x[i] != x[i + 1]));
  return y;
}

SturmianState make_sturmian_state(GoldenPhase phase, CodingSide side) {
  if (phase.num != 0) side = CodingSide::lower;
  return SturmianState{phase, side};
}

std::vector<std::uint8_t> sturmian_window(const SturmianState& p, std::int64_t lo, std::int64_t hi) {
  std::vector<std::uint8_t> out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  const GoldenPhase& ph = p.phase;
  // Lower coding: floor(v_{m+1}) - floor(v_m); upper coding uses ceilings,
  // ceil(v) = -floor(-v).
  auto level = [&](std::int64_t m) {
    if (p.side == CodingSide::lower) return golden_floor(ph.num, ph.den, m);
    return -golden_floor(-ph.num, ph.den, -m);
  };
  std::int64_t prev = level(ph.turns + lo);
  for (std::int64_t n = lo; n <= hi; ++n) {
    const std::int64_t next = level(ph.turns + n + 1);
    out.push_back(static_cast<std::uint8_t>(next - prev));
    prev = next;
  }
  return out;
}

std::shared_ptr<const System> make_odometer_system() { return std::make_shared<OdometerSystem>(); }
std::shared_ptr<const System> make_toeplitz_system() { return std::make_shared<ToeplitzSystem>(); }
std::shared_ptr<const System> make_thue_morse_system() {
  return std::make_shared<ThueMorseSystem>();
}
std::shared_ptr<const System> make_sturmian_system() { return std::make_shared<SturmianSystem>(); }
std::shared_ptr<const System> make_rotation_system() { return std::make_shared<RotationSystem>(); }

}  // namespace meqlab
