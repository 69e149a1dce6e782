#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "meqlab/dyadic.hpp"
#include "meqlab/golden.hpp"

namespace meqlab {

// Payloads of the registered systems. Iterated real maps store a base state
// plus a step count, so acting is exact (steps += g) and evaluation of the
// actual position is lazy.

enum class Branch : std::uint8_t { hat, check };

/// (y, y) or (y, -y) in R^2, pushed forward `steps` times by the interval map.
struct IntervalState {
  double y = 0.0;
  Branch branch = Branch::hat;
  std::int64_t steps = 0;
  bool operator==(const IntervalState&) const = default;
};

/// Base point of the unit interval, pushed forward `steps` times.
struct UnitIntervalState {
  double y = 0.0;
  std::int64_t steps = 0;
  bool operator==(const UnitIntervalState&) const = default;
};

/// Shell index: k >= 1 for C_k, 0 for the limit circle C.
inline constexpr std::uint32_t kLimitLevel = 0;

struct ShellState {
  std::uint32_t level = 1;
  double angle = 0.0;  // in [0, 2pi), 0 is the fixed point c_k
  std::int64_t steps = 0;
  bool operator==(const ShellState&) const = default;
};

struct LevelState {
  std::uint32_t level = kLimitLevel;
  bool operator==(const LevelState&) const = default;
};

/// plain/primed distinguish gamma and gamma' type points over integer
/// addresses; every other address has a unique preimage.
enum class FibreFlag : std::uint8_t { plain, primed, unique };

struct ToeplitzState {
  DyadicInteger address;
  FibreFlag flag = FibreFlag::plain;
  bool operator==(const ToeplitzState&) const = default;
};

struct ThueMorseState {
  ToeplitzState base;
  std::uint8_t bit0 = 0;
  bool operator==(const ThueMorseState&) const = default;
};

/// lower (left-closed partition) or upper (right-closed) mechanical coding.
enum class CodingSide : std::uint8_t { lower, upper };

struct SturmianState {
  GoldenPhase phase;
  CodingSide side = CodingSide::lower;
  bool operator==(const SturmianState&) const = default;
};

struct SinglePoint {
  bool operator==(const SinglePoint&) const = default;
};

using Payload = std::variant<SinglePoint, IntervalState, UnitIntervalState, ShellState, LevelState,
                             DyadicInteger, ToeplitzState, ThueMorseState, GoldenPhase,
                             SturmianState>;

/// A point of a registered system: owning system id plus its exact state.
struct Point {
  std::string system;
  Payload payload;

  bool operator==(const Point&) const = default;
};

template <class State>
const State& state_of(const Point& p) {
  return std::get<State>(p.payload);
}

}  // namespace meqlab
