#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "meqlab/system.hpp"

namespace meqlab {

namespace ids {
inline constexpr const char* kInterval = "interval61";
inline constexpr const char* kUnitInterval = "unit-interval";
inline constexpr const char* kShells = "shells62";
inline constexpr const char* kLevels = "levels";
inline constexpr const char* kOdometer = "odometer";
inline constexpr const char* kToeplitz = "toeplitz";
inline constexpr const char* kThueMorse = "thuemorse";
inline constexpr const char* kSturmian = "sturmian";
inline constexpr const char* kRotation = "rotation";
inline constexpr const char* kPoint = "point";
}  // namespace ids

// ---------------------------------------------------------------------------
// Interval homeomorphism S of [0,1]. On [a, b] = [1/(n+1), 1/n] it is
// S(y) = y - (y - a)(b - y); it fixes exactly N = {1/n} u {0} and moves every
// other point to the left.

struct IntervalPiece {
  double a = 0.0;
  double b = 0.0;
  bool fixed = true;
};

IntervalPiece interval_piece(double y);
double interval_step(double y);
double interval_step_inverse(double y);
double interval_power(double y, std::int64_t g);

/// Returns g.p; the branch is preserved and fixed points are left unchanged.
IntervalState interval_map(const IntervalState& p, std::int64_t g);
/// Current y-coordinate of p.
double interval_position(const IntervalState& p);

std::shared_ptr<const System> make_interval_system();
std::shared_ptr<const System> make_unit_interval_system();

// ---------------------------------------------------------------------------
// Shells C_k (height 1/k) and the limit circle C (height 0). On C_k the angle
// moves by t -> t + (1/k)(1 - cos t); C is fixed pointwise.

double shell_step(double angle, std::uint32_t level);
double shell_step_inverse(double angle, std::uint32_t level);
ShellState shell_map(const ShellState& p, std::int64_t g);
double shell_angle(const ShellState& p);
/// Coordinates in R^3 of the point at the given angle on the given level.
std::array<double, 3> shell_embedding(std::uint32_t level, double angle);

std::shared_ptr<const System> make_shell_system();
std::shared_ptr<const System> make_level_system();

// ---------------------------------------------------------------------------
// Dyadic odometer, Toeplitz subshift over it, Thue-Morse subshift over that.

DyadicInteger odometer_add(const DyadicInteger& z, std::int64_t g);

/// 1 iff the 2-adic valuation of address + n is finite and even; at
/// address + n = 0 the fibre flag decides (plain 0, primed 1).
std::uint8_t toeplitz_eval(const ToeplitzState& p, std::int64_t n);
std::vector<std::uint8_t> toeplitz_window(const ToeplitzState& p, std::int64_t lo, std::int64_t hi);
/// Canonical state: flag `unique` exactly when the address is not in Z.
ToeplitzState make_toeplitz_state(DyadicInteger address, FibreFlag flag);
ToeplitzState toeplitz_shift(const ToeplitzState& p, std::int64_t g);

/// Coordinates follow x_{n+1} = x_n XOR y_n with y the base Toeplitz sequence.
std::uint8_t thue_morse_eval(const ThueMorseState& p, std::int64_t n);
std::vector<std::uint8_t> thue_morse_window(const ThueMorseState& p, std::int64_t lo, std::int64_t hi);
ThueMorseState thue_morse_shift(const ThueMorseState& p, std::int64_t g);
/// Element-wise negation x -> x-bar.
ThueMorseState thue_morse_negation(const ThueMorseState& p);
/// y_n = [x_n != x_{n+1}]; the block code onto the Toeplitz subshift.
std::vector<std::uint8_t> thue_morse_block_code(const std::vector<std::uint8_t>& x);

std::shared_ptr<const System> make_odometer_system();
std::shared_ptr<const System> make_toeplitz_system();
std::shared_ptr<const System> make_thue_morse_system();

// ---------------------------------------------------------------------------
// Golden rotation and its Sturmian coding against [0, 1-alpha), [1-alpha, 1).

/// Canonical state: the coding side only matters on the orbit of 0.
SturmianState make_sturmian_state(GoldenPhase phase, CodingSide side);
std::vector<std::uint8_t> sturmian_window(const SturmianState& p, std::int64_t lo, std::int64_t hi);

std::shared_ptr<const System> make_sturmian_system();
std::shared_ptr<const System> make_rotation_system();

std::shared_ptr<const System> make_point_system();

}  // namespace meqlab
