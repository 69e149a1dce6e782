#pragma once

#include <memory>
#include <string>
#include <vector>

#include "meqlab/factor_map.hpp"

namespace meqlab {

struct ChainMaps {
  std::shared_ptr<const FactorMap> phi;
  std::shared_ptr<const FactorMap> psi;
  std::shared_ptr<const FactorMap> pi;  // psi o phi
};

/// Thue-Morse -> Toeplitz (block code) -> odometer (address).
ChainMaps chain_maps();
/// Sturmian -> rotation (phase) -> one point.
ChainMaps sturmian_chain();

/// Identity on the Thue-Morse system.
std::shared_ptr<const FactorMap> thue_morse_identity();
/// (y, branch) -> y from the interval system onto [0, 1].
std::shared_ptr<const FactorMap> interval_projection();
/// Shell point -> its level.
std::shared_ptr<const FactorMap> shell_projection();

/// The four points of the Thue-Morse fibre over an integer address:
/// (plain, b), (plain, not b), (primed, b), (primed, not b).
std::vector<Point> thue_morse_fibre(std::int64_t address, std::uint8_t bit0 = 0);

/// Shift exponent s * 4^m used by the Thue-Morse and Toeplitz sequence
/// samplers, with the direction chosen so the marked coordinate moves away.
std::int64_t fibre_shift(std::int64_t address, int m);

/// Fibonacci number F_n (F_1 = F_2 = 1).
std::int64_t fibonacci(int n);

class FactorMapRegistry {
 public:
  static FactorMapRegistry& global();

  void add(std::shared_ptr<const FactorMap> map);
  /// Throws UnknownFactorMapError.
  std::shared_ptr<const FactorMap> get(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;

 private:
  FactorMapRegistry();
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace meqlab
