#pragma once

#include <memory>
#include <string>
#include <vector>

#include "meqlab/system.hpp"

namespace meqlab {

/// Process-wide table of systems keyed by id. The built-in example systems
/// are registered on first use; lookups are thread-safe.
class SystemRegistry {
 public:
  static SystemRegistry& global();

  void add(std::shared_ptr<const System> system);
  /// Throws UnknownSystemError.
  std::shared_ptr<const System> get(const std::string& id) const;
  bool contains(const std::string& id) const;
  /// Sorted ids.
  std::vector<std::string> ids() const;

 private:
  SystemRegistry();
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// Shorthand for SystemRegistry::global().get(id).
const System& system_by_id(const std::string& id);

/// The system owning x; x and y must share it (CrossSystemError otherwise).
const System& common_system(const Point& x, const Point& y);

}  // namespace meqlab
