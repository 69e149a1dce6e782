#include "meqlab/registry.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "meqlab/errors.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {

struct SystemRegistry::Impl {
  mutable std::mutex mutex;
  std::map<std::string, std::shared_ptr<const System>> systems;
};

SystemRegistry::SystemRegistry() : impl_(std::make_shared<Impl>()) {
  for (auto make : {make_interval_system, make_unit_interval_system, make_shell_system,
                    make_level_system, make_odometer_system, make_toeplitz_system,
                    make_thue_morse_system, make_sturmian_system, make_rotation_system,
                    make_point_system}) {
    add(make());
  }
}

SystemRegistry& SystemRegistry::global() {
  static SystemRegistry registry;
  return registry;
}

void SystemRegistry::add(std::shared_ptr<const System> system) {
  std::lock_guard lock(impl_->mutex);
  const std::string id = system->id();
  impl_->systems[id] = std::move(system);
}

std::shared_ptr<const System> SystemRegistry::get(const std::string& id) const {
  std::lock_guard lock(impl_->mutex);
  const auto it = impl_->systems.find(id);
  if (it == impl_->systems.end()) throw UnknownSystemError(id);
  return it->second;
}

bool SystemRegistry::contains(const std::string& id) const {
  std::lock_guard lock(impl_->mutex);
  return impl_->systems.count(id) != 0;
}

std::vector<std::string> SystemRegistry::ids() const {
  std::lock_guard lock(impl_->mutex);
  std::vector<std::string> out;
  for (const auto& [id, _] : impl_->systems) out.push_back(id);
  return out;
}

const System& system_by_id(const std::string& id) { return *SystemRegistry::global().get(id); }

const System& common_system(const Point& x, const Point& y) {
  if (x.system != y.system) throw CrossSystemError(x.system, y.system);
  return system_by_id(x.system);
}

}  // namespace meqlab
