#include "scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "meqlab/chains.hpp"
#include "meqlab/errors.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/systems.hpp"

namespace meqlab::scenario {

std::string to_string(Operation op) {
  switch (op) {
    case Operation::estimate: return "estimate";
    case Operation::classify: return "classify";
    case Operation::test_M: return "test-M";
    case Operation::test_meq: return "test-meq";
    case Operation::verify_decomposition: return "verify-decomposition";
    case Operation::language_check: return "language-check";
  }
  return "?";
}

FolnerSchedule ScheduleSpec::build() const { return dyadic_schedule(min_exponent, max_exponent, family); }

bool Scenario::needs_seed() const {
  return operation == Operation::classify || operation == Operation::test_M ||
         operation == Operation::test_meq || operation == Operation::verify_decomposition ||
         samples > 0;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Mark& mark, const std::string& what) const {
    std::ostringstream os;
    os << origin_;
    if (!mark.is_null()) os << ": line " << mark.line + 1 << ", column " << mark.column + 1;
    os << ": " << what;
    throw ParseError(os.str());
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node.Mark(), "'" + key + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node.Mark(), "bad value '" + node.Scalar() + "' for '" + key + "'");
    }
  }

  Scenario scenario(const YAML::Node& node) const {
    if (!node.IsMap()) fail(node.Mark(), "a scenario must be a mapping");
    static const std::set<std::string> known{
        "name",    "operation",  "system",     "factor_map", "phi",     "psi",  "point",
        "pairs",   "samples",    "kinds",      "eps",        "schedule", "tolerances",
        "seed",    "output",     "max_length", "expect"};
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!known.count(key)) fail(kv.first.Mark(), "unknown key '" + key + "'");
    }

    Scenario s;
    if (!node["name"]) fail(node.Mark(), "scenario needs a 'name'");
    s.name = scalar<std::string>(node["name"], "name");
    if (!node["operation"]) fail(node.Mark(), "scenario '" + s.name + "' needs an 'operation'");
    s.operation = operation(node["operation"]);
    s.output = s.name;

    if (auto n = node["system"]) s.system = scalar<std::string>(n, "system");
    if (auto n = node["factor_map"]) s.factor_map = scalar<std::string>(n, "factor_map");
    if (auto n = node["phi"]) s.phi = scalar<std::string>(n, "phi");
    if (auto n = node["psi"]) s.psi = scalar<std::string>(n, "psi");
    if (auto n = node["point"]) s.point = scalar<std::string>(n, "point");
    if (auto n = node["max_length"]) s.max_length = scalar<std::size_t>(n, "max_length");
    if (auto n = node["samples"]) s.samples = scalar<std::size_t>(n, "samples");
    if (auto n = node["eps"]) s.density_eps = scalar<double>(n, "eps");
    if (auto n = node["seed"]) s.seed = scalar<std::uint64_t>(n, "seed");
    if (auto n = node["output"]) s.output = scalar<std::string>(n, "output");
    if (auto n = node["schedule"]) s.schedule = schedule(n);
    if (auto n = node["tolerances"]) s.tolerances = tolerances(n);
    if (auto n = node["kinds"]) s.kinds = kinds(n);
    if (auto n = node["expect"]) {
      if (!n.IsMap()) fail(n.Mark(), "'expect' must map flag names to booleans");
      for (const auto& kv : n) s.expect[kv.first.as<std::string>()] = scalar<bool>(kv.second, "expect");
    }

    resolve(node, s);
    if (auto n = node["pairs"]) s.pairs = pairs(n, s);
    if (s.operation == Operation::estimate && s.pairs.empty() && s.samples == 0) {
      fail(node.Mark(), "estimate scenario '" + s.name + "' has neither pairs nor samples");
    }
    if (s.kinds.empty()) {
      s.kinds = {EstimateKind::check, EstimateKind::hat, EstimateKind::besicovitch, EstimateKind::weyl};
    }
    if (s.needs_seed() && !s.seed) fail(node.Mark(), "scenario '" + s.name + "' samples and needs a 'seed'");
    return s;
  }

 private:
  Operation operation(const YAML::Node& n) const {
    static const std::map<std::string, Operation> ops{
        {"estimate", Operation::estimate},
        {"classify", Operation::classify},
        {"test-M", Operation::test_M},
        {"test-meq", Operation::test_meq},
        {"verify-decomposition", Operation::verify_decomposition},
        {"language-check", Operation::language_check}};
    const auto text = scalar<std::string>(n, "operation");
    const auto it = ops.find(text);
    if (it == ops.end()) fail(n.Mark(), "unknown operation '" + text + "'");
    return it->second;
  }

  ScheduleSpec schedule(const YAML::Node& n) const {
    if (!n.IsMap()) fail(n.Mark(), "'schedule' must be a mapping");
    ScheduleSpec s;
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (key == "max_exponent") {
        s.max_exponent = scalar<int>(kv.second, key);
      } else if (key == "min_exponent") {
        s.min_exponent = scalar<int>(kv.second, key);
      } else if (key == "family") {
        const auto text = scalar<std::string>(kv.second, key);
        try {
          s.family = parse_window_family(text);
        } catch (const Error& e) {
          fail(kv.second.Mark(), e.what());
        }
      } else {
        fail(kv.first.Mark(), "unknown schedule key '" + key + "'");
      }
    }
    try {
      (void)s.build();
    } catch (const Error& e) {
      fail(n.Mark(), e.what());
    }
    return s;
  }

  Tolerances tolerances(const YAML::Node& n) const {
    if (!n.IsMap()) fail(n.Mark(), "'tolerances' must be a mapping");
    Tolerances t;
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      if (key == "zero") {
        t.zero_tol = scalar<double>(kv.second, key);
      } else if (key == "sep") {
        t.sep_tol = scalar<double>(kv.second, key);
      } else {
        fail(kv.first.Mark(), "unknown tolerance '" + key + "' (expected zero, sep)");
      }
    }
    try {
      t.validate();
    } catch (const Error& e) {
      fail(n.Mark(), e.what());
    }
    return t;
  }

  std::vector<EstimateKind> kinds(const YAML::Node& n) const {
    static const std::map<std::string, EstimateKind> names{
        {"check", EstimateKind::check},
        {"hat", EstimateKind::hat},
        {"besicovitch", EstimateKind::besicovitch},
        {"weyl", EstimateKind::weyl},
        {"banach_density", EstimateKind::banach_density}};
    if (!n.IsSequence()) fail(n.Mark(), "'kinds' must be a list");
    std::vector<EstimateKind> out;
    for (const auto& k : n) {
      const auto text = scalar<std::string>(k, "kinds");
      const auto it = names.find(text);
      if (it == names.end()) fail(k.Mark(), "unknown estimate kind '" + text + "'");
      out.push_back(it->second);
    }
    return out;
  }

  void need(const YAML::Node& node, const std::string& value, const char* key, const Scenario& s) const {
    if (value.empty()) fail(node.Mark(), to_string(s.operation) + " scenario '" + s.name + "' needs '" + key + "'");
  }

  void require_map(const YAML::Node& node, const char* key, const std::string& id) const {
    if (!FactorMapRegistry::global().contains(id)) {
      fail(node[key] ? node[key].Mark() : node.Mark(), "unknown factor map id '" + id + "'");
    }
  }

  void resolve(const YAML::Node& node, Scenario& s) const {
    auto& maps = FactorMapRegistry::global();
    switch (s.operation) {
      case Operation::estimate:
        if (s.system.empty() && !s.factor_map.empty()) {
          require_map(node, "factor_map", s.factor_map);
          s.system = maps.get(s.factor_map)->source().id();
        }
        need(node, s.system, "system", s);
        if (s.samples > 0) {
          need(node, s.factor_map, "factor_map", s);
          require_map(node, "factor_map", s.factor_map);
        }
        break;
      case Operation::classify:
      case Operation::test_M:
      case Operation::test_meq:
        need(node, s.factor_map, "factor_map", s);
        require_map(node, "factor_map", s.factor_map);
        if (s.samples == 0) s.samples = s.operation == Operation::test_meq ? 4 : 16;
        break;
      case Operation::verify_decomposition:
        need(node, s.factor_map, "factor_map", s);
        need(node, s.phi, "phi", s);
        need(node, s.psi, "psi", s);
        require_map(node, "factor_map", s.factor_map);
        require_map(node, "phi", s.phi);
        require_map(node, "psi", s.psi);
        {
          const auto pi = maps.get(s.factor_map);
          const auto phi = maps.get(s.phi);
          const auto psi = maps.get(s.psi);
          if (phi->source().id() != pi->source().id() || phi->target().id() != psi->source().id() ||
              psi->target().id() != pi->target().id()) {
            fail(node.Mark(), s.psi + " o " + s.phi + " cannot equal " + s.factor_map + ": systems differ");
          }
        }
        if (s.samples == 0) s.samples = 16;
        break;
      case Operation::language_check:
        need(node, s.point, "point", s);
        if (s.max_length == 0 || s.max_length > 24) fail(node.Mark(), "max_length must be in 1..24");
        s.system = ids::kToeplitz;
        break;
    }
    if (!s.system.empty() && !SystemRegistry::global().contains(s.system)) {
      fail(node["system"] ? node["system"].Mark() : node.Mark(), "unknown system id '" + s.system + "'");
    }
    if (s.operation == Operation::language_check) literal(node["point"], s.system, s.point);
  }

  void literal(const YAML::Node& node, const std::string& system, const std::string& text) const {
    try {
      (void)system_by_id(system).parse_point(text);
    } catch (const Error& e) {
      fail(node.Mark(), e.what());
    }
  }

  std::vector<PairSpec> pairs(const YAML::Node& n, const Scenario& s) const {
    if (!n.IsSequence()) fail(n.Mark(), "'pairs' must be a list");
    if (s.system.empty()) fail(n.Mark(), "'pairs' need a 'system'");
    std::vector<PairSpec> out;
    std::set<std::string> seen;
    for (const auto& p : n) {
      if (!p.IsMap() || !p["x"] || !p["y"]) fail(p.Mark(), "a pair needs 'x' and 'y'");
      PairSpec spec;
      spec.id = p["id"] ? scalar<std::string>(p["id"], "id") : "p" + std::to_string(out.size());
      spec.x = scalar<std::string>(p["x"], "x");
      spec.y = scalar<std::string>(p["y"], "y");
      if (!seen.insert(spec.id).second) fail(p.Mark(), "duplicate pair id '" + spec.id + "'");
      literal(p["x"], s.system, spec.x);
      literal(p["y"], s.system, spec.y);
      out.push_back(std::move(spec));
    }
    return out;
  }

  std::string origin_;
};

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& origin) {
  Parser parser(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    parser.fail(e.mark, e.msg);
  }
  std::vector<Scenario> out;
  if (root.IsNull()) return out;
  if (root.IsMap() && root["scenarios"]) {
    const YAML::Node list = root["scenarios"];
    if (list.IsNull()) return out;
    if (!list.IsSequence()) parser.fail(list.Mark(), "'scenarios' must be a list");
    for (const auto& node : list) out.push_back(parser.scenario(node));
  } else if (root.IsSequence()) {
    for (const auto& node : root) out.push_back(parser.scenario(node));
  } else {
    out.push_back(parser.scenario(root));
  }
  std::set<std::string> names;
  for (const auto& s : out) {
    if (!names.insert(s.output).second) parser.fail(root.Mark(), "two scenarios write '" + s.output + "'");
  }
  return out;
}

std::vector<Scenario> load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str(), path);
}

std::vector<Scenario> load_scenarios(const std::string& file_or_name) {
  if (std::filesystem::exists(file_or_name)) return load_scenario_file(file_or_name);
  const auto& bundled = bundled_scenarios();
  const auto it = bundled.find(file_or_name);
  if (it == bundled.end()) {
    throw ParseError("'" + file_or_name + "' is neither a file nor a bundled scenario (see `meqlab list`)");
  }
  return parse_scenarios(it->second, "<bundled " + file_or_name + ">");
}

}  // namespace meqlab::scenario
