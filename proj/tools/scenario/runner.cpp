#include "runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "meqlab/chains.hpp"
#include "meqlab/classification.hpp"
#include "meqlab/errors.hpp"
#include "meqlab/parallel.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/substitution.hpp"

namespace meqlab::scenario {

namespace {

using Json = nlohmann::ordered_json;
using Flags = std::map<std::string, bool>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_series(std::vector<CsvRow>& rows, const std::string& pair_id, const PseudometricEstimate& e) {
  for (const WindowValue& w : e.per_window) {
    std::optional<std::int64_t> t;
    if (w.translate) t = w.translate->value;
    rows.push_back({pair_id, w.window.size(), t, to_string(e.kind), w.value});
  }
}

Json estimate_json(const PseudometricEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["window_len"] = e.per_window.empty() ? 0 : e.per_window[e.achieving_window].window.size();
  j["translate"] = e.achieving_translate ? Json(e.achieving_translate->value) : Json(nullptr);
  j["boundary_hit"] = e.boundary_hit;
  j["one_sided_bound"] = e.one_sided_bound;
  return j;
}

Json pair_json(const System& sys, const PointPair& p) {
  return Json{{"label", p.label},
              {"x", sys.format_point(p.x)},
              {"y", sys.format_point(p.y)},
              {"distance", sys.dist(p.x, p.y)}};
}

Json scan_json(const EpsilonDeltaScan& scan, const System& sys) {
  Json rows = Json::array();
  for (const EpsilonRow& r : scan.rows) {
    rows.push_back({{"eps", r.eps}, {"delta_star", r.delta_star}, {"violated", r.violated}});
  }
  Json violations = Json::array();
  for (const PairWitness& w : scan.violations) {
    Json v = pair_json(sys, w.pair);
    v["estimate"] = w.estimate;
    violations.push_back(v);
  }
  return Json{{"holds", scan.holds()}, {"rows", rows}, {"violations", violations}};
}

Flags report_flags(const FactorMapReport& r) {
  return {{"equicontinuous", r.equicontinuous},
          {"distal", r.distal},
          {"banach_distal", r.banach_distal},
          {"banach_proximal", r.banach_proximal},
          {"topo_isomorphic", r.banach_proximal},
          {"proximal", r.proximal},
          {"mean_equicontinuous", r.mean_equicontinuous},
          {"property_M", r.property_M},
          {"consistent", r.consistent}};
}

Json report_json(const FactorMapReport& r, const System& sys) {
  Json j;
  j["map"] = r.map_id;
  j["criterion"] = r.criterion;
  Json flags;
  for (const auto& [k, v] : report_flags(r)) flags[k] = v;
  j["flags"] = flags;
  j["witnesses"] = r.witnesses;
  j["notes"] = r.notes;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    Json p = pair_json(sys, r.pairs[i]);
    const PairVerdict& v = r.verdicts[i];
    Json classes = Json::array();
    for (PairClass c : v.classes) classes.push_back(to_string(c));
    p["classes"] = classes;
    p["check"] = estimate_json(r.estimates[i].check);
    p["hat"] = estimate_json(r.estimates[i].hat);
    p["besicovitch"] = estimate_json(r.estimates[i].besicovitch);
    p["weyl"] = estimate_json(r.estimates[i].weyl);
    pairs.push_back(p);
  }
  j["pairs"] = pairs;
  j["equicontinuity_scan"] = scan_json(r.equicontinuity_scan, sys);
  j["property_M"] = scan_json(r.property_m.scan, sys);
  j["mean_equicontinuous"] = r.mean_equicontinuous;
  if (r.mean_eq.direction_failed) j["meq_direction_failed"] = to_string(*r.mean_eq.direction_failed);
  return j;
}

void report_rows(std::vector<CsvRow>& rows, const FactorMapReport& r, const std::string& prefix) {
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const std::string id = prefix + "s" + std::to_string(i);
    const PairEstimates& e = r.estimates[i];
    append_series(rows, id, e.check);
    append_series(rows, id, e.hat);
    append_series(rows, id, e.besicovitch);
    append_series(rows, id, e.weyl);
  }
}

class Run {
 public:
  Run(const Scenario& s, std::uint64_t seed)
      : s_(s), seed_(seed), schedule_(s.schedule.build()) {
    result_.name = s.name;
    result_.output = s.output;
    Json& v = result_.verdict;
    v["scenario"] = s.name;
    v["operation"] = to_string(s.operation);
    v["schedule"] = schedule_.label();
    v["seed"] = s.needs_seed() ? Json(seed) : Json(nullptr);
    v["tolerances"] = {{"zero", s.tolerances.zero_tol}, {"sep", s.tolerances.sep_tol}};
  }

  ScenarioResult finish() {
    switch (s_.operation) {
      case Operation::estimate: estimate(); break;
      case Operation::classify: classify(); break;
      case Operation::test_M: property_m(); break;
      case Operation::test_meq: meq(); break;
      case Operation::verify_decomposition: decomposition(); break;
      case Operation::language_check: language(); break;
    }
    Flags expected = s_.expect;
    if (s_.operation == Operation::verify_decomposition && !expected.count("verified")) {
      expected["verified"] = true;
    }
    Json flags;
    for (const auto& [k, v] : flags_) flags[k] = v;
    result_.verdict["flags"] = flags;
    for (const auto& [key, want] : expected) {
      const auto it = flags_.find(key);
      if (it == flags_.end()) {
        throw ParseError(s_.name + ": cannot expect '" + key + "' from a " + to_string(s_.operation) +
                         " scenario");
      }
      if (it->second != want) {
        result_.failures.push_back(key + " is " + (it->second ? "true" : "false") + ", expected " +
                                   (want ? "true" : "false"));
      }
    }
    result_.verdict["expect"] = Json(expected);
    result_.verdict["ok"] = result_.ok();
    result_.verdict["failures"] = result_.failures;
    return std::move(result_);
  }

 private:
  void estimate() {
    const System& sys = system_by_id(s_.system);
    std::vector<std::pair<std::string, PointPair>> pairs;
    for (const PairSpec& p : s_.pairs) {
      pairs.push_back({p.id, {sys.parse_point(p.x), sys.parse_point(p.y), p.id}});
    }
    if (s_.samples > 0) {
      Rng rng(seed_);
      const auto map = FactorMapRegistry::global().get(s_.factor_map);
      const auto sampled = map->sampler().sample_pairs(rng, s_.samples);
      for (std::size_t i = 0; i < sampled.size(); ++i) pairs.push_back({"s" + std::to_string(i), sampled[i]});
    }
    const auto estimates = parallel_map(pairs.size(), [&](std::size_t i) {
      const PointPair& p = pairs[i].second;
      const auto series = DistanceSeries::for_schedule(sys, p.x, p.y, schedule_);
      std::vector<PseudometricEstimate> out;
      for (EstimateKind k : s_.kinds) {
        switch (k) {
          case EstimateKind::check: out.push_back(check_from(series, schedule_)); break;
          case EstimateKind::hat: out.push_back(hat_from(series, schedule_)); break;
          case EstimateKind::besicovitch: out.push_back(besicovitch_from(series, schedule_)); break;
          case EstimateKind::weyl: out.push_back(weyl_from(series, schedule_)); break;
          case EstimateKind::banach_density:
            out.push_back(banach_density_from(series, s_.density_eps, schedule_));
            break;
        }
      }
      return out;
    });
    Json list = Json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Json p = pair_json(sys, pairs[i].second);
      p["id"] = pairs[i].first;
      for (const PseudometricEstimate& e : estimates[i]) {
        append_series(result_.rows, pairs[i].first, e);
        p["estimates"][to_string(e.kind)] = estimate_json(e);
      }
      list.push_back(p);
    }
    result_.verdict["system"] = s_.system;
    if (s_.kinds.size() == 1 && s_.kinds.front() == EstimateKind::banach_density) {
      result_.verdict["eps"] = s_.density_eps;
    }
    result_.verdict["pairs"] = list;
  }

  void classify() {
    const auto map = FactorMapRegistry::global().get(s_.factor_map);
    const FactorMapReport r = classify_factor_map(*map, s_.tolerances, schedule_, seed_, s_.samples);
    report_rows(result_.rows, r, "");
    result_.verdict["report"] = report_json(r, map->source());
    flags_ = report_flags(r);
  }

  void property_m() {
    const auto map = FactorMapRegistry::global().get(s_.factor_map);
    const PropertyMReport r = test_property_M(*map, s_.tolerances, schedule_, seed_, s_.samples);
    Json samples = Json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      append_series(result_.rows, "s" + std::to_string(i), r.weyl[i]);
      Json p = pair_json(map->source(), r.samples[i].pair);
      p["weyl"] = estimate_json(r.weyl[i]);
      samples.push_back(p);
    }
    result_.verdict["map"] = map->id();
    result_.verdict["pairs_tested"] = r.pairs_tested;
    result_.verdict["note"] = r.note;
    result_.verdict["scan"] = scan_json(r.scan, map->source());
    result_.verdict["pairs"] = samples;
    flags_["property_M"] = r.holds;
  }

  void meq() {
    const auto map = FactorMapRegistry::global().get(s_.factor_map);
    const MeanEquicontinuityReport r = test_mean_equicontinuity(*map, s_.tolerances, schedule_, seed_, s_.samples);
    const std::int64_t len = schedule_.windows().back().size();
    Json seqs = Json::array();
    for (std::size_t j = 0; j < r.sequences.size(); ++j) {
      const SequenceWitness& w = r.sequences[j];
      const std::string id = "seq" + std::to_string(j);
      const auto& series = w.sequence.weyl_series;
      for (std::size_t m = 0; m < series.size(); ++m) {
        result_.rows.push_back({id + "/m" + std::to_string(m + 1), len, std::nullopt, "weyl", series[m]});
      }
      result_.rows.push_back({id + "/limit", len, std::nullopt, "weyl", w.limit_weyl});
      seqs.push_back({{"id", id},
                      {"label", w.label},
                      {"weyl_series", series},
                      {"tail_begin", w.sequence.tail_begin},
                      {"asymptotically_banach_proximal", w.sequence.holds},
                      {"limit_weyl", w.limit_weyl},
                      {"limit_banach_proximal", w.limit_bp},
                      {"failure", w.failure ? Json(to_string(*w.failure)) : Json(nullptr)}});
    }
    result_.verdict["map"] = map->id();
    result_.verdict["sequences"] = seqs;
    result_.verdict["direction_failed"] =
        r.direction_failed ? Json(to_string(*r.direction_failed)) : Json(nullptr);
    flags_["mean_equicontinuous"] = r.holds;
  }

  void decomposition() {
    auto& maps = FactorMapRegistry::global();
    const auto pi = maps.get(s_.factor_map);
    const auto phi = maps.get(s_.phi);
    const auto psi = maps.get(s_.psi);
    result_.verdict["pi"] = pi->id();
    result_.verdict["phi"] = phi->id();
    result_.verdict["psi"] = psi->id();
    try {
      const DecompositionReport r = verify_decomposition(*pi, *phi, *psi, s_.tolerances, schedule_, seed_, s_.samples);
      report_rows(result_.rows, r.phi, "phi/");
      report_rows(result_.rows, r.psi, "psi/");
      result_.verdict["points_checked"] = r.points_checked;
      result_.verdict["notes"] = r.notes;
      result_.verdict["phi_report"] = report_json(r.phi, phi->source());
      result_.verdict["psi_report"] = report_json(r.psi, psi->source());
      flags_ = {{"verified", r.verified},
                {"phi_banach_proximal", r.phi_banach_proximal},
                {"psi_equicontinuous", r.psi_equicontinuous}};
    } catch (const CompositionMismatchError& e) {
      result_.verdict["notes"] = Json::array({e.what()});
      flags_ = {{"verified", false}, {"phi_banach_proximal", false}, {"psi_equicontinuous", false}};
    }
  }

  void language() {
    const Point p = system_by_id(s_.system).parse_point(s_.point);
    const auto& state = state_of<ToeplitzState>(p);
    LanguageCheck last;
    for (std::size_t len = 1; len <= s_.max_length; ++len) {
      last = toeplitz_language_check(state, len);
      const auto n = static_cast<std::int64_t>(len);
      result_.rows.push_back({"direct", n, std::nullopt, "in_language", last.direct_holds ? 1.0 : 0.0});
      result_.rows.push_back({"exchanged", n, std::nullopt, "in_language", last.exchanged_holds ? 1.0 : 0.0});
    }
    const Substitution sub = period_doubling_substitution();
    result_.verdict["point"] = s_.point;
    result_.verdict["substitution"] = "0->" + sub.images[0] + ",1->" + sub.images[1];
    result_.verdict["max_length"] = last.max_length;
    result_.verdict["windows_checked"] = last.windows_checked;
    result_.verdict["convention"] = last.convention();
    result_.verdict["first_direct_miss"] =
        last.first_direct_miss ? Json(*last.first_direct_miss) : Json(nullptr);
    result_.verdict["first_exchanged_miss"] =
        last.first_exchanged_miss ? Json(*last.first_exchanged_miss) : Json(nullptr);
    flags_ = {{"direct_holds", last.direct_holds}, {"exchanged_holds", last.exchanged_holds}};
  }

  const Scenario& s_;
  std::uint64_t seed_;
  FolnerSchedule schedule_;
  ScenarioResult result_;
  Flags flags_;
};

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, std::optional<std::uint64_t> seed_override) {
  const std::uint64_t seed = seed_override ? *seed_override : scenario.seed.value_or(0);
  return Run(scenario, seed).finish();
}

std::string format_csv(const ScenarioResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const CsvRow& r : result.rows) {
    out += result.name;
    out += ',';
    out += r.pair_id;
    out += ',';
    out += std::to_string(r.window_len);
    out += ',';
    if (r.translate) out += std::to_string(*r.translate);
    out += ',';
    out += r.kind;
    out += ',';
    out += fmt(r.value);
    out += '\n';
  }
  return out;
}

void write_artifacts(const ScenarioResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base = std::filesystem::path(dir) / result.output;
  std::ofstream csv(base.string() + ".csv", std::ios::binary);
  csv << format_csv(result);
  std::ofstream json(base.string() + ".json", std::ios::binary);
  json << result.verdict.dump(2) << '\n';
  if (!csv || !json) throw Error("cannot write artifacts under '" + dir + "'");
}

int run_all(const std::vector<Scenario>& scenarios, const RunOptions& options, std::ostream& log) {
  int code = 0;
  for (const Scenario& s : scenarios) {
    const ScenarioResult r = run_scenario(s, options.seed);
    write_artifacts(r, options.out_dir);
    log << s.name << " (" << to_string(s.operation) << "): ";
    if (r.ok()) {
      log << "ok\n";
    } else {
      code = 2;
      log << "FAILED";
      for (const std::string& f : r.failures) log << "; " << f;
      log << '\n';
    }
  }
  return code;
}

void print_registry(std::ostream& os) {
  os << "systems:\n";
  for (const auto& id : SystemRegistry::global().ids()) {
    os << "  " << id << "  " << SystemRegistry::global().get(id)->literal_syntax() << '\n';
  }
  os << "factor maps:\n";
  for (const auto& id : FactorMapRegistry::global().ids()) {
    const auto map = FactorMapRegistry::global().get(id);
    os << "  " << id << "  " << map->source().id() << " -> " << map->target().id() << '\n';
  }
  os << "scenarios:\n";
  for (const auto& [name, text] : bundled_scenarios()) os << "  " << name << '\n';
}

}  // namespace meqlab::scenario
