// meqlab: run scenario files and list the registries.

#include <iostream>

#include <CLI11.hpp>

#include "meqlab/errors.hpp"
#include "meqlab/parallel.hpp"
#include "runner.hpp"

using namespace meqlab;

int main(int argc, char** argv) {
  CLI::App app{"meqlab: Weyl pseudometric estimates and factor map classification"};
  app.require_subcommand(1);

  scenario::RunOptions options;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  std::string target;

  auto* run = app.add_subcommand("run", "Run a scenario file or a bundled scenario by name");
  run->add_option("scenario", target, "Scenario file path or bundled name")->required();
  run->add_option("--out", options.out_dir, "Directory for the CSV and JSON artifacts")
      ->capture_default_str();
  run->add_option("--threads", threads, "Worker threads, 0 = hardware concurrency")->capture_default_str();
  auto* seed_opt = run->add_option("--seed", seed, "Overrides every scenario seed");

  app.add_subcommand("list", "List systems, factor maps and bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("list")) {
      scenario::print_registry(std::cout);
      return 0;
    }
    set_default_threads(threads);
    if (seed_opt->count() > 0) options.seed = seed;
    const auto scenarios = scenario::load_scenarios(target);
    return scenario::run_all(scenarios, options, std::cout);
  } catch (const Error& e) {
    std::cerr << "meqlab: " << e.what() << '\n';
    return 1;
  }
}
