// qaction: batch driver for the action-principle numerics library.
//
//   qaction run <scenario.json>     execute and write artifacts
//   qaction compare <scenario.json> three-way comparison tables
//
// Exit codes: 0 success, 2 a declared tolerance check failed, 64 usage or
// parse errors, 1 numerical failure inside a scenario.

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <thread>

#include "qaction/scenario.hpp"

namespace {

struct Options {
  std::string file;
  std::string out_dir = "qaction-out";
  unsigned jobs = 1;
  double tolerance_scale = 1.0;
};

struct RunOutcome {
  bool parse_error = false;
  bool run_error = false;
  bool check_failure = false;
};

RunOutcome execute(const Options& opt, bool comparison_view) {
  RunOutcome outcome;
  std::vector<qaction::Scenario> scenarios;
  try {
    scenarios = qaction::load_scenarios(opt.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    outcome.parse_error = true;
    return outcome;
  }
  if (opt.tolerance_scale != 1.0) {
    std::cerr << "note: tolerance scale " << opt.tolerance_scale
              << " applied to every declared check\n";
  }

  std::vector<qaction::ScenarioResult> results(scenarios.size());
  std::vector<std::string> errors(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      try {
        results[i] = qaction::run_scenario(scenarios[i], opt.tolerance_scale);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n_workers =
      std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(scenarios.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error in scenario '" << scenarios[i].name << "': " << errors[i] << "\n";
      outcome.run_error = true;
      continue;
    }
    const qaction::ScenarioResult& r = results[i];
    for (const auto& [k, v] : r.metrics) {
      if (k == "signal_edge_magnitude" && v > 1e-12) {
        std::cerr << "warning: scenario '" << r.name
                  << "': drive does not vanish at the grid edges (|K| = " << v << ")\n";
      }
    }
    std::cout << qaction::summarize(r) << "\n";
    if (comparison_view) {
      std::cout << qaction::comparison_table(r);
    }
    for (const auto& c : r.checks) {
      if (!c.passed) {
        std::cout << "  check FAIL " << c.spec.name << ": " << c.spec.metric << " = "
                  << qaction::format_double(c.observed) << ", expected "
                  << qaction::format_double(c.spec.expect) << " +- "
                  << qaction::format_double(c.spec.tol) << "\n";
      }
    }
    outcome.check_failure = outcome.check_failure || !r.all_checks_passed;
    try {
      qaction::write_artifacts(r, opt.out_dir, scenarios[i].output_format);
    } catch (const std::exception& e) {
      std::cerr << "error writing artifacts for '" << r.name << "': " << e.what() << "\n";
      outcome.run_error = true;
    }
  }
  return outcome;
}

int exit_code(const RunOutcome& outcome) {
  if (outcome.parse_error) return 64;
  if (outcome.run_error) return 1;
  if (outcome.check_failure) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"action-principle numerics: scenarios, oracle comparisons, emission tables"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("file", opt.file, "scenario JSON file")->required();
    cmd->add_option("--out", opt.out_dir, "output directory for artifacts");
    cmd->add_option("--jobs", opt.jobs, "worker threads for scenario arrays");
    cmd->add_option("--tolerance-scale", opt.tolerance_scale,
                    "scale factor applied to declared check tolerances");
  };
  CLI::App* run = app.add_subcommand("run", "execute scenarios and write artifacts");
  add_common(run);
  CLI::App* compare = app.add_subcommand("compare", "print three-way comparison tables");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  return exit_code(execute(opt, compare->parsed()));
}
