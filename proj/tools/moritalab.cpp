#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "moritalab/cli/runner.hpp"
#include "moritalab/error.hpp"

namespace {

using moritalab::cli::Json;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int emit(const Json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write report to " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

int parse_error(const std::string& message) {
  std::cerr << "ParseError: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morita equivalence checks for finite rings and finite-dimensional von Neumann algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", moritalab::cli::kToolVersion);

  moritalab::cli::RunOptions options;
  std::string report_path, spec_path, demo_name;
  bool no_timings = false, canonical = false;

  const auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol", options.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", options.seed, "sampler seed (MORITALAB_SEED overrides)");
    cmd->add_option("--threads", options.threads, "parallel tasks")->check(CLI::Range(1u, 256u));
    cmd->add_option("--report", report_path, "write the report here instead of stdout");
    cmd->add_option("--max-dim", options.max_dim, "cap on dim H * dim K for fusion")->check(CLI::PositiveNumber);
    cmd->add_option("--max-order", options.max_order, "cap on ring order for isomorphism search")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timings", no_timings, "omit per-task timings");
  };

  CLI::App* run = app.add_subcommand("run", "run the tasks of a spec file");
  run->add_option("spec", spec_path, "spec file (JSON)")->required();
  add_run_flags(run);

  CLI::App* validate = app.add_subcommand("validate", "load and validate a spec file");
  validate->add_option("spec", spec_path, "spec file (JSON)")->required();
  validate->add_option("--tol", options.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  validate->add_flag("--canonical", canonical, "print the canonical form of the spec file");

  CLI::App* demo = app.add_subcommand("demo", "run a built-in instance");
  demo->add_option("name", demo_name, "one of: matrix-ring-pair, mn-vs-c, non-tracial-fusion")->required();
  add_run_flags(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("MORITALAB_SEED")) {
    try {
      options.seed = std::stoull(env);
    } catch (const std::exception&) {
      return parse_error(std::string("MORITALAB_SEED is not an integer: ") + env);
    }
  }
  options.timings = !no_timings;

  std::string text;
  if (*demo) {
    const auto spec = moritalab::cli::demo_spec(demo_name);
    if (!spec) return parse_error("unknown demo '" + demo_name + "'");
    text = spec->dump();
  } else if (!read_file(spec_path, text)) {
    return parse_error("cannot read " + spec_path);
  }

  if (*validate) {
    try {
      const auto spec = moritalab::cli::load_spec_text(text, options.tol);
      if (canonical) {
        std::cout << moritalab::cli::to_json(spec).dump(2) << "\n";
      } else {
        std::cout << Json{{"valid", true},
                          {"rings", spec.rings.size()},
                          {"bimodules", spec.bimodules.size()},
                          {"algebras", spec.algebras.size()},
                          {"states", spec.states.size()},
                          {"correspondences", spec.correspondences.size()},
                          {"tasks", spec.tasks.size()}}
                         .dump(2)
                  << "\n";
      }
      return 0;
    } catch (const moritalab::Error& e) {
      return parse_error(e.what());
    }
  }

  const auto outcome = moritalab::cli::run_text(text, options);
  if (outcome.exit_code == 2) std::cerr << outcome.report["error"]["message"].get<std::string>() << "\n";
  const int written = emit(outcome.report, report_path);
  return written != 0 ? written : outcome.exit_code;
}
