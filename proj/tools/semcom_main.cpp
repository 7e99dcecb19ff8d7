// Command-line front end: scenario runs, threshold sweeps, receiver
// robustness grids, refresh-bound Monte Carlo checks and matched-quality
// calibration. Exit codes: 0 success, 2 config/validation error, 3 runtime
// failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "semcom/commands.hpp"
#include "semcom/errors.hpp"
#include "semcom/io.hpp"
#include "semcom/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
};

semcom::RunConfig resolve_config(const CommonArgs& args) {
  nlohmann::json doc = nlohmann::json::object();
  if (!args.config_path.empty()) {
    doc = nlohmann::json::parse(semcom::read_text_file(args.config_path));
  }
  for (const auto& spec : args.overrides) semcom::apply_override(doc, spec);
  semcom::RunConfig cfg = semcom::config_from_json(doc);
  if (args.seed_set) cfg.session.master_seed = args.seed;
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.jobs > 0) cfg.jobs = args.jobs;
  semcom::validate(cfg);
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--set", args.overrides, "Override config entry, section.key=value")
      ->take_all();
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--seed", args.seed, "Master seed")->each([&args](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--jobs", args.jobs, "Worker threads for trial preparation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semcom: memory-augmented semantic communication simulator"};
  app.set_version_flag("--version", semcom::kVersion);
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* run = app.add_subcommand("run", "Run scenario sessions");
  CLI::App* sweep = app.add_subcommand("sweep", "Threshold sweep");
  CLI::App* robustness = app.add_subcommand("robustness", "Receiver-corruption grid");
  CLI::App* theory = app.add_subcommand("theory", "Refresh-bound Monte Carlo checks");
  CLI::App* calibrate = app.add_subcommand("calibrate", "Matched-quality calibration");
  for (CLI::App* cmd : {run, sweep, robustness, theory, calibrate}) {
    add_common(cmd, args);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    semcom::RunConfig cfg = resolve_config(args);
    semcom::CommandResult result;
    if (run->parsed()) {
      result = semcom::cmd_run(cfg);
    } else if (sweep->parsed()) {
      result = semcom::cmd_sweep(cfg);
    } else if (robustness->parsed()) {
      result = semcom::cmd_robustness(cfg);
    } else if (theory->parsed()) {
      result = semcom::cmd_theory(cfg);
    } else if (calibrate->parsed()) {
      result = semcom::cmd_calibrate(cfg);
    }
    std::cout << "wrote " << result.outputs.size() << " files under " << result.run_dir
              << "\n";
    return 0;
  } catch (const semcom::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
