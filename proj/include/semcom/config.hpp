#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "semcom/protocol.hpp"
#include "semcom/runner.hpp"
#include "semcom/theory.hpp"

namespace semcom {

/*
 * Single JSON config document with sections per subsystem. Any field can be
 * overridden on the command line with --set section.key=value; validation
 * failures throw ConfigError naming the offending field (exit code 2).
 */
struct RunConfig {
  SessionConfig session;
  FrameDims frames;

  struct Run {
    std::string scenario = "stable";
    std::vector<std::string> regimes;  // non-empty overrides the scenario set
    std::vector<std::string> methods = {"hopfield", "vq"};
    std::size_t trials = 1;
    std::string latents_csv;  // bypasses the frame pipeline when set
    bool export_frames = false;
  } run;

  struct Sweep {
    std::string scenario = "stable";
    double tau_min = 0.60;
    double tau_max = 0.95;
    int points = 15;
    std::size_t trials = 30;
    std::vector<std::string> methods = {"hopfield", "vq"};
  } sweep;

  struct Robustness {
    std::vector<double> p_levels = {0.0, 0.1, 0.3, 0.5};
    std::vector<double> sigma_levels = {0.0, 0.05, 0.10, 0.20};
    std::size_t trials = 10;
    std::size_t T = 120;
    std::size_t M = 8;
    double separation = 1.0;
    double epsilon = 0.08;
    double tau = 0.85;
  } robustness;

  struct Theory {
    std::size_t M = 8;
    std::size_t d = 48;
    double separation = 1.0;
    double epsilon = 0.15;
    std::vector<double> betas = {4.0, 8.0, 16.0};
    double tau = -1.0;  // < 0 selects the middle of the boundary regime
    std::size_t T = 120;
    std::size_t trials = 100;
    double slack_c = 10.0;
    std::vector<double> boost_epsilons = {0.02, 0.04, 0.08};
    std::size_t boost_samples = 10000;
    double boost_beta = 8.0;
  } theory;

  struct Calibrate {
    std::string scenario = "gradual_drift";
    double d0 = 1.0;
    double band_db = 0.2;
    std::size_t trials = 8;
    double tau_init = 0.7;    // multiplier-ascent defaults
    double lambda_init = 1.0;
    double alpha = 50.0;
  } calibrate;

  std::string out_dir = "out";
  int jobs = 1;

  nlohmann::json to_json() const;
};

RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Applies a "section.key=value" override.
void apply_override(nlohmann::json& doc, const std::string& spec);

void validate(const RunConfig& cfg);

TheoremParams theorem_params_from(const RunConfig::Theory& t, double beta,
                                  std::uint64_t master_seed);

}  // namespace semcom
