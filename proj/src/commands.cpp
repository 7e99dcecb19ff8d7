#include "semcom/commands.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"
#include "semcom/rng.hpp"
#include "semcom/version.hpp"

namespace semcom {

namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string make_run_dir(const RunConfig& cfg, const std::string& command) {
  std::ostringstream dir;
  dir << cfg.out_dir << '/' << command << '-' << cfg.session.master_seed;
  fs::create_directories(dir.str());
  return dir.str();
}

void write_manifest(const std::string& run_dir, const std::string& command,
                    const RunConfig& cfg, const std::vector<std::string>& outputs) {
  nlohmann::json manifest{
      {"schema_version", 1},
      {"tool", "semcom"},
      {"version", kVersion},
      {"command", command},
      {"master_seed", cfg.session.master_seed},
      {"created_utc", utc_timestamp()},
      {"config", cfg.to_json()},
      {"outputs", outputs},
  };
  write_text_file(run_dir + "/manifest.json", manifest.dump(2) + "\n");
}

std::vector<Regime> requested_regimes(const RunConfig& cfg) {
  std::vector<Regime> regimes;
  if (!cfg.run.regimes.empty()) {
    for (const auto& name : cfg.run.regimes) regimes.push_back(regime_from_name(name));
  } else {
    regimes = scenario_regimes(scenario_from_name(cfg.run.scenario));
  }
  return regimes;
}

std::vector<Method> requested_methods(const std::vector<std::string>& names) {
  std::vector<Method> methods;
  for (const auto& n : names) methods.push_back(method_from_name(n));
  return methods;
}

nlohmann::json summarize_log(const SessionLog& log, const SessionConfig& cfg) {
  MetricsReport rep;
  const double T = static_cast<double>(log.records.size());
  rep.hit_rate = log.hit_rate;
  rep.bits_per_frame = log.avg_bits;
  rep.b_sem_total = static_cast<double>(log.total_bits);
  rep.b_raw_total = static_cast<double>(cfg.b_raw_per_frame) * T;
  rep.mean_mse = log.mean_distortion;
  rep.psnr_db = psnr(rep.mean_mse);
  if (log.total_bits > 0 && T > 0) {
    rep.compression_ratio = rep.b_raw_total / rep.b_sem_total;
    rep.semantic_efficiency = semantic_efficiency(log.hit_rate * T, T, rep.b_raw_total,
                                                  rep.b_sem_total);
    rep.reasoning_capacity = reasoning_capacity(rep.semantic_efficiency, cfg.omega);
  }
  long hits = 0;
  for (long c : log.hit_index_counts) hits += c;
  rep.index_entropy = hits > 0 ? index_entropy(log.hit_index_counts) : 0.0;

  nlohmann::json j = to_json(rep);
  j["refresh_count"] = log.refresh_count;
  j["frames"] = log.records.size();
  j["tx_store"] = to_json(log.tx_store);
  j["rx_store"] = to_json(log.rx_store);
  j["stores_identical"] = (log.tx_store == log.rx_store);
  return j;
}

}  // namespace

CommandResult cmd_run(const RunConfig& cfg) {
  CommandResult result;
  result.run_dir = make_run_dir(cfg, "run");
  auto methods = requested_methods(cfg.run.methods);

  nlohmann::json summary;
  summary["b_raw_per_frame"] =
      static_cast<long>(cfg.frames.H * cfg.frames.W * cfg.frames.C) * 8;

  SessionConfig base = cfg.session;
  base.b_raw_per_frame = static_cast<long>(cfg.frames.H * cfg.frames.W * cfg.frames.C) * 8;

  if (!cfg.run.latents_csv.empty()) {
    // External latent stream: bypass the frame pipeline, latent-space MSE.
    auto latents = read_latents_csv(cfg.run.latents_csv, base.d);
    for (Method method : methods) {
      SessionConfig sc = base;
      sc.method = method;
      SessionLog log = run_session(latents, sc);
      std::string csv_path =
          result.run_dir + "/frames.external." + method_name(method) + ".csv";
      write_text_file(csv_path, session_csv(log));
      result.outputs.push_back(csv_path);
      summary["external"][method_name(method)] = summarize_log(log, sc);
    }
  } else {
    auto regimes = requested_regimes(cfg);
    for (std::size_t trial = 0; trial < cfg.run.trials; ++trial) {
      for (Regime regime : regimes) {
        PreparedRegime data =
            prepare_regime(regime, cfg.frames, base,
                           derive_seed(cfg.session.master_seed, trial, 201),
                           derive_seed(cfg.session.master_seed, trial, 7));
        if (cfg.run.export_frames && trial == 0) {
          RegimeConfig rc;
          rc.regime = regime;
          rc.H = cfg.frames.H;
          rc.W = cfg.frames.W;
          rc.C = cfg.frames.C;
          rc.T = base.T;
          rc.seed = derive_seed(cfg.session.master_seed, trial, 201);
          auto frames = generate_frames(rc);
          std::string bin = result.run_dir + "/frames." + regime_name(regime) + ".f32";
          std::string hdr = result.run_dir + "/frames." + regime_name(regime) + ".json";
          write_frames_binary(bin, hdr, frames);
          result.outputs.push_back(bin);
          result.outputs.push_back(hdr);
        }
        for (Method method : methods) {
          SessionLog log = run_prepared(data, base, base.tau, method);
          if (trial == 0) {
            std::string csv_path = result.run_dir + "/frames." + regime_name(regime) +
                                   "." + method_name(method) + ".csv";
            write_text_file(csv_path, session_csv(log));
            result.outputs.push_back(csv_path);
          }
          SessionConfig sc = base;
          sc.method = method;
          summary[regime_name(regime)][method_name(method)]
                 ["trial_" + std::to_string(trial)] = summarize_log(log, sc);
        }
      }
    }
  }

  std::string summary_path = result.run_dir + "/summary.json";
  write_text_file(summary_path, summary.dump(2) + "\n");
  result.outputs.push_back(summary_path);
  write_manifest(result.run_dir, "run", cfg, result.outputs);
  return result;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  CommandResult result;
  result.run_dir = make_run_dir(cfg, "sweep");

  ScenarioEvaluator eval(scenario_from_name(cfg.sweep.scenario), cfg.session, cfg.frames,
                         cfg.session.master_seed);
  eval.prefetch(cfg.sweep.trials, cfg.jobs);
  auto grid = tau_grid(cfg.sweep.tau_min, cfg.sweep.tau_max, cfg.sweep.points);

  std::vector<SweepCurve> curves;
  for (Method method : requested_methods(cfg.sweep.methods)) {
    curves.push_back(eval.sweep(grid, method, cfg.sweep.trials));
  }

  std::string csv_path = result.run_dir + "/sweep.csv";
  write_text_file(csv_path, sweep_csv(curves));
  result.outputs.push_back(csv_path);
  write_manifest(result.run_dir, "sweep", cfg, result.outputs);
  return result;
}

CommandResult cmd_robustness(const RunConfig& cfg) {
  CommandResult result;
  result.run_dir = make_run_dir(cfg, "robustness");

  RobustnessSessionConfig rc;
  rc.d = cfg.session.d;
  rc.M = cfg.robustness.M;
  rc.separation = cfg.robustness.separation;
  rc.epsilon = cfg.robustness.epsilon;
  rc.tau = cfg.robustness.tau;
  rc.beta = cfg.session.beta;
  rc.T = cfg.robustness.T;
  rc.trials = cfg.robustness.trials;
  rc.bits_new_per_dim = cfg.session.bits_new_per_dim;
  rc.cue = cfg.session.robustness.cue;
  rc.master_seed = cfg.session.master_seed;

  std::vector<RobustnessRow> rows;
  auto run_mode = [&](CorruptionMode mode, const std::vector<double>& levels) {
    for (double level : levels) {
      RobustnessCell hop = run_robustness_cell(rc, mode, level, Method::Hopfield);
      RobustnessCell vq = run_robustness_cell(rc, mode, level, Method::VQ);
      long delta = vq.bits_total - hop.bits_total;
      rows.push_back({mode, level, Method::Hopfield, hop.bits_per_frame,
                      hop.refresh_total, delta});
      rows.push_back({mode, level, Method::VQ, vq.bits_per_frame, vq.refresh_total,
                      delta});
    }
  };
  run_mode(CorruptionMode::IdDesync, cfg.robustness.p_levels);
  run_mode(CorruptionMode::VecPerturb, cfg.robustness.sigma_levels);

  std::string csv_path = result.run_dir + "/robustness.csv";
  write_text_file(csv_path, robustness_csv(rows));
  result.outputs.push_back(csv_path);
  write_manifest(result.run_dir, "robustness", cfg, result.outputs);
  return result;
}

CommandResult cmd_theory(const RunConfig& cfg) {
  CommandResult result;
  result.run_dir = make_run_dir(cfg, "theory");
  fs::create_directories(result.run_dir + "/theory");

  std::ostringstream summary_csv;
  summary_csv << "check,beta,lhs,rhs,satisfied\n";

  for (std::size_t i = 0; i < cfg.theory.betas.size(); ++i) {
    double beta = cfg.theory.betas[i];
    TheoremParams params =
        theorem_params_from(cfg.theory, beta, cfg.session.master_seed);
    Theorem2Report t2 = check_theorem2(params);
    CorollaryReport cor = check_corollary(
        params, static_cast<long>(params.d) * 8,
        static_cast<double>(bits_for_id(params.M)));

    nlohmann::json t2j = to_json(t2);
    t2j["beta"] = beta;
    t2j["tau"] = params.tau;
    t2j["epsilon"] = params.epsilon;
    std::string t2_path =
        result.run_dir + "/theory/thm2_beta" + std::to_string(i) + ".json";
    write_text_file(t2_path, t2j.dump(2) + "\n");
    result.outputs.push_back(t2_path);

    nlohmann::json corj = to_json(cor);
    corj["beta"] = beta;
    std::string cor_path =
        result.run_dir + "/theory/corollary_beta" + std::to_string(i) + ".json";
    write_text_file(cor_path, corj.dump(2) + "\n");
    result.outputs.push_back(cor_path);

    summary_csv << "theorem2," << format_double(beta) << ','
                << format_double(t2.hopfield.mean) << ',' << format_double(t2.rhs) << ','
                << (t2.bound_satisfied ? 1 : 0) << '\n';
    summary_csv << "corollary," << format_double(beta) << ','
                << format_double(cor.measured_savings) << ','
                << format_double(cor.lower_bound - cor.slack) << ','
                << (cor.bound_satisfied ? 1 : 0) << '\n';
  }

  // Rate-distortion-reuse structure: monotonicity + Pareto on swept curves.
  nlohmann::json thm1;
  for (Scenario scenario : {Scenario::Stable, Scenario::GradualDrift}) {
    ScenarioEvaluator eval(scenario, cfg.session, cfg.frames, cfg.session.master_seed);
    eval.prefetch(cfg.sweep.trials, cfg.jobs);
    auto grid = tau_grid(cfg.sweep.tau_min, cfg.sweep.tau_max, cfg.sweep.points);
    for (Method method : {Method::Hopfield, Method::VQ}) {
      SweepCurve curve = eval.sweep(grid, method, cfg.sweep.trials);
      MonotonicityReport mono = check_monotonicity(curve);
      ParetoReport pareto = check_pareto(curve);
      auto& node = thm1[scenario_name(scenario)][method_name(method)];
      node["monotonicity"] = to_json(mono);
      node["pareto"] = to_json(pareto);
      summary_csv << "theorem1_mono_" << scenario_name(scenario) << '_'
                  << method_name(method) << ",," << (mono.all_ok() ? 1 : 0) << ",,"
                  << (mono.all_ok() ? 1 : 0) << '\n';
      summary_csv << "theorem1_pareto_" << scenario_name(scenario) << '_'
                  << method_name(method) << ",," << (pareto.ok ? 1 : 0) << ",,"
                  << (pareto.ok ? 1 : 0) << '\n';
    }
  }
  std::string thm1_path = result.run_dir + "/theory/thm1.json";
  write_text_file(thm1_path, thm1.dump(2) + "\n");
  result.outputs.push_back(thm1_path);

  // Second-order retrieval expansion residuals.
  TheoremParams boost_params =
      theorem_params_from(cfg.theory, cfg.theory.boost_beta, cfg.session.master_seed);
  BoostStats boost =
      measure_boost(cfg.theory.boost_epsilons, cfg.theory.boost_samples, boost_params);
  std::string boost_path = result.run_dir + "/theory/boost.json";
  write_text_file(boost_path, to_json(boost).dump(2) + "\n");
  result.outputs.push_back(boost_path);
  summary_csv << "boost_slope,," << format_double(boost.loglog_slope) << ",,\n";

  std::string csv_path = result.run_dir + "/theory_summary.csv";
  write_text_file(csv_path, summary_csv.str());
  result.outputs.push_back(csv_path);
  write_manifest(result.run_dir, "theory", cfg, result.outputs);
  return result;
}

CommandResult cmd_calibrate(const RunConfig& cfg) {
  CommandResult result;
  result.run_dir = make_run_dir(cfg, "calibrate");

  ScenarioEvaluator eval(scenario_from_name(cfg.calibrate.scenario), cfg.session,
                         cfg.frames, cfg.session.master_seed);
  eval.prefetch(cfg.calibrate.trials, cfg.jobs);
  auto grid = tau_grid(cfg.sweep.tau_min, cfg.sweep.tau_max, cfg.sweep.points);
  SweepCurve hop = eval.sweep(grid, Method::Hopfield, cfg.calibrate.trials);
  SweepCurve vq = eval.sweep(grid, Method::VQ, cfg.calibrate.trials);

  nlohmann::json out;
  out["scenario"] = cfg.calibrate.scenario;
  out["d0"] = cfg.calibrate.d0;
  out["band_db"] = cfg.calibrate.band_db;
  out["tau_init"] = cfg.calibrate.tau_init;
  out["lambda_init"] = cfg.calibrate.lambda_init;
  try {
    MatchedPair pair =
        calibrate_matched_quality(hop, vq, cfg.calibrate.band_db, cfg.calibrate.d0);
    out["tau_hopfield"] = pair.tau_h;
    out["tau_vq"] = pair.tau_v;
    out["psnr_hopfield"] = pair.psnr_h;
    out["psnr_vq"] = pair.psnr_v;
    out["bits_hopfield"] = pair.bits_h;
    out["bits_vq"] = pair.bits_v;
    out["matched"] = true;
  } catch (const NoMatchedPairError& e) {
    out["matched"] = false;
    out["error"] = e.what();
  }
  try {
    out["optimal_tau_hopfield"] = optimal_tau(hop, cfg.calibrate.d0);
    out["optimal_tau_vq"] = optimal_tau(vq, cfg.calibrate.d0);
  } catch (const InfeasibleError& e) {
    out["optimal_tau_error"] = e.what();
  }

  std::string path = result.run_dir + "/calibration.json";
  write_text_file(path, out.dump(2) + "\n");
  result.outputs.push_back(path);
  write_manifest(result.run_dir, "calibrate", cfg, result.outputs);
  return result;
}

}  // namespace semcom
