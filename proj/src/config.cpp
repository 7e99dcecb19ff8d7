#include "semcom/config.hpp"

#include <fstream>

#include "semcom/errors.hpp"
#include "semcom/io.hpp"

namespace semcom {

namespace {

template <typename T>
void get_to(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["session"] = {
      {"d", session.d},
      {"T", session.T},
      {"tau", session.tau},
      {"beta", session.beta},
      {"m_max", session.m_max},
      {"bits_new_per_dim", session.bits_new_per_dim},
      {"method", method_name(session.method)},
      {"omega", session.omega},
      {"bits_res", session.bits_res},
      {"b_raw_per_frame", session.b_raw_per_frame},
      {"master_seed", session.master_seed},
      {"robustness",
       {{"enabled", session.robustness.enabled},
        {"mode", corruption_mode_name(session.robustness.corruption.mode)},
        {"level", session.robustness.corruption.level},
        {"corruption_seed", session.robustness.corruption.seed},
        {"b_cue", session.robustness.cue.b_cue},
        {"t_cue", session.robustness.cue.t_cue},
        {"cue_seed", session.robustness.cue.cue_seed},
        {"cue_on_new", session.robustness.cue.cue_on_new},
        {"beta_c", session.robustness.cue.beta_c}}},
  };
  j["frames"] = {{"H", frames.H}, {"W", frames.W}, {"C", frames.C}};
  j["run"] = {{"scenario", run.scenario},     {"regimes", run.regimes},
              {"methods", run.methods},       {"trials", run.trials},
              {"latents_csv", run.latents_csv}, {"export_frames", run.export_frames}};
  j["sweep"] = {{"scenario", sweep.scenario}, {"tau_min", sweep.tau_min},
                {"tau_max", sweep.tau_max},   {"points", sweep.points},
                {"trials", sweep.trials},     {"methods", sweep.methods}};
  j["robustness_grid"] = {{"p_levels", robustness.p_levels},
                          {"sigma_levels", robustness.sigma_levels},
                          {"trials", robustness.trials},
                          {"T", robustness.T},
                          {"M", robustness.M},
                          {"separation", robustness.separation},
                          {"epsilon", robustness.epsilon},
                          {"tau", robustness.tau}};
  j["theory"] = {{"M", theory.M},
                 {"d", theory.d},
                 {"separation", theory.separation},
                 {"epsilon", theory.epsilon},
                 {"betas", theory.betas},
                 {"tau", theory.tau},
                 {"T", theory.T},
                 {"trials", theory.trials},
                 {"slack_c", theory.slack_c},
                 {"boost_epsilons", theory.boost_epsilons},
                 {"boost_samples", theory.boost_samples},
                 {"boost_beta", theory.boost_beta}};
  j["calibrate"] = {{"scenario", calibrate.scenario}, {"d0", calibrate.d0},
                    {"band_db", calibrate.band_db},   {"trials", calibrate.trials},
                    {"tau_init", calibrate.tau_init}, {"lambda_init", calibrate.lambda_init},
                    {"alpha", calibrate.alpha}};
  j["output"] = {{"dir", out_dir}};
  j["jobs"] = jobs;
  return j;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig cfg;
  if (doc.contains("session")) {
    const auto& s = doc.at("session");
    get_to(s, "d", cfg.session.d);
    get_to(s, "T", cfg.session.T);
    get_to(s, "tau", cfg.session.tau);
    get_to(s, "beta", cfg.session.beta);
    get_to(s, "m_max", cfg.session.m_max);
    get_to(s, "bits_new_per_dim", cfg.session.bits_new_per_dim);
    if (s.contains("method")) cfg.session.method = method_from_name(s.at("method"));
    get_to(s, "omega", cfg.session.omega);
    get_to(s, "bits_res", cfg.session.bits_res);
    get_to(s, "b_raw_per_frame", cfg.session.b_raw_per_frame);
    get_to(s, "master_seed", cfg.session.master_seed);
    if (s.contains("robustness")) {
      const auto& r = s.at("robustness");
      get_to(r, "enabled", cfg.session.robustness.enabled);
      if (r.contains("mode")) {
        std::string m = r.at("mode");
        if (m == "none") cfg.session.robustness.corruption.mode = CorruptionMode::None;
        else if (m == "id_desync") cfg.session.robustness.corruption.mode = CorruptionMode::IdDesync;
        else if (m == "vec_perturb") cfg.session.robustness.corruption.mode = CorruptionMode::VecPerturb;
        else throw ConfigError("session.robustness.mode: unknown mode '" + m + "'");
      }
      get_to(r, "level", cfg.session.robustness.corruption.level);
      get_to(r, "corruption_seed", cfg.session.robustness.corruption.seed);
      get_to(r, "b_cue", cfg.session.robustness.cue.b_cue);
      get_to(r, "t_cue", cfg.session.robustness.cue.t_cue);
      get_to(r, "cue_seed", cfg.session.robustness.cue.cue_seed);
      get_to(r, "cue_on_new", cfg.session.robustness.cue.cue_on_new);
      get_to(r, "beta_c", cfg.session.robustness.cue.beta_c);
    }
  }
  if (doc.contains("frames")) {
    const auto& f = doc.at("frames");
    get_to(f, "H", cfg.frames.H);
    get_to(f, "W", cfg.frames.W);
    get_to(f, "C", cfg.frames.C);
  }
  if (doc.contains("run")) {
    const auto& r = doc.at("run");
    get_to(r, "scenario", cfg.run.scenario);
    get_to(r, "regimes", cfg.run.regimes);
    get_to(r, "methods", cfg.run.methods);
    get_to(r, "trials", cfg.run.trials);
    get_to(r, "latents_csv", cfg.run.latents_csv);
    get_to(r, "export_frames", cfg.run.export_frames);
  }
  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    get_to(s, "scenario", cfg.sweep.scenario);
    get_to(s, "tau_min", cfg.sweep.tau_min);
    get_to(s, "tau_max", cfg.sweep.tau_max);
    get_to(s, "points", cfg.sweep.points);
    get_to(s, "trials", cfg.sweep.trials);
    get_to(s, "methods", cfg.sweep.methods);
  }
  if (doc.contains("robustness_grid")) {
    const auto& r = doc.at("robustness_grid");
    get_to(r, "p_levels", cfg.robustness.p_levels);
    get_to(r, "sigma_levels", cfg.robustness.sigma_levels);
    get_to(r, "trials", cfg.robustness.trials);
    get_to(r, "T", cfg.robustness.T);
    get_to(r, "M", cfg.robustness.M);
    get_to(r, "separation", cfg.robustness.separation);
    get_to(r, "epsilon", cfg.robustness.epsilon);
    get_to(r, "tau", cfg.robustness.tau);
  }
  if (doc.contains("theory")) {
    const auto& t = doc.at("theory");
    get_to(t, "M", cfg.theory.M);
    get_to(t, "d", cfg.theory.d);
    get_to(t, "separation", cfg.theory.separation);
    get_to(t, "epsilon", cfg.theory.epsilon);
    get_to(t, "betas", cfg.theory.betas);
    get_to(t, "tau", cfg.theory.tau);
    get_to(t, "T", cfg.theory.T);
    get_to(t, "trials", cfg.theory.trials);
    get_to(t, "slack_c", cfg.theory.slack_c);
    get_to(t, "boost_epsilons", cfg.theory.boost_epsilons);
    get_to(t, "boost_samples", cfg.theory.boost_samples);
    get_to(t, "boost_beta", cfg.theory.boost_beta);
  }
  if (doc.contains("calibrate")) {
    const auto& c = doc.at("calibrate");
    get_to(c, "scenario", cfg.calibrate.scenario);
    get_to(c, "d0", cfg.calibrate.d0);
    get_to(c, "band_db", cfg.calibrate.band_db);
    get_to(c, "trials", cfg.calibrate.trials);
    get_to(c, "tau_init", cfg.calibrate.tau_init);
    get_to(c, "lambda_init", cfg.calibrate.lambda_init);
    get_to(c, "alpha", cfg.calibrate.alpha);
  }
  if (doc.contains("output")) get_to(doc.at("output"), "dir", cfg.out_dir);
  get_to(doc, "jobs", cfg.jobs);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

void apply_override(nlohmann::json& doc, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set expects section.key=value, got '" + spec + "'");
  }
  std::string path = spec.substr(0, eq);
  std::string value = spec.substr(eq + 1);

  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::exception&) {
    parsed = value;  // bare strings are allowed unquoted
  }

  nlohmann::json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    auto dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("--set: empty key segment in '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.session.d == 0) throw ConfigError("session.d: must be positive");
  if (cfg.session.T == 0) throw ConfigError("session.T: must be positive");
  if (!(cfg.session.tau > 0.0 && cfg.session.tau < 1.0)) {
    throw ConfigError("session.tau: must lie in (0, 1)");
  }
  if (cfg.session.beta <= 0.0) throw ConfigError("session.beta: must be > 0");
  if (cfg.session.m_max == 0) throw ConfigError("session.m_max: must be positive");
  if (cfg.session.bits_new_per_dim < 1 || cfg.session.bits_new_per_dim > 16) {
    throw ConfigError("session.bits_new_per_dim: must be in [1, 16]");
  }
  if (cfg.session.omega <= 0.0) throw ConfigError("session.omega: must be > 0");
  if (cfg.session.bits_res < 0) throw ConfigError("session.bits_res: must be >= 0");
  const auto& cue = cfg.session.robustness.cue;
  if (cue.b_cue < 1 || cue.b_cue > 64) throw ConfigError("session.robustness.b_cue: must be in [1, 64]");
  if (cue.t_cue < 0 || cue.t_cue >= cue.b_cue) {
    throw ConfigError("session.robustness.t_cue: must be in [0, b_cue)");
  }
  const auto& corr = cfg.session.robustness.corruption;
  if (corr.mode == CorruptionMode::IdDesync && (corr.level < 0.0 || corr.level > 1.0)) {
    throw ConfigError("session.robustness.level: p must be in [0, 1]");
  }
  if (corr.mode == CorruptionMode::VecPerturb && corr.level < 0.0) {
    throw ConfigError("session.robustness.level: sigma must be >= 0");
  }
  if (cfg.frames.H == 0 || cfg.frames.W == 0 || cfg.frames.C == 0) {
    throw ConfigError("frames: dimensions must be positive");
  }
  if (!(cfg.sweep.tau_min > 0.0 && cfg.sweep.tau_max < 1.0 &&
        cfg.sweep.tau_min < cfg.sweep.tau_max)) {
    throw ConfigError("sweep.tau_min/tau_max: need 0 < tau_min < tau_max < 1");
  }
  if (cfg.sweep.points < 1) throw ConfigError("sweep.points: must be >= 1");
  if (cfg.sweep.trials < 1) throw ConfigError("sweep.trials: must be >= 1");
  if (cfg.run.trials < 1) throw ConfigError("run.trials: must be >= 1");
  for (double p : cfg.robustness.p_levels) {
    if (p < 0.0 || p > 1.0) throw ConfigError("robustness_grid.p_levels: p must be in [0, 1]");
  }
  for (double s : cfg.robustness.sigma_levels) {
    if (s < 0.0) throw ConfigError("robustness_grid.sigma_levels: sigma must be >= 0");
  }
  if (cfg.theory.epsilon <= 0.0 || cfg.theory.epsilon >= 1.0) {
    throw ConfigError("theory.epsilon: must be in (0, 1)");
  }
  if (cfg.theory.trials < 2) throw ConfigError("theory.trials: must be >= 2");
  for (double b : cfg.theory.betas) {
    if (b <= 0.0) throw ConfigError("theory.betas: betas must be > 0");
  }
  if (cfg.calibrate.band_db < 0.0) throw ConfigError("calibrate.band_db: must be >= 0");
  if (cfg.calibrate.d0 <= 0.0) throw ConfigError("calibrate.d0: must be > 0");
  if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");
}

TheoremParams theorem_params_from(const RunConfig::Theory& t, double beta,
                                  std::uint64_t master_seed) {
  TheoremParams p;
  p.M = t.M;
  p.d = t.d;
  p.separation = t.separation;
  p.epsilon = t.epsilon;
  p.beta = beta;
  p.T = t.T;
  p.trials = t.trials;
  p.master_seed = master_seed;
  p.slack_c = t.slack_c;
  p.tau = t.tau > 0.0 ? t.tau : 0.5 * p.boundary_tau_limit();
  return p;
}

}  // namespace semcom
