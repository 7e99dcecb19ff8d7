#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "semcom/calibrate.hpp"
#include "semcom/metrics.hpp"
#include "semcom/protocol.hpp"
#include "semcom/scenarios.hpp"

namespace semcom {

struct FrameDims {
  std::size_t H = 32, W = 32, C = 3;
};

// FNV-1a over the raw bytes of a latent stream; used to prove that paired
// methods saw identical inputs.
std::uint64_t hash_latents(const std::vector<LatentVector>& latents);

/*
 * One regime's generated content for one trial: frames, encoded latents and
 * a pixel-distortion lookup table. Reconstructions in a session are always
 * quantized latents of earlier frames, so MSE(frame_t, decode(Q(z_s))) for
 * all (t, s) covers every reconstruction a session can produce, across the
 * whole tau grid and both methods.
 */
struct PreparedRegime {
  Regime regime = Regime::Static;
  std::vector<LatentVector> latents;
  std::vector<std::vector<double>> mse_cross;  // [t][source frame]
  std::uint64_t stream_hash = 0;
};

PreparedRegime prepare_regime(Regime regime, FrameDims dims, const SessionConfig& base,
                              std::uint64_t content_seed, std::uint64_t projection_seed);

SessionLog run_prepared(const PreparedRegime& data, const SessionConfig& base,
                        double tau, Method method);

// Aggregates sample mean and standard error.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& xs);

/*
 * Caches per-trial scenario content so sessions across the tau grid and
 * across methods reuse identical streams (paired seeds).
 */
class ScenarioEvaluator {
 public:
  ScenarioEvaluator(Scenario scenario, const SessionConfig& base, FrameDims dims,
                    std::uint64_t master_seed);

  struct TrialMetrics {
    long frames = 0;
    long hits = 0;
    long bits = 0;
    long refreshes = 0;
    double mse_sum = 0.0;
    std::vector<long> index_counts;
  };

  TrialMetrics evaluate(double tau, Method method, std::size_t trial);

  // Full per-frame logs for every regime of the scenario at one setting.
  std::vector<std::pair<Regime, SessionLog>> run_trial(double tau, Method method,
                                                       std::size_t trial);

  SweepCurve sweep(const std::vector<double>& grid, Method method, std::size_t trials);

  MetricsReport report(const TrialMetrics& m) const;

  std::uint64_t trial_stream_hash(std::size_t trial);

  // Generates trial content up front, optionally with worker threads.
  // Sessions themselves stay sequential, so results do not depend on jobs.
  void prefetch(std::size_t trials, int jobs);

  const SessionConfig& base_config() const { return base_; }
  const std::vector<Regime>& regimes() const { return regimes_; }

 private:
  const PreparedRegime& regime_trial(std::size_t trial, std::size_t regime_idx);
  PreparedRegime make_regime_trial(std::size_t trial, std::size_t regime_idx) const;

  Scenario scenario_;
  SessionConfig base_;
  FrameDims dims_;
  std::uint64_t master_seed_;
  std::vector<Regime> regimes_;
  std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<PreparedRegime>> cache_;
};

/*
 * Receiver-robustness sessions: warm, full prototype memories on both sides,
 * drifted queries addressed to a random prototype each frame, cue
 * verification active. Corruption hits the receiver copy only.
 */
struct RobustnessSessionConfig {
  std::size_t d = 48;
  std::size_t M = 8;
  double separation = 1.0;
  double epsilon = 0.08;
  double tau = 0.85;
  double beta = 8.0;
  std::size_t T = 120;
  std::size_t trials = 10;
  int bits_new_per_dim = 8;
  CueConfig cue;
  std::uint64_t master_seed = 1;
};

struct RobustnessCell {
  CorruptionMode mode = CorruptionMode::None;
  double level = 0.0;
  Method method = Method::Hopfield;
  double bits_per_frame = 0.0;  // mean over trials
  long refresh_total = 0;       // summed over trials
  long bits_total = 0;
  std::vector<SessionLog> logs;
};

RobustnessCell run_robustness_cell(const RobustnessSessionConfig& cfg,
                                   CorruptionMode mode, double level, Method method);

}  // namespace semcom
