#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "semcom/corruption.hpp"
#include "semcom/latent.hpp"
#include "semcom/memory.hpp"

namespace semcom {

// Transmitter decision statistic. For an empty store there is no match and
// s_eff is the forced-miss sentinel -1.
struct EffectiveSimilarity {
  bool has_match = false;
  std::size_t index = 0;
  double s_eff = -1.0;
};

// VQ (and the raw-similarity ablation) compare the raw best-match
// similarity against tau. Hopfield compares the similarity between the
// retrieved attractor state and the best-matching prototype of the raw
// query; this is what stabilizes decisions under drift.
EffectiveSimilarity effective_similarity(std::span<const double> z,
                                         const MemoryStore& store, Method method,
                                         double beta);

struct Decision {
  bool hit = false;
  std::size_t index = 0;
  double s_eff = -1.0;
};

// Hit iff s_eff >= tau (boundary counts as a hit). An empty store is a
// forced miss.
Decision tx_decide(std::span<const double> z, const MemoryStore& store, double tau,
                   Method method, double beta);

// Index cost: max(1, ceil(log2 M)). A one-entry memory still needs one bit
// on the wire.
long bits_for_id(std::size_t m);

// Per-frame bit accounting: hits pay the index cost, misses pay the fresh
// payload, and residual/cue overhead is added either way.
// Throws InvalidHitError for a hit against an empty memory.
long frame_bits(const Decision& decision, std::size_t m_before, long bits_new,
                long bits_res, long cue_bits);

struct CueConfig {
  int b_cue = 32;
  int t_cue = 8;  // floor(0.25 * b_cue)
  std::uint64_t cue_seed = 1;
  bool cue_on_new = true;
  double beta_c = 1.0;  // fallback association sharpness over cue distances
};

struct RobustnessConfig {
  bool enabled = false;
  CorruptionConfig corruption;
  CueConfig cue;
};

struct SessionConfig {
  std::size_t d = 48;
  std::size_t T = 60;  // frames generated per session
  double tau = 0.85;
  double beta = 8.0;
  std::size_t m_max = 8;
  int bits_new_per_dim = 8;
  Method method = Method::Hopfield;
  double omega = 1.0;
  long bits_res = 0;
  long b_raw_per_frame = 24576;  // raw codec cost, 8 bits/pixel at 32x32x3
  RobustnessConfig robustness;
  std::uint64_t master_seed = 0;

  long bits_new() const { return static_cast<long>(d) * bits_new_per_dim; }
};

struct TransmissionRecord {
  std::size_t t = 0;
  int hit = 0;
  std::int64_t index = -1;  // -1 when no prototype was referenced
  long bits_id = 0;
  long bits_new = 0;
  long bits_res = 0;
  long bits_cue = 0;
  double s_eff = -1.0;
  double distortion = 0.0;
  int refresh = 0;  // 1 on any NEW transmission (miss or failed verification)
};

struct SessionLog {
  std::vector<TransmissionRecord> records;
  long total_bits = 0;            // B_sem
  double hit_rate = 0.0;          // H-bar
  double avg_bits = 0.0;          // B_sem / T
  long refresh_count = 0;
  double mean_distortion = 0.0;
  std::vector<long> hit_index_counts;  // per id, hits only
  MemoryStore tx_store;
  MemoryStore rx_store;
};

// Optional per-frame distortion callback: (t, reconstruction, provenance of
// the reconstruction, -1 if none) -> distortion. Defaults to the
// latent-space squared error ||z - zhat||^2 / d.
using DistortionHook =
    std::function<double(std::size_t t, const LatentVector& zhat, std::int64_t source)>;

/*
 * Runs one transmitter/receiver session over a latent sequence. Both sides
 * start from the same warm prototypes (possibly none); receiver-side
 * corruption, cue verification, content fallback and refresh requests are
 * active when robustness is enabled. With robustness off the two stores stay
 * byte-identical after every frame.
 */
SessionLog run_session(const std::vector<LatentVector>& latents,
                       const SessionConfig& cfg,
                       const std::vector<LatentVector>& warm_prototypes = {},
                       const DistortionHook& distortion = nullptr);

}  // namespace semcom
