#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semcom/latent.hpp"

namespace semcom {

struct Frame {
  std::size_t h = 0, w = 0, c = 0;
  std::vector<double> pixels;  // row-major (y, x, channel), values in [0, 1]

  double& at(std::size_t y, std::size_t x, std::size_t ch) {
    return pixels[(y * w + x) * c + ch];
  }
  double at(std::size_t y, std::size_t x, std::size_t ch) const {
    return pixels[(y * w + x) * c + ch];
  }
  std::size_t size() const { return pixels.size(); }
};

enum class Regime {
  Static,
  LowMotion,
  HighMotion,
  SceneChange,
  RepetitiveReturn,
  CamShake,
  HighTexture,
  IllumChange,
};

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& name);

struct RegimeConfig {
  Regime regime = Regime::Static;
  std::size_t T = 60;
  std::size_t H = 32, W = 32, C = 3;
  std::uint64_t seed = 0;

  double static_noise = 0.005;   // per-pixel noise amplitude in the static regime
  int motion_px = 1;             // low_motion step
  int motion_every = 4;          // frames between low_motion steps
  int fast_motion_px = 8;        // high_motion step (floored at H/4)
  int scene_count = 3;
  int repeat_segments = 8;       // repetitive_return alternates every T/8
  int shake_amp = 2;             // cam_shake jitter in {-a..a}
  double illum_lo = 0.5, illum_hi = 1.0;
};

// Deterministic synthetic frame generation per content regime.
std::vector<Frame> generate_frames(const RegimeConfig& cfg);

/*
 * Deterministic stand-in for a learned encoder/decoder pair: a fixed random
 * projection P (d x HWC, i.i.d. standard normal from projection_seed).
 * encode(x) = normalize(P flatten(x)); decode(z) = clamp(c P^T z, 0, 1) with
 * the scale c calibrated once per session against a reference frame.
 */
class ProjectionCodec {
 public:
  ProjectionCodec() = default;
  ProjectionCodec(std::size_t d, std::size_t h, std::size_t w, std::size_t c,
                  std::uint64_t projection_seed);

  LatentVector encode(const Frame& x) const;
  Frame decode(const LatentVector& z) const;
  void calibrate(const Frame& reference);
  double scale() const { return scale_; }
  std::size_t latent_dim() const { return d_; }

 private:
  std::size_t d_ = 0, h_ = 0, w_ = 0, c_ = 0;
  std::vector<double> p_;  // d x n row-major
  double scale_ = 1.0;
};

enum class DriftDistribution { UniformBall, GaussianTruncated };

struct DriftConfig {
  LatentVector mu_star;
  double epsilon = 0.1;
  std::size_t T = 60;
  DriftDistribution dist = DriftDistribution::UniformBall;
  double sigma = 0.0;       // total-norm std for GaussianTruncated; epsilon if 0
  bool renormalize = true;  // protocol path: true; theorem path: false
  std::uint64_t seed = 0;
};

// One drifted query z_t = mu* + delta_t with ||delta_t|| <= epsilon.
// `query` is renormalized onto the sphere iff cfg.renormalize.
struct DriftSample {
  std::vector<double> query;
  std::vector<double> delta;
};

std::vector<DriftSample> generate_drift_latents(const DriftConfig& cfg);

// M unit vectors with pairwise Euclidean separation >= min_separation.
// Throws InfeasibleSeparationError after 1e5 candidate draws.
std::vector<LatentVector> generate_separated_prototypes(std::size_t m, std::size_t d,
                                                        double min_separation,
                                                        std::uint64_t seed);

enum class Scenario { Stable, GradualDrift, Moderate };

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// Regime groupings: STABLE = {static, low_motion, repetitive_return},
// GRADUAL DRIFT = {illum_change, cam_shake}, MODERATE = {high_motion,
// high_texture}. scene_change is runnable standalone but belongs to no group.
std::vector<Regime> scenario_regimes(Scenario s);

}  // namespace semcom
