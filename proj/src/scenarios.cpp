#include "semcom/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/rng.hpp"

namespace semcom {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Static: return "static";
    case Regime::LowMotion: return "low_motion";
    case Regime::HighMotion: return "high_motion";
    case Regime::SceneChange: return "scene_change";
    case Regime::RepetitiveReturn: return "repetitive_return";
    case Regime::CamShake: return "cam_shake";
    case Regime::HighTexture: return "high_texture";
    case Regime::IllumChange: return "illum_change";
  }
  return "unknown";
}

Regime regime_from_name(const std::string& name) {
  for (Regime r : {Regime::Static, Regime::LowMotion, Regime::HighMotion,
                   Regime::SceneChange, Regime::RepetitiveReturn, Regime::CamShake,
                   Regime::HighTexture, Regime::IllumChange}) {
    if (name == regime_name(r)) return r;
  }
  throw ConfigError("unknown regime: " + name);
}

namespace {

constexpr std::size_t kCanvas = 96;  // toroidal canvas edge, pixels

struct Canvas {
  std::size_t c = 3;
  std::vector<double> px;  // kCanvas x kCanvas x c

  double at(std::size_t y, std::size_t x, std::size_t ch) const {
    return px[(y * kCanvas + x) * c + ch];
  }
};

// Smooth content: blurred white noise on a torus, rescaled to mean 0.5 and
// std ~0.17 so neighbouring windows stay strongly correlated.
Canvas smooth_canvas(std::size_t channels, Rng& rng) {
  Canvas cv;
  cv.c = channels;
  cv.px.resize(kCanvas * kCanvas * channels);
  for (double& x : cv.px) x = rng.normal();

  const int radius = 6;
  std::vector<double> tmp(cv.px.size());
  for (int pass = 0; pass < 3; ++pass) {
    // horizontal then vertical box blur with wraparound
    for (std::size_t y = 0; y < kCanvas; ++y) {
      for (std::size_t x = 0; x < kCanvas; ++x) {
        for (std::size_t ch = 0; ch < channels; ++ch) {
          double acc = 0.0;
          for (int k = -radius; k <= radius; ++k) {
            std::size_t xx = (x + kCanvas + static_cast<std::size_t>(k + kCanvas)) % kCanvas;
            acc += cv.px[(y * kCanvas + xx) * channels + ch];
          }
          tmp[(y * kCanvas + x) * channels + ch] = acc / (2 * radius + 1);
        }
      }
    }
    for (std::size_t y = 0; y < kCanvas; ++y) {
      for (std::size_t x = 0; x < kCanvas; ++x) {
        for (std::size_t ch = 0; ch < channels; ++ch) {
          double acc = 0.0;
          for (int k = -radius; k <= radius; ++k) {
            std::size_t yy = (y + kCanvas + static_cast<std::size_t>(k + kCanvas)) % kCanvas;
            acc += tmp[(yy * kCanvas + x) * channels + ch];
          }
          cv.px[(y * kCanvas + x) * channels + ch] = acc / (2 * radius + 1);
        }
      }
    }
  }

  double mean = 0.0;
  for (double x : cv.px) mean += x;
  mean /= static_cast<double>(cv.px.size());
  double var = 0.0;
  for (double x : cv.px) var += (x - mean) * (x - mean);
  var /= static_cast<double>(cv.px.size());
  double sd = std::sqrt(std::max(var, 1e-30));
  for (double& x : cv.px) {
    x = 0.5 + 0.17 * (x - mean) / sd;
    x = std::clamp(x, 0.0, 1.0);
  }
  return cv;
}

// Shake content: sparse bright dots on a dark field. Nearly uncorrelated
// under single-pixel shifts, which is what makes the jitter regime hard for
// hard nearest-neighbor matching.
Canvas dot_canvas(std::size_t channels, Rng& rng) {
  Canvas cv;
  cv.c = channels;
  cv.px.resize(kCanvas * kCanvas * channels);
  constexpr double kDensity = 0.13;
  for (std::size_t i = 0; i < kCanvas * kCanvas; ++i) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      cv.px[i * channels + ch] = (rng.uniform() < kDensity) ? 0.95 : 0.04;
    }
  }
  return cv;
}

Frame window(const Canvas& cv, std::size_t h, std::size_t w, long oy, long ox) {
  Frame f;
  f.h = h;
  f.w = w;
  f.c = cv.c;
  f.pixels.resize(h * w * cv.c);
  const long cs = static_cast<long>(kCanvas);
  for (std::size_t y = 0; y < h; ++y) {
    std::size_t yy = static_cast<std::size_t>(((static_cast<long>(y) + oy) % cs + cs) % cs);
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t xx = static_cast<std::size_t>(((static_cast<long>(x) + ox) % cs + cs) % cs);
      for (std::size_t ch = 0; ch < cv.c; ++ch) {
        f.at(y, x, ch) = cv.at(yy, xx, ch);
      }
    }
  }
  return f;
}

void add_noise(Frame& f, double amplitude, Rng& rng) {
  for (double& x : f.pixels) {
    x = std::clamp(x + rng.uniform(-amplitude, amplitude), 0.0, 1.0);
  }
}

}  // namespace

std::vector<Frame> generate_frames(const RegimeConfig& cfg) {
  if (cfg.H == 0 || cfg.W == 0 || cfg.C == 0 || cfg.T == 0) {
    throw InvalidDimsError("generate_frames: dimensions must be positive");
  }
  if (cfg.H > kCanvas || cfg.W > kCanvas) {
    throw InvalidDimsError("generate_frames: frame exceeds canvas size");
  }

  Rng canvas_rng(derive_seed(cfg.seed, 0));
  Rng noise_rng(derive_seed(cfg.seed, 1));
  Rng jitter_rng(derive_seed(cfg.seed, 2));

  std::vector<Frame> out;
  out.reserve(cfg.T);

  switch (cfg.regime) {
    case Regime::Static: {
      Canvas cv = smooth_canvas(cfg.C, canvas_rng);
      for (std::size_t t = 0; t < cfg.T; ++t) {
        Frame f = window(cv, cfg.H, cfg.W, 0, 0);
        add_noise(f, cfg.static_noise, noise_rng);
        out.push_back(std::move(f));
      }
      break;
    }
    case Regime::LowMotion: {
      Canvas cv = smooth_canvas(cfg.C, canvas_rng);
      for (std::size_t t = 0; t < cfg.T; ++t) {
        long ox = static_cast<long>(t / static_cast<std::size_t>(std::max(1, cfg.motion_every))) *
                  cfg.motion_px;
        out.push_back(window(cv, cfg.H, cfg.W, 0, ox));
      }
      break;
    }
    case Regime::HighMotion: {
      Canvas cv = smooth_canvas(cfg.C, canvas_rng);
      const long step = std::max<long>(cfg.fast_motion_px, static_cast<long>(cfg.H / 4));
      for (std::size_t t = 0; t < cfg.T; ++t) {
        out.push_back(window(cv, cfg.H, cfg.W, 0, static_cast<long>(t) * step));
      }
      break;
    }
    case Regime::SceneChange: {
      std::vector<Canvas> scenes;
      for (int k = 0; k < std::max(1, cfg.scene_count); ++k) {
        scenes.push_back(smooth_canvas(cfg.C, canvas_rng));
      }
      for (std::size_t t = 0; t < cfg.T; ++t) {
        std::size_t k = std::min<std::size_t>(scenes.size() - 1,
                                              t * scenes.size() / cfg.T);
        out.push_back(window(scenes[k], cfg.H, cfg.W, 0, 0));
      }
      break;
    }
    case Regime::RepetitiveReturn: {
      Canvas a = smooth_canvas(cfg.C, canvas_rng);
      Canvas b = smooth_canvas(cfg.C, canvas_rng);
      std::size_t seg_len = std::max<std::size_t>(1, cfg.T / static_cast<std::size_t>(
                                                         std::max(1, cfg.repeat_segments)));
      for (std::size_t t = 0; t < cfg.T; ++t) {
        bool phase_a = ((t / seg_len) % 2) == 0;
        out.push_back(window(phase_a ? a : b, cfg.H, cfg.W, 0, 0));
      }
      break;
    }
    case Regime::CamShake: {
      Canvas cv = dot_canvas(cfg.C, canvas_rng);
      const long a = std::max(0, cfg.shake_amp);
      for (std::size_t t = 0; t < cfg.T; ++t) {
        long dx = static_cast<long>(jitter_rng.uniform_int(2 * a + 1)) - a;
        long dy = static_cast<long>(jitter_rng.uniform_int(2 * a + 1)) - a;
        out.push_back(window(cv, cfg.H, cfg.W, dy, dx));
      }
      break;
    }
    case Regime::HighTexture: {
      for (std::size_t t = 0; t < cfg.T; ++t) {
        Frame f;
        f.h = cfg.H;
        f.w = cfg.W;
        f.c = cfg.C;
        f.pixels.resize(cfg.H * cfg.W * cfg.C);
        for (double& x : f.pixels) x = noise_rng.uniform();
        out.push_back(std::move(f));
      }
      break;
    }
    case Regime::IllumChange: {
      Canvas cv = smooth_canvas(cfg.C, canvas_rng);
      Frame base = window(cv, cfg.H, cfg.W, 0, 0);
      for (std::size_t t = 0; t < cfg.T; ++t) {
        double ramp = cfg.T > 1 ? cfg.illum_lo + (cfg.illum_hi - cfg.illum_lo) *
                                                     static_cast<double>(t) /
                                                     static_cast<double>(cfg.T - 1)
                                : cfg.illum_hi;
        Frame f = base;
        for (double& x : f.pixels) x = std::clamp(x * ramp, 0.0, 1.0);
        out.push_back(std::move(f));
      }
      break;
    }
  }
  return out;
}

ProjectionCodec::ProjectionCodec(std::size_t d, std::size_t h, std::size_t w,
                                 std::size_t c, std::uint64_t projection_seed)
    : d_(d), h_(h), w_(w), c_(c) {
  const std::size_t n = h * w * c;
  if (d == 0 || n == 0) throw InvalidDimsError("ProjectionCodec: empty dimensions");
  Rng rng(derive_seed(projection_seed, 0xabcULL));
  p_.resize(d * n);
  for (double& x : p_) x = rng.normal();
}

LatentVector ProjectionCodec::encode(const Frame& x) const {
  const std::size_t n = h_ * w_ * c_;
  if (x.size() != n) throw InvalidDimsError("ProjectionCodec::encode: frame size mismatch");
  std::vector<double> y(d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    const double* row = p_.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x.pixels[j];
    y[i] = acc;
  }
  return normalize(y);
}

Frame ProjectionCodec::decode(const LatentVector& z) const {
  if (z.dim() != d_) throw DimensionMismatchError("ProjectionCodec::decode: dim mismatch");
  const std::size_t n = h_ * w_ * c_;
  Frame f;
  f.h = h_;
  f.w = w_;
  f.c = c_;
  f.pixels.assign(n, 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    const double* row = p_.data() + i * n;
    const double zi = z[i];
    for (std::size_t j = 0; j < n; ++j) f.pixels[j] += row[j] * zi;
  }
  for (double& x : f.pixels) x = std::clamp(scale_ * x, 0.0, 1.0);
  return f;
}

void ProjectionCodec::calibrate(const Frame& reference) {
  const std::size_t n = h_ * w_ * c_;
  if (reference.size() != n) {
    throw InvalidDimsError("ProjectionCodec::calibrate: frame size mismatch");
  }
  LatentVector z = encode(reference);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    const double* row = p_.data() + i * n;
    const double zi = z[i];
    for (std::size_t j = 0; j < n; ++j) u[j] += row[j] * zi;
  }
  double uu = 0.0, xu = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    uu += u[j] * u[j];
    xu += reference.pixels[j] * u[j];
  }
  scale_ = uu > 0.0 ? xu / uu : 1.0;
}

std::vector<DriftSample> generate_drift_latents(const DriftConfig& cfg) {
  if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0) {
    throw Error("generate_drift_latents: epsilon must be in (0, 1)");
  }
  const std::size_t d = cfg.mu_star.dim();
  const double sigma_total = cfg.sigma > 0.0 ? cfg.sigma : cfg.epsilon;
  if (cfg.dist == DriftDistribution::GaussianTruncated && sigma_total > cfg.epsilon) {
    throw Error("generate_drift_latents: sigma must be <= epsilon");
  }

  Rng rng(derive_seed(cfg.seed, 0xd1fULL));
  std::vector<DriftSample> out;
  out.reserve(cfg.T);
  for (std::size_t t = 0; t < cfg.T; ++t) {
    std::vector<double> delta(d);
    if (cfg.dist == DriftDistribution::UniformBall) {
      // isotropic direction scaled by eps * U^(1/d): uniform in the ball
      double n2 = 0.0;
      for (double& x : delta) {
        x = rng.normal();
        n2 += x * x;
      }
      double n = std::sqrt(std::max(n2, 1e-300));
      double radius = cfg.epsilon * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
      for (double& x : delta) x *= radius / n;
    } else {
      const double comp_sd = sigma_total / std::sqrt(static_cast<double>(d));
      for (;;) {
        double n2 = 0.0;
        for (double& x : delta) {
          x = rng.normal(0.0, comp_sd);
          n2 += x * x;
        }
        if (std::sqrt(n2) <= cfg.epsilon) break;  // rejection keeps the bound
      }
    }
    DriftSample s;
    s.delta = delta;
    s.query.resize(d);
    for (std::size_t i = 0; i < d; ++i) s.query[i] = cfg.mu_star[i] + delta[i];
    if (cfg.renormalize) {
      LatentVector zn = normalize(s.query);
      s.query.assign(zn.values().begin(), zn.values().end());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LatentVector> generate_separated_prototypes(std::size_t m, std::size_t d,
                                                        double min_separation,
                                                        std::uint64_t seed) {
  if (min_separation <= 0.0) throw Error("generate_separated_prototypes: separation must be > 0");
  Rng rng(derive_seed(seed, 0x5e9ULL));
  std::vector<LatentVector> protos;
  protos.reserve(m);
  const long budget = 100000;
  long attempts = 0;
  while (protos.size() < m) {
    if (++attempts > budget) {
      throw InfeasibleSeparationError(
          "generate_separated_prototypes: no feasible configuration within attempt budget");
    }
    std::vector<double> v(d);
    for (double& x : v) x = rng.normal();
    LatentVector cand;
    try {
      cand = normalize(v);
    } catch (const ZeroVectorError&) {
      continue;
    }
    bool ok = true;
    for (const auto& p : protos) {
      double dist2 = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double e = cand[i] - p[i];
        dist2 += e * e;
      }
      if (dist2 < min_separation * min_separation) {
        ok = false;
        break;
      }
    }
    if (ok) protos.push_back(std::move(cand));
  }
  return protos;
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Stable: return "stable";
    case Scenario::GradualDrift: return "gradual_drift";
    case Scenario::Moderate: return "moderate";
  }
  return "unknown";
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::Stable, Scenario::GradualDrift, Scenario::Moderate}) {
    if (name == scenario_name(s)) return s;
  }
  throw ConfigError("unknown scenario: " + name);
}

std::vector<Regime> scenario_regimes(Scenario s) {
  switch (s) {
    case Scenario::Stable:
      return {Regime::Static, Regime::LowMotion, Regime::RepetitiveReturn};
    case Scenario::GradualDrift:
      return {Regime::IllumChange, Regime::CamShake};
    case Scenario::Moderate:
      return {Regime::HighMotion, Regime::HighTexture};
  }
  return {};
}

}  // namespace semcom
