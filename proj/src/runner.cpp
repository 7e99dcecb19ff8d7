#include "semcom/runner.hpp"

#include <cmath>
#include <thread>

#include "semcom/errors.hpp"
#include "semcom/rng.hpp"

namespace semcom {

std::uint64_t hash_latents(const std::vector<LatentVector>& latents) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  auto mix = [&h](const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  for (const auto& z : latents) {
    auto vals = z.values();
    mix(vals.data(), vals.size() * sizeof(double));
  }
  return h;
}

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    double var = ss / static_cast<double>(xs.size() - 1);
    r.se = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return r;
}

PreparedRegime prepare_regime(Regime regime, FrameDims dims, const SessionConfig& base,
                              std::uint64_t content_seed,
                              std::uint64_t projection_seed) {
  PreparedRegime data;
  data.regime = regime;

  RegimeConfig rc;
  rc.regime = regime;
  rc.H = dims.H;
  rc.W = dims.W;
  rc.C = dims.C;
  rc.T = base.T;
  rc.seed = content_seed;
  std::vector<Frame> frames = generate_frames(rc);

  ProjectionCodec codec(base.d, dims.H, dims.W, dims.C, projection_seed);
  codec.calibrate(frames.front());

  data.latents.reserve(frames.size());
  for (const auto& f : frames) data.latents.push_back(codec.encode(f));
  data.stream_hash = hash_latents(data.latents);

  const std::size_t T = frames.size();
  std::vector<Frame> recon(T);
  for (std::size_t s = 0; s < T; ++s) {
    recon[s] =
        codec.decode(quantize_latent(data.latents[s], base.bits_new_per_dim).reconstructed);
  }
  data.mse_cross.assign(T, std::vector<double>(T, 0.0));
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t s = 0; s < T; ++s) {
      data.mse_cross[t][s] = distortion_mse(frames[t].pixels, recon[s].pixels);
    }
  }
  return data;
}

SessionLog run_prepared(const PreparedRegime& data, const SessionConfig& base,
                        double tau, Method method) {
  SessionConfig cfg = base;
  cfg.tau = tau;
  cfg.method = method;
  DistortionHook hook = [&data](std::size_t t, const LatentVector& zhat,
                                std::int64_t source) {
    (void)zhat;
    if (source >= 0 && static_cast<std::size_t>(source) < data.mse_cross.size()) {
      return data.mse_cross[t][static_cast<std::size_t>(source)];
    }
    return 1.0;  // unreachable in cold-start sessions
  };
  return run_session(data.latents, cfg, {}, hook);
}

ScenarioEvaluator::ScenarioEvaluator(Scenario scenario, const SessionConfig& base,
                                     FrameDims dims, std::uint64_t master_seed)
    : scenario_(scenario),
      base_(base),
      dims_(dims),
      master_seed_(master_seed),
      regimes_(scenario_regimes(scenario)) {
  base_.b_raw_per_frame = static_cast<long>(dims.H * dims.W * dims.C) * 8;
}

PreparedRegime ScenarioEvaluator::make_regime_trial(std::size_t trial,
                                                    std::size_t regime_idx) const {
  return prepare_regime(regimes_.at(regime_idx), dims_, base_,
                        derive_seed(master_seed_, trial, 101 + regime_idx),
                        derive_seed(master_seed_, trial, 7));
}

const PreparedRegime& ScenarioEvaluator::regime_trial(std::size_t trial,
                                                      std::size_t regime_idx) {
  auto key = std::make_pair(trial, regime_idx);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  auto data = std::make_unique<PreparedRegime>(make_regime_trial(trial, regime_idx));
  const PreparedRegime& ref = *data;
  cache_[key] = std::move(data);
  return ref;
}

void ScenarioEvaluator::prefetch(std::size_t trials, int jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (std::size_t r = 0; r < regimes_.size(); ++r) {
      if (cache_.find({trial, r}) == cache_.end()) todo.emplace_back(trial, r);
    }
  }
  if (todo.empty()) return;
  jobs = std::max(1, jobs);
  std::vector<std::unique_ptr<PreparedRegime>> made(todo.size());
  auto worker = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < todo.size(); i += stride) {
      made[i] = std::make_unique<PreparedRegime>(
          make_regime_trial(todo[i].first, todo[i].second));
    }
  };
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker, static_cast<std::size_t>(j), jobs);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < todo.size(); ++i) cache_[todo[i]] = std::move(made[i]);
}

ScenarioEvaluator::TrialMetrics ScenarioEvaluator::evaluate(double tau, Method method,
                                                            std::size_t trial) {
  TrialMetrics m;
  m.index_counts.assign(base_.m_max, 0);
  for (std::size_t r = 0; r < regimes_.size(); ++r) {
    const PreparedRegime& data = regime_trial(trial, r);
    SessionLog log = run_prepared(data, base_, tau, method);
    m.frames += static_cast<long>(log.records.size());
    for (const auto& rec : log.records) m.hits += rec.hit;
    m.bits += log.total_bits;
    m.refreshes += log.refresh_count;
    m.mse_sum += log.mean_distortion * static_cast<double>(log.records.size());
    for (std::size_t i = 0; i < log.hit_index_counts.size() && i < m.index_counts.size();
         ++i) {
      m.index_counts[i] += log.hit_index_counts[i];
    }
  }
  return m;
}

std::vector<std::pair<Regime, SessionLog>> ScenarioEvaluator::run_trial(
    double tau, Method method, std::size_t trial) {
  std::vector<std::pair<Regime, SessionLog>> out;
  for (std::size_t r = 0; r < regimes_.size(); ++r) {
    const PreparedRegime& data = regime_trial(trial, r);
    out.emplace_back(regimes_[r], run_prepared(data, base_, tau, method));
  }
  return out;
}

std::uint64_t ScenarioEvaluator::trial_stream_hash(std::size_t trial) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t r = 0; r < regimes_.size(); ++r) {
    std::uint64_t sh = regime_trial(trial, r).stream_hash;
    for (int b = 0; b < 8; ++b) {
      h ^= (sh >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

MetricsReport ScenarioEvaluator::report(const TrialMetrics& m) const {
  MetricsReport rep;
  if (m.frames == 0) return rep;
  const double T = static_cast<double>(m.frames);
  rep.hit_rate = static_cast<double>(m.hits) / T;
  rep.bits_per_frame = static_cast<double>(m.bits) / T;
  rep.b_sem_total = static_cast<double>(m.bits);
  rep.b_raw_total = static_cast<double>(base_.b_raw_per_frame) * T;
  rep.mean_mse = m.mse_sum / T;
  rep.psnr_db = psnr(rep.mean_mse);
  rep.compression_ratio = rep.b_raw_total / rep.b_sem_total;
  rep.semantic_efficiency = semantic_efficiency(static_cast<double>(m.hits), T,
                                                rep.b_raw_total, rep.b_sem_total);
  rep.reasoning_capacity = reasoning_capacity(rep.semantic_efficiency, base_.omega);
  long total_hits = 0;
  for (long c : m.index_counts) total_hits += c;
  rep.index_entropy = total_hits > 0 ? index_entropy(m.index_counts) : 0.0;
  return rep;
}

SweepCurve ScenarioEvaluator::sweep(const std::vector<double>& grid, Method method,
                                    std::size_t trials) {
  SweepCurve curve;
  curve.method = method;
  for (double tau : grid) {
    std::vector<double> hit, bits, mse, cr;
    std::uint64_t combined_hash = 1469598103934665603ULL;
    double mse_pool = 0.0;
    long frames_pool = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      TrialMetrics m = evaluate(tau, method, trial);
      MetricsReport rep = report(m);
      hit.push_back(rep.hit_rate);
      bits.push_back(rep.bits_per_frame);
      mse.push_back(rep.mean_mse);
      cr.push_back(rep.reasoning_capacity);
      mse_pool += m.mse_sum;
      frames_pool += m.frames;
      std::uint64_t th = trial_stream_hash(trial);
      for (int b = 0; b < 8; ++b) {
        combined_hash ^= (th >> (8 * b)) & 0xffULL;
        combined_hash *= 1099511628211ULL;
      }
    }
    SweepPoint p;
    p.tau = tau;
    MeanSe h = mean_se(hit), b = mean_se(bits), d = mean_se(mse), c = mean_se(cr);
    p.hit_rate = h.mean;
    p.hit_rate_se = h.se;
    p.bits_per_frame = b.mean;
    p.bits_per_frame_se = b.se;
    p.mse = d.mean;
    p.mse_se = d.se;
    p.psnr_db =
        psnr(frames_pool > 0 ? mse_pool / static_cast<double>(frames_pool) : d.mean);
    p.c_r = c.mean;
    p.c_r_se = c.se;
    p.trials = static_cast<int>(trials);
    p.stream_hash = combined_hash;
    curve.points.push_back(p);
  }
  return curve;
}

RobustnessCell run_robustness_cell(const RobustnessSessionConfig& cfg,
                                   CorruptionMode mode, double level, Method method) {
  RobustnessCell cell;
  cell.mode = mode;
  cell.level = level;
  cell.method = method;

  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    std::uint64_t trial_seed = derive_seed(cfg.master_seed, trial, 31);
    auto protos = generate_separated_prototypes(cfg.M, cfg.d, cfg.separation,
                                                derive_seed(trial_seed, 1));

    // Queries address a random prototype each frame with small residual drift.
    Rng pick(derive_seed(trial_seed, 2));
    std::vector<LatentVector> latents;
    latents.reserve(cfg.T);
    for (std::size_t t = 0; t < cfg.T; ++t) {
      std::size_t k = static_cast<std::size_t>(pick.uniform_int(cfg.M));
      DriftConfig dc;
      dc.mu_star = protos[k];
      dc.epsilon = cfg.epsilon;
      dc.T = 1;
      dc.renormalize = true;
      dc.seed = derive_seed(trial_seed, 1000 + t);
      latents.push_back(LatentVector(generate_drift_latents(dc).front().query));
    }

    SessionConfig sc;
    sc.d = cfg.d;
    sc.tau = cfg.tau;
    sc.beta = cfg.beta;
    sc.m_max = cfg.M;
    sc.bits_new_per_dim = cfg.bits_new_per_dim;
    sc.method = method;
    sc.robustness.enabled = true;
    sc.robustness.cue = cfg.cue;
    sc.robustness.corruption.mode = mode;
    sc.robustness.corruption.level = level;
    sc.robustness.corruption.seed = derive_seed(trial_seed, 3);
    sc.master_seed = trial_seed;

    SessionLog log = run_session(latents, sc, protos);
    cell.bits_total += log.total_bits;
    cell.refresh_total += log.refresh_count;
    cell.logs.push_back(std::move(log));
  }
  cell.bits_per_frame = static_cast<double>(cell.bits_total) /
                        static_cast<double>(cfg.T * cfg.trials);
  return cell;
}

}  // namespace semcom
