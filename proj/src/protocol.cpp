#include "semcom/protocol.hpp"

#include <cmath>
#include <string>

#include "semcom/errors.hpp"

namespace semcom {

EffectiveSimilarity effective_similarity(std::span<const double> z,
                                         const MemoryStore& store, Method method,
                                         double beta) {
  if (store.empty()) return {};
  auto [j, s_max] = best_match(z, store);
  if (method == Method::VQ || method == Method::HopfieldRawSim) {
    return {true, j, s_max};
  }
  LatentVector attractor = hopfield_retrieve(z, store, beta);
  double s = cosine_sim(attractor.values(), store.prototype(j).values());
  return {true, j, s};
}

Decision tx_decide(std::span<const double> z, const MemoryStore& store, double tau,
                   Method method, double beta) {
  EffectiveSimilarity es = effective_similarity(z, store, method, beta);
  Decision d;
  d.index = es.index;
  d.s_eff = es.s_eff;
  d.hit = es.has_match && es.s_eff >= tau;
  return d;
}

long bits_for_id(std::size_t m) {
  if (m <= 1) return 1;
  long bits = 0;
  std::size_t span = 1;
  while (span < m) {
    span <<= 1;
    ++bits;
  }
  return bits;  // ceil(log2 m), m >= 2
}

long frame_bits(const Decision& decision, std::size_t m_before, long bits_new,
                long bits_res, long cue_bits) {
  if (decision.hit) {
    if (m_before == 0) throw InvalidHitError("frame_bits: hit with empty memory");
    return bits_for_id(m_before) + bits_res + cue_bits;
  }
  return bits_new + bits_res + cue_bits;
}

namespace {

double latent_mse(std::span<const double> z, const LatentVector& zhat) {
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double e = z[i] - zhat[i];
    acc += e * e;
  }
  return acc / static_cast<double>(z.size());
}

}  // namespace

SessionLog run_session(const std::vector<LatentVector>& latents,
                       const SessionConfig& cfg,
                       const std::vector<LatentVector>& warm_prototypes,
                       const DistortionHook& distortion) {
  for (const auto& z : latents) {
    if (z.dim() != cfg.d) {
      throw DimensionMismatchError("run_session: latent dim " +
                                   std::to_string(z.dim()) + " != configured " +
                                   std::to_string(cfg.d));
    }
  }

  const bool robust = cfg.robustness.enabled;
  const CueConfig& cue_cfg = cfg.robustness.cue;

  MemoryConfig mem_cfg;
  mem_cfg.dim = cfg.d;
  mem_cfg.capacity = cfg.m_max;
  mem_cfg.b_cue = cue_cfg.b_cue;
  mem_cfg.cue_seed = cue_cfg.cue_seed;

  SessionLog log;
  log.tx_store = MemoryStore(mem_cfg);
  log.rx_store = MemoryStore(mem_cfg);
  for (const auto& p : warm_prototypes) {
    log.tx_store.insert(p);
    log.rx_store.insert(p);
  }
  if (robust) {
    log.rx_store = apply_corruption(std::move(log.rx_store), cfg.robustness.corruption);
  }

  log.hit_index_counts.assign(cfg.m_max, 0);
  log.records.reserve(latents.size());

  const long b_new = cfg.bits_new();
  long hits = 0;
  double distortion_sum = 0.0;

  for (std::size_t t = 0; t < latents.size(); ++t) {
    const LatentVector& z = latents[t];
    const std::size_t m_before = log.tx_store.size();
    Decision dec = tx_decide(z.values(), log.tx_store, cfg.tau, cfg.method, cfg.beta);

    TransmissionRecord rec;
    rec.t = t;
    rec.s_eff = dec.s_eff;
    rec.bits_res = cfg.bits_res;

    LatentVector zhat;
    std::int64_t zhat_source = -1;

    if (dec.hit) {
      const long cue_bits = robust ? cue_cfg.b_cue : 0;
      Cue cue;
      if (robust) cue = log.tx_store.cue_codec().fingerprint(z.values());

      bool delivered = false;
      if (robust) {
        RxResolution res = rx_resolve_id(dec.index, cue, log.rx_store, cfg.method,
                                         cue_cfg.beta_c, cue_cfg.t_cue);
        if (res.accepted) {
          zhat = log.rx_store.slot_prototype(res.slot);
          zhat_source = log.rx_store.slot_source(res.slot);
          delivered = true;
        } else {
          // Verification failed: the transmitter resends the content as NEW
          // and both sides overwrite the implicated slot.
          QuantizedLatent q = quantize_latent(z, cfg.bits_new_per_dim);
          log.tx_store.overwrite(dec.index, q.reconstructed, static_cast<std::int64_t>(t));
          log.rx_store.overwrite(dec.index, q.reconstructed, static_cast<std::int64_t>(t));
          zhat = q.reconstructed;
          zhat_source = static_cast<std::int64_t>(t);
          rec.hit = 0;
          rec.index = static_cast<std::int64_t>(dec.index);
          rec.bits_new = b_new;
          rec.bits_cue = cue_cfg.b_cue;
          rec.refresh = 1;
        }
      } else {
        zhat = log.rx_store.prototype(dec.index);
        zhat_source = log.rx_store.source(dec.index);
        delivered = true;
      }

      if (delivered) {
        rec.hit = 1;
        rec.index = static_cast<std::int64_t>(dec.index);
        rec.bits_id = frame_bits(dec, m_before, b_new, 0, 0);
        rec.bits_cue = cue_bits;
        ++hits;
        if (dec.index < log.hit_index_counts.size()) ++log.hit_index_counts[dec.index];
      }
    } else {
      QuantizedLatent q = quantize_latent(z, cfg.bits_new_per_dim);
      const long cue_bits = (robust && cue_cfg.cue_on_new) ? cue_cfg.b_cue : 0;
      rec.bits_new = b_new;
      rec.bits_cue = cue_bits;
      rec.refresh = 1;
      // Both sides append the reconstruction while capacity remains;
      // otherwise the memory is unchanged and the frame is payload-only.
      log.tx_store.insert(q.reconstructed, static_cast<std::int64_t>(t));
      log.rx_store.insert(q.reconstructed, static_cast<std::int64_t>(t));
      zhat = q.reconstructed;
      zhat_source = static_cast<std::int64_t>(t);
    }

    rec.distortion = distortion ? distortion(t, zhat, zhat_source)
                                : latent_mse(z.values(), zhat);
    distortion_sum += rec.distortion;
    log.total_bits += rec.bits_id + rec.bits_new + rec.bits_res + rec.bits_cue;
    log.refresh_count += rec.refresh;
    log.records.push_back(rec);
  }

  const double T = static_cast<double>(latents.size());
  if (!latents.empty()) {
    log.hit_rate = static_cast<double>(hits) / T;
    log.avg_bits = static_cast<double>(log.total_bits) / T;
    log.mean_distortion = distortion_sum / T;
  }
  return log;
}

}  // namespace semcom
