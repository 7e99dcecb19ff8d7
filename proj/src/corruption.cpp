#include "semcom/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/rng.hpp"

namespace semcom {

MemoryStore apply_id_desync(MemoryStore store, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw Error("apply_id_desync: p must be in [0, 1]");
  const std::size_t m = store.size();
  if (p == 0.0 || m == 0) return store;

  const std::size_t k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(m)));
  if (k < 2) return store;  // a single selected entry cannot move

  Rng rng(derive_seed(seed, 0x1dULL));

  // Select k ids without replacement (partial Fisher-Yates).
  std::vector<std::size_t> ids(m);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(m - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  std::sort(ids.begin(), ids.end());

  // Uniform derangement of the selected entries by rejection.
  auto& id_map = store.mutable_id_map();
  std::vector<std::size_t> targets(k);
  for (std::size_t i = 0; i < k; ++i) targets[i] = id_map[ids[i]];
  std::vector<std::size_t> perm(k);
  bool deranged = false;
  while (!deranged) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = k; i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
      std::swap(perm[i - 1], perm[j]);
    }
    deranged = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (perm[i] == i) {
        deranged = false;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) id_map[ids[i]] = targets[perm[i]];
  return store;
}

MemoryStore apply_vec_perturb(MemoryStore store, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw Error("apply_vec_perturb: sigma must be >= 0");
  if (sigma == 0.0 || store.size() == 0) return store;

  Rng rng(derive_seed(seed, 0x7eULL));
  for (std::size_t slot = 0; slot < store.size(); ++slot) {
    auto mu = store.slot_prototype(slot).values();
    std::vector<double> noisy(mu.begin(), mu.end());
    for (double& x : noisy) x += rng.normal(0.0, sigma);
    store.set_slot(slot, normalize(noisy), /*recompute_cue=*/true,
                   store.slot_source(slot));
  }
  return store;
}

MemoryStore apply_corruption(MemoryStore store, const CorruptionConfig& cfg) {
  switch (cfg.mode) {
    case CorruptionMode::None:
      return store;
    case CorruptionMode::IdDesync:
      return apply_id_desync(std::move(store), cfg.level, cfg.seed);
    case CorruptionMode::VecPerturb:
      return apply_vec_perturb(std::move(store), cfg.level, cfg.seed);
  }
  return store;
}

RxResolution rx_resolve_id(std::size_t packet_id, const Cue& packet_cue,
                           const MemoryStore& rx_store, Method method,
                           double beta_c, int t_cue) {
  if (packet_id >= rx_store.size()) {
    throw Error("rx_resolve_id: id " + std::to_string(packet_id) + " out of range");
  }

  // Step 1: trust the id map, verify the cue.
  std::size_t mapped = rx_store.slot_of(packet_id);
  if (verify_cue(packet_cue, rx_store.slot_cue(mapped), t_cue)) {
    return {true, false, mapped};
  }

  // Step 2: content-addressable lookup over stored cues.
  const std::size_t m = rx_store.size();
  std::size_t candidate = 0;
  if (method == Method::VQ || method == Method::HopfieldRawSim) {
    int best_dist = hamming_distance(packet_cue, rx_store.slot_cue(0));
    for (std::size_t s = 1; s < m; ++s) {
      int d = hamming_distance(packet_cue, rx_store.slot_cue(s));
      if (d < best_dist) {
        best_dist = d;
        candidate = s;
      }
    }
  } else {
    // Soft association over negative Hamming distances, then nearest slot
    // to the blended prototype.
    std::vector<double> w(m);
    int min_dist = hamming_distance(packet_cue, rx_store.slot_cue(0));
    std::vector<int> dist(m);
    for (std::size_t s = 0; s < m; ++s) {
      dist[s] = hamming_distance(packet_cue, rx_store.slot_cue(s));
      min_dist = std::min(min_dist, dist[s]);
    }
    double total = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      w[s] = std::exp(-beta_c * static_cast<double>(dist[s] - min_dist));
      total += w[s];
    }
    std::vector<double> blend(rx_store.dim(), 0.0);
    for (std::size_t s = 0; s < m; ++s) {
      auto mu = rx_store.slot_prototype(s).values();
      for (std::size_t i = 0; i < blend.size(); ++i) blend[i] += (w[s] / total) * mu[i];
    }
    LatentVector z = normalize(blend);
    double best_sim = -2.0;
    for (std::size_t s = 0; s < m; ++s) {
      double sim = cosine_sim(z.values(), rx_store.slot_prototype(s).values());
      if (sim > best_sim) {
        best_sim = sim;
        candidate = s;
      }
    }
  }
  if (verify_cue(packet_cue, rx_store.slot_cue(candidate), t_cue)) {
    return {true, true, candidate};
  }

  // Step 3: give up and request a refresh.
  return {false, true, mapped};
}

}  // namespace semcom
