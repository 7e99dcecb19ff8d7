#include "semcom/memory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"

namespace semcom {

MemoryStore::MemoryStore(const MemoryConfig& cfg)
    : cfg_(cfg), codec_(cfg.dim, cfg.b_cue, cfg.cue_seed) {
  id_map_.reserve(cfg.capacity);
}

bool MemoryStore::insert(const LatentVector& z, std::int64_t source) {
  if (z.dim() != cfg_.dim) throw DimensionMismatchError("MemoryStore::insert: dim mismatch");
  if (slots_.size() >= cfg_.capacity) return false;
  Slot s;
  s.prototype = z;
  s.cue = codec_.fingerprint(z.values());
  s.source = source;
  slots_.push_back(std::move(s));
  id_map_.push_back(slots_.size() - 1);
  return true;
}

const LatentVector& MemoryStore::prototype(std::size_t id) const {
  return slots_.at(id_map_.at(id)).prototype;
}

const Cue& MemoryStore::cue(std::size_t id) const {
  return slots_.at(id_map_.at(id)).cue;
}

std::int64_t MemoryStore::source(std::size_t id) const {
  return slots_.at(id_map_.at(id)).source;
}

std::size_t MemoryStore::slot_of(std::size_t id) const { return id_map_.at(id); }

const LatentVector& MemoryStore::slot_prototype(std::size_t slot) const {
  return slots_.at(slot).prototype;
}

const Cue& MemoryStore::slot_cue(std::size_t slot) const { return slots_.at(slot).cue; }

std::int64_t MemoryStore::slot_source(std::size_t slot) const {
  return slots_.at(slot).source;
}

void MemoryStore::overwrite(std::size_t id, const LatentVector& z, std::int64_t source) {
  set_slot(id_map_.at(id), z, /*recompute_cue=*/true, source);
}

void MemoryStore::set_slot(std::size_t slot, const LatentVector& z, bool recompute_cue,
                           std::int64_t source) {
  Slot& s = slots_.at(slot);
  s.prototype = z;
  if (recompute_cue) s.cue = codec_.fingerprint(z.values());
  s.source = source;
}

bool MemoryStore::operator==(const MemoryStore& other) const {
  return slots_ == other.slots_ && id_map_ == other.id_map_ &&
         cfg_.dim == other.cfg_.dim && cfg_.capacity == other.cfg_.capacity &&
         cfg_.b_cue == other.cfg_.b_cue && cfg_.cue_seed == other.cfg_.cue_seed;
}

std::pair<std::size_t, double> best_match(std::span<const double> z,
                                          const MemoryStore& store) {
  if (store.empty()) throw EmptyMemoryError("best_match: empty memory");
  std::size_t best = 0;
  double best_sim = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < store.size(); ++j) {
    double s = dot(z, store.prototype(j).values());
    if (s > best_sim) {
      best_sim = s;
      best = j;
    }
  }
  return {best, best_sim};
}

RetrievalWeights hopfield_weights(std::span<const double> z,
                                  const MemoryStore& store, double beta) {
  if (store.empty()) throw EmptyMemoryError("hopfield_weights: empty memory");
  if (beta <= 0.0) throw NonPositiveBetaError("hopfield_weights: beta must be > 0");
  const std::size_t m = store.size();
  std::vector<double> logits(m);
  double max_logit = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    logits[j] = beta * dot(z, store.prototype(j).values());
    max_logit = std::max(max_logit, logits[j]);
  }
  RetrievalWeights w;
  w.weights.resize(m);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    w.weights[j] = std::exp(logits[j] - max_logit);
    total += w.weights[j];
  }
  for (double& x : w.weights) x /= total;
  return w;
}

LatentVector hopfield_retrieve(std::span<const double> z,
                               const MemoryStore& store, double beta) {
  RetrievalWeights w = hopfield_weights(z, store, beta);
  std::vector<double> blend(store.dim(), 0.0);
  for (std::size_t j = 0; j < store.size(); ++j) {
    auto mu = store.prototype(j).values();
    for (std::size_t i = 0; i < blend.size(); ++i) blend[i] += w.weights[j] * mu[i];
  }
  return normalize(blend);
}

std::pair<std::size_t, LatentVector> vq_retrieve(std::span<const double> z,
                                                 const MemoryStore& store) {
  auto [j, sim] = best_match(z, store);
  (void)sim;
  return {j, store.prototype(j)};
}

}  // namespace semcom
