#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "semcom/cue.hpp"
#include "semcom/latent.hpp"

namespace semcom {

// Softmax activations over stored prototypes; sums to 1.
struct RetrievalWeights {
  std::vector<double> weights;
};

struct MemoryConfig {
  std::size_t dim = 48;
  std::size_t capacity = 8;
  int b_cue = 32;
  std::uint64_t cue_seed = 1;
};

/*
 * The shared prototype memory. Slots hold unit-norm prototypes, a cue
 * fingerprint, and a provenance tag (source frame index, -1 if none).
 * id_map maps transmitted indices to slots; it is the identity unless a
 * corruption model has permuted it. Value type: sessions copy it freely,
 * never share it mutably.
 */
class MemoryStore {
 public:
  MemoryStore() = default;
  explicit MemoryStore(const MemoryConfig& cfg);

  std::size_t size() const { return slots_.size(); }
  std::size_t capacity() const { return cfg_.capacity; }
  std::size_t dim() const { return cfg_.dim; }
  bool empty() const { return slots_.empty(); }

  // Appends z if below capacity (new slot, identity id_map entry, cue
  // computed from z). Returns false and leaves the store unchanged when full.
  bool insert(const LatentVector& z, std::int64_t source = -1);

  // Lookup through id_map.
  const LatentVector& prototype(std::size_t id) const;
  const Cue& cue(std::size_t id) const;
  std::int64_t source(std::size_t id) const;
  std::size_t slot_of(std::size_t id) const;

  // Direct slot access (content-addressable paths and corruption models).
  const LatentVector& slot_prototype(std::size_t slot) const;
  const Cue& slot_cue(std::size_t slot) const;
  std::int64_t slot_source(std::size_t slot) const;

  // Replaces the slot that `id` currently resolves to. Cue is recomputed
  // from the new prototype.
  void overwrite(std::size_t id, const LatentVector& z, std::int64_t source = -1);

  // Mutators used by the corruption models.
  void set_slot(std::size_t slot, const LatentVector& z, bool recompute_cue,
                std::int64_t source);
  std::vector<std::size_t>& mutable_id_map() { return id_map_; }
  const std::vector<std::size_t>& id_map() const { return id_map_; }

  const CueCodec& cue_codec() const { return codec_; }
  const MemoryConfig& config() const { return cfg_; }

  bool operator==(const MemoryStore& other) const;

 private:
  struct Slot {
    LatentVector prototype;
    Cue cue;
    std::int64_t source = -1;

    bool operator==(const Slot&) const = default;
  };

  MemoryConfig cfg_;
  CueCodec codec_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> id_map_;
};

// argmax_j <z, mu_j> over ids; ties broken by lowest index.
// Throws EmptyMemoryError on an empty store.
std::pair<std::size_t, double> best_match(std::span<const double> z,
                                          const MemoryStore& store);

// w_j = exp(beta <z, mu_j>) / sum_k exp(beta <z, mu_k>), max-shifted for
// stability. Throws EmptyMemoryError / NonPositiveBetaError.
RetrievalWeights hopfield_weights(std::span<const double> z,
                                  const MemoryStore& store, double beta);

// normalize(sum_j w_j mu_j). ZeroVectorError propagates if the weighted sum
// cancels exactly.
LatentVector hopfield_retrieve(std::span<const double> z,
                               const MemoryStore& store, double beta);

// Hard nearest-neighbor selection: (j*, mu_j*).
std::pair<std::size_t, LatentVector> vq_retrieve(std::span<const double> z,
                                                 const MemoryStore& store);

}  // namespace semcom
