#pragma once

#include <cstdint>

#include "semcom/cue.hpp"
#include "semcom/memory.hpp"

namespace semcom {

enum class Method { Hopfield, VQ, HopfieldRawSim };

enum class CorruptionMode { None, IdDesync, VecPerturb };

// Receiver-memory error model. `level` is the permuted fraction p for
// IdDesync and the Gaussian noise sigma for VecPerturb.
struct CorruptionConfig {
  CorruptionMode mode = CorruptionMode::None;
  double level = 0.0;
  std::uint64_t seed = 0;
};

// Permutes the id_map for ceil(p*M) slots chosen uniformly without
// replacement; when two or more entries are selected, every selected entry
// moves (uniform derangement among them). Prototype vectors are untouched.
MemoryStore apply_id_desync(MemoryStore store, double p, std::uint64_t seed);

// mu_j <- normalize(mu_j + eps_j), eps_j ~ N(0, sigma^2 I). Cues are
// recomputed from the perturbed vectors (the receiver's memory stays
// self-consistent but wrong). sigma = 0 returns the store bit-identical.
MemoryStore apply_vec_perturb(MemoryStore store, double sigma, std::uint64_t seed);

MemoryStore apply_corruption(MemoryStore store, const CorruptionConfig& cfg);

// Outcome of receiver-side ID resolution. accepted=false means the receiver
// asks the transmitter to resend (a refresh request); that is a normal
// protocol outcome, not an error.
struct RxResolution {
  bool accepted = false;
  bool via_fallback = false;
  std::size_t slot = 0;
};

/*
 * Receiver procedure for an ID packet carrying a cue:
 *  1. Resolve the id through id_map and verify the cue against that slot's
 *     stored cue; accept on a pass.
 *  2. Otherwise fall back to content-addressable lookup over stored cues.
 *     VQ takes the slot at minimum Hamming distance. Hopfield forms soft
 *     weights proportional to exp(-beta_c * distance), blends the slot
 *     prototypes, and takes the slot nearest the blend. Accept if the
 *     chosen slot's cue verifies.
 *  3. Otherwise report a refresh request.
 */
RxResolution rx_resolve_id(std::size_t packet_id, const Cue& packet_cue,
                           const MemoryStore& rx_store, Method method,
                           double beta_c, int t_cue);

}  // namespace semcom
