#include "semcom/cue.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/latent.hpp"
#include "semcom/rng.hpp"

namespace semcom {

int hamming_distance(const Cue& a, const Cue& b) {
  if (a.length != b.length) {
    throw LengthMismatchError("cue length mismatch: " + std::to_string(a.length) +
                              " vs " + std::to_string(b.length));
  }
  return std::popcount(a.bits ^ b.bits);
}

bool verify_cue(const Cue& received, const Cue& stored, int t_cue) {
  return hamming_distance(received, stored) <= t_cue;
}

CueCodec::CueCodec(std::size_t dim, int b_cue, std::uint64_t cue_seed)
    : dim_(dim), b_cue_(b_cue), seed_(cue_seed) {
  if (b_cue < 1 || b_cue > 64) throw Error("CueCodec: b_cue must be in [1, 64]");
  Rng rng(derive_seed(cue_seed, 0xc0eULL));
  hyperplanes_.resize(static_cast<std::size_t>(b_cue) * dim);
  for (int i = 0; i < b_cue; ++i) {
    double n2 = 0.0;
    double* row = hyperplanes_.data() + static_cast<std::size_t>(i) * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = rng.normal();
      n2 += row[j] * row[j];
    }
    double n = std::sqrt(n2);
    for (std::size_t j = 0; j < dim; ++j) row[j] /= n;
  }
}

Cue CueCodec::fingerprint(std::span<const double> z) const {
  if (z.size() != dim_) {
    throw DimensionMismatchError("CueCodec::fingerprint: dim mismatch");
  }
  Cue c;
  c.length = b_cue_;
  for (int i = 0; i < b_cue_; ++i) {
    const double* row = hyperplanes_.data() + static_cast<std::size_t>(i) * dim_;
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += row[j] * z[j];
    if (s >= 0.0) c.bits |= (1ULL << i);
  }
  return c;
}

Cue simhash_cue(std::span<const double> z, int b_cue, std::uint64_t cue_seed) {
  return CueCodec(z.size(), b_cue, cue_seed).fingerprint(z);
}

}  // namespace semcom
