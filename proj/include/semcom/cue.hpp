#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semcom {

// Short SimHash fingerprint attached to packets for receiver-side memory
// verification. At most 64 bits, stored packed.
struct Cue {
  std::uint64_t bits = 0;
  int length = 0;

  bool operator==(const Cue&) const = default;
};

int hamming_distance(const Cue& a, const Cue& b);  // LengthMismatchError

// Accept iff Hamming distance <= t_cue.
bool verify_cue(const Cue& received, const Cue& stored, int t_cue);

/*
 * Fixed bank of random unit hyperplane normals shared by both endpoints
 * (same cue_seed). Bit i of a fingerprint is sign(<h_i, z> >= 0).
 */
class CueCodec {
 public:
  CueCodec() = default;
  CueCodec(std::size_t dim, int b_cue, std::uint64_t cue_seed);

  Cue fingerprint(std::span<const double> z) const;
  int length() const { return b_cue_; }
  std::size_t dim() const { return dim_; }

  bool operator==(const CueCodec&) const = default;

 private:
  std::size_t dim_ = 0;
  int b_cue_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> hyperplanes_;  // b_cue x dim, row-major
};

// Convenience form: build a codec and fingerprint one vector.
Cue simhash_cue(std::span<const double> z, int b_cue, std::uint64_t cue_seed);

}  // namespace semcom
