#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semcom {

/*
 * Unit-norm semantic latent. The constructor enforces the invariant (norm
 * within 1e-9 of 1, all components finite); everything downstream can rely
 * on it without re-checking.
 */
class LatentVector {
 public:
  LatentVector() = default;
  explicit LatentVector(std::vector<double> values);

  static LatentVector unit_axis(std::size_t dim, std::size_t axis);

  std::size_t dim() const { return v_.size(); }
  std::span<const double> values() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

  bool operator==(const LatentVector& other) const = default;

 private:
  std::vector<double> v_;
};

double norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

// v / ||v||. Throws ZeroVectorError when ||v|| < 1e-12. Re-normalizing an
// already-unit vector is a bitwise no-op (idempotent).
LatentVector normalize(std::span<const double> v);
inline LatentVector normalize(const std::vector<double>& v) {
  return normalize(std::span<const double>(v));
}

// Dot product clamped to [-1, 1]. Throws DimensionMismatchError.
double cosine_sim(const LatentVector& a, const LatentVector& b);
double cosine_sim(std::span<const double> a, std::span<const double> b);

/*
 * Uniform per-component scalar quantization over [-1, 1], followed by
 * renormalization of the dequantized vector back onto the sphere.
 * Payload is bits * d.
 */
struct QuantizedLatent {
  std::vector<std::uint32_t> codes;
  int bits = 8;
  LatentVector reconstructed;

  std::size_t payload_bits() const { return codes.size() * static_cast<std::size_t>(bits); }
};

QuantizedLatent quantize_latent(const LatentVector& z, int bits = 8);

}  // namespace semcom
