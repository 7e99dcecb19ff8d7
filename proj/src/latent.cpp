#include "semcom/latent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semcom/errors.hpp"

namespace semcom {

namespace {
constexpr double kUnitTolerance = 1e-9;
constexpr double kZeroNorm = 1e-12;
}  // namespace

LatentVector::LatentVector(std::vector<double> values) : v_(std::move(values)) {
  double n2 = 0.0;
  for (double x : v_) {
    if (!std::isfinite(x)) throw Error("LatentVector: non-finite component");
    n2 += x * x;
  }
  double n = std::sqrt(n2);
  if (std::abs(n - 1.0) > kUnitTolerance) {
    throw Error("LatentVector: norm " + std::to_string(n) + " is not unit");
  }
}

LatentVector LatentVector::unit_axis(std::size_t dim, std::size_t axis) {
  std::vector<double> v(dim, 0.0);
  v.at(axis) = 1.0;
  return LatentVector(std::move(v));
}

double norm(std::span<const double> v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  return std::sqrt(n2);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("dot: dimensions " + std::to_string(a.size()) +
                                 " vs " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LatentVector normalize(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error("normalize: non-finite input");
  }
  double n = norm(v);
  if (n < kZeroNorm) throw ZeroVectorError("normalize: input norm below 1e-12");
  std::vector<double> out(v.begin(), v.end());
  // Already unit: keep the exact bits so normalize(normalize(v)) == normalize(v).
  if (std::abs(n - 1.0) > 1e-12) {
    for (double& x : out) x /= n;
  }
  return LatentVector(std::move(out));
}

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  double s = dot(a, b);
  return std::clamp(s, -1.0, 1.0);
}

double cosine_sim(const LatentVector& a, const LatentVector& b) {
  return cosine_sim(a.values(), b.values());
}

QuantizedLatent quantize_latent(const LatentVector& z, int bits) {
  if (bits < 1 || bits > 16) {
    throw Error("quantize_latent: bits must be in [1, 16]");
  }
  const double levels = static_cast<double>((1u << bits) - 1u);
  QuantizedLatent q;
  q.bits = bits;
  q.codes.resize(z.dim());
  std::vector<double> deq(z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) {
    double scaled = (z[i] + 1.0) / 2.0 * levels;
    long long code = std::llround(scaled);
    code = std::clamp<long long>(code, 0, static_cast<long long>(levels));
    q.codes[i] = static_cast<std::uint32_t>(code);
    deq[i] = 2.0 * static_cast<double>(code) / levels - 1.0;
  }
  q.reconstructed = normalize(deq);
  return q;
}

}  // namespace semcom
