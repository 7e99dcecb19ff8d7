#include "semcom/metrics.hpp"

#include <cmath>
#include <limits>

#include "semcom/errors.hpp"

namespace semcom {

double semantic_efficiency(double q_hits, double t_frames, double b_raw, double b_sem) {
  if (t_frames <= 0.0) throw DivByZeroError("semantic_efficiency: T must be > 0");
  if (b_sem <= 0.0) throw DivByZeroError("semantic_efficiency: B_sem must be > 0");
  return (q_hits / t_frames) * (b_raw / b_sem);
}

double reasoning_capacity(double eta, double omega) {
  return omega * std::log2(1.0 + eta);
}

double index_entropy(std::span<const long> index_counts) {
  long total = 0;
  for (long c : index_counts) {
    if (c < 0) throw Error("index_entropy: negative count");
    total += c;
  }
  if (total == 0) throw EmptyCountsError("index_entropy: all counts zero");
  double h = 0.0;
  for (long c : index_counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double distortion_mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatchError("distortion_mse: size mismatch");
  if (a.empty()) throw DimensionMismatchError("distortion_mse: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double e = a[i] - b[i];
    acc += e * e;
  }
  return acc / static_cast<double>(a.size());
}

double psnr(double mse, double peak) {
  if (mse < 0.0) throw Error("psnr: negative mse");
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace semcom
