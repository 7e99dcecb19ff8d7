#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semcom {

struct MetricsReport {
  double hit_rate = 0.0;          // H-bar
  double bits_per_frame = 0.0;    // B-bar_sem
  double b_raw_total = 0.0;
  double b_sem_total = 0.0;
  double compression_ratio = 0.0;  // gamma = B_raw / B_sem
  double semantic_efficiency = 0.0;  // eta
  double reasoning_capacity = 0.0;   // C_R
  double index_entropy = 0.0;        // H_S, bits
  double mean_mse = 0.0;
  double psnr_db = 0.0;  // +inf when mse == 0
};

// eta = (Q/T) * (B_raw / B_sem). Throws DivByZeroError when T or B_sem is 0.
double semantic_efficiency(double q_hits, double t_frames, double b_raw, double b_sem);

// C_R = Omega * log2(1 + eta).
double reasoning_capacity(double eta, double omega);

// Shannon entropy (bits) of the empirical hit-index distribution; 0 log 0 = 0.
// Throws EmptyCountsError when all counts are zero.
double index_entropy(std::span<const long> index_counts);

double distortion_mse(std::span<const double> a, std::span<const double> b);

// 10 log10(peak^2 / mse). Returns +infinity at mse == 0 (never capped).
double psnr(double mse, double peak = 1.0);

}  // namespace semcom
