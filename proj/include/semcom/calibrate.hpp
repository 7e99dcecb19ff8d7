#pragma once

#include <cstdint>
#include <vector>

#include "semcom/corruption.hpp"

namespace semcom {

// One averaged operating point of a threshold sweep. Standard errors are
// over trials and feed the CI-based monotonicity/Pareto tolerance.
struct SweepPoint {
  double tau = 0.0;
  double hit_rate = 0.0, hit_rate_se = 0.0;
  double bits_per_frame = 0.0, bits_per_frame_se = 0.0;
  double mse = 0.0, mse_se = 0.0;
  double psnr_db = 0.0;
  double c_r = 0.0, c_r_se = 0.0;
  int trials = 0;
  std::uint64_t stream_hash = 0;  // hash of the latent streams used
};

struct SweepCurve {
  Method method = Method::Hopfield;
  std::vector<SweepPoint> points;  // strictly increasing tau
};

// Smooth hit relaxation sigma(alpha (s - tau)).
double soft_hit(double s, double tau, double alpha);

// Multiplier ascent: max(0, lambda + eta_lambda (D-bar - D0)).
double lagrangian_step(double lambda, double d_bar, double d0, double eta_lambda);

// Smallest grid tau with mse <= d0. Throws InfeasibleError when no point
// qualifies.
double optimal_tau(const SweepCurve& curve, double d0);

struct MatchedPair {
  double tau_h = 0.0, tau_v = 0.0;
  double psnr_h = 0.0, psnr_v = 0.0;
  double bits_h = 0.0, bits_v = 0.0;
};

/*
 * Matched-quality pairing over two swept curves: among (tau_h, tau_v) grid
 * pairs whose PSNRs differ by at most band_db and whose distortion meets d0,
 * picks the pair minimizing combined bits/frame (ties prefer the smaller
 * PSNR gap, then equal thresholds). Throws NoMatchedPairError if no pair
 * qualifies.
 */
MatchedPair calibrate_matched_quality(const SweepCurve& hopfield, const SweepCurve& vq,
                                      double band_db, double d0);

std::vector<double> tau_grid(double lo, double hi, int points);

}  // namespace semcom
