#include "semcom/calibrate.hpp"

#include <cmath>
#include <limits>

#include "semcom/errors.hpp"

namespace semcom {

double soft_hit(double s, double tau, double alpha) {
  if (alpha <= 0.0) throw Error("soft_hit: alpha must be > 0");
  return 1.0 / (1.0 + std::exp(-alpha * (s - tau)));
}

double lagrangian_step(double lambda, double d_bar, double d0, double eta_lambda) {
  if (eta_lambda <= 0.0) throw Error("lagrangian_step: eta_lambda must be > 0");
  if (lambda < 0.0) throw Error("lagrangian_step: lambda must be >= 0");
  return std::max(0.0, lambda + eta_lambda * (d_bar - d0));
}

double optimal_tau(const SweepCurve& curve, double d0) {
  if (curve.points.empty()) throw Error("optimal_tau: empty curve");
  for (const auto& p : curve.points) {
    if (p.mse <= d0) return p.tau;  // grid is tau-ascending
  }
  throw InfeasibleError("optimal_tau: no grid point satisfies the distortion target");
}

MatchedPair calibrate_matched_quality(const SweepCurve& hopfield, const SweepCurve& vq,
                                      double band_db, double d0) {
  if (band_db < 0.0) throw Error("calibrate_matched_quality: band must be >= 0");
  bool found = false;
  MatchedPair best;
  double best_bits = std::numeric_limits<double>::infinity();
  double best_gap = std::numeric_limits<double>::infinity();
  double best_tau_gap = std::numeric_limits<double>::infinity();

  for (const auto& ph : hopfield.points) {
    if (ph.mse > d0) continue;
    for (const auto& pv : vq.points) {
      if (pv.mse > d0) continue;
      double gap = std::abs(ph.psnr_db - pv.psnr_db);
      if (gap > band_db) continue;
      double bits = ph.bits_per_frame + pv.bits_per_frame;
      double tau_gap = std::abs(ph.tau - pv.tau);
      bool better = bits < best_bits ||
                    (bits == best_bits && gap < best_gap) ||
                    (bits == best_bits && gap == best_gap && tau_gap < best_tau_gap);
      if (better) {
        best_bits = bits;
        best_gap = gap;
        best_tau_gap = tau_gap;
        best = {ph.tau, pv.tau, ph.psnr_db, pv.psnr_db, ph.bits_per_frame,
                pv.bits_per_frame};
        found = true;
      }
    }
  }
  if (!found) {
    throw NoMatchedPairError("calibrate_matched_quality: no pair within the quality band");
  }
  return best;
}

std::vector<double> tau_grid(double lo, double hi, int points) {
  if (points < 1 || lo >= hi) throw Error("tau_grid: invalid grid");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1 > 0 ? points - 1 : 1);
  }
  return grid;
}

}  // namespace semcom
