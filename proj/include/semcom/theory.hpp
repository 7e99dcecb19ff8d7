#pragma once

#include <cstdint>
#include <vector>

#include "semcom/calibrate.hpp"
#include "semcom/scenarios.hpp"

namespace semcom {

/*
 * Drift-model parameters for the refresh-bound checks. Sessions run in the
 * pure latent domain: a fixed, full memory of separated prototypes and
 * unnormalized drifted queries around one of them; a miss costs the fresh
 * payload, a hit costs the index.
 */
struct TheoremParams {
  std::size_t M = 8;
  std::size_t d = 48;
  double separation = 1.0;  // minimum pairwise prototype distance
  double epsilon = 0.15;
  double beta = 8.0;
  double tau = 0.42;
  std::size_t T = 120;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  double slack_c = 10.0;  // cubic-remainder constant in the slack term
  DriftDistribution dist = DriftDistribution::UniformBall;
  bool enforce_conditions = true;   // boundary regime tau < 1 - eps - eps^2/2
  bool hopfield_raw_ablation = false;  // force raw-similarity decisions

  double boundary_tau_limit() const { return 1.0 - epsilon - epsilon * epsilon / 2.0; }
};

struct RefreshEstimate {
  double mean = 0.0;
  double ci_half = 0.0;  // 95% normal approximation
  std::vector<double> per_trial;
  std::vector<long> bits_per_trial;
};

// Counts misses over drift sessions. Throws ConditionViolationError when
// conditions are enforced and violated.
RefreshEstimate estimate_refresh(Method method, const TheoremParams& params);

struct Theorem2Report {
  RefreshEstimate hopfield;
  RefreshEstimate vq;
  double predicted_factor = 0.0;  // 1 - beta eps^2 / (2d)
  double rhs = 0.0;               // vq.mean * factor + slack
  double slack = 0.0;
  bool bound_satisfied = false;
};

Theorem2Report check_theorem2(const TheoremParams& params);

struct CorollaryReport {
  double measured_savings = 0.0;  // mean bits(VQ) - bits(Hopfield), paired
  double lower_bound = 0.0;       // (b_new - b_id_bar) * (beta eps^2 / 2d) * E[N_V]
  double slack = 0.0;
  double mean_refresh_vq = 0.0;
  bool bound_satisfied = false;
};

CorollaryReport check_corollary(const TheoremParams& params, long b_new,
                                double b_id_bar);

struct MonotonicityViolation {
  const char* metric = "";
  int left_index = 0;
  double left_value = 0.0, right_value = 0.0, tolerance = 0.0;
};

struct MonotonicityReport {
  bool hit_rate_ok = true;
  bool capacity_ok = true;
  bool distortion_ok = true;
  std::vector<MonotonicityViolation> violations;
  bool all_ok() const { return hit_rate_ok && capacity_ok && distortion_ok; }
};

// Verifies H-bar, C_R and D-bar are non-increasing in tau up to a CI-based
// tolerance (1.96 * pooled standard errors per adjacent pair).
MonotonicityReport check_monotonicity(const SweepCurve& curve);

struct ParetoReport {
  bool ok = true;
  std::vector<std::pair<int, int>> dominated_pairs;  // (dominator, dominated)
};

// No point may beat another in both distortion and reasoning capacity
// strictly beyond CI tolerance.
ParetoReport check_pareto(const SweepCurve& curve);

struct BoostStats {
  struct PerEpsilon {
    double epsilon = 0.0;
    double mean_abs_residual = 0.0;
    double mean_residual = 0.0;
    double mean_retrieval_sim = 0.0;
    double mean_query_cos = 0.0;
  };
  std::vector<PerEpsilon> per_epsilon;
  double loglog_slope = 0.0;  // of mean |residual| against epsilon
};

// Residuals of the second-order retrieval-similarity expansion
// <z~, mu*> ~ 1 + <delta, mu*> + (beta / 2d) ||delta||^2, sampled under
// bounded drift, plus the scaling of the remainder as epsilon shrinks.
BoostStats measure_boost(const std::vector<double>& epsilons, std::size_t samples,
                         const TheoremParams& params);

}  // namespace semcom
