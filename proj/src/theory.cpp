#include "semcom/theory.hpp"

#include <cmath>
#include <string>

#include "semcom/errors.hpp"
#include "semcom/memory.hpp"
#include "semcom/protocol.hpp"
#include "semcom/rng.hpp"

namespace semcom {

namespace {

constexpr double kZ95 = 1.959963984540054;

void validate_conditions(const TheoremParams& p) {
  if (p.separation <= 0.0) {
    throw ConditionViolationError("theorem conditions: prototype separation must be > 0");
  }
  if (p.epsilon <= 0.0 || p.epsilon >= 1.0) {
    throw ConditionViolationError("theorem conditions: epsilon must be in (0, 1)");
  }
  if (!(p.tau < p.boundary_tau_limit())) {
    throw ConditionViolationError(
        "theorem conditions: boundary regime requires tau < 1 - eps - eps^2/2 = " +
        std::to_string(p.boundary_tau_limit()));
  }
}

struct TrialOutcome {
  long refreshes = 0;
  long bits = 0;
};

// One fixed-memory drift session in the latent domain. The store is full, so
// the only protocol dynamics are hit/miss decisions; a miss is a refresh.
TrialOutcome run_theorem_trial(Method method, const TheoremParams& p,
                               std::uint64_t trial_seed) {
  auto protos = generate_separated_prototypes(p.M, p.d, p.separation,
                                              derive_seed(trial_seed, 1));
  MemoryConfig mc;
  mc.dim = p.d;
  mc.capacity = p.M;
  MemoryStore store(mc);
  for (const auto& mu : protos) store.insert(mu);

  DriftConfig dc;
  dc.mu_star = protos.front();
  dc.epsilon = p.epsilon;
  dc.T = p.T;
  dc.dist = p.dist;
  dc.renormalize = false;  // the bound is stated for raw drifted queries
  dc.seed = derive_seed(trial_seed, 2);
  auto samples = generate_drift_latents(dc);

  Method effective = method;
  if (method == Method::Hopfield && p.hopfield_raw_ablation) {
    effective = Method::HopfieldRawSim;
  }

  const long b_new = static_cast<long>(p.d) * 8;
  const long b_id = bits_for_id(p.M);
  TrialOutcome out;
  for (const auto& s : samples) {
    Decision dec = tx_decide(s.query, store, p.tau, effective, p.beta);
    if (dec.hit) {
      out.bits += b_id;
    } else {
      out.bits += b_new;
      ++out.refreshes;
    }
  }
  return out;
}

RefreshEstimate summarize(const std::vector<TrialOutcome>& outcomes) {
  RefreshEstimate est;
  for (const auto& o : outcomes) {
    est.per_trial.push_back(static_cast<double>(o.refreshes));
    est.bits_per_trial.push_back(o.bits);
  }
  MeanSe ms = mean_se(est.per_trial);
  est.mean = ms.mean;
  est.ci_half = kZ95 * ms.se;
  return est;
}

std::vector<TrialOutcome> run_trials(Method method, const TheoremParams& p) {
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(p.trials);
  for (std::size_t trial = 0; trial < p.trials; ++trial) {
    outcomes.push_back(run_theorem_trial(method, p, derive_seed(p.master_seed, trial)));
  }
  return outcomes;
}

}  // namespace

RefreshEstimate estimate_refresh(Method method, const TheoremParams& params) {
  if (params.enforce_conditions) validate_conditions(params);
  return summarize(run_trials(method, params));
}

Theorem2Report check_theorem2(const TheoremParams& params) {
  if (params.enforce_conditions) validate_conditions(params);
  Theorem2Report rep;
  rep.hopfield = summarize(run_trials(Method::Hopfield, params));
  rep.vq = summarize(run_trials(Method::VQ, params));
  rep.predicted_factor =
      1.0 - params.beta * params.epsilon * params.epsilon / (2.0 * static_cast<double>(params.d));
  rep.slack = params.slack_c * std::pow(params.epsilon, 3.0) * static_cast<double>(params.T) +
              rep.hopfield.ci_half + rep.vq.ci_half;
  rep.rhs = rep.vq.mean * rep.predicted_factor + rep.slack;
  rep.bound_satisfied = rep.hopfield.mean <= rep.rhs;
  return rep;
}

CorollaryReport check_corollary(const TheoremParams& params, long b_new,
                                double b_id_bar) {
  if (params.enforce_conditions) validate_conditions(params);
  auto hopfield = run_trials(Method::Hopfield, params);
  auto vq = run_trials(Method::VQ, params);

  CorollaryReport rep;
  std::vector<double> savings;
  savings.reserve(params.trials);
  for (std::size_t i = 0; i < params.trials; ++i) {
    savings.push_back(static_cast<double>(vq[i].bits - hopfield[i].bits));
  }
  MeanSe sv = mean_se(savings);
  RefreshEstimate vq_est = summarize(vq);
  rep.measured_savings = sv.mean;
  rep.mean_refresh_vq = vq_est.mean;
  double boost = params.beta * params.epsilon * params.epsilon /
                 (2.0 * static_cast<double>(params.d));
  rep.lower_bound = (static_cast<double>(b_new) - b_id_bar) * boost * vq_est.mean;
  rep.slack = kZ95 * sv.se +
              (static_cast<double>(b_new) - b_id_bar) * params.slack_c *
                  std::pow(params.epsilon, 3.0) * static_cast<double>(params.T);
  rep.bound_satisfied = rep.measured_savings >= rep.lower_bound - rep.slack;
  return rep;
}

MonotonicityReport check_monotonicity(const SweepCurve& curve) {
  MonotonicityReport rep;
  const auto& pts = curve.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];

    double tol_h = kZ95 * (a.hit_rate_se + b.hit_rate_se);
    if (b.hit_rate > a.hit_rate + tol_h) {
      rep.hit_rate_ok = false;
      rep.violations.push_back(
          {"hit_rate", static_cast<int>(i), a.hit_rate, b.hit_rate, tol_h});
    }
    double tol_c = kZ95 * (a.c_r_se + b.c_r_se);
    if (b.c_r > a.c_r + tol_c) {
      rep.capacity_ok = false;
      rep.violations.push_back({"c_r", static_cast<int>(i), a.c_r, b.c_r, tol_c});
    }
    double tol_d = kZ95 * (a.mse_se + b.mse_se);
    if (b.mse > a.mse + tol_d) {
      rep.distortion_ok = false;
      rep.violations.push_back({"mse", static_cast<int>(i), a.mse, b.mse, tol_d});
    }
  }
  return rep;
}

ParetoReport check_pareto(const SweepCurve& curve) {
  ParetoReport rep;
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      double tol_d = kZ95 * (pts[i].mse_se + pts[j].mse_se);
      double tol_c = kZ95 * (pts[i].c_r_se + pts[j].c_r_se);
      bool no_worse_d = pts[i].mse <= pts[j].mse + tol_d;
      bool no_worse_c = pts[i].c_r >= pts[j].c_r - tol_c;
      bool strictly_better_d = pts[i].mse < pts[j].mse - tol_d;
      bool strictly_better_c = pts[i].c_r > pts[j].c_r + tol_c;
      if (no_worse_d && no_worse_c && (strictly_better_d || strictly_better_c)) {
        rep.ok = false;
        rep.dominated_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return rep;
}

BoostStats measure_boost(const std::vector<double>& epsilons, std::size_t samples,
                         const TheoremParams& params) {
  BoostStats stats;
  auto protos = generate_separated_prototypes(params.M, params.d, params.separation,
                                              derive_seed(params.master_seed, 0x60057));
  MemoryConfig mc;
  mc.dim = params.d;
  mc.capacity = params.M;
  MemoryStore store(mc);
  for (const auto& mu : protos) store.insert(mu);
  const LatentVector& mu_star = protos.front();
  const double quad_coeff =
      params.beta / (2.0 * static_cast<double>(params.d));

  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    DriftConfig dc;
    dc.mu_star = mu_star;
    dc.epsilon = epsilons[e];
    dc.T = samples;
    dc.dist = params.dist;
    dc.renormalize = false;
    dc.seed = derive_seed(params.master_seed, 0xb005 + e);
    auto drift = generate_drift_latents(dc);

    double abs_sum = 0.0, sum = 0.0, sim_sum = 0.0, cos_sum = 0.0;
    for (const auto& s : drift) {
      LatentVector attractor = hopfield_retrieve(s.query, store, params.beta);
      double sim = dot(attractor.values(), mu_star.values());
      double xi = dot(s.delta, mu_star.values());
      double dn2 = 0.0;
      for (double x : s.delta) dn2 += x * x;
      double predicted = 1.0 + xi + quad_coeff * dn2;
      double r = sim - predicted;
      abs_sum += std::abs(r);
      sum += r;
      sim_sum += sim;
      cos_sum += cosine_sim(normalize(s.query).values(), mu_star.values());
    }
    BoostStats::PerEpsilon pe;
    pe.epsilon = epsilons[e];
    pe.mean_abs_residual = abs_sum / static_cast<double>(samples);
    pe.mean_residual = sum / static_cast<double>(samples);
    pe.mean_retrieval_sim = sim_sum / static_cast<double>(samples);
    pe.mean_query_cos = cos_sum / static_cast<double>(samples);
    stats.per_epsilon.push_back(pe);
  }

  // Least-squares slope of log mean|r| against log eps.
  if (stats.per_epsilon.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = static_cast<double>(stats.per_epsilon.size());
    for (const auto& pe : stats.per_epsilon) {
      double x = std::log(pe.epsilon);
      double y = std::log(std::max(pe.mean_abs_residual, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    stats.loglog_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return stats;
}

}  // namespace semcom
