#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/metrics.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenarios.hpp"

using namespace semcom;

namespace {

RegimeConfig base_config(Regime r, std::uint64_t seed = 11) {
  RegimeConfig cfg;
  cfg.regime = r;
  cfg.T = 60;
  cfg.seed = seed;
  return cfg;
}

double frame_mse(const Frame& a, const Frame& b) {
  return distortion_mse(a.pixels, b.pixels);
}

}  // namespace

TEST_CASE("generators are pure functions of their config") {
  for (Regime r : {Regime::Static, Regime::CamShake, Regime::HighTexture,
                   Regime::SceneChange}) {
    auto a = generate_frames(base_config(r));
    auto b = generate_frames(base_config(r));
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) CHECK(a[t].pixels == b[t].pixels);
  }
}

TEST_CASE("static frames barely move") {
  auto frames = generate_frames(base_config(Regime::Static));
  double max_diff = 0.0;
  for (std::size_t i = 0; i < frames.front().pixels.size(); ++i) {
    max_diff = std::max(max_diff,
                        std::abs(frames.front().pixels[i] - frames.back().pixels[i]));
  }
  CHECK(max_diff <= 0.02);
}

TEST_CASE("scene changes spike consecutive-frame MSE exactly at the switches") {
  RegimeConfig cfg = base_config(Regime::SceneChange);
  auto frames = generate_frames(cfg);
  std::vector<double> diffs;
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    diffs.push_back(frame_mse(frames[t], frames[t + 1]));
  }
  // T=60, 3 scenes: switches at 19->20 and 39->40
  std::vector<std::size_t> order(diffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return diffs[a] > diffs[b]; });
  std::vector<std::size_t> top = {order[0], order[1]};
  std::sort(top.begin(), top.end());
  CHECK(top[0] == 19);
  CHECK(top[1] == 39);
  CHECK(diffs[19] > 100.0 * diffs[0]);
}

TEST_CASE("repetitive content returns to an earlier phase exactly") {
  auto frames = generate_frames(base_config(Regime::RepetitiveReturn));
  // segment length 60/8 = 7: frames 0 and 14 are both phase A
  CHECK(frames[0].pixels == frames[14].pixels);
  CHECK(frames[7].pixels == frames[21].pixels);
  CHECK_FALSE(frames[0].pixels == frames[7].pixels);
}

TEST_CASE("all generated pixels stay in range") {
  for (Regime r : {Regime::Static, Regime::LowMotion, Regime::HighMotion,
                   Regime::SceneChange, Regime::RepetitiveReturn, Regime::CamShake,
                   Regime::HighTexture, Regime::IllumChange}) {
    auto frames = generate_frames(base_config(r));
    for (const auto& f : frames) {
      for (double x : f.pixels) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
    }
  }
}

TEST_CASE("generate_frames validates dimensions") {
  RegimeConfig cfg = base_config(Regime::Static);
  cfg.H = 0;
  CHECK_THROWS_AS(generate_frames(cfg), InvalidDimsError);
}

TEST_CASE("encoder determinism and positive-scale invariance") {
  auto frames = generate_frames(base_config(Regime::Static));
  ProjectionCodec codec(48, 32, 32, 3, 5);

  LatentVector a = codec.encode(frames[0]);
  LatentVector b = codec.encode(frames[0]);
  CHECK(a == b);

  Frame scaled = frames[0];
  for (double& x : scaled.pixels) x *= 0.9;
  LatentVector c = codec.encode(scaled);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    CHECK(c[i] == doctest::Approx(a[i]).epsilon(1e-12));
  }
}

TEST_CASE("static regime keeps consecutive latents nearly parallel") {
  auto frames = generate_frames(base_config(Regime::Static));
  ProjectionCodec codec(48, 32, 32, 3, 6);
  LatentVector prev = codec.encode(frames[0]);
  for (std::size_t t = 1; t < frames.size(); ++t) {
    LatentVector cur = codec.encode(frames[t]);
    CHECK(cosine_sim(prev, cur) >= 0.999);
    prev = cur;
  }
}

TEST_CASE("decoder output range, determinism, and roundtrip ordering") {
  auto stat = generate_frames(base_config(Regime::Static, 21));
  auto tex = generate_frames(base_config(Regime::HighTexture, 21));

  ProjectionCodec c1(48, 32, 32, 3, 9);
  c1.calibrate(stat[0]);
  Frame d1 = c1.decode(c1.encode(stat[0]));
  Frame d1b = c1.decode(c1.encode(stat[0]));
  CHECK(d1.pixels == d1b.pixels);
  for (double x : d1.pixels) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }

  ProjectionCodec c2(48, 32, 32, 3, 9);
  c2.calibrate(tex[0]);
  Frame d2 = c2.decode(c2.encode(tex[0]));

  double mse_static = frame_mse(stat[0], d1);
  double mse_texture = frame_mse(tex[0], d2);
  CHECK(mse_static <= mse_texture);
}

TEST_CASE("drift generator: degenerate epsilon, hard bound, zero mean") {
  Rng rng(31);
  std::vector<double> m(48);
  for (double& x : m) x = rng.normal();
  LatentVector mu = normalize(m);

  DriftConfig tiny;
  tiny.mu_star = mu;
  tiny.epsilon = 1e-12;
  tiny.T = 50;
  tiny.renormalize = true;
  tiny.seed = 1;
  for (const auto& s : generate_drift_latents(tiny)) {
    for (std::size_t i = 0; i < mu.dim(); ++i) {
      CHECK(std::abs(s.query[i] - mu[i]) <= 1e-9);
    }
  }

  DriftConfig dc;
  dc.mu_star = mu;
  dc.epsilon = 0.2;
  dc.T = 100000;
  dc.renormalize = false;
  dc.seed = 2;
  auto samples = generate_drift_latents(dc);
  std::vector<double> mean(48, 0.0);
  for (const auto& s : samples) {
    CHECK(norm(s.delta) <= dc.epsilon + 1e-12);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += s.delta[i];
  }
  // componentwise 3-sigma zero-mean check, Var(delta_i) = eps^2 / (d + 2)
  double sigma_i = dc.epsilon / std::sqrt(48.0 + 2.0);
  double bound = 3.0 * sigma_i / std::sqrt(static_cast<double>(dc.T));
  for (double& x : mean) {
    x /= static_cast<double>(dc.T);
    CHECK(std::abs(x) <= bound);
  }
}

TEST_CASE("gaussian drift respects the sigma precondition") {
  LatentVector mu = LatentVector::unit_axis(8, 0);
  DriftConfig dc;
  dc.mu_star = mu;
  dc.epsilon = 0.1;
  dc.sigma = 0.2;  // > epsilon
  dc.dist = DriftDistribution::GaussianTruncated;
  dc.T = 4;
  CHECK_THROWS_AS(generate_drift_latents(dc), Error);
  dc.sigma = 0.05;
  for (const auto& s : generate_drift_latents(dc)) {
    CHECK(norm(s.delta) <= dc.epsilon);
  }
}

TEST_CASE("separated prototypes: feasible, verified, infeasible") {
  auto two = generate_separated_prototypes(2, 2, std::sqrt(2.0), 3);
  CHECK(dot(two[0].values(), two[1].values()) <= 1e-9);  // at least 90 degrees

  auto protos = generate_separated_prototypes(8, 48, 1.0, 4);
  for (std::size_t i = 0; i < protos.size(); ++i) {
    for (std::size_t j = i + 1; j < protos.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < 48; ++k) {
        double e = protos[i][k] - protos[j][k];
        d2 += e * e;
      }
      CHECK(std::sqrt(d2) >= 1.0);
    }
  }

  CHECK_THROWS_AS(generate_separated_prototypes(100, 2, 1.9, 5),
                  InfeasibleSeparationError);
}

TEST_CASE("scenario groupings") {
  auto stable = scenario_regimes(Scenario::Stable);
  CHECK(stable == std::vector<Regime>{Regime::Static, Regime::LowMotion,
                                      Regime::RepetitiveReturn});
  auto drift = scenario_regimes(Scenario::GradualDrift);
  CHECK(drift == std::vector<Regime>{Regime::IllumChange, Regime::CamShake});
  auto moderate = scenario_regimes(Scenario::Moderate);
  CHECK(moderate == std::vector<Regime>{Regime::HighMotion, Regime::HighTexture});
  CHECK(scenario_from_name("gradual_drift") == Scenario::GradualDrift);
  CHECK_THROWS_AS(scenario_from_name("bogus"), ConfigError);
}

TEST_CASE("illumination ramp produces identical latents under the codec") {
  auto frames = generate_frames(base_config(Regime::IllumChange));
  ProjectionCodec codec(48, 32, 32, 3, 10);
  LatentVector first = codec.encode(frames[0]);
  LatentVector last = codec.encode(frames.back());
  CHECK(cosine_sim(first, last) >= 1.0 - 1e-9);
}
