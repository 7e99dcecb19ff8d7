#include <cmath>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/io.hpp"
#include "semcom/protocol.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenarios.hpp"

using namespace semcom;

namespace {

MemoryStore make_store(std::size_t d, std::size_t cap) {
  MemoryConfig cfg;
  cfg.dim = d;
  cfg.capacity = cap;
  return MemoryStore(cfg);
}

LatentVector random_unit(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  for (double& x : v) x = rng.normal();
  return normalize(v);
}

}  // namespace

TEST_CASE("effective similarity: cold start, exact member, single attractor") {
  MemoryStore empty = make_store(4, 4);
  EffectiveSimilarity es = effective_similarity(LatentVector::unit_axis(4, 0).values(),
                                                empty, Method::VQ, 8.0);
  CHECK_FALSE(es.has_match);
  CHECK(es.s_eff == -1.0);

  Rng rng(1);
  MemoryStore store = make_store(8, 8);
  for (int i = 0; i < 4; ++i) store.insert(random_unit(rng, 8));
  EffectiveSimilarity vq =
      effective_similarity(store.prototype(2).values(), store, Method::VQ, 8.0);
  CHECK(vq.index == 2);
  CHECK(vq.s_eff == doctest::Approx(1.0).epsilon(1e-12));

  // one stored prototype pulls any query all the way in
  MemoryStore one = make_store(2, 2);
  one.insert(LatentVector::unit_axis(2, 0));
  LatentVector q = normalize(std::vector<double>{0.9, std::sqrt(1.0 - 0.81)});
  EffectiveSimilarity hop = effective_similarity(q.values(), one, Method::Hopfield, 8.0);
  CHECK(hop.s_eff == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tx_decide: boundary inclusive, strict below") {
  MemoryStore store = make_store(2, 2);
  store.insert(LatentVector::unit_axis(2, 0));

  LatentVector at = normalize(std::vector<double>{0.5, std::sqrt(0.75)});
  Decision hit = tx_decide(at.values(), store, 0.5, Method::VQ, 8.0);
  CHECK(hit.hit);  // s_eff == tau counts as a hit

  double s = 0.5 - 1e-9;
  LatentVector below = normalize(std::vector<double>{s, std::sqrt(1.0 - s * s)});
  Decision miss = tx_decide(below.values(), store, 0.5, Method::VQ, 8.0);
  CHECK_FALSE(miss.hit);
}

TEST_CASE("repeat-content session: first frame misses, later frames hit") {
  Rng rng(2);
  LatentVector z = random_unit(rng, 48);
  std::vector<LatentVector> latents(10, z);
  SessionConfig cfg;
  cfg.d = 48;
  cfg.tau = 0.9;

  for (Method m : {Method::Hopfield, Method::VQ}) {
    cfg.method = m;
    SessionLog log = run_session(latents, cfg);
    CHECK(log.records[0].hit == 0);
    long hits = 0;
    for (const auto& r : log.records) hits += r.hit;
    CHECK(hits == 9);
    // 384 for the refresh, then 1-bit ids against a single-entry memory
    CHECK(log.total_bits == 384 + 9 * 1);
  }
}

TEST_CASE("frame_bits matches the accounting rule") {
  Decision hit{true, 3, 0.99};
  Decision miss{false, 0, 0.2};
  CHECK(frame_bits(hit, 8, 384, 0, 0) == 3);
  CHECK(frame_bits(miss, 8, 384, 0, 0) == 384);
  CHECK(frame_bits(hit, 1, 384, 0, 0) == 1);
  CHECK(frame_bits(hit, 2, 384, 0, 0) == 1);
  CHECK(frame_bits(hit, 5, 384, 0, 0) == 3);
  CHECK(frame_bits(hit, 8, 384, 2, 32) == 3 + 2 + 32);
  CHECK_THROWS_AS(frame_bits(hit, 0, 384, 0, 0), InvalidHitError);
  CHECK(bits_for_id(1) == 1);
  CHECK(bits_for_id(8) == 3);
  CHECK(bits_for_id(9) == 4);
}

TEST_CASE("cold start on an empty memory costs a full payload") {
  Rng rng(3);
  std::vector<LatentVector> latents{random_unit(rng, 48)};
  SessionConfig cfg;
  cfg.d = 48;
  SessionLog log = run_session(latents, cfg);
  CHECK(log.total_bits == 384);
  CHECK(log.records[0].s_eff == -1.0);
  CHECK(log.refresh_count == 1);
}

TEST_CASE("bit decomposition is exact on every logged frame") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LatentVector> latents;
    LatentVector base = random_unit(rng, 16);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> v(base.values().begin(), base.values().end());
      for (double& x : v) x += rng.normal(0.0, rng.uniform() < 0.3 ? 0.8 : 0.02);
      latents.push_back(normalize(v));
    }
    SessionConfig cfg;
    cfg.d = 16;
    cfg.m_max = 4;
    cfg.tau = 0.85;
    cfg.bits_res = trial % 3;
    cfg.method = trial % 2 == 0 ? Method::Hopfield : Method::VQ;
    SessionLog log = run_session(latents, cfg);

    std::size_t m = 0;
    for (const auto& r : log.records) {
      long expected = r.hit ? bits_for_id(m) + cfg.bits_res
                            : cfg.bits_new() + cfg.bits_res;
      CHECK(r.bits_id + r.bits_new + r.bits_res + r.bits_cue == expected);
      CHECK(((r.bits_id > 0) ^ (r.bits_new > 0)) == 1);
      if (!r.hit && m < cfg.m_max) ++m;  // miss inserts while capacity remains
    }
  }
}

TEST_CASE("transmitter and receiver memories stay identical without corruption") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LatentVector> latents;
    for (int t = 0; t < 15; ++t) latents.push_back(random_unit(rng, 12));
    SessionConfig cfg;
    cfg.d = 12;
    cfg.m_max = 6;
    cfg.tau = 0.7;
    cfg.method = trial % 2 == 0 ? Method::Hopfield : Method::VQ;

    // prefix-by-prefix: sync must hold after every frame
    for (std::size_t cut = 1; cut <= latents.size(); cut += 5) {
      std::vector<LatentVector> prefix(latents.begin(), latents.begin() + cut);
      SessionLog log = run_session(prefix, cfg);
      CHECK(log.tx_store == log.rx_store);
    }
  }
}

TEST_CASE("sessions are deterministic byte for byte") {
  Rng rng(6);
  std::vector<LatentVector> latents;
  for (int t = 0; t < 25; ++t) latents.push_back(random_unit(rng, 24));
  SessionConfig cfg;
  cfg.d = 24;
  cfg.tau = 0.8;
  SessionLog a = run_session(latents, cfg);
  SessionLog b = run_session(latents, cfg);
  CHECK(session_csv(a) == session_csv(b));
  CHECK(a.tx_store == b.tx_store);
}

TEST_CASE("soft retrieval never decides below hard retrieval on drift content") {
  auto protos = generate_separated_prototypes(6, 48, 1.2, 77);
  MemoryStore store = make_store(48, 6);
  for (const auto& p : protos) store.insert(p);

  int argmax_changed = 0;
  for (double eps : {0.05, 0.1}) {
    DriftConfig dc;
    dc.mu_star = protos[2];
    dc.epsilon = eps;
    dc.T = 300;
    dc.renormalize = true;
    dc.seed = 1234;
    for (const auto& s : generate_drift_latents(dc)) {
      EffectiveSimilarity h =
          effective_similarity(s.query, store, Method::Hopfield, 8.0);
      EffectiveSimilarity v = effective_similarity(s.query, store, Method::VQ, 8.0);
      LatentVector attractor = hopfield_retrieve(s.query, store, 8.0);
      auto [attractor_nearest, asim] = best_match(attractor.values(), store);
      (void)asim;
      if (attractor_nearest != v.index) {
        ++argmax_changed;  // logged, not asserted
        continue;
      }
      CHECK(h.s_eff >= v.s_eff - 1e-9);
    }
  }
  if (argmax_changed > 0) {
    MESSAGE("attractor argmax changed on ", argmax_changed, " drift queries");
  }
}
