#include <cmath>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/memory.hpp"
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

TEST_CASE("best_match finds exact members and breaks ties by lowest index") {
  Rng rng(1);
  MemoryStore store = make_store(16, 8);
  for (int i = 0; i < 5; ++i) store.insert(random_unit(rng, 16));
  auto [j, s] = best_match(store.prototype(3).values(), store);
  CHECK(j == 3);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));

  MemoryStore pair = make_store(2, 2);
  pair.insert(LatentVector::unit_axis(2, 0));
  pair.insert(LatentVector::unit_axis(2, 1));
  auto [j0, s0] = best_match(LatentVector::unit_axis(2, 0).values(), pair);
  CHECK(j0 == 0);
  CHECK(s0 == doctest::Approx(1.0));

  // duplicate prototypes: tie resolved to the lower index
  MemoryStore dup = make_store(4, 4);
  LatentVector z = random_unit(rng, 4);
  dup.insert(z);
  dup.insert(z);
  CHECK(best_match(z.values(), dup).first == 0);

  CHECK_THROWS_AS(best_match(z.values(), make_store(4, 4)), EmptyMemoryError);
}

TEST_CASE("best_match agrees with a brute-force oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    MemoryStore store = make_store(12, 16);
    std::size_t m = 1 + rng.uniform_int(10);
    for (std::size_t i = 0; i < m; ++i) store.insert(random_unit(rng, 12));
    LatentVector z = random_unit(rng, 12);

    std::size_t oracle = 0;
    double best = -2.0;
    for (std::size_t j = 0; j < store.size(); ++j) {
      double s = dot(z.values(), store.prototype(j).values());
      if (s > best) {
        best = s;
        oracle = j;
      }
    }
    auto [j, s] = best_match(z.values(), store);
    CHECK(j == oracle);
    CHECK(s == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("hopfield weights: uniform, sharp, and hand-evaluated softmax") {
  Rng rng(3);
  MemoryStore store = make_store(8, 8);
  for (int i = 0; i < 6; ++i) store.insert(random_unit(rng, 8));
  LatentVector z = random_unit(rng, 8);

  RetrievalWeights tiny = hopfield_weights(z.values(), store, 1e-9);
  for (double w : tiny.weights) CHECK(w == doctest::Approx(1.0 / 6.0).epsilon(1e-6));

  RetrievalWeights sharp = hopfield_weights(z.values(), store, 50.0);
  auto [j, s] = best_match(z.values(), store);
  (void)s;
  CHECK(sharp.weights[j] > 0.999);

  // M=2, d=2, z = mu_0, beta = 2: w_0 = e^2 / (e^2 + 1)
  MemoryStore two = make_store(2, 2);
  two.insert(LatentVector::unit_axis(2, 0));
  two.insert(LatentVector::unit_axis(2, 1));
  RetrievalWeights w = hopfield_weights(LatentVector::unit_axis(2, 0).values(), two, 2.0);
  double expected = std::exp(2.0) / (std::exp(2.0) + 1.0);
  CHECK(w.weights[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(w.weights[0] == doctest::Approx(0.8808).epsilon(1e-4));

  CHECK_THROWS_AS(hopfield_weights(z.values(), store, 0.0), NonPositiveBetaError);
  CHECK_THROWS_AS(hopfield_weights(z.values(), make_store(8, 8), 1.0), EmptyMemoryError);
}

TEST_CASE("hopfield retrieval: single attractor, fixed point, blended oracle") {
  Rng rng(4);
  MemoryStore one = make_store(8, 8);
  LatentVector mu = random_unit(rng, 8);
  one.insert(mu);
  LatentVector far = random_unit(rng, 8);
  LatentVector r = hopfield_retrieve(far.values(), one, 4.0);
  CHECK(cosine_sim(r, mu) == doctest::Approx(1.0).epsilon(1e-12));

  MemoryStore store = make_store(8, 8);
  for (int i = 0; i < 5; ++i) store.insert(random_unit(rng, 8));
  LatentVector fp = hopfield_retrieve(store.prototype(2).values(), store, 50.0);
  CHECK(cosine_sim(fp, store.prototype(2)) > 1.0 - 1e-6);

  // blend oracle composed from the hand-evaluated weights
  MemoryStore two = make_store(2, 2);
  two.insert(LatentVector::unit_axis(2, 0));
  two.insert(LatentVector::unit_axis(2, 1));
  double w0 = std::exp(2.0) / (std::exp(2.0) + 1.0);
  LatentVector expected = normalize(std::vector<double>{w0, 1.0 - w0});
  LatentVector got = hopfield_retrieve(LatentVector::unit_axis(2, 0).values(), two, 2.0);
  CHECK(got[0] == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(expected[1]).epsilon(1e-12));
}

TEST_CASE("vq retrieval mirrors best_match") {
  Rng rng(5);
  MemoryStore store = make_store(10, 8);
  for (int i = 0; i < 7; ++i) store.insert(random_unit(rng, 10));
  for (int trial = 0; trial < 20; ++trial) {
    LatentVector z = random_unit(rng, 10);
    auto [j, mu] = vq_retrieve(z.values(), store);
    auto [jb, s] = best_match(z.values(), store);
    (void)s;
    CHECK(j == jb);
    CHECK(mu == store.prototype(jb));
  }
}

TEST_CASE("insert honours capacity and ordering") {
  Rng rng(6);
  MemoryStore store = make_store(4, 2);
  CHECK(store.size() == 0);
  LatentVector a = random_unit(rng, 4);
  LatentVector b = random_unit(rng, 4);
  LatentVector c = random_unit(rng, 4);
  CHECK(store.insert(a));
  CHECK(store.size() == 1);
  CHECK(store.insert(b));
  CHECK(store.prototype(0) == a);
  CHECK(store.prototype(1) == b);

  MemoryStore before = store;
  CHECK_FALSE(store.insert(c));  // full: unchanged
  CHECK(store == before);
}

TEST_CASE("weight normalization and unit-norm retrieval properties") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t d = 2 + rng.uniform_int(30);
    MemoryStore store = make_store(d, 12);
    std::size_t m = 1 + rng.uniform_int(10);
    for (std::size_t i = 0; i < m; ++i) store.insert(random_unit(rng, d));
    LatentVector z = random_unit(rng, d);
    double beta = rng.uniform(0.01, 60.0);

    RetrievalWeights w = hopfield_weights(z.values(), store, beta);
    double sum = 0.0;
    for (double x : w.weights) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);

    LatentVector r = hopfield_retrieve(z.values(), store, beta);
    CHECK(std::abs(norm(r.values()) - 1.0) <= 1e-9);
  }
}

TEST_CASE("top weight is monotone in beta at a unique argmax") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    MemoryStore store = make_store(16, 8);
    std::size_t m = 2 + rng.uniform_int(6);
    for (std::size_t i = 0; i < m; ++i) store.insert(random_unit(rng, 16));
    LatentVector z = random_unit(rng, 16);
    auto [j, s] = best_match(z.values(), store);
    (void)s;
    double beta1 = rng.uniform(0.1, 10.0);
    double beta2 = beta1 + rng.uniform(0.1, 20.0);
    double w1 = hopfield_weights(z.values(), store, beta1).weights[j];
    double w2 = hopfield_weights(z.values(), store, beta2).weights[j];
    CHECK(w2 >= w1 - 1e-12);
  }
}

TEST_CASE("associative retrieval does not lose similarity under small drift") {
  // Separated prototypes, small drift: the attractor state is at least as
  // close to the true prototype as the normalized query itself.
  auto protos = generate_separated_prototypes(8, 48, 1.2, 99);
  MemoryStore store = make_store(48, 8);
  for (const auto& p : protos) store.insert(p);

  for (double eps : {0.02, 0.05, 0.1}) {
    DriftConfig dc;
    dc.mu_star = protos[0];
    dc.epsilon = eps;
    dc.T = 200;
    dc.renormalize = true;
    dc.seed = 4242;
    for (const auto& s : generate_drift_latents(dc)) {
      LatentVector z(s.query);
      LatentVector r = hopfield_retrieve(z.values(), store, 8.0);
      double before = cosine_sim(z, protos[0]);
      double after = cosine_sim(r, protos[0]);
      CHECK(after >= before - 1e-6);
    }
  }
}

TEST_CASE("store equality covers prototypes, cues and id map") {
  Rng rng(9);
  MemoryConfig cfg;
  cfg.dim = 8;
  cfg.capacity = 4;
  cfg.cue_seed = 5;
  MemoryStore a(cfg);
  MemoryStore b(cfg);
  LatentVector z = random_unit(rng, 8);
  a.insert(z);
  b.insert(z);
  CHECK(a == b);
  b.overwrite(0, random_unit(rng, 8));
  CHECK_FALSE(a == b);
}
