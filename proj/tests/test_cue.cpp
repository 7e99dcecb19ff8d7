#include <cmath>

#include "doctest.h"
#include "semcom/cue.hpp"
#include "semcom/errors.hpp"
#include "semcom/latent.hpp"
#include "semcom/rng.hpp"

using namespace semcom;

TEST_CASE("simhash is deterministic") {
  Rng rng(19);
  std::vector<double> v(48);
  for (double& x : v) x = rng.normal();
  LatentVector z = normalize(v);
  Cue a = simhash_cue(z.values(), 32, 77);
  Cue b = simhash_cue(z.values(), 32, 77);
  CHECK(a == b);
  CHECK(a.length == 32);
}

TEST_CASE("simhash of the antipode is the bitwise complement") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> v(32);
    for (double& x : v) x = rng.normal();
    LatentVector z = normalize(v);
    std::vector<double> neg(z.values().begin(), z.values().end());
    for (double& x : neg) x = -x;
    Cue c = simhash_cue(z.values(), 32, 5 + i);
    Cue cn = simhash_cue(LatentVector(neg).values(), 32, 5 + i);
    std::uint64_t mask = (32 == 64) ? ~0ULL : ((1ULL << 32) - 1);
    CHECK((c.bits ^ cn.bits) == mask);
  }
}

TEST_CASE("verify_cue boundary at the 25% tolerance") {
  Cue stored{0, 32};
  Cue eight{(1ULL << 8) - 1, 32};  // 8 bits flipped
  Cue nine{(1ULL << 9) - 1, 32};   // 9 bits flipped
  CHECK(verify_cue(stored, stored, 8));
  CHECK(verify_cue(eight, stored, 8));
  CHECK_FALSE(verify_cue(nine, stored, 8));
  CHECK_THROWS_AS(hamming_distance(stored, Cue{0, 16}), LengthMismatchError);
}

TEST_CASE("simhash collision rate matches hyperplane LSH formula") {
  // Pairs at cosine 0.99: expected Hamming distance B * acos(0.99)/pi.
  const int b_cue = 32;
  const std::size_t d = 48;
  const double rho = 0.99;
  const int pairs = 10000;
  const double p_bit = std::acos(rho) / 3.14159265358979323846;
  const double expected = b_cue * p_bit;

  Rng rng(314);
  double total = 0.0;
  for (int i = 0; i < pairs; ++i) {
    std::vector<double> v(d), w(d);
    for (double& x : v) x = rng.normal();
    LatentVector a = normalize(v);
    // exact-cosine companion: rho*a + sqrt(1-rho^2) * unit orthogonal dir
    for (double& x : w) x = rng.normal();
    double proj = dot(w, a.values());
    for (std::size_t k = 0; k < d; ++k) w[k] -= proj * a[k];
    LatentVector orth = normalize(w);
    std::vector<double> bvec(d);
    for (std::size_t k = 0; k < d; ++k) {
      bvec[k] = rho * a[k] + std::sqrt(1.0 - rho * rho) * orth[k];
    }
    LatentVector b = normalize(bvec);

    CueCodec codec(d, b_cue, derive_seed(1000, i));  // fresh bank per pair
    total += hamming_distance(codec.fingerprint(a.values()),
                              codec.fingerprint(b.values()));
  }
  double mean = total / pairs;
  double sd_single = std::sqrt(b_cue * p_bit * (1.0 - p_bit));
  double three_sigma = 3.0 * sd_single / std::sqrt(static_cast<double>(pairs));
  CHECK(std::abs(mean - expected) <= three_sigma);
}
