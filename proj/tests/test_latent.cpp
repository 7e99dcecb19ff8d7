#include <cmath>
#include <limits>

#include "doctest.h"
#include "semcom/errors.hpp"
#include "semcom/latent.hpp"
#include "semcom/rng.hpp"

using namespace semcom;

namespace {

LatentVector random_unit(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  for (double& x : v) x = rng.normal();
  return normalize(v);
}

}  // namespace

TEST_CASE("normalize basic examples") {
  LatentVector a = normalize(std::vector<double>{1.0, 0.0, 0.0});
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 0.0);

  LatentVector b = normalize(std::vector<double>{3.0, 4.0});
  CHECK(b[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.8).epsilon(1e-15));

  CHECK_THROWS_AS(normalize(std::vector<double>{0.0, 0.0}), ZeroVectorError);
  CHECK_THROWS_AS(normalize(std::vector<double>{1.0, std::nan("")}), Error);
}

TEST_CASE("normalize is bitwise idempotent") {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(16);
    for (double& x : v) x = rng.uniform(-10.0, 10.0);
    LatentVector once = normalize(v);
    LatentVector twice = normalize(once.values());
    CHECK(once == twice);
  }
}

TEST_CASE("cosine similarity examples and clamping") {
  Rng rng(7);
  LatentVector a = random_unit(rng, 12);
  CHECK(cosine_sim(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  LatentVector e0 = LatentVector::unit_axis(2, 0);
  LatentVector e1 = LatentVector::unit_axis(2, 1);
  CHECK(cosine_sim(e0, e1) == 0.0);

  std::vector<double> neg(a.values().begin(), a.values().end());
  for (double& x : neg) x = -x;
  CHECK(cosine_sim(a, LatentVector(neg)) == doctest::Approx(-1.0).epsilon(1e-12));

  for (int i = 0; i < 200; ++i) {
    LatentVector u = random_unit(rng, 8);
    LatentVector v = random_unit(rng, 8);
    double s = cosine_sim(u, v);
    CHECK(s <= 1.0);
    CHECK(s >= -1.0);
  }

  CHECK_THROWS_AS(cosine_sim(e0, random_unit(rng, 5)), DimensionMismatchError);
}

TEST_CASE("quantizer payload and bit range") {
  Rng rng(3);
  LatentVector z = random_unit(rng, 48);
  QuantizedLatent q = quantize_latent(z, 8);
  CHECK(q.payload_bits() == 384);
  CHECK(q.codes.size() == 48);
  for (auto c : q.codes) CHECK(c <= 255);

  CHECK_THROWS_AS(quantize_latent(z, 0), Error);
  CHECK_THROWS_AS(quantize_latent(z, 17), Error);
}

TEST_CASE("quantizer is lossless on grid points") {
  // (1/3, ..., 1/3) in 9 dimensions lies exactly on the 8-bit grid
  // (code 170) and has unit norm.
  std::vector<double> v(9, 1.0 / 3.0);
  LatentVector z = normalize(v);
  QuantizedLatent q = quantize_latent(z, 8);
  for (auto c : q.codes) CHECK(c == 170);
  CHECK(cosine_sim(z, q.reconstructed) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < z.dim(); ++i) {
    CHECK(std::abs(z[i] - q.reconstructed[i]) < 1e-12);
  }
}

TEST_CASE("per-dimension quantizer error bound, exhaustive scan") {
  // dequant(quant(x)) stays within half a step (1/255) before renormalization
  const double levels = 255.0;
  for (int i = 0; i < 10000; ++i) {
    double x = -1.0 + 2.0 * static_cast<double>(i) / 9999.0;
    long long code = std::llround((x + 1.0) / 2.0 * levels);
    double deq = 2.0 * static_cast<double>(code) / levels - 1.0;
    CHECK(std::abs(deq - x) <= 1.0 / 255.0 + 1e-12);
  }
}

TEST_CASE("quantizer roundtrip error bound, random unit vectors") {
  Rng rng(11);
  for (int bits : {4, 8}) {
    double step = 2.0 / static_cast<double>((1 << bits) - 1);
    for (int i = 0; i < 100; ++i) {
      std::size_t d = 2 + static_cast<std::size_t>(rng.uniform_int(63));
      LatentVector z = random_unit(rng, d);
      QuantizedLatent q = quantize_latent(z, bits);
      double err2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        double e = z[k] - q.reconstructed[k];
        err2 += e * e;
      }
      CHECK(std::sqrt(err2) <= std::sqrt(static_cast<double>(d)) * step);
    }
  }
}

TEST_CASE("LatentVector enforces unit norm and finiteness") {
  CHECK_THROWS_AS(LatentVector(std::vector<double>{0.5, 0.5}), Error);
  CHECK_NOTHROW(LatentVector(std::vector<double>{1.0, 0.0}));
  CHECK_THROWS_AS(LatentVector(std::vector<double>{
                      std::numeric_limits<double>::infinity(), 0.0}),
                  Error);
}
