#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "codif/ensembles.hpp"
#include "codif/page.hpp"
#include "oracles.hpp"

using namespace codif;

TEST_CASE("stream determinism") {
  const LatticeShape s(4);
  HaarSampler a(s, 99), b(s, 99), c(s, 100);
  for (int k = 0; k < 5; ++k) {
    const auto x = a.next();
    CHECK(x.amplitudes() == b.next().amplitudes());
    CHECK(x.amplitudes() != c.next().amplitudes());
    CHECK(std::abs(x.norm() - 1.0) < 1e-15);
  }
  CHECK(a.position() == 5);
  CHECK(a.sample(2).amplitudes() == HaarSampler(s, 99).sample(2).amplitudes());
  HaarSampler d(s, 99);
  CHECK(d.advance(3) == 0);
  CHECK(d.next().amplitudes() == a.sample(3).amplitudes());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("results do not depend on the worker count") {
  const char* saved = std::getenv("CODIF_WORKERS");
  const std::string restore = saved ? saved : "";
  std::vector<double> means;
  for (const char* w : {"1", "3"}) {
    setenv("CODIF_WORKERS", w, 1);
    HaarSampler sampler(LatticeShape(6), 5);
    means.push_back(mc_average_mi(sampler, 1, 2, 60).mean);
  }
  if (saved) setenv("CODIF_WORKERS", restore.c_str(), 1);
  else unsetenv("CODIF_WORKERS");
  CHECK(means[0] == means[1]);
}

TEST_CASE("MCEstimate") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto e = MCEstimate::from_samples(v);
  CHECK(e.mean == 2.5);
  CHECK(std::abs(e.std_error - std::sqrt(5.0 / 3.0) / 2.0) < 1e-15);
  CHECK(e.n_samples == 4);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(MCEstimate::from_samples(one), std::invalid_argument);
}

TEST_CASE("unitary invariance of the entropy distribution") {
  const LatticeShape s(4);
  const Matrix u = oracle::haar_unitary(16, 31337);
  HaarSampler first(s, 1), second(s, 2);
  const SiteMask a(s, {0});
  std::vector<double> rotated, plain;
  for (int k = 0; k < 500; ++k) {
    const PureState psi(s, u * first.next().amplitudes());
    rotated.push_back(subsystem_entropy(psi, a));
    plain.push_back(subsystem_entropy(second.next(), a));
  }
  CHECK(oracle::ks_two_sample_p(rotated, plain) > 0.01);
}

TEST_CASE("amplitudes have zero mean") {
  HaarSampler sampler(LatticeShape(2), 8);
  const int count = 10000;
  std::vector<std::vector<double>> re(4), im(4);
  for (int k = 0; k < count; ++k) {
    const auto psi = sampler.next();
    for (int i = 0; i < 4; ++i) {
      re[i].push_back(psi[i].real());
      im[i].push_back(psi[i].imag());
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (const auto* v : {&re[i], &im[i]}) {
      const auto e = MCEstimate::from_samples(*v);
      CHECK(std::abs(e.mean) < 3 * e.std_error);
    }
  }
}

TEST_CASE("Monte Carlo entropy") {
  HaarSampler s2(LatticeShape(2), 11);
  const auto e12 = mc_average_entropy(s2, 1, 10000);
  CHECK(std::abs(e12.mean - 1.0 / 3.0) < 3 * e12.std_error);

  HaarSampler s4(LatticeShape(4), 1);
  const auto full = mc_average_entropy(s4, 4, 20);
  CHECK(full.mean == 0.0);
  CHECK(full.std_error == 0.0);

  HaarSampler s8(LatticeShape(8), 12);
  const auto e28 = mc_average_entropy(s8, 2, 2000);
  CHECK(std::abs(e28.mean - page_average_entropy(2, 8).value()) < 3 * e28.std_error);

  HaarSampler s10(LatticeShape(10), 13);
  const auto e110 = mc_average_entropy(s10, 1, 2000);
  CHECK(std::abs(e110.mean - page_average_entropy(1, 10).value()) < 3 * e110.std_error);
}

TEST_CASE("Monte Carlo mutual information") {
  SUBCASE("complement saturation") {
    HaarSampler x(LatticeShape(6), 4), y(LatticeShape(6), 4);
    const auto mi = mc_average_mi(x, 2, 4, 50);
    const auto s = mc_average_entropy(y, 2, 50);
    CHECK(std::abs(mi.mean - 2 * s.mean) < 1e-12);
  }
  SUBCASE("n = 10") {
    HaarSampler sampler(LatticeShape(10), 14);
    const auto i11 = mc_average_mi(sampler, 1, 1, 2000);
    CHECK(std::abs(i11.mean - page_average_mi(1, 1, 10).value()) < 3 * i11.std_error);
    const auto i19 = mc_average_mi(sampler, 1, 9, 2000);
    CHECK(std::abs(i19.mean - 2 * page_average_entropy(1, 10).value()) < 3 * i19.std_error);
  }
  SUBCASE("curve uses the same samples for every b") {
    HaarSampler c(LatticeShape(5), 3), d(LatticeShape(5), 3);
    const auto curve = mc_average_mi_curve(c, 1, 40);
    REQUIRE(curve.size() == 4);
    CHECK(curve[1].mean == mc_average_mi(d, 1, 2, 40).mean);
  }
  SUBCASE("errors") {
    HaarSampler sampler(LatticeShape(4), 1);
    CHECK_THROWS_AS(mc_average_mi(sampler, 2, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(mc_average_mi(sampler, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_average_entropy(sampler, 5, 10), std::invalid_argument);
  }
}

TEST_CASE("Monte Carlo codification volume") {
  const LatticeShape s(6);
  const SiteMask a(s, {0});
  HaarSampler sampler(s, 21);
  const auto big = mc_average_cv(sampler, a, 2 * std::numbers::ln2, SearchPolicy::exhaustive(), 30);
  CHECK(big.mean == 0.0);

  HaarSampler x(s, 1), y(s, 2);
  const auto ex = mc_average_cv(x, a, 0.01, SearchPolicy::exhaustive(), 200);
  const auto ey = mc_average_cv(y, a, 0.01, SearchPolicy::exhaustive(), 200);
  CHECK(std::abs(ex.mean - ey.mean) <= 3 * std::hypot(ex.std_error, ey.std_error));
  CHECK_THROWS_AS(mc_average_cv(x, SiteMask(LatticeShape(5), {0}), 0.1, SearchPolicy::exhaustive(), 5),
                  std::invalid_argument);
}
