#include "codif/ensembles.hpp"

#include <cmath>
#include <random>
#include <string>

#include "codif/infotheory.hpp"
#include "codif/parallel.hpp"

namespace codif {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_samples(std::int64_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("Monte Carlo estimate needs n_samples >= 2");
}

// Evaluates f on `count` consecutive stream samples, in parallel.
template <class F>
std::vector<double> map_samples(HaarSampler& sampler, std::int64_t count, F f) {
  check_samples(count);
  const std::uint64_t first = sampler.advance(static_cast<std::uint64_t>(count));
  std::vector<double> values(static_cast<std::size_t>(count));
  parallel_for(values.size(), [&](std::size_t i) { values[i] = f(sampler.sample(first + i)); });
  return values;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

PureState HaarSampler::sample(std::uint64_t index) const {
  std::mt19937_64 gen(derive_seed(seed_, index));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector amps(shape_.dim());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(gen);
    const double im = gauss(gen);
    amps[i] = Complex(re, im);
  }
  return PureState(shape_, std::move(amps), Normalization::Normalize);
}

std::uint64_t HaarSampler::advance(std::uint64_t count) {
  const auto first = position_;
  position_ += count;
  return first;
}

PureState sample_haar(HaarSampler& sampler) { return sampler.next(); }

MCEstimate MCEstimate::from_samples(std::span<const double> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  check_samples(n);
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

MCEstimate mc_average_entropy(HaarSampler& sampler, int a, std::int64_t n_samples) {
  const int n = sampler.shape().sites();
  if (a < 0 || a > n) throw std::invalid_argument("mc_average_entropy: a out of range");
  const SiteMask mask = SiteMask::range(sampler.shape(), 0, a);
  const auto values = map_samples(sampler, n_samples, [&](const PureState& psi) { return subsystem_entropy(psi, mask); });
  return MCEstimate::from_samples(values);
}

MCEstimate mc_average_mi(HaarSampler& sampler, int a, int b, std::int64_t n_samples) {
  const int n = sampler.shape().sites();
  if (a < 1 || b < 1 || a + b > n) {
    throw std::invalid_argument("mc_average_mi: need a, b >= 1 and a + b <= n (a=" + std::to_string(a) +
                                ", b=" + std::to_string(b) + ", n=" + std::to_string(n) + ")");
  }
  const SiteMask ma = SiteMask::range(sampler.shape(), 0, a);
  const SiteMask mb = SiteMask::range(sampler.shape(), a, b);
  const auto values =
      map_samples(sampler, n_samples, [&](const PureState& psi) { return mutual_information(psi, ma, mb).value(); });
  return MCEstimate::from_samples(values);
}

std::vector<MCEstimate> mc_average_mi_curve(HaarSampler& sampler, int a, std::int64_t n_samples) {
  const int n = sampler.shape().sites();
  if (a < 1 || a >= n) throw std::invalid_argument("mc_average_mi_curve: need 1 <= a < n");
  check_samples(n_samples);
  const SiteMask ma = SiteMask::range(sampler.shape(), 0, a);
  const int bmax = n - a;
  const std::uint64_t first = sampler.advance(static_cast<std::uint64_t>(n_samples));
  std::vector<std::vector<double>> per_b(static_cast<std::size_t>(bmax), std::vector<double>(n_samples));
  parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    const PureState psi = sampler.sample(first + i);
    for (int b = 1; b <= bmax; ++b) {
      per_b[b - 1][i] = mutual_information(psi, ma, SiteMask::range(sampler.shape(), a, b)).value();
    }
  });
  std::vector<MCEstimate> out;
  out.reserve(per_b.size());
  for (const auto& v : per_b) out.push_back(MCEstimate::from_samples(v));
  return out;
}

MCEstimate mc_average_cv(HaarSampler& sampler, const SiteMask& a, double epsilon, const SearchPolicy& policy,
                         std::int64_t n_samples) {
  if (!(a.shape() == sampler.shape())) throw std::invalid_argument("mc_average_cv: mask shape mismatch");
  const auto values = map_samples(sampler, n_samples, [&](const PureState& psi) {
    return static_cast<double>(codification_volume(psi, a, epsilon, policy).omega_sites);
  });
  return MCEstimate::from_samples(values);
}

}  // namespace codif
