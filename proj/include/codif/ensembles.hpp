#ifndef CODIF_ENSEMBLES_HPP
#define CODIF_ENSEMBLES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "codif/codification.hpp"
#include "codif/hilbert.hpp"

namespace codif {

/// Deterministic stream of Haar-random pure states.
///
/// Sample k of the stream depends only on (seed, k): its generator is an
/// mt19937_64 seeded from a splitmix64 hash of both. Batches can therefore
/// be drawn in parallel and the results do not depend on the worker count.
class HaarSampler {
public:
  HaarSampler(LatticeShape shape, std::uint64_t seed) : shape_(shape), seed_(seed) {}

  const LatticeShape& shape() const noexcept { return shape_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return position_; }

  /// Sample `index` of the stream; does not advance.
  PureState sample(std::uint64_t index) const;
  PureState next() { return sample(position_++); }
  /// Reserve `count` consecutive stream indices; returns the first one.
  std::uint64_t advance(std::uint64_t count);

private:
  LatticeShape shape_;
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

/// Child seed for stream index `index`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// I.i.d. standard complex Gaussian amplitudes, normalized.
PureState sample_haar(HaarSampler& sampler);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
  std::int64_t n_samples = 0;

  /// Requires at least two values. Summation runs in index order.
  static MCEstimate from_samples(std::span<const double> values);
};

/// Average S(rho_A) for A = the first a sites.
MCEstimate mc_average_entropy(HaarSampler& sampler, int a, std::int64_t n_samples);

/// Average I(A,B) for A = first a sites, B = the next b sites.
MCEstimate mc_average_mi(HaarSampler& sampler, int a, int b, std::int64_t n_samples);

/// Per-b averages of I(A, B_b) with B_b = sites a .. a+b-1, b = 1..n-a,
/// all taken from the same samples.
std::vector<MCEstimate> mc_average_mi_curve(HaarSampler& sampler, int a, std::int64_t n_samples);

/// Average omega_sites of the codification volume.
MCEstimate mc_average_cv(HaarSampler& sampler, const SiteMask& a, double epsilon, const SearchPolicy& policy,
                         std::int64_t n_samples);

}  // namespace codif

#endif  // CODIF_ENSEMBLES_HPP
