#ifndef CODIF_INFOTHEORY_HPP
#define CODIF_INFOTHEORY_HPP

#include <compare>
#include <limits>
#include <numbers>

#include "codif/hilbert.hpp"

namespace codif {

inline constexpr double NATS_CLAMP = 1e-9;

/// Information quantity in natural-log units. Values in [-1e-9, 0) are
/// clamped to 0; anything more negative is an InvalidStateError.
/// +infinity is allowed (relative entropy with a support violation).
class Nats {
public:
  Nats() = default;
  explicit Nats(double value);

  double value() const noexcept { return value_; }
  double bits() const noexcept { return value_ / std::numbers::ln2; }
  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }

  friend auto operator<=>(const Nats&, const Nats&) = default;

private:
  double value_ = 0.0;
};

/// -sum lambda ln lambda over the spectrum, with 0 ln 0 = 0.
Nats von_neumann_entropy(const DensityMatrix& rho);

/// Same formula on an already computed spectrum.
Nats entropy_of_spectrum(const RealVector& eigenvalues);

/// S(rho || sigma) = Tr rho (ln rho - ln sigma). When the support of rho is
/// not contained in that of sigma the result is +infinity.
Nats relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Entanglement entropy of the sites in `mask` for a global pure state.
/// Uses the smaller of mask and complement (equal spectra); empty and
/// full masks give exactly 0.
double subsystem_entropy(const PureState& state, const SiteMask& mask);

/// I(A,B) = S(A) + S(B) - S(AB) for disjoint nonempty A, B.
Nats mutual_information(const PureState& state, const SiteMask& a, const SiteMask& b);

/// I(A, complement of A) = 2 S(A) for a pure state.
Nats total_information(const PureState& state, const SiteMask& a);

}  // namespace codif

#endif  // CODIF_INFOTHEORY_HPP
