#ifndef CODIF_SPECTRAL_HPP
#define CODIF_SPECTRAL_HPP

#include <stdexcept>

#include "codif/hilbert.hpp"

namespace codif {

/// The eigensolver failed or its result did not reproduce the input.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// M = V diag(eigenvalues) V^dagger with eigenvalues ascending.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Eigen::Index dim() const noexcept { return eigenvalues.size(); }
  Matrix reconstruct() const;
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
/// (M + M^dagger)/2 after checking hermiticity against HERM_TOL (scaled by
/// max(1, max|M|)). The result is residual-checked on a few fixed probe
/// vectors; a residual above 1e-9 * max(1, max|M|) raises ConvergenceError.
SpectralDecomposition eig_hermitian(const Matrix& m);

/// Eigenvalues only, ascending. Used on the hot path of entropy evaluation.
RealVector eigvals_hermitian(const Matrix& m);

/// V exp(-i Lambda t) V^dagger psi. t = 0 returns psi unchanged.
PureState unitary_evolve(const SpectralDecomposition& decomp, double t, const PureState& psi);

/// Caches V^dagger psi0 so each time point costs one matrix-vector product.
class Propagator {
public:
  Propagator(const SpectralDecomposition& decomp, const PureState& initial);

  PureState at(double t) const;
  /// <psi|H|psi> in the eigenbasis; constant in t by construction.
  double energy() const;

private:
  const SpectralDecomposition* decomp_;
  PureState initial_;
  Vector coefficients_;
};

}  // namespace codif

#endif  // CODIF_SPECTRAL_HPP
