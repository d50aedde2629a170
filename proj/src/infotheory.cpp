#include "codif/infotheory.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "codif/spectral.hpp"

namespace codif {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Nats::Nats(double value) : value_(value) {
  if (std::isnan(value)) throw InvalidStateError("Nats: NaN");
  if (value < 0.0) {
    if (value < -NATS_CLAMP) {
      throw InvalidStateError("Nats: negative value " + num(value) + " below clamp tolerance " + num(NATS_CLAMP));
    }
    value_ = 0.0;
  }
}

namespace {

double checked_xlogx_sum(const RealVector& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double l = w[i];
    if (l < -PSD_TOL) {
      throw InvalidStateError("entropy: eigenvalue " + num(l) + " below -PSD_TOL=" + num(PSD_TOL));
    }
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

Nats entropy_of_spectrum(const RealVector& eigenvalues) { return Nats(checked_xlogx_sum(eigenvalues)); }

Nats von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(eigvals_hermitian(rho.elements()));
}

Nats relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
  const auto es = eig_hermitian(sigma.elements());
  const auto& w = es.eigenvalues;
  const Matrix& v = es.eigenvectors;

  // Tr rho ln sigma = sum_k <v_k|rho|v_k> ln s_k; weight on a null
  // direction of sigma means the support condition fails.
  const Matrix rho_in_sigma = v.adjoint() * rho.elements() * v;
  double cross = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double weight = rho_in_sigma(k, k).real();
    if (w[k] < -PSD_TOL) {
      throw InvalidStateError("relative_entropy: sigma eigenvalue " + num(w[k]) + " below -PSD_TOL");
    }
    if (w[k] <= PSD_TOL) {
      if (weight > PSD_TOL) return Nats(std::numeric_limits<double>::infinity());
      continue;
    }
    cross += weight * std::log(w[k]);
  }
  const double neg_s_rho = -checked_xlogx_sum(eigvals_hermitian(rho.elements()));
  return Nats(neg_s_rho - cross);
}

double subsystem_entropy(const PureState& state, const SiteMask& mask) {
  const int n = state.shape().sites();
  if (mask.size() == 0 || mask.size() == n) return 0.0;
  const SiteMask& small = 2 * mask.size() <= n ? mask : mask.complement();
  // Ties (|mask| = n/2) go to whichever mask has the smaller bit pattern so
  // that S(K) and S(complement K) are bitwise identical.
  if (2 * mask.size() == n) {
    const SiteMask comp = mask.complement();
    const SiteMask& pick = mask.bits() < comp.bits() ? mask : comp;
    return checked_xlogx_sum(eigvals_hermitian(partial_trace_pure(state, pick).elements()));
  }
  return checked_xlogx_sum(eigvals_hermitian(partial_trace_pure(state, small).elements()));
}

Nats mutual_information(const PureState& state, const SiteMask& a, const SiteMask& b) {
  if (!(a.shape() == state.shape()) || !(b.shape() == state.shape())) {
    throw std::invalid_argument("mutual_information: mask shape mismatch");
  }
  if (a.empty() || b.empty()) throw std::invalid_argument("mutual_information: masks must be nonempty");
  if (!a.disjoint(b)) {
    throw std::invalid_argument("mutual_information: overlapping masks " + a.to_string() + " and " + b.to_string());
  }
  return Nats(subsystem_entropy(state, a) + subsystem_entropy(state, b) - subsystem_entropy(state, a.unite(b)));
}

Nats total_information(const PureState& state, const SiteMask& a) {
  return mutual_information(state, a, a.complement());
}

}  // namespace codif
