#include "codif/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace codif {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr int kProbes = 3;

std::string sci(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double scale_of(const Matrix& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

Matrix symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square");
  const double herm = m.size() ? (m - m.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (herm > HERM_TOL * scale_of(m)) {
    throw InvalidStateError("eig_hermitian: hermiticity violation " + sci(herm) + " exceeds tolerance " +
                            sci(HERM_TOL * scale_of(m)));
  }
  return 0.5 * (m + m.adjoint());
}

lapack_int heevd(char jobz, Matrix& a, RealVector& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  if (n == 0) return 0;
  return LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
}

// Deterministic probe vectors (no RNG state): cos/sin patterns.
Vector probe(Eigen::Index dim, int k) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double x = 0.7 * static_cast<double>(i + 1) * (k + 1);
    v[i] = Complex(std::cos(x), std::sin(1.3 * x));
  }
  return v / v.norm();
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eig_hermitian(const Matrix& m) {
  Matrix a = symmetrized(m);
  const Matrix sym = a;
  RealVector w;
  const lapack_int info = heevd('V', a, w);
  if (info != 0) {
    throw ConvergenceError("eig_hermitian: LAPACK zheevd failed with info=" + std::to_string(info),
                           std::numeric_limits<double>::infinity());
  }
  SpectralDecomposition out{std::move(w), std::move(a)};

  double residual = 0.0;
  for (int k = 0; k < kProbes && sym.rows() > 0; ++k) {
    const Vector x = probe(sym.rows(), k);
    const Vector lhs = sym * x;
    const Vector rhs = out.eigenvectors *
                       (out.eigenvalues.cast<Complex>().asDiagonal() * (out.eigenvectors.adjoint() * x));
    residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  if (!(residual <= kResidualTol * scale_of(sym))) {
    throw ConvergenceError("eig_hermitian: reconstruction residual " + sci(residual) + " exceeds " +
                               sci(kResidualTol * scale_of(sym)),
                           residual);
  }
  return out;
}

RealVector eigvals_hermitian(const Matrix& m) {
  Matrix a = symmetrized(m);
  RealVector w;
  if (a.rows() <= 2) {
    // Closed form avoids LAPACK call overhead on the tiniest blocks.
    if (a.rows() == 1) {
      w.resize(1);
      w[0] = a(0, 0).real();
      return w;
    }
    if (a.rows() == 2) {
      const double p = a(0, 0).real(), q = a(1, 1).real();
      const double off = std::abs(a(1, 0));
      const double mean = 0.5 * (p + q), half = std::hypot(0.5 * (p - q), off);
      w.resize(2);
      w << mean - half, mean + half;
      return w;
    }
  }
  const lapack_int info = heevd('N', a, w);
  if (info != 0) {
    throw ConvergenceError("eigvals_hermitian: LAPACK zheevd failed with info=" + std::to_string(info),
                           std::numeric_limits<double>::infinity());
  }
  return w;
}

PureState unitary_evolve(const SpectralDecomposition& decomp, double t, const PureState& psi) {
  if (decomp.dim() != psi.amplitudes().size()) {
    throw std::invalid_argument("unitary_evolve: decomposition dimension " + std::to_string(decomp.dim()) +
                                " != state dimension " + std::to_string(psi.amplitudes().size()));
  }
  if (t == 0.0) return psi;
  return Propagator(decomp, psi).at(t);
}

Propagator::Propagator(const SpectralDecomposition& decomp, const PureState& initial)
    : decomp_(&decomp), initial_(initial) {
  if (decomp.dim() != initial.amplitudes().size()) {
    throw std::invalid_argument("Propagator: dimension mismatch");
  }
  coefficients_ = decomp.eigenvectors.adjoint() * initial.amplitudes();
}

PureState Propagator::at(double t) const {
  if (t == 0.0) return initial_;
  const auto& lambda = decomp_->eigenvalues;
  Vector phased(coefficients_.size());
  for (Eigen::Index k = 0; k < phased.size(); ++k) {
    phased[k] = std::polar(1.0, -lambda[k] * t) * coefficients_[k];
  }
  return PureState(initial_.shape(), decomp_->eigenvectors * phased, Normalization::Require);
}

double Propagator::energy() const {
  return (coefficients_.cwiseAbs2().array() * decomp_->eigenvalues.array()).sum();
}

}  // namespace codif
