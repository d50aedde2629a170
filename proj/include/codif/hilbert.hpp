#ifndef CODIF_HILBERT_HPP
#define CODIF_HILBERT_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace codif {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Validation tolerances shared by every module. Error messages quote them.
inline constexpr double HERM_TOL = 1e-10;
inline constexpr double TRACE_TOL = 1e-10;
inline constexpr double PSD_TOL = 1e-10;
inline constexpr double NORM_TOL = 1e-12;

/// Raised when a state or matrix violates one of its defining invariants
/// (normalization, hermiticity, unit trace, positivity).
class InvalidStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Number of sites and the local Hilbert-space dimension of a lattice.
///
/// The full dimension d^n must stay addressable; shapes with
/// n * log2(d) > 30 are rejected at construction.
class LatticeShape {
public:
  explicit LatticeShape(int sites, int local_dim = 2);

  int sites() const noexcept { return sites_; }
  int local_dim() const noexcept { return local_dim_; }
  std::int64_t dim() const noexcept { return dim_; }

  /// d^k, for 0 <= k <= sites().
  std::int64_t power(int k) const;

  friend bool operator==(const LatticeShape&, const LatticeShape&) = default;

private:
  int sites_;
  int local_dim_;
  std::int64_t dim_;
};

/// A subset of sites of a lattice, stored strictly ascending.
class SiteMask {
public:
  SiteMask(LatticeShape shape, std::vector<int> sites);
  SiteMask(LatticeShape shape, std::initializer_list<int> sites)
      : SiteMask(shape, std::vector<int>(sites)) {}

  static SiteMask empty(LatticeShape shape) { return SiteMask(shape, std::vector<int>{}); }
  static SiteMask all(LatticeShape shape);
  /// Sites [first, first + count).
  static SiteMask range(LatticeShape shape, int first, int count);
  /// Decode a bitset where bit s marks site s.
  static SiteMask from_bits(LatticeShape shape, std::uint64_t bits);

  const LatticeShape& shape() const noexcept { return shape_; }
  std::span<const int> sites() const noexcept { return sites_; }
  int size() const noexcept { return static_cast<int>(sites_.size()); }
  bool empty() const noexcept { return sites_.empty(); }
  std::uint64_t bits() const noexcept { return bits_; }
  bool contains(int site) const noexcept;

  SiteMask complement() const;
  SiteMask unite(const SiteMask& other) const;
  bool disjoint(const SiteMask& other) const;
  bool subset_of(const SiteMask& other) const;

  /// Hilbert-space dimension of the subsystem, d^size().
  std::int64_t dim() const { return shape_.power(size()); }

  /// Renders as "{0,3,5}".
  std::string to_string() const;

  friend bool operator==(const SiteMask& a, const SiteMask& b) {
    return a.shape_ == b.shape_ && a.sites_ == b.sites_;
  }
  /// Lexicographic order on the ascending site lists.
  friend bool lex_less(const SiteMask& a, const SiteMask& b) { return a.sites_ < b.sites_; }

private:
  LatticeShape shape_;
  std::vector<int> sites_;
  std::uint64_t bits_ = 0;
};

/// Flattened basis index convention: site 0 is the most significant digit.
/// For d = 2 and n = 3, |q0 q1 q2> sits at index 4*q0 + 2*q1 + q2.
std::int64_t site_stride(const LatticeShape& shape, int site);

/// For each configuration of the masked sites (enumerated in the same
/// big-endian convention restricted to the mask), the offset it
/// contributes to the full flattened index.
std::vector<std::int64_t> digit_offsets(const SiteMask& mask);

enum class Normalization { Normalize, Require };

/// Normalized amplitude vector over d^n basis states.
class PureState {
public:
  PureState(LatticeShape shape, Vector amplitudes,
            Normalization policy = Normalization::Normalize);

  /// Computational basis state |index>.
  static PureState basis(LatticeShape shape, std::int64_t index);

  const LatticeShape& shape() const noexcept { return shape_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::int64_t i) const { return amplitudes_[i]; }
  double norm() const { return amplitudes_.norm(); }

private:
  LatticeShape shape_;
  Vector amplitudes_;
};

enum class Validation { Full, HermitianAndTrace, None };

/// Hermitian, unit-trace, positive semidefinite operator.
///
/// Reduced states remember which sites they live on so that further
/// partial traces can be taken; standalone matrices may have no support.
class DensityMatrix {
public:
  explicit DensityMatrix(Matrix elements, Validation check = Validation::Full);
  DensityMatrix(Matrix elements, SiteMask support, Validation check = Validation::Full);

  static DensityMatrix maximally_mixed(const SiteMask& support);
  static DensityMatrix projector(const PureState& state);

  std::int64_t dim() const noexcept { return elements_.rows(); }
  const Matrix& elements() const noexcept { return elements_; }
  const std::optional<SiteMask>& support() const noexcept { return support_; }

  /// Throws InvalidStateError naming the violated tolerance.
  void validate(Validation check) const;

private:
  Matrix elements_;
  std::optional<SiteMask> support_;
};

/// Tensor product of one ket per site, each ket normalized first.
PureState product_state(LatticeShape shape, std::span<const Vector> local_kets);

/// (|01> - |10>)/sqrt(2) on (site_i, site_j), tensored with the remaining
/// kets in ascending site order. `rest` holds n - 2 kets. Qubits only.
PureState embed_pair_singlet(LatticeShape shape, int site_i, int site_j,
                             std::span<const Vector> rest);

/// rho_keep = Tr_{complement}|psi><psi|, computed from the amplitude
/// vector by index arithmetic; cost d^n * d^|keep|.
DensityMatrix partial_trace_pure(const PureState& state, const SiteMask& keep);

/// Trace out the sites of rho's support that are not in keep.
DensityMatrix partial_trace_dm(const DensityMatrix& rho, const SiteMask& keep);

/// rho_A (x) rho_B laid out over A u B in canonical ascending-site order.
/// Both inputs need a support and the supports must be disjoint.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Local kets for a spin-1/2: |up> = (1,0), |down> = (0,1).
Vector ket_up();
Vector ket_down();

}  // namespace codif

#endif  // CODIF_HILBERT_HPP
