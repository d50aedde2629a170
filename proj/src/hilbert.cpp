#include "codif/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace codif {

namespace {

std::string fmt_tol(const char* what, double value, double tol) {
  std::ostringstream os;
  os << what << " violation " << value << " exceeds tolerance " << tol;
  return os.str();
}

}  // namespace

LatticeShape::LatticeShape(int sites, int local_dim) : sites_(sites), local_dim_(local_dim) {
  if (sites < 1) throw std::invalid_argument("LatticeShape: need at least one site");
  if (local_dim < 2) throw std::invalid_argument("LatticeShape: local dimension must be >= 2");
  if (sites * std::log2(static_cast<double>(local_dim)) > 30.0 + 1e-12) {
    throw std::invalid_argument("LatticeShape: d^n exceeds 2^30 (n=" + std::to_string(sites) +
                                ", d=" + std::to_string(local_dim) + ")");
  }
  dim_ = power(sites);
}

std::int64_t LatticeShape::power(int k) const {
  if (k < 0 || k > sites_) throw std::out_of_range("LatticeShape::power: exponent out of range");
  std::int64_t p = 1;
  for (int i = 0; i < k; ++i) p *= local_dim_;
  return p;
}

SiteMask::SiteMask(LatticeShape shape, std::vector<int> sites)
    : shape_(shape), sites_(std::move(sites)) {
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const int s = sites_[i];
    if (s < 0 || s >= shape_.sites()) {
      throw std::invalid_argument("SiteMask: site " + std::to_string(s) + " outside [0, " +
                                  std::to_string(shape_.sites()) + ")");
    }
    if (i > 0 && sites_[i - 1] >= s) {
      throw std::invalid_argument("SiteMask: sites must be strictly increasing");
    }
    bits_ |= std::uint64_t{1} << s;
  }
}

SiteMask SiteMask::all(LatticeShape shape) { return range(shape, 0, shape.sites()); }

SiteMask SiteMask::range(LatticeShape shape, int first, int count) {
  std::vector<int> s(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) s[i] = first + i;
  return SiteMask(shape, std::move(s));
}

SiteMask SiteMask::from_bits(LatticeShape shape, std::uint64_t bits) {
  std::vector<int> s;
  for (int i = 0; i < shape.sites(); ++i) {
    if (bits >> i & 1U) s.push_back(i);
  }
  if (shape.sites() < 64 && (bits >> shape.sites()) != 0) {
    throw std::invalid_argument("SiteMask::from_bits: bits beyond lattice size");
  }
  return SiteMask(shape, std::move(s));
}

bool SiteMask::contains(int site) const noexcept {
  return site >= 0 && site < 64 && (bits_ >> site & 1U);
}

SiteMask SiteMask::complement() const {
  std::vector<int> s;
  for (int i = 0; i < shape_.sites(); ++i) {
    if (!contains(i)) s.push_back(i);
  }
  return SiteMask(shape_, std::move(s));
}

SiteMask SiteMask::unite(const SiteMask& other) const {
  if (!(other.shape_ == shape_)) throw std::invalid_argument("SiteMask::unite: shape mismatch");
  return from_bits(shape_, bits_ | other.bits_);
}

bool SiteMask::disjoint(const SiteMask& other) const { return (bits_ & other.bits_) == 0; }

bool SiteMask::subset_of(const SiteMask& other) const { return (bits_ & ~other.bits_) == 0; }

std::string SiteMask::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sites_[i]);
  }
  return out + "}";
}

std::int64_t site_stride(const LatticeShape& shape, int site) {
  return shape.power(shape.sites() - 1 - site);
}

std::vector<std::int64_t> digit_offsets(const SiteMask& mask) {
  const auto& shape = mask.shape();
  const int d = shape.local_dim();
  std::vector<std::int64_t> offsets{0};
  offsets.reserve(static_cast<std::size_t>(mask.dim()));
  // Ascending sites, each appended as the next less-significant digit.
  for (int site : mask.sites()) {
    const std::int64_t stride = site_stride(shape, site);
    std::vector<std::int64_t> next;
    next.reserve(offsets.size() * d);
    for (std::int64_t base : offsets) {
      for (int digit = 0; digit < d; ++digit) next.push_back(base + digit * stride);
    }
    offsets.swap(next);
  }
  return offsets;
}

PureState::PureState(LatticeShape shape, Vector amplitudes, Normalization policy)
    : shape_(shape), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != shape_.dim()) {
    throw std::invalid_argument("PureState: expected " + std::to_string(shape_.dim()) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  const double nrm2 = amplitudes_.squaredNorm();
  if (policy == Normalization::Require) {
    if (std::abs(nrm2 - 1.0) > NORM_TOL) {
      throw InvalidStateError(fmt_tol("PureState: squared-norm", std::abs(nrm2 - 1.0), NORM_TOL));
    }
    return;
  }
  if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) {
    throw InvalidStateError("PureState: cannot normalize a zero or non-finite vector");
  }
  amplitudes_ /= std::sqrt(nrm2);
}

PureState PureState::basis(LatticeShape shape, std::int64_t index) {
  if (index < 0 || index >= shape.dim()) throw std::out_of_range("PureState::basis: index");
  Vector v = Vector::Zero(shape.dim());
  v[index] = 1.0;
  return PureState(shape, std::move(v), Normalization::Require);
}

DensityMatrix::DensityMatrix(Matrix elements, Validation check) : elements_(std::move(elements)) {
  validate(check);
}

DensityMatrix::DensityMatrix(Matrix elements, SiteMask support, Validation check)
    : elements_(std::move(elements)), support_(std::move(support)) {
  if (elements_.rows() != support_->dim()) {
    throw std::invalid_argument("DensityMatrix: dimension " + std::to_string(elements_.rows()) +
                                " does not match support " + support_->to_string());
  }
  validate(check);
}

DensityMatrix DensityMatrix::maximally_mixed(const SiteMask& support) {
  const auto dim = support.dim();
  Matrix m = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(std::move(m), support, Validation::None);
}

DensityMatrix DensityMatrix::projector(const PureState& state) {
  const auto& v = state.amplitudes();
  return DensityMatrix(v * v.adjoint(), SiteMask::all(state.shape()), Validation::None);
}

void DensityMatrix::validate(Validation check) const {
  if (check == Validation::None) return;
  if (elements_.rows() != elements_.cols() || elements_.rows() == 0) {
    throw InvalidStateError("DensityMatrix: matrix must be square and nonempty");
  }
  const double herm = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > HERM_TOL) throw InvalidStateError(fmt_tol("DensityMatrix: hermiticity", herm, HERM_TOL));
  const double tr_err = std::abs(elements_.trace() - Complex(1.0));
  if (tr_err > TRACE_TOL) throw InvalidStateError(fmt_tol("DensityMatrix: trace", tr_err, TRACE_TOL));
  if (check == Validation::Full) {
    const Matrix sym = 0.5 * (elements_ + elements_.adjoint());
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
    if (lo < -PSD_TOL) throw InvalidStateError(fmt_tol("DensityMatrix: positivity", -lo, PSD_TOL));
  }
}

PureState product_state(LatticeShape shape, std::span<const Vector> local_kets) {
  if (static_cast<int>(local_kets.size()) != shape.sites()) {
    throw std::invalid_argument("product_state: expected " + std::to_string(shape.sites()) +
                                " local kets, got " + std::to_string(local_kets.size()));
  }
  Vector amps(1);
  amps[0] = 1.0;
  for (std::size_t s = 0; s < local_kets.size(); ++s) {
    const Vector& ket = local_kets[s];
    if (ket.size() != shape.local_dim()) {
      throw std::invalid_argument("product_state: ket " + std::to_string(s) + " has wrong dimension");
    }
    const double nrm = ket.norm();
    if (!(nrm > 0.0)) throw std::invalid_argument("product_state: ket " + std::to_string(s) + " is zero");
    const Vector unit = ket / nrm;
    Vector next(amps.size() * unit.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment(i * unit.size(), unit.size()) = amps[i] * unit;
    amps.swap(next);
  }
  return PureState(shape, std::move(amps), Normalization::Normalize);
}

PureState embed_pair_singlet(LatticeShape shape, int site_i, int site_j,
                             std::span<const Vector> rest) {
  if (shape.local_dim() != 2) throw std::invalid_argument("embed_pair_singlet: requires qubits (d=2)");
  if (site_i == site_j) throw std::invalid_argument("embed_pair_singlet: site collision");
  const int n = shape.sites();
  if (site_i < 0 || site_j < 0 || site_i >= n || site_j >= n) {
    throw std::invalid_argument("embed_pair_singlet: site out of range");
  }
  if (static_cast<int>(rest.size()) != n - 2) {
    throw std::invalid_argument("embed_pair_singlet: expected " + std::to_string(n - 2) + " remaining kets");
  }

  // Two product terms |up>_i|down>_j and |down>_i|up>_j with the rest filled in.
  auto term = [&](const Vector& at_i, const Vector& at_j) {
    std::vector<Vector> kets;
    kets.reserve(static_cast<std::size_t>(n));
    std::size_t r = 0;
    for (int s = 0; s < n; ++s) {
      if (s == site_i) kets.push_back(at_i);
      else if (s == site_j) kets.push_back(at_j);
      else kets.push_back(rest[r++]);
    }
    return product_state(shape, kets).amplitudes();
  };
  Vector amps = (term(ket_up(), ket_down()) - term(ket_down(), ket_up())) / std::sqrt(2.0);
  return PureState(shape, std::move(amps), Normalization::Normalize);
}

DensityMatrix partial_trace_pure(const PureState& state, const SiteMask& keep) {
  if (!(keep.shape() == state.shape())) {
    throw std::invalid_argument("partial_trace_pure: mask shape does not match state shape");
  }
  const auto keep_off = digit_offsets(keep);
  const auto rest_off = digit_offsets(keep.complement());
  const auto& psi = state.amplitudes();

  // psi reshaped as (kept digits) x (traced digits); rho = M M^dagger.
  Matrix m(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(rest_off.size()));
  for (std::size_t e = 0; e < rest_off.size(); ++e) {
    for (std::size_t r = 0; r < keep_off.size(); ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e)) = psi[keep_off[r] + rest_off[e]];
    }
  }
  Matrix rho(m.rows(), m.rows());
  rho.setZero();
  rho.selfadjointView<Eigen::Lower>().rankUpdate(m);
  rho = rho.selfadjointView<Eigen::Lower>();
  return DensityMatrix(std::move(rho), keep, Validation::None);
}

namespace {

// Offsets of a sub-mask's digit configurations inside the flattened index
// of a density matrix supported on `outer`.
std::vector<std::int64_t> offsets_within(const SiteMask& outer, const SiteMask& inner) {
  const int d = outer.shape().local_dim();
  const int k = outer.size();
  std::vector<std::int64_t> offsets{0};
  for (int site : inner.sites()) {
    const auto pos = std::find(outer.sites().begin(), outer.sites().end(), site) - outer.sites().begin();
    std::int64_t stride = 1;
    for (int i = static_cast<int>(pos) + 1; i < k; ++i) stride *= d;
    std::vector<std::int64_t> next;
    next.reserve(offsets.size() * d);
    for (auto base : offsets) {
      for (int digit = 0; digit < d; ++digit) next.push_back(base + digit * stride);
    }
    offsets.swap(next);
  }
  return offsets;
}

SiteMask minus(const SiteMask& a, const SiteMask& b) {
  return SiteMask::from_bits(a.shape(), a.bits() & ~b.bits());
}

}  // namespace

DensityMatrix partial_trace_dm(const DensityMatrix& rho, const SiteMask& keep) {
  if (!rho.support()) throw std::invalid_argument("partial_trace_dm: density matrix has no site support");
  const SiteMask& outer = *rho.support();
  if (!(outer.shape() == keep.shape()) || !keep.subset_of(outer)) {
    throw std::invalid_argument("partial_trace_dm: keep " + keep.to_string() +
                                " is not a subset of support " + outer.to_string());
  }
  const auto keep_off = offsets_within(outer, keep);
  const auto rest_off = offsets_within(outer, minus(outer, keep));
  const Matrix& full = rho.elements();
  const auto dk = static_cast<Eigen::Index>(keep_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex acc = 0.0;
      for (auto e : rest_off) acc += full(keep_off[r] + e, keep_off[c] + e);
      out(r, c) = acc;
    }
  }
  return DensityMatrix(std::move(out), keep, Validation::None);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  if (!a.support() || !b.support()) throw std::invalid_argument("tensor_product: both factors need a support");
  const SiteMask& ma = *a.support();
  const SiteMask& mb = *b.support();
  if (!(ma.shape() == mb.shape()) || !ma.disjoint(mb)) {
    throw std::invalid_argument("tensor_product: supports must be disjoint on one lattice");
  }
  const SiteMask joint = ma.unite(mb);
  const auto off_a = offsets_within(joint, ma);
  const auto off_b = offsets_within(joint, mb);
  const auto dim = joint.dim();
  Matrix out(dim, dim);
  for (std::size_t ac = 0; ac < off_a.size(); ++ac) {
    for (std::size_t bc = 0; bc < off_b.size(); ++bc) {
      const auto col = off_a[ac] + off_b[bc];
      for (std::size_t ar = 0; ar < off_a.size(); ++ar) {
        const Complex va = a.elements()(static_cast<Eigen::Index>(ar), static_cast<Eigen::Index>(ac));
        for (std::size_t br = 0; br < off_b.size(); ++br) {
          out(off_a[ar] + off_b[br], col) =
              va * b.elements()(static_cast<Eigen::Index>(br), static_cast<Eigen::Index>(bc));
        }
      }
    }
  }
  return DensityMatrix(std::move(out), joint, Validation::None);
}

Vector ket_up() {
  Vector v(2);
  v << 1.0, 0.0;
  return v;
}

Vector ket_down() {
  Vector v(2);
  v << 0.0, 1.0;
  return v;
}

}  // namespace codif
