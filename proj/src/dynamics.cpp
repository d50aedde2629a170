#include "codif/dynamics.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "codif/parallel.hpp"

namespace codif {

void ChainParams::validate() const {
  if (n < 2) throw std::invalid_argument("ChainParams: need n >= 2, got " + std::to_string(n));
  if (!std::isfinite(J) || !std::isfinite(hx) || !std::isfinite(hz)) {
    throw std::invalid_argument("ChainParams: couplings must be finite");
  }
}

Matrix build_hamiltonian(const ChainParams& params) {
  params.validate();
  if (params.n > kMaxDenseSites) {
    throw std::invalid_argument("build_hamiltonian: n=" + std::to_string(params.n) + " exceeds dense limit " +
                                std::to_string(kMaxDenseSites));
  }
  const int n = params.n;
  const LatticeShape shape(n);
  const std::int64_t dim = shape.dim();
  Matrix h = Matrix::Zero(dim, dim);

  auto spin_z = [&](std::int64_t index, int site) {
    return (index >> (n - 1 - site) & 1) ? -1.0 : 1.0;  // up = digit 0
  };
  for (std::int64_t i = 0; i < dim; ++i) {
    double diag = 0.0;
    for (int s = 0; s + 1 < n; ++s) diag -= params.J * spin_z(i, s) * spin_z(i, s + 1);
    for (int s = 0; s < n; ++s) diag += params.hz * spin_z(i, s);
    h(i, i) = diag;
    for (int s = 0; s < n; ++s) h(i ^ site_stride(shape, s), i) += params.hx;
  }
  return h;
}

PureState neel_state(int n) {
  const LatticeShape shape(n);
  std::int64_t index = 0;
  for (int s = 1; s < n; s += 2) index += site_stride(shape, s);
  return PureState::basis(shape, index);
}

PureState yplus_state(int n) {
  Vector ket(2);
  ket << Complex(0.0, 1.0), Complex(1.0, 0.0);  // i|up> + |down>
  return product_state(LatticeShape(n), std::vector<Vector>(static_cast<std::size_t>(n), ket));
}

PureState make_initial(const InitialState& initial, int n) {
  if (std::holds_alternative<NeelInitial>(initial)) return neel_state(n);
  if (std::holds_alternative<YPlusInitial>(initial)) return yplus_state(n);
  const auto& custom = std::get<PureState>(initial);
  if (custom.shape().sites() != n || custom.shape().local_dim() != 2) {
    throw std::invalid_argument("make_initial: custom state does not match an n=" + std::to_string(n) + " qubit chain");
  }
  return custom;
}

void QuenchSpec::validate() const {
  params.validate();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw std::invalid_argument("QuenchSpec: times must be finite and >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("QuenchSpec: times must be strictly increasing");
  }
}

QuenchEngine::QuenchEngine(const ChainParams& params)
    : params_(params), hamiltonian_(build_hamiltonian(params)), spectrum_(eig_hermitian(hamiltonian_)) {}

std::vector<TimedState> QuenchEngine::evolve(const PureState& initial, const std::vector<double>& times) const {
  const Propagator prop(spectrum_, initial);
  std::vector<std::optional<PureState>> slots(times.size());
  parallel_for(times.size(), [&](std::size_t i) { slots[i] = prop.at(times[i]); });
  std::vector<TimedState> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.emplace_back(times[i], std::move(*slots[i]));
  return out;
}

std::vector<TimedState> run_quench(const QuenchSpec& spec) {
  spec.validate();
  const QuenchEngine engine(spec.params);
  return engine.evolve(make_initial(spec.initial, spec.params.n), spec.times);
}

double energy(const Matrix& hamiltonian, const PureState& psi) {
  return psi.amplitudes().dot(hamiltonian * psi.amplitudes()).real();
}

std::vector<double> uniform_grid(double t0, double t1, int count) {
  if (count < 1) throw std::invalid_argument("uniform_grid: count must be positive");
  if (count == 1) return {t0};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = t0 + (t1 - t0) * i / (count - 1);
  return out;
}

}  // namespace codif
