#ifndef CODIF_DYNAMICS_HPP
#define CODIF_DYNAMICS_HPP

#include <variant>
#include <vector>

#include "codif/codification.hpp"
#include "codif/hilbert.hpp"
#include "codif/spectral.hpp"

namespace codif {

enum class Boundary { Open };

/// H = -J sum_{i<n-1} Z_i Z_{i+1} + sum_i (hx X_i + hz Z_i), open chain.
/// The defaults (hx, hz) = (3J/2, -J/2) give the non-integrable point used
/// for the quench studies. Site 0 is the first spin of the chain.
struct ChainParams {
  int n = 10;
  double J = 1.0;
  double hx = 1.5;
  double hz = -0.5;
  Boundary boundary = Boundary::Open;

  /// Fields tied to J at the non-integrable point.
  static ChainParams with_coupling(int n, double J) { return {n, J, 1.5 * J, -0.5 * J, Boundary::Open}; }
  void validate() const;
};

inline constexpr int kMaxDenseSites = 14;

/// Dense 2^n x 2^n Hamiltonian. Throws for n > kMaxDenseSites.
Matrix build_hamiltonian(const ChainParams& params);

/// |up down up down ...>, starting with up at site 0.
PureState neel_state(int n);
/// prod_j (|down> + i|up>)/sqrt(2): every spin along +y.
PureState yplus_state(int n);

struct NeelInitial {};
struct YPlusInitial {};
using InitialState = std::variant<NeelInitial, YPlusInitial, PureState>;

PureState make_initial(const InitialState& initial, int n);

struct QuenchSpec {
  ChainParams params;
  InitialState initial = NeelInitial{};
  std::vector<double> times;

  void validate() const;
};

/// Owns H and its eigendecomposition so several initial states can be
/// evolved against one diagonalization.
class QuenchEngine {
public:
  explicit QuenchEngine(const ChainParams& params);

  const ChainParams& params() const noexcept { return params_; }
  const Matrix& hamiltonian() const noexcept { return hamiltonian_; }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }

  /// States U(t)|initial> at each time, evaluated in parallel.
  std::vector<TimedState> evolve(const PureState& initial, const std::vector<double>& times) const;

private:
  ChainParams params_;
  Matrix hamiltonian_;
  SpectralDecomposition spectrum_;
};

std::vector<TimedState> run_quench(const QuenchSpec& spec);

/// Real part of <psi|H|psi>.
double energy(const Matrix& hamiltonian, const PureState& psi);

/// count uniform samples over [t0, t1] inclusive.
std::vector<double> uniform_grid(double t0, double t1, int count);

}  // namespace codif

#endif  // CODIF_DYNAMICS_HPP
