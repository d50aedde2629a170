#include "property_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "codif/codification.hpp"
#include "codif/dynamics.hpp"
#include "codif/ensembles.hpp"
#include "codif/experiments.hpp"
#include "codif/infotheory.hpp"
#include "codif/page.hpp"
#include "codif/spectral.hpp"
#include "oracles.hpp"

namespace props {

using namespace codif;

namespace {

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Accumulates pass/fail over cases.
struct Tally {
  Outcome out;
  int current = 0;

  explicit Tally(std::string name) { out.name = std::move(name); }

  void fail(double margin, const std::string& what) {
    ++out.failures;
    if (out.first_failure.empty()) out.first_failure = "case " + std::to_string(current) + ": " + what;
    out.worst = std::max(out.worst, margin);
  }
  // Records `value <= bound`.
  void le(double value, double bound, const std::string& what) {
    if (!(value <= bound)) {
      std::ostringstream os;
      os << what << " (" << value << " > " << bound << ")";
      fail(value - bound, os.str());
    }
  }
  void truth(bool cond, const std::string& what) {
    if (!cond) fail(1.0, what);
  }
  template <class F>
  Outcome run(int cases, std::uint64_t seed, F body) {
    for (current = 0; current < cases; ++current) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(current)));
      try {
        body(rng);
      } catch (const std::exception& e) {
        fail(1.0, std::string("exception: ") + e.what());
      }
    }
    out.cases = cases;
    return out;
  }
};

SiteMask random_mask(Rng& rng, const LatticeShape& shape, bool allow_empty = true, bool allow_full = true) {
  const std::uint64_t all = (std::uint64_t{1} << shape.sites()) - 1;
  while (true) {
    const std::uint64_t bits = std::uniform_int_distribution<std::uint64_t>(0, all)(rng);
    if (!allow_empty && bits == 0) continue;
    if (!allow_full && bits == all) continue;
    return SiteMask::from_bits(shape, bits);
  }
}

Vector random_ket(Rng& rng, int d) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = Complex(g(rng), g(rng));
  return v.normalized();
}

PureState random_product(Rng& rng, const LatticeShape& shape) {
  std::vector<Vector> kets;
  for (int s = 0; s < shape.sites(); ++s) kets.push_back(random_ket(rng, shape.local_dim()));
  return product_state(shape, kets);
}

ChainParams random_chain(Rng& rng, int n) {
  ChainParams p;
  p.n = n;
  p.J = uniform_real(rng, 0.2, 2.0);
  p.hx = uniform_real(rng, -2.0, 2.0);
  p.hz = uniform_real(rng, -2.0, 2.0);
  return p;
}

// A quench snapshot from a random product state under a random chain.
PureState random_snapshot(Rng& rng, int n) {
  const auto params = random_chain(rng, n);
  const auto dec = eig_hermitian(build_hamiltonian(params));
  return unitary_evolve(dec, uniform_real(rng, 0.0, 20.0), random_product(rng, LatticeShape(n)));
}

// Haar samples, quench snapshots, product states and embedded singlets.
PureState random_state(Rng& rng, int n) {
  const LatticeShape shape(n);
  switch (uniform_int(rng, 0, 5)) {
    case 0: return random_product(rng, shape);
    case 1: {
      if (n < 2) return random_product(rng, shape);
      std::vector<Vector> rest;
      for (int s = 2; s < n; ++s) rest.push_back(random_ket(rng, 2));
      int i = uniform_int(rng, 0, n - 1), j = uniform_int(rng, 0, n - 2);
      if (j >= i) ++j;
      return embed_pair_singlet(shape, i, j, rest);
    }
    case 2:
    case 3: return n >= 2 ? random_snapshot(rng, n) : random_product(rng, shape);
    default: return HaarSampler(shape, rng()).sample(0);
  }
}

Matrix eigenvalues_sorted_nonzero(const Matrix& rho, double floor) {
  const RealVector ev = eigvals_hermitian(rho);
  std::vector<double> nz;
  for (auto l : ev) {
    if (l > floor) nz.push_back(l);
  }
  std::sort(nz.begin(), nz.end());
  Matrix out(static_cast<Eigen::Index>(nz.size()), 1);
  for (std::size_t i = 0; i < nz.size(); ++i) out(static_cast<Eigen::Index>(i), 0) = nz[i];
  return out;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// ---------------------------------------------------------------- hilbert

Outcome trace_is_one(int cases, std::uint64_t seed) {
  return Tally("partial trace has unit trace").run(cases, seed, [](Rng& rng) {
    const int n = uniform_int(rng, 1, 8);
    const auto psi = random_state(rng, n);
    const auto k = random_mask(rng, psi.shape());
    // validated on construction; recheck explicitly
    const auto rho = partial_trace_pure(psi, k);
    if (std::abs(rho.elements().trace() - Complex(1.0)) > 1e-10) throw std::runtime_error("trace off");
  });
}

Outcome complement_spectra(int cases, std::uint64_t seed) {
  Tally t("reduced spectra of K and its complement agree");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const auto psi = random_state(rng, n);
    const auto k = random_mask(rng, psi.shape(), false, false);
    const Matrix a = eigenvalues_sorted_nonzero(partial_trace_pure(psi, k).elements(), 1e-9);
    const Matrix b = eigenvalues_sorted_nonzero(partial_trace_pure(psi, k.complement()).elements(), 1e-9);
    if (a.rows() != b.rows()) {
      t.fail(1.0, "nonzero eigenvalue counts differ for " + k.to_string());
      return;
    }
    t.le(max_abs(a - b), 1e-9, "spectrum mismatch for " + k.to_string());
  });
}

Outcome staged_trace(int cases, std::uint64_t seed) {
  Tally t("staged partial trace equals direct trace");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const auto psi = random_state(rng, n);
    const auto k1 = random_mask(rng, psi.shape(), false);
    std::vector<int> sub;
    for (int s : k1.sites()) {
      if (uniform_int(rng, 0, 1)) sub.push_back(s);
    }
    const SiteMask k2(psi.shape(), sub);
    const auto staged = partial_trace_dm(partial_trace_pure(psi, k1), k2);
    t.le(max_abs(staged.elements() - partial_trace_pure(psi, k2).elements()), 1e-12,
         "K1=" + k1.to_string() + " K2=" + k2.to_string());
  });
}

Outcome product_basis_order(int cases, std::uint64_t seed) {
  Tally t("product-state reduction is the ordered tensor product");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 1, 7);
    const int d = n <= 4 ? uniform_int(rng, 2, 3) : 2;
    const LatticeShape shape(n, d);
    std::vector<Vector> kets;
    for (int s = 0; s < n; ++s) kets.push_back(random_ket(rng, d));
    const auto psi = product_state(shape, kets);
    const auto k = random_mask(rng, shape);
    Matrix expected = Matrix::Identity(1, 1);
    for (int s : k.sites()) expected = oracle::kron(expected, kets[s] * kets[s].adjoint());
    t.le(max_abs(partial_trace_pure(psi, k).elements() - expected), 1e-14, "mask " + k.to_string());
  });
}

// --------------------------------------------------------------- spectral

Outcome decomposition_contract(int cases, std::uint64_t seed) {
  Tally t("eigendecomposition reconstructs and is orthonormal");
  return t.run(cases, seed, [&](Rng& rng) {
    const int dim = uniform_int(rng, 1, 48);
    std::normal_distribution<double> g;
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng)) * uniform_real(rng, 0.1, 10.0);
    }
    m = 0.5 * (m + m.adjoint()).eval();
    const auto dec = eig_hermitian(m);
    const double scale = std::max(1.0, max_abs(m));
    t.le(max_abs(dec.reconstruct() - m), 1e-9 * scale, "reconstruction");
    t.le(max_abs(dec.eigenvectors.adjoint() * dec.eigenvectors - Matrix::Identity(dim, dim)), 1e-10,
         "orthonormality");
    for (int i = 1; i < dim; ++i) t.truth(dec.eigenvalues[i - 1] <= dec.eigenvalues[i], "ascending order");
  });
}

Outcome norm_preserved(int cases, std::uint64_t seed) {
  Tally t("evolution preserves the norm");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const auto dec = eig_hermitian(build_hamiltonian(random_chain(rng, n)));
    const auto psi = random_state(rng, n);
    const double time = uniform_real(rng, 0.0, 100.0);
    t.le(std::abs(unitary_evolve(dec, time, psi).norm() - 1.0), 1e-10, "t=" + std::to_string(time));
  });
}

Outcome group_property(int cases, std::uint64_t seed) {
  Tally t("U(t1 + t2) = U(t2) U(t1)");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const auto dec = eig_hermitian(build_hamiltonian(random_chain(rng, n)));
    const auto psi = random_state(rng, n);
    const double t1 = uniform_real(rng, 0.0, 25.0), t2 = uniform_real(rng, 0.0, 25.0);
    const auto once = unitary_evolve(dec, t1 + t2, psi);
    const auto twice = unitary_evolve(dec, t2, unitary_evolve(dec, t1, psi));
    t.le(max_abs(once.amplitudes() - twice.amplitudes()), 1e-9, "group property");
  });
}

Outcome energy_conserved(int cases, std::uint64_t seed) {
  Tally t("energy is conserved");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const QuenchEngine engine(random_chain(rng, n));
    const auto psi = random_state(rng, n);
    const double e0 = energy(engine.hamiltonian(), psi);
    std::vector<double> times;
    for (int k = 0; k < 5; ++k) times.push_back(10.0 * k + uniform_real(rng, 0.0, 10.0));
    for (const auto& [time, s] : engine.evolve(psi, times)) {
      t.le(std::abs(energy(engine.hamiltonian(), s) - e0), 1e-8 * std::max(1.0, std::abs(e0)),
           "t=" + std::to_string(time));
    }
  });
}

// ------------------------------------------------------------- infotheory

struct MIPair {
  PureState psi;
  SiteMask a, b;
};

MIPair random_pair(Rng& rng) {
  const int n = uniform_int(rng, 2, 8);
  auto psi = random_state(rng, n);
  const LatticeShape shape(n);
  std::vector<int> sa, sb;
  while (sa.empty() || sb.empty()) {
    sa.clear();
    sb.clear();
    for (int s = 0; s < n; ++s) {
      const int r = uniform_int(rng, 0, 2);
      if (r == 0) sa.push_back(s);
      else if (r == 1) sb.push_back(s);
    }
  }
  return {std::move(psi), SiteMask(shape, sa), SiteMask(shape, sb)};
}

Outcome mi_nonnegative(int cases, std::uint64_t seed) {
  Tally t("mutual information is nonnegative");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto p = random_pair(rng);
    const double s = subsystem_entropy(p.psi, p.a) + subsystem_entropy(p.psi, p.b) -
                     subsystem_entropy(p.psi, p.a.unite(p.b));
    t.le(-s, 1e-9, "raw I for " + p.a.to_string() + "," + p.b.to_string());
    t.le(-mutual_information(p.psi, p.a, p.b).value(), 0.0, "Nats value");
  });
}

Outcome mi_purity_bound(int cases, std::uint64_t seed) {
  Tally t("mutual information is bounded by 2 min(S_max)");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto p = random_pair(rng);
    const double bound = 2.0 * std::min(p.a.size(), p.b.size()) * std::numbers::ln2;
    t.le(mutual_information(p.psi, p.a, p.b).value(), bound + 1e-9, p.a.to_string() + "," + p.b.to_string());
  });
}

Outcome mi_monotone(int cases, std::uint64_t seed) {
  Tally t("mutual information grows with B (strong subadditivity)");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 3, 8);
    const auto psi = uniform_int(rng, 0, 1) ? HaarSampler(LatticeShape(n), rng()).sample(0) : random_snapshot(rng, n);
    const LatticeShape shape(n);
    const auto a = random_mask(rng, shape, false, false);
    const SiteMask complement = a.complement();
    const auto rest = complement.sites();
    std::vector<int> big, small;
    for (int s : rest) {
      if (uniform_int(rng, 0, 3)) {
        big.push_back(s);
        if (uniform_int(rng, 0, 1)) small.push_back(s);
      }
    }
    if (big.empty()) big.push_back(rest[0]);
    if (small.empty()) small.push_back(big[0]);
    const SiteMask b(shape, small), bp(shape, big);
    t.le(mutual_information(psi, a, b).value(), mutual_information(psi, a, bp).value() + 1e-9,
         "A=" + a.to_string() + " B=" + b.to_string() + " B'=" + bp.to_string());
  });
}

Outcome complement_saturation(int cases, std::uint64_t seed) {
  Tally t("I(A, complement) = 2 S(A)");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const auto psi = random_state(rng, n);
    const auto a = random_mask(rng, psi.shape(), false, false);
    t.le(std::abs(mutual_information(psi, a, a.complement()).value() - 2.0 * subsystem_entropy(psi, a)), 1e-9,
         a.to_string());
  });
}

// ----------------------------------------------------------- codification

struct CVCase {
  PureState psi;
  SiteMask a;
  double eps;
};

CVCase random_cv_case(Rng& rng) {
  const int n = uniform_int(rng, 2, 8);
  auto psi = random_state(rng, n);
  const SiteMask a(LatticeShape(n), {uniform_int(rng, 0, n - 1)});
  return {std::move(psi), a, std::pow(10.0, uniform_real(rng, -6.0, 0.0))};
}

Outcome policy_dominance(int cases, std::uint64_t seed) {
  Tally t("exhaustive volume <= contiguous volume");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_cv_case(rng);
    const auto ex = codification_volume(c.psi, c.a, c.eps, SearchPolicy::exhaustive());
    const auto co = codification_volume(c.psi, c.a, c.eps, SearchPolicy::contiguous());
    t.le(ex.omega_sites, co.omega_sites, "A=" + c.a.to_string());
  });
}

Outcome epsilon_monotone(int cases, std::uint64_t seed) {
  Tally t("volume is nonincreasing in epsilon");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_cv_case(rng);
    const double e2 = c.eps * std::pow(10.0, uniform_real(rng, 0.0, 3.0));
    for (const auto& policy : {SearchPolicy::exhaustive(), SearchPolicy::contiguous()}) {
      const auto tight = codification_volume(c.psi, c.a, c.eps, policy);
      const auto loose = codification_volume(c.psi, c.a, e2, policy);
      t.le(loose.omega_sites, tight.omega_sites, policy.name());
    }
  });
}

Outcome witness_valid(int cases, std::uint64_t seed) {
  Tally t("witness satisfies the condition and no smaller size does");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_cv_case(rng);
    for (const auto& policy : {SearchPolicy::exhaustive(), SearchPolicy::contiguous()}) {
      const auto cv = codification_volume(c.psi, c.a, c.eps, policy);
      const double total = total_information(c.psi, c.a).value();
      const double at_witness = cv.witness.empty() ? 0.0 : mutual_information(c.psi, c.a, cv.witness).value();
      t.le(total - at_witness, c.eps + 1e-12, policy.name() + " witness " + cv.witness.to_string());
      t.le(std::abs(total - at_witness - cv.deficit), 1e-12, policy.name() + " stored deficit");
      t.truth(cv.witness.size() == cv.omega_sites && cv.witness.disjoint(c.a), "witness shape");
      t.truth(std::abs(cv.omega_log - cv.omega_sites * std::numbers::ln2) < 1e-15, "omega_log");
      if (cv.omega_sites > 0) {
        t.truth(total > c.eps, "size 0 would satisfy");
        const auto prof = mi_profile(c.psi, c.a, policy);
        for (int b = 1; b < cv.omega_sites; ++b) {
          t.truth(total - prof.entries[b - 1].mi.value() > c.eps, policy.name() + " smaller size satisfies");
        }
      }
    }
  });
}

Outcome contiguous_profile_monotone(int cases, std::uint64_t seed) {
  Tally t("contiguous profile is nondecreasing");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_cv_case(rng);
    const auto prof = mi_profile(c.psi, c.a, SearchPolicy::contiguous());
    for (std::size_t k = 1; k < prof.entries.size(); ++k) {
      t.le(prof.entries[k - 1].mi.value(), prof.entries[k].mi.value() + 1e-9, "b=" + std::to_string(k));
    }
    t.le(std::abs(prof.entries.back().mi.value() - prof.total.value()), 1e-9, "last entry is the total");
  });
}

// --------------------------------------------------------------- dynamics

Outcome translation_structure(int cases, std::uint64_t seed) {
  Tally t("bulk terms are one tensor shifted along the chain");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 3, 8);
    const auto p = random_chain(rng, n);
    auto shorter = p;
    shorter.n = n - 1;
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix bond = -p.J * oracle::kron(oracle::pauli_z(), oracle::pauli_z()) +
                        oracle::kron(p.hx * oracle::pauli_x() + p.hz * oracle::pauli_z(), id2);
    // H_n = bond(0,1) + 1 (x) H_{n-1}, and also H_{n-1} (x) 1 + bond(n-2, n-1) with the
    // field moved to the new last site.
    const Matrix h = build_hamiltonian(p);
    const Matrix left = oracle::embed(bond, 0, 2, n) + oracle::kron(id2, build_hamiltonian(shorter));
    const Matrix field = p.hx * oracle::pauli_x() + p.hz * oracle::pauli_z();
    const Matrix right = oracle::kron(build_hamiltonian(shorter), id2) + oracle::embed(bond, n - 2, 2, n) -
                         oracle::embed(field, n - 2, 1, n) + oracle::embed(field, n - 1, 1, n);
    t.le(max_abs(h - left), 1e-12, "left recursion");
    t.le(max_abs(h - right), 1e-12, "right recursion");
  });
}

Outcome hermitian_real_energy(int cases, std::uint64_t seed) {
  Tally t("H is Hermitian and <H> is real");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 9);
    const Matrix h = build_hamiltonian(random_chain(rng, n));
    t.le(max_abs(h - h.adjoint()), 1e-12, "hermiticity");
    const auto psi = random_state(rng, n);
    const Complex e = psi.amplitudes().dot(h * psi.amplitudes());
    t.le(std::abs(e.imag()), 1e-10, "imaginary part of <H>");
  });
}

Outcome product_start_unentangled(int cases, std::uint64_t seed) {
  Tally t("quench from a product state starts unentangled");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 7);
    const auto start = random_product(rng, LatticeShape(n));
    const auto out = run_quench({random_chain(rng, n), start, {0.0}});
    for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << n); ++bits) {
      t.le(subsystem_entropy(out[0].second, SiteMask::from_bits(LatticeShape(n), bits)), 1e-10, "S at t=0");
    }
  });
}

// -------------------------------------------------------------- ensembles

Outcome seed_determinism(int cases, std::uint64_t seed) {
  Tally t("streams are determined by the seed alone");
  return t.run(cases, seed, [&](Rng& rng) {
    const LatticeShape shape(uniform_int(rng, 1, 6));
    const std::uint64_t s1 = rng(), s2 = rng();
    HaarSampler a(shape, s1), b(shape, s2), a_again(shape, s1);
    // interleaving with another stream must not perturb either one
    std::vector<Vector> solo;
    for (int k = 0; k < 4; ++k) solo.push_back(a_again.next().amplitudes());
    for (int k = 0; k < 4; ++k) {
      const auto x = a.next();
      const auto y = b.next();
      t.truth(x.amplitudes() == solo[k], "stream changed under interleaving");
      t.truth(x.amplitudes() != y.amplitudes(), "distinct seeds gave equal samples");
    }
  });
}

Outcome mc_converges(int cases, std::uint64_t seed) {
  Tally t("Monte Carlo means lie within 3 standard errors of the Page values");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 8);
    const bool mi = n >= 3 && uniform_int(rng, 0, 1);
    const int a = uniform_int(rng, 1, n / 2);
    const int b = mi ? uniform_int(rng, 1, n - a) : 0;
    const double exact = mi ? page_average_mi(a, b, n).value() : page_average_entropy(a, n).value();
    const std::uint64_t s = rng();
    for (std::int64_t count : {500, 2000}) {
      HaarSampler sampler(LatticeShape(n), s);
      const auto e = mi ? mc_average_mi(sampler, a, b, count) : mc_average_entropy(sampler, a, count);
      std::ostringstream what;
      what << (mi ? "I" : "S") << "(a=" << a << ",b=" << b << ",n=" << n << ") at " << count << " samples, z";
      t.le(std::abs(e.mean - exact) / e.std_error, 3.0, what.str());
    }
  });
}

// ---------------------------------------------------------- page analytics

Outcome page_identity(int cases, std::uint64_t seed) {
  Tally t("I(a, n - a) = 2 S_a");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 24);
    const int a = uniform_int(rng, 1, n / 2);
    t.le(std::abs(page_average_mi(a, n - a, n).value() - 2.0 * page_average_entropy(a, n).value()), 1e-9,
         "a=" + std::to_string(a) + " n=" + std::to_string(n));
  });
}

Outcome page_monotone(int cases, std::uint64_t seed) {
  Tally t("average mutual information is nondecreasing in b");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = uniform_int(rng, 2, 22);
    const int a = uniform_int(rng, 1, n / 2);
    double prev = 0.0;
    for (int b = 1; b <= n - a; ++b) {
      const double v = page_average_mi(a, b, n).value();
      t.le(prev, v + 1e-12, "a=" + std::to_string(a) + " b=" + std::to_string(b) + " n=" + std::to_string(n));
      prev = v;
    }
  });
}

Outcome page_curve_shape(int cases, std::uint64_t seed) {
  Tally t("average curve: exponential, then linear, then saturating");
  return t.run(cases, seed, [&](Rng& rng) {
    const int n = 2 * uniform_int(rng, 6, 10);
    const int a = uniform_int(rng, 1, n / 4);
    const std::string tag = "a=" + std::to_string(a) + " n=" + std::to_string(n);
    std::vector<double> curve{0.0};
    for (int b = 1; b <= n - a; ++b) curve.push_back(page_average_mi(a, b, n).value());
    for (int b = 2; b + 1 < n / 2 - a; ++b) {
      const double ratio = curve[b + 1] / curve[b];
      t.truth(ratio > 3.5 && ratio < 4.5, "growth ratio " + std::to_string(ratio) + " " + tag);
    }
    std::vector<double> slope;
    for (int b = 1; b < n - a; ++b) slope.push_back(curve[b + 1] - curve[b]);
    const auto peak = static_cast<std::size_t>(std::max_element(slope.begin(), slope.end()) - slope.begin());
    for (std::size_t i = 0; i + 1 < slope.size(); ++i) {
      if (i < peak) t.le(slope[i], slope[i + 1] + 1e-12, "slope rises " + tag);
      else t.le(slope[i + 1], slope[i] + 1e-12, "slope decays " + tag);
    }
    t.le(slope[peak], 2 * std::numbers::ln2 + 1e-12, "peak slope " + tag);
    // the peak sits in the window a + b ~ n/2 .. b ~ n/2
    const int b_peak = static_cast<int>(peak) + 1;
    t.truth(b_peak >= n / 2 - a - 1 && b_peak <= n / 2 + 1, "peak location " + tag);
    // the tail slope vanishes like 2^{2a - n}
    t.le(slope.back(), std::ldexp(1.0, 2 * a + 1 - n) * slope[peak], "saturation " + tag);
  });
}

// ------------------------------------------------------------ experiments

ExperimentConfig random_config(Rng& rng) {
  const ExperimentKind kinds[] = {ExperimentKind::PageTables, ExperimentKind::Fig2Ensemble, ExperimentKind::QuenchMI,
                                  ExperimentKind::QuenchCV, ExperimentKind::LongTimeAverage};
  auto c = ExperimentConfig::defaults_for(kinds[uniform_int(rng, 0, 4)]);
  c.n = c.experiment == ExperimentKind::Fig2Ensemble ? uniform_int(rng, 5, 10) : uniform_int(rng, 2, 6);
  c.seed = rng();
  c.samples = uniform_int(rng, 2, 12);
  c.tmax = uniform_real(rng, 0.5, 4.0);
  c.steps = uniform_int(rng, 2, 9);
  c.window_start = 0.0;
  c.window_end = c.tmax;
  c.epsilon = std::pow(10.0, uniform_real(rng, -5.0, -1.0));
  c.J = uniform_real(rng, 0.5, 1.5);
  c.both_policies = uniform_int(rng, 0, 1);
  c.units = uniform_int(rng, 0, 1) ? Units::Bits : Units::Nats;
  if (uniform_int(rng, 0, 1)) c.initial = {uniform_int(rng, 0, 1) ? InitialKind::Neel : InitialKind::YPlus};
  return c;
}

std::string strip_run_line(const std::string& csv) {
  const auto first = csv.find('\n');
  const auto second = csv.find('\n', first + 1);
  return csv.substr(0, first + 1) + csv.substr(second + 1);
}

Outcome csv_deterministic(int cases, std::uint64_t seed) {
  Tally t("identical configs give byte-identical tables");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_config(rng);
    const auto x = strip_run_line(run_experiment(c).to_csv());
    const auto y = strip_run_line(run_experiment(c).to_csv());
    t.truth(x == y, experiment_name(c.experiment) + " output differs");
  });
}

Outcome schema_valid(int cases, std::uint64_t seed) {
  Tally t("every table passes schema validation");
  return t.run(cases, seed, [&](Rng& rng) {
    const auto c = random_config(rng);
    const auto table = run_experiment(c);
    table.validate();
    const std::string csv = table.to_csv();
    std::istringstream lines(csv);
    std::string line;
    int row = -3;
    const auto commas = static_cast<std::ptrdiff_t>(table.columns().size() - 1);
    while (std::getline(lines, line)) {
      if (row >= -1) {
        // text cells are never quoted in these tables, so commas separate cells
        t.truth(std::count(line.begin(), line.end(), ',') == commas, "cell count on line " + std::to_string(row));
      }
      ++row;
    }
    t.truth(row == static_cast<int>(table.rows().size()), "row count");
  });
}

// ------------------------------------------------------------------ registry

}  // namespace

const std::vector<Property>& all() {
  static const std::vector<Property> registry{
      {"hilbert", "trace", trace_is_one},
      {"hilbert", "complement-spectra", complement_spectra},
      {"hilbert", "staged-trace", staged_trace},
      {"hilbert", "product-order", product_basis_order},
      {"spectral", "decomposition", decomposition_contract},
      {"spectral", "norm", norm_preserved},
      {"spectral", "group", group_property},
      {"spectral", "energy", energy_conserved},
      {"infotheory", "nonnegative", mi_nonnegative},
      {"infotheory", "purity-bound", mi_purity_bound},
      {"infotheory", "monotone", mi_monotone},
      {"infotheory", "saturation", complement_saturation},
      {"codification", "dominance", policy_dominance},
      {"codification", "epsilon", epsilon_monotone},
      {"codification", "witness", witness_valid},
      {"codification", "profile", contiguous_profile_monotone},
      {"dynamics", "translation", translation_structure},
      {"dynamics", "hermitian", hermitian_real_energy},
      {"dynamics", "product-start", product_start_unentangled},
      {"ensembles", "determinism", seed_determinism},
      {"ensembles", "convergence", mc_converges},
      {"page", "identity", page_identity},
      {"page", "monotone", page_monotone},
      {"page", "shape", page_curve_shape},
      {"experiments", "determinism", csv_deterministic},
      {"experiments", "schema", schema_valid},
  };
  return registry;
}

}  // namespace props
