#ifndef CODIF_PAGE_HPP
#define CODIF_PAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "codif/infotheory.hpp"

namespace codif {

// Haar-ensemble averages for n qubits, subsystem sizes counted in sites.

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

using Rational = boost::multiprecision::cpp_rational;

/// H_p = sum_{i=1}^p 1/i, summed exactly (pairwise blocking), p <= 2^30.
double harmonic(std::int64_t p);
/// sum_{i=lo}^{hi} 1/i; zero when hi < lo.
double harmonic_range(std::int64_t lo, std::int64_t hi);

/// Page's mean entanglement entropy of a sites out of n:
///   sum_{i=2^{n-a}+1}^{2^n} 1/i - (2^a - 1) / 2^{n-a+1},   1 <= a <= n/2.
Nats page_average_entropy(int a, int n);
/// The same value in exact rational arithmetic (n <= 10).
Rational page_average_entropy_exact(int a, int n);
/// Mean entropy of any k in [0, n] sites, using S_k = S_{n-k}.
double mean_subsystem_entropy(int k, int n);

enum class PageRegime { SmallSmall, SmallLarge, LargeB };

/// b >= n/2 -> LargeB; otherwise a + b >= n/2 -> SmallLarge; else SmallSmall.
PageRegime classify_regime(int a, int b, int n);
std::string regime_name(PageRegime r);

/// Mean I(A,B) over the Haar ensemble, |A| = a <= n/2, |B| = b <= n - a.
///
/// Evaluated as <S_a> + <S_b> - <S_{a+b}> with each mean entropy from
/// Page's formula; the regime decides which side (k or n - k) each term is
/// taken on. This is exact, not a leading-order expansion.
Nats page_average_mi(int a, int b, int n);

/// The exact expression of a given regime, evaluated at (a, b) regardless
/// of where (a, b) classifies. Used for boundary continuity checks.
double page_average_mi_in_regime(int a, int b, int n, PageRegime regime);

/// Leading-order closed forms per regime:
///   SmallSmall: (2^{a+b} - 2^{a-b}) / 2^{n-a-b+1}
///   SmallLarge: (2(a+b) - n) ln 2 - (2^{3b+a} - 2^{2n-a-b}) / 2^{n+a+b+1}
///   LargeB:     2a ln 2 + (2^{2n-a-b} - 2^{2n+a-b}) / 2^{n+a+b+1}
double page_regime_asymptotic(int a, int b, int n);
double page_regime_asymptotic_in(int a, int b, int n, PageRegime regime);

/// g(a) = (2^a - 2^{-a}) / 2^{a+1}.
double codification_prefactor(int a);

struct AverageCV {
  double sites = 0.0;      // exact solve of g(a)(2^{n-2b} - 2^{a-n}) = epsilon
  double asymptote = 0.0;  // n/2 + ln(g(a)/epsilon) / (2 ln 2)
  bool clamped = false;    // exact solve was negative and clamped to 0
};

/// b_eps = (n + log2(g(a)/eps')) / 2 with eps' = eps + g(a) 2^{a-n}.
AverageCV page_average_cv(int a, int n, double epsilon);

}  // namespace codif

#endif  // CODIF_PAGE_HPP
