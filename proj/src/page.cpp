#include "codif/page.hpp"

#include <cmath>
#include <numbers>

namespace codif {

namespace {

constexpr std::int64_t kMaxHarmonic = std::int64_t{1} << 30;
constexpr std::int64_t kLeafBlock = 256;

double pairwise_reciprocal_sum(std::int64_t lo, std::int64_t hi) {
  if (hi - lo < kLeafBlock) {
    double s = 0.0;
    for (std::int64_t i = hi; i >= lo; --i) s += 1.0 / static_cast<double>(i);
    return s;
  }
  const std::int64_t mid = lo + (hi - lo) / 2;
  return pairwise_reciprocal_sum(lo, mid) + pairwise_reciprocal_sum(mid + 1, hi);
}

double pow2(int k) { return std::ldexp(1.0, k); }

void check_n(int n) {
  if (n < 1 || n > 30) throw DomainError("page: n must lie in [1, 30], got " + std::to_string(n));
}

// Page's formula with no domain restriction on k.
double page_raw(int k, int n) {
  if (k == 0) return 0.0;
  const std::int64_t top = std::int64_t{1} << n;
  const std::int64_t i0 = (std::int64_t{1} << (n - k)) + 1;
  return harmonic_range(i0, top) - (pow2(k) - 1.0) / pow2(n - k + 1);
}

void check_ab(int a, int b, int n) {
  check_n(n);
  if (a < 1 || 2 * a > n) {
    throw DomainError("page: subsystem size a=" + std::to_string(a) + " must satisfy 1 <= a <= n/2 (n=" +
                      std::to_string(n) + ")");
  }
  if (b < 0 || a + b > n) throw DomainError("page: b=" + std::to_string(b) + " must satisfy 0 <= b <= n - a");
}

}  // namespace

double harmonic_range(std::int64_t lo, std::int64_t hi) {
  if (lo < 1) throw DomainError("harmonic_range: lower index must be >= 1");
  if (hi > kMaxHarmonic) throw DomainError("harmonic_range: upper index exceeds 2^30");
  if (hi < lo) return 0.0;
  return pairwise_reciprocal_sum(lo, hi);
}

double harmonic(std::int64_t p) {
  if (p < 1) throw DomainError("harmonic: p must be positive");
  return harmonic_range(1, p);
}

Nats page_average_entropy(int a, int n) {
  check_ab(a, 0, n);
  return Nats(page_raw(a, n));
}

Rational page_average_entropy_exact(int a, int n) {
  check_ab(a, 0, n);
  if (n > 10) throw DomainError("page_average_entropy_exact: n must be <= 10");
  Rational sum = 0;
  const std::int64_t top = std::int64_t{1} << n;
  for (std::int64_t i = (std::int64_t{1} << (n - a)) + 1; i <= top; ++i) sum += Rational(1, i);
  const std::int64_t num = (std::int64_t{1} << a) - 1;
  const std::int64_t den = std::int64_t{1} << (n - a + 1);
  return sum - Rational(num, den);
}

double mean_subsystem_entropy(int k, int n) {
  check_n(n);
  if (k < 0 || k > n) throw DomainError("mean_subsystem_entropy: k out of range");
  return page_raw(std::min(k, n - k), n);
}

PageRegime classify_regime(int a, int b, int n) {
  if (2 * b >= n) return PageRegime::LargeB;
  if (2 * (a + b) >= n) return PageRegime::SmallLarge;
  return PageRegime::SmallSmall;
}

std::string regime_name(PageRegime r) {
  switch (r) {
    case PageRegime::SmallSmall: return "small-small";
    case PageRegime::SmallLarge: return "small-large";
    case PageRegime::LargeB: return "large-b";
  }
  return "?";
}

double page_average_mi_in_regime(int a, int b, int n, PageRegime regime) {
  check_ab(a, b, n);
  switch (regime) {
    case PageRegime::SmallSmall: return page_raw(a, n) + page_raw(b, n) - page_raw(a + b, n);
    case PageRegime::SmallLarge: return page_raw(a, n) + page_raw(b, n) - page_raw(n - a - b, n);
    case PageRegime::LargeB: return page_raw(a, n) + page_raw(n - b, n) - page_raw(n - a - b, n);
  }
  throw DomainError("page_average_mi_in_regime: unknown regime");
}

Nats page_average_mi(int a, int b, int n) {
  return Nats(page_average_mi_in_regime(a, b, n, classify_regime(a, b, n)));
}

double page_regime_asymptotic_in(int a, int b, int n, PageRegime regime) {
  check_ab(a, b, n);
  const double ln2 = std::numbers::ln2;
  switch (regime) {
    case PageRegime::SmallSmall: return (pow2(a + b) - pow2(a - b)) / pow2(n - a - b + 1);
    case PageRegime::SmallLarge:
      return (2.0 * (a + b) - n) * ln2 - (pow2(3 * b + a) - pow2(2 * n - a - b)) / pow2(n + a + b + 1);
    case PageRegime::LargeB: return 2.0 * a * ln2 + (pow2(2 * n - a - b) - pow2(2 * n + a - b)) / pow2(n + a + b + 1);
  }
  throw DomainError("page_regime_asymptotic_in: unknown regime");
}

double page_regime_asymptotic(int a, int b, int n) {
  return page_regime_asymptotic_in(a, b, n, classify_regime(a, b, n));
}

double codification_prefactor(int a) { return (pow2(a) - pow2(-a)) / pow2(a + 1); }

AverageCV page_average_cv(int a, int n, double epsilon) {
  check_ab(a, 0, n);
  if (!(epsilon > 0.0)) throw DomainError("page_average_cv: epsilon must be positive");
  const double g = codification_prefactor(a);
  const double eps_eff = epsilon + g * pow2(a - n);
  AverageCV out;
  out.sites = 0.5 * (n + std::log2(g / eps_eff));
  out.asymptote = 0.5 * n + std::log(g / epsilon) / (2.0 * std::numbers::ln2);
  if (out.sites < 0.0) {
    out.sites = 0.0;
    out.clamped = true;
  }
  return out;
}

}  // namespace codif
