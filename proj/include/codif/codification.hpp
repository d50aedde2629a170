#ifndef CODIF_CODIFICATION_HPP
#define CODIF_CODIFICATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "codif/hilbert.hpp"
#include "codif/infotheory.hpp"

namespace codif {

enum class SearchKind { ContiguousRight, ExhaustiveMinSize };

/// How candidate subsystems B are generated when looking for the smallest
/// one that captures the correlations of A.
///
/// ContiguousRight grows B one site at a time along `order` (A must be a
/// single site). An empty order means: the sites to the right of A in
/// ascending order, then the sites to its left walking away from A. For
/// A = {0} that is the ladder {1}, {1,2}, ..., {1..n-1}.
///
/// ExhaustiveMinSize considers every subset of the complement of A.
struct SearchPolicy {
  SearchKind kind = SearchKind::ContiguousRight;
  std::vector<int> order;

  static SearchPolicy contiguous(std::vector<int> order = {}) {
    return {SearchKind::ContiguousRight, std::move(order)};
  }
  static SearchPolicy exhaustive() { return {SearchKind::ExhaustiveMinSize, {}}; }

  std::string name() const;
  /// The growth order for A; throws std::invalid_argument when the policy
  /// cannot be applied to A.
  std::vector<int> resolved_order(const SiteMask& a) const;
};

struct MIEntry {
  SiteMask b;
  Nats mi;
};

/// Mutual information between A and a growing family of subsystems.
/// entries[k] has |B| = k + 1. For the exhaustive policy each entry is the
/// maximizing subset of that size (lexicographically smallest on ties).
struct MIProfile {
  SiteMask a;
  std::vector<MIEntry> entries;
  Nats total;  // I(A, complement of A)
};

struct CVResult {
  int omega_sites = 0;    // |B| of the minimizing subsystem
  double omega_log = 0.0; // omega_sites * ln d
  SiteMask witness;
  double epsilon = 0.0;
  SearchPolicy policy;
  double deficit = 0.0;   // I(A, complement) - I(A, witness)
};

MIProfile mi_profile(const PureState& state, const SiteMask& a, const SearchPolicy& policy);

/// Smallest |B| (ascending from 0) with I(A, complement) - I(A, B) <= epsilon.
/// At each size the best subset under the policy is tested. B = complement
/// of A always satisfies the condition, so a result always exists.
CVResult codification_volume(const PureState& state, const SiteMask& a, double epsilon,
                             const SearchPolicy& policy);

using TimedState = std::pair<double, PureState>;

/// Elementwise codification_volume over a trajectory, evaluated in parallel
/// and returned ordered by time.
std::vector<std::pair<double, CVResult>> cv_time_series(const std::vector<TimedState>& states,
                                                        const SiteMask& a, double epsilon,
                                                        const SearchPolicy& policy);

/// Calls visit(subset) for every size-k subset of `pool` (ascending input)
/// in lexicographic order.
template <class Visit>
void for_each_combination(const std::vector<int>& pool, int k, Visit&& visit) {
  const int m = static_cast<int>(pool.size());
  if (k < 0 || k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> subset(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    visit(subset);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace codif

#endif  // CODIF_CODIFICATION_HPP
