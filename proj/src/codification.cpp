#include "codif/codification.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "codif/parallel.hpp"

namespace codif {

std::string SearchPolicy::name() const {
  return kind == SearchKind::ContiguousRight ? "contiguous" : "exhaustive";
}

std::vector<int> SearchPolicy::resolved_order(const SiteMask& a) const {
  const int n = a.shape().sites();
  const SiteMask complement = a.complement();
  const auto comp = complement.sites();
  if (kind != SearchKind::ContiguousRight) return {comp.begin(), comp.end()};
  if (a.size() != 1) {
    throw std::invalid_argument("SearchPolicy: contiguous growth needs a single-site A, got " + a.to_string());
  }
  const int site = a.sites()[0];
  if (order.empty()) {
    std::vector<int> out;
    for (int s = site + 1; s < n; ++s) out.push_back(s);
    for (int s = site - 1; s >= 0; --s) out.push_back(s);
    return out;
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (!std::equal(sorted.begin(), sorted.end(), comp.begin(), comp.end())) {
    throw std::invalid_argument("SearchPolicy: order must be a permutation of the complement of " + a.to_string());
  }
  return order;
}

namespace {

void check_inputs(const PureState& state, const SiteMask& a) {
  if (!(a.shape() == state.shape())) throw std::invalid_argument("codification: mask shape mismatch");
  if (a.empty()) throw std::invalid_argument("codification: A must be nonempty");
  if (a.size() >= state.shape().sites()) throw std::invalid_argument("codification: A must leave a complement");
}

SiteMask mask_of(const LatticeShape& shape, const std::vector<int>& sites) {
  std::vector<int> s = sites;
  std::sort(s.begin(), s.end());
  return SiteMask(shape, std::move(s));
}

// Best MI over all size-b subsets of the complement; strict improvement
// keeps the lexicographically first maximizer.
MIEntry best_of_size(const PureState& state, const SiteMask& a, const std::vector<int>& pool, int b) {
  const double s_a = subsystem_entropy(state, a);
  std::optional<SiteMask> best_mask;
  double best = -1.0;
  for_each_combination(pool, b, [&](const std::vector<int>& subset) {
    const SiteMask bm(state.shape(), subset);
    const double mi = s_a + subsystem_entropy(state, bm) - subsystem_entropy(state, a.unite(bm));
    if (mi > best) {
      best = mi;
      best_mask = bm;
    }
  });
  return {*best_mask, Nats(best)};
}

}  // namespace

MIProfile mi_profile(const PureState& state, const SiteMask& a, const SearchPolicy& policy) {
  check_inputs(state, a);
  const auto order = policy.resolved_order(a);
  MIProfile out{a, {}, total_information(state, a)};
  const int bmax = static_cast<int>(order.size());
  out.entries.reserve(static_cast<std::size_t>(bmax));
  for (int b = 1; b <= bmax; ++b) {
    if (policy.kind == SearchKind::ContiguousRight) {
      const SiteMask bm = mask_of(state.shape(), {order.begin(), order.begin() + b});
      out.entries.push_back({bm, mutual_information(state, a, bm)});
    } else {
      out.entries.push_back(best_of_size(state, a, order, b));
    }
  }
  return out;
}

CVResult codification_volume(const PureState& state, const SiteMask& a, double epsilon,
                             const SearchPolicy& policy) {
  check_inputs(state, a);
  if (!(epsilon > 0.0)) throw std::invalid_argument("codification_volume: epsilon must be positive");
  const auto order = policy.resolved_order(a);
  const double total = total_information(state, a).value();
  const double log_d = std::log(static_cast<double>(state.shape().local_dim()));

  auto result = [&](int b, SiteMask witness, double mi) {
    return CVResult{b, b * log_d, std::move(witness), epsilon, policy, total - mi};
  };

  if (total <= epsilon) return result(0, SiteMask::empty(state.shape()), 0.0);
  const int bmax = static_cast<int>(order.size());
  for (int b = 1; b <= bmax; ++b) {
    MIEntry entry = policy.kind == SearchKind::ContiguousRight
                        ? MIEntry{mask_of(state.shape(), {order.begin(), order.begin() + b}), Nats{}}
                        : best_of_size(state, a, order, b);
    if (policy.kind == SearchKind::ContiguousRight) entry.mi = mutual_information(state, a, entry.b);
    if (total - entry.mi.value() <= epsilon) return result(b, entry.b, entry.mi.value());
  }
  // Unreachable: at b = bmax the witness is the complement and the deficit is 0.
  return result(bmax, a.complement(), total);
}

std::vector<std::pair<double, CVResult>> cv_time_series(const std::vector<TimedState>& states,
                                                        const SiteMask& a, double epsilon,
                                                        const SearchPolicy& policy) {
  std::vector<std::optional<CVResult>> slots(states.size());
  parallel_for(states.size(), [&](std::size_t i) {
    slots[i] = codification_volume(states[i].second, a, epsilon, policy);
  });
  std::vector<std::pair<double, CVResult>> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out.emplace_back(states[i].first, std::move(*slots[i]));
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace codif
