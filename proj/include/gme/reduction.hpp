#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gme/graph.hpp"
#include "gme/rational.hpp"

namespace gme {

/// Thrown when a k-partition scan would exceed the configured cap; the caller
/// is expected to fall back to the loose bound.
class EnumerationCapExceeded : public std::runtime_error {
public:
  explicit EnumerationCapExceeded(std::uint64_t cap)
      : std::runtime_error("k-partition enumeration exceeds cap of " + std::to_string(cap) +
                           " partitions; use the loose bound"),
        cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

private:
  std::uint64_t cap_;
};

/// Default partition cap, overridable per call or via GME_ENUM_CAP.
std::uint64_t enumeration_cap();

/// The Pareto frontier of (|cut vertices|, |max matching of cut|) pairs over
/// all k-cuts of a graph. min over the pairs of gamma*a + (1-gamma)*b at any
/// gamma in [0,1] equals the minimum over all enumerated cuts, so R_k^gamma
/// becomes a lookup.
class ParetoCutProfile {
public:
  ParetoCutProfile() = default;
  explicit ParetoCutProfile(std::vector<std::pair<int, int>> pairs);

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  Rational evaluate(const Rational& gamma) const;
  double evaluate(double gamma) const;

  /// Candidate gammas where the minimizing pair can change: {0, 1} plus every
  /// pairwise crossing inside (0,1). Sorted ascending, deduplicated.
  std::vector<Rational> candidate_gammas() const;

private:
  std::vector<std::pair<int, int>> pairs_;  // Pareto-pruned, sorted
};

/// Enumerates all k-partitions of g (2 <= k <= n) and collects the Pareto
/// frontier of cut statistics. Splits work across threads on the leading
/// label positions when the partition count warrants it; the merged frontier
/// is identical for any worker count.
ParetoCutProfile collect_profile(const Graph& g, int k, std::uint64_t cap = enumeration_cap());

/// R_k^gamma = min over all k-cuts of gamma*|V| + (1-gamma)*|E_mcm|.
Rational reduction_term(const Graph& g, int k, const Rational& gamma,
                        std::uint64_t cap = enumeration_cap());

}  // namespace gme
