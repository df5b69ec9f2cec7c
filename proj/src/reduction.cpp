#include "gme/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <thread>

#include "gme/matching.hpp"
#include "gme/partition.hpp"

namespace gme {

std::uint64_t enumeration_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("GME_ENUM_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{10'000'000};
  }();
  return cap;
}

namespace {

std::vector<std::pair<int, int>> pareto_prune(std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  // Ascending in the first coordinate, so a pair survives iff its second
  // coordinate is strictly below everything kept so far.
  std::vector<std::pair<int, int>> kept;
  for (const auto& p : pairs) {
    if (!kept.empty() && kept.back().second <= p.second) continue;
    kept.push_back(p);
  }
  return kept;
}

// Cut statistics for one labeling.
std::pair<int, int> cut_stats(const Graph& g, const std::vector<int>& labels) {
  std::vector<std::pair<int, int>> cut_edges;
  std::set<int> verts;
  for (auto [i, j] : g.edges())
    if (labels[i - 1] != labels[j - 1]) {
      cut_edges.push_back({i, j});
      verts.insert(i);
      verts.insert(j);
    }
  int mcm = max_matching_size(g.n(), cut_edges);
  return {static_cast<int>(verts.size()), mcm};
}

// Worker's share of the enumeration, filtered on the labels at positions
// 2..prefix_len+1 (the first position is always 0).
std::vector<std::pair<int, int>> scan_partitions(const Graph& g, int k, int worker, int workers,
                                                 int prefix_len, std::uint64_t cap,
                                                 std::atomic<bool>& over_cap,
                                                 std::atomic<std::uint64_t>& visited) {
  std::vector<std::pair<int, int>> pairs;
  PartitionEnumerator en(g.n(), k);
  while (en.next()) {
    if (over_cap.load(std::memory_order_relaxed)) break;
    const auto& a = en.labels();
    if (workers > 1) {
      int key = 0;
      for (int p = 1; p <= prefix_len && p < g.n(); ++p) key = key * (k + 1) + a[p];
      if (key % workers != worker) continue;
    }
    if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > cap) {
      over_cap.store(true, std::memory_order_relaxed);
      break;
    }
    pairs.push_back(cut_stats(g, a));
    if (pairs.size() > 4096) pairs = pareto_prune(std::move(pairs));
  }
  return pareto_prune(std::move(pairs));
}

}  // namespace

ParetoCutProfile::ParetoCutProfile(std::vector<std::pair<int, int>> pairs)
    : pairs_(pareto_prune(std::move(pairs))) {
  if (pairs_.empty()) throw std::invalid_argument("ParetoCutProfile: no cut statistics");
}

Rational ParetoCutProfile::evaluate(const Rational& gamma) const {
  Rational best;
  bool first = true;
  for (auto [a, b] : pairs_) {
    Rational v = gamma * Rational(a) + (Rational(1) - gamma) * Rational(b);
    if (first || v < best) { best = v; first = false; }
  }
  return best;
}

double ParetoCutProfile::evaluate(double gamma) const {
  double best = 0;
  bool first = true;
  for (auto [a, b] : pairs_) {
    double v = gamma * a + (1.0 - gamma) * b;
    if (first || v < best) { best = v; first = false; }
  }
  return best;
}

std::vector<Rational> ParetoCutProfile::candidate_gammas() const {
  std::vector<Rational> out = {Rational(0), Rational(1)};
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
      auto [a1, b1] = pairs_[i];
      auto [a2, b2] = pairs_[j];
      int den = (a1 - a2) + (b2 - b1);
      if (den == 0) continue;
      Rational x(b2 - b1, den);
      if (Rational(0) < x && x < Rational(1)) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ParetoCutProfile collect_profile(const Graph& g, int k, std::uint64_t cap) {
  int n = g.n();
  if (k < 2 || k > n) throw std::invalid_argument("collect_profile: need 2 <= k <= n");

  // Partition count only steers the worker split; the cap itself is enforced
  // while scanning. Past n = 25 the count overflows and is simply "a lot".
  std::uint64_t count = n <= 25 ? stirling2(n, k) : UINT64_MAX;
  int workers = 1;
  if (count > 50'000) {
    unsigned hw = std::thread::hardware_concurrency();
    workers = std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, 8));
  }
  int prefix_len = 1;
  while ((1 << prefix_len) < workers) ++prefix_len;

  std::atomic<bool> over_cap{false};
  std::atomic<std::uint64_t> visited{0};
  std::vector<std::pair<int, int>> merged;

  if (workers == 1) {
    merged = scan_partitions(g, k, 0, 1, 0, cap, over_cap, visited);
  } else {
    std::vector<std::vector<std::pair<int, int>>> results(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        results[w] = scan_partitions(g, k, w, workers, prefix_len, cap, over_cap, visited);
      });
    for (auto& t : pool) t.join();
    for (auto& r : results) merged.insert(merged.end(), r.begin(), r.end());
  }
  if (over_cap.load()) throw EnumerationCapExceeded(cap);
  return ParetoCutProfile(std::move(merged));
}

Rational reduction_term(const Graph& g, int k, const Rational& gamma, std::uint64_t cap) {
  if (gamma < Rational(0) || Rational(1) < gamma)
    throw std::invalid_argument("reduction_term: gamma must lie in [0,1]");
  return collect_profile(g, k, cap).evaluate(gamma);
}

}  // namespace gme
