#pragma once

// Brute-force reference implementations and random generators shared by the
// test suites. Everything here is independent of the library code paths it
// checks: matchings by backtracking, partitions by filtering raw label
// strings, witness bounds from first principles.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "gme/graph.hpp"

namespace oracles {

// Deterministic generator so every suite runs the same cases.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double normal() {
    // Box-Muller; fine for test data.
    double u1 = std::max(uniform(), 1e-12);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

// Backtracking maximum matching: take the lowest uncovered vertex, either
// skip it or match it to any free neighbor.
inline int brute_max_matching(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> used(n + 1, 0);
  std::function<int(int)> go = [&](int v) -> int {
    while (v <= n && used[v]) ++v;
    if (v > n) return 0;
    used[v] = 1;
    int best = go(v + 1);  // leave v unmatched
    for (int u : adj[v])
      if (!used[u]) {
        used[u] = 1;
        best = std::max(best, 1 + go(v + 1));
        used[u] = 0;
      }
    used[v] = 0;
    return best;
  };
  return go(1);
}

// All restricted growth strings of length n with max label exactly k-1.
inline std::vector<std::vector<int>> brute_k_partitions(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int mx) {
    if (pos == n) {
      if (mx == k - 1) out.push_back(a);
      return;
    }
    for (int v = 0; v <= std::min(mx + 1, k - 1); ++v) {
      a[pos] = v;
      rec(pos + 1, std::max(mx, v));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

inline gme::Graph random_graph(Rng& rng, int n, double edge_prob = 0.45) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.uniform() < edge_prob) edges.push_back({i, j});
  return gme::Graph(n, edges);
}

inline gme::Graph random_connected_graph(Rng& rng, int n, double edge_prob = 0.4) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v <= n; ++v) edges.push_back({1 + rng.below(v - 1), v});  // random spanning tree
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.uniform() < edge_prob) edges.push_back({i, j});
  return gme::Graph(n, edges);
}

// Haar-ish random pure state of dimension dim.
inline Eigen::VectorXcd random_pure_state(Rng& rng, int dim) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

// Random full-rank density matrix of dimension dim.
inline Eigen::MatrixXcd random_density_matrix(Rng& rng, int dim) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

// Random labeling of n vertices into exactly k nonempty blocks (not
// necessarily in restricted growth form).
inline std::vector<int> random_k_labeling(Rng& rng, int n, int k) {
  std::vector<int> labels(n);
  for (;;) {
    for (int i = 0; i < n; ++i) labels[i] = rng.below(k);
    std::set<int> used(labels.begin(), labels.end());
    if (static_cast<int>(used.size()) == k) return labels;
  }
}

// Pure product state over the blocks of `labels` (full 2^n vector, qubit 1 is
// the most significant bit).
inline Eigen::VectorXcd random_product_state(Rng& rng, int n, const std::vector<int>& labels,
                                             int k) {
  std::vector<std::vector<int>> blocks(k);
  for (int q = 1; q <= n; ++q) blocks[labels[q - 1]].push_back(q);
  std::vector<Eigen::VectorXcd> factors;
  for (const auto& blk : blocks) factors.push_back(random_pure_state(rng, 1 << blk.size()));
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::VectorXcd psi(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    std::complex<double> amp = 1.0;
    for (int blk = 0; blk < k; ++blk) {
      int sub = 0;
      for (int q : blocks[blk]) sub = (sub << 1) | ((b >> (n - q)) & 1);
      amp *= factors[blk](sub);
    }
    psi(b) = amp;
  }
  return psi;
}

}  // namespace oracles
