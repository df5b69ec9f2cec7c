#include "gme/matching.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace gme {

namespace {

// Edmonds' blossom algorithm, array form with base[] contraction. 0-based
// internally.
class Blossom {
public:
  explicit Blossom(int n) : n_(n), adj_(n), match_(n, -1), parent_(n), base_(n), in_blossom_(n), in_queue_(n) {}

  void add_edge(int u, int v) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  void solve() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] == -1) augment_from(v);
  }

  const std::vector<int>& matching() const { return match_; }

private:
  int lca(int a, int b) {
    std::vector<char> used(n_, 0);
    for (;;) {
      a = base_[a];
      used[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (used[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(parent_.begin(), parent_.end(), -1);
    std::fill(in_queue_.begin(), in_queue_.end(), 0);
    for (int i = 0; i < n_; ++i) base_[i] = i;

    std::queue<int> q;
    q.push(root);
    in_queue_[root] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // Odd cycle: contract the blossom around the lca.
          int b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (int i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!in_queue_[i]) {
                in_queue_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;  // augmenting path found
          in_queue_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  void augment_from(int root) {
    int v = find_path(root);
    if (v == -1) return;
    while (v != -1) {
      int pv = parent_[v];
      int ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_, base_;
  std::vector<char> in_blossom_, in_queue_;
};

}  // namespace

std::vector<std::pair<int, int>> max_cardinality_matching(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("max_cardinality_matching: negative vertex count");
  Blossom b(n);
  for (auto [i, j] : edges) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
      throw std::invalid_argument("max_cardinality_matching: bad edge");
    b.add_edge(i - 1, j - 1);
  }
  b.solve();
  std::vector<std::pair<int, int>> out;
  const auto& m = b.matching();
  for (int v = 0; v < n; ++v)
    if (m[v] > v) out.push_back({v + 1, m[v] + 1});
  return out;
}

int max_matching_size(int n, const std::vector<std::pair<int, int>>& edges) {
  return static_cast<int>(max_cardinality_matching(n, edges).size());
}

}  // namespace gme
