#include "gme/partition.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gme {

int PartitionLabeling::blocks_used() const {
  std::set<int> s(labels.begin(), labels.end());
  return static_cast<int>(s.size());
}

bool is_restricted_growth(const std::vector<int>& labels, int k) {
  if (labels.empty() || labels[0] != 0) return false;
  int mx = 0;
  for (std::size_t j = 1; j < labels.size(); ++j) {
    if (labels[j] < 0 || labels[j] > mx + 1 || labels[j] > k - 1) return false;
    mx = std::max(mx, labels[j]);
  }
  return true;
}

bool next_k_partition(std::vector<int>& a, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("next_k_partition: need 1 <= k <= n");
  if (static_cast<int>(a.size()) != n)
    throw std::invalid_argument("next_k_partition: labeling length mismatch");
  if (!is_restricted_growth(a, k))
    throw std::invalid_argument("next_k_partition: input violates restricted growth");

  // b[i] = max label among a[0..i-1]; 0-based storage of the 1-based recurrence.
  std::vector<int> b(n, 0);
  for (int i = 1; i < n; ++i) b[i] = std::max(a[i - 1], b[i - 1]);

  int c = n - 1;
  bool ended = false;
  while (a[c] == k - 1 || a[c] > b[c]) {
    --c;
    if (c == 0) { ended = true; break; }
  }
  if (ended) return false;

  a[c] += 1;
  for (int j = c + 1; j < n; ++j) {
    a[j] = 0;
    b[j] = std::max(a[j - 1], b[j - 1]);
  }
  // Jump ahead so the emitted string uses exactly k labels.
  if (std::max(a[n - 1], b[n - 1]) != k - 1) {
    for (int r = 1; r <= k - 1; ++r) {
      if (k - r > b[n - r]) {
        a[n - r] = k - r;
      } else {
        return true;
      }
    }
  }
  return true;
}

PartitionEnumerator::PartitionEnumerator(int n, int k)
    : n_(n), k_(k), done_(false), labels_(n, 0) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("PartitionEnumerator: need 1 <= k <= n");
}

bool PartitionEnumerator::next() {
  if (done_) return false;
  if (k_ == 1) {  // single trivial partition; the stepper only emits k >= 2
    done_ = true;
    return true;
  }
  if (!next_k_partition(labels_, n_, k_)) {
    done_ = true;
    return false;
  }
  return true;
}

std::uint64_t stirling2(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("stirling2: need 0 <= k <= n");
  if (n > 25) throw std::overflow_error("stirling2: values beyond n = 25 overflow uint64");
  if (n == 0) return 1;  // S(0,0)
  if (k == 0) return 0;
  // S(n,k) = sum_j (-1)^(k-j) j^n / ((k-j)! j!), summed exactly over integers:
  // k! * S(n,k) = sum_j (-1)^(k-j) C(k,j) j^n.
  __int128 acc = 0;
  __int128 binom = 1;  // C(k,0)
  for (int j = 0; j <= k; ++j) {
    __int128 p = 1;
    for (int t = 0; t < n; ++t) p *= j;
    acc += ((k - j) % 2 == 0 ? p : -p) * binom;
    binom = binom * (k - j) / (j + 1);
  }
  __int128 fact = 1;
  for (int j = 2; j <= k; ++j) fact *= j;
  return static_cast<std::uint64_t>(acc / fact);
}

}  // namespace gme
