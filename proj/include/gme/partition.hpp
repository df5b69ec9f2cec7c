#pragma once

#include <cstdint>
#include <vector>

namespace gme {

/// A k-partition of n items encoded as a restricted growth string:
/// labels[0] = 0 and labels[j+1] <= 1 + max(labels[0..j]). Exactly k distinct
/// labels are present when the string represents a k-partition.
struct PartitionLabeling {
  std::vector<int> labels;
  int k = 0;

  int n() const { return static_cast<int>(labels.size()); }
  /// Number of distinct labels actually used.
  int blocks_used() const;
};

bool is_restricted_growth(const std::vector<int>& labels, int k);

/// One step of the k-partition enumeration. Takes the current restricted
/// growth string (initially all zeros) and advances it in place to the next
/// string using exactly k blocks; returns false when the enumeration is
/// exhausted. Chaining from the all-zero string visits every k-partition of
/// n items exactly once.
bool next_k_partition(std::vector<int>& labels, int n, int k);

/// Resumable enumerator around next_k_partition; constant memory per step.
class PartitionEnumerator {
public:
  PartitionEnumerator(int n, int k);

  /// Advances to the next k-partition; returns false once exhausted.
  bool next();
  const std::vector<int>& labels() const { return labels_; }

private:
  int n_;
  int k_;
  bool done_;
  std::vector<int> labels_;
};

/// Stirling number of the second kind via the alternating closed-form sum.
/// Exact for every value that fits in uint64 (n <= 25 is plenty here).
std::uint64_t stirling2(int n, int k);

}  // namespace gme
