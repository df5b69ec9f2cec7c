#pragma once

#include <utility>
#include <vector>

namespace gme {

/// Maximum-cardinality matching on a general graph via Edmonds' blossom
/// algorithm (O(V^3)). Vertices are 1-based; `edges` need not cover all of
/// 1..n. Returns the matched pairs with i < j.
std::vector<std::pair<int, int>> max_cardinality_matching(
    int n, const std::vector<std::pair<int, int>>& edges);

/// Cardinality only (the matching itself is not unique, its size is).
int max_matching_size(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace gme
