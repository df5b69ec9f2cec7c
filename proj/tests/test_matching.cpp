#include <doctest.h>

#include "gme/graph.hpp"
#include "gme/matching.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

void check_is_matching(int n, const std::vector<std::pair<int, int>>& edges,
                       const std::vector<std::pair<int, int>>& matching) {
  std::vector<char> used(n + 1, 0);
  for (auto [i, j] : matching) {
    CHECK(std::find(edges.begin(), edges.end(), std::make_pair(i, j)) != edges.end());
    CHECK_FALSE(used[i]);
    CHECK_FALSE(used[j]);
    used[i] = used[j] = 1;
  }
}

}  // namespace

TEST_CASE("small cases") {
  Graph chain4 = make_chain(4);
  CHECK(max_matching_size(4, chain4.edges()) == 2);

  Graph tri = make_ring(3);
  CHECK(max_matching_size(3, tri.edges()) == 1);

  CHECK(max_matching_size(3, {}) == 0);

  // the five-vertex cut-subgraph example: matching of cardinality 2
  std::vector<std::pair<int, int>> cut = {{1, 2}, {2, 3}, {3, 4}, {3, 5}};
  CHECK(max_matching_size(5, cut) == 2);
}

TEST_CASE("odd cycles need blossom contraction") {
  CHECK(max_matching_size(5, make_ring(5).edges()) == 2);
  CHECK(max_matching_size(7, make_ring(7).edges()) == 3);
  // two triangles joined by a bridge: perfect matching exists
  std::vector<std::pair<int, int>> edges = {{1, 2}, {2, 3}, {1, 3}, {3, 4},
                                            {4, 5}, {5, 6}, {4, 6}};
  CHECK(max_matching_size(6, edges) == 3);
  // Petersen graph has a perfect matching
  std::vector<std::pair<int, int>> petersen = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5},
                                               {6, 8}, {8, 10}, {10, 7}, {7, 9}, {6, 9},
                                               {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}};
  CHECK(max_matching_size(10, petersen) == 5);
}

TEST_CASE("matching cardinality equals brute force on random graphs") {
  oracles::Rng rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + rng.below(9);
    Graph g = oracles::random_graph(rng, n);
    auto matching = max_cardinality_matching(n, g.edges());
    check_is_matching(n, g.edges(), matching);
    CHECK(static_cast<int>(matching.size()) == oracles::brute_max_matching(n, g.edges()));
  }
}
