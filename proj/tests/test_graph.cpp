#include <doctest.h>

#include <set>

#include "gme/graph.hpp"
#include "gme/json_io.hpp"
#include "oracles.hpp"

using namespace gme;

TEST_CASE("family sizes and edge counts") {
  Graph chain5 = make_chain(5);
  CHECK(chain5.n() == 5);
  CHECK(chain5.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}, {4, 5}});

  CHECK(make_ring(6).edge_count() == 6);
  CHECK(make_star(4).edge_count() == 3);
  CHECK(make_complete(5).edge_count() == 10);

  Graph lat = make_lattice2d(3, 2);
  CHECK(lat.n() == 6);
  CHECK(lat.edge_count() == 7);  // 2n - nx - ny

  Graph tree = make_tree(3, 2);
  CHECK(tree.n() == 10);
  CHECK(tree.edge_count() == 9);

  Graph cth = make_cthulhu(4);
  CHECK(cth.n() == 6);
  CHECK(cth.edge_count() == 7);  // r(r-1)/2 + 1
  // general r: n = 2(r-1), |E| = r(r-1)/2 + 1
  for (int r = 3; r <= 7; ++r) {
    Graph c = make_cthulhu(r);
    CHECK(c.n() == 2 * (r - 1));
    CHECK(c.edge_count() == r * (r - 1) / 2 + 1);
    CHECK(c.degree(1) == r);  // star center
  }
}

TEST_CASE("family errors") {
  CHECK_THROWS(make_chain(0));
  CHECK_THROWS(make_cthulhu(2));
  CHECK_THROWS(make_lattice2d(0, 2));
  CHECK_THROWS(make_tree(0, 1));
  CHECK_THROWS(make_family("moebius", {5}));
}

TEST_CASE("graph invariants") {
  CHECK_THROWS(Graph(3, {{1, 1}}));           // self loop
  CHECK_THROWS(Graph(3, {{1, 4}}));           // endpoint out of range
  Graph g(3, {{2, 1}, {1, 2}, {2, 3}});       // dedup + ordering
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
  CHECK(g.degree(2) == 2);
  CHECK(g.neighbors(2) == std::vector<int>{1, 3});
}

TEST_CASE("local complementation toggle rule") {
  // triangle at vertex 1 -> path 2-1-3
  Graph tri = make_ring(3);
  Graph t1 = local_complement(tri, 1);
  CHECK(t1.edges() == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}});

  // star(3) at the center gains the missing leaf edge
  Graph st = make_star(3);
  Graph t = local_complement(st, 1);
  CHECK(t.edge_count() == 3);
  CHECK(t.has_edge(2, 3));

  // tau_2 then tau_3 turns this graph into a chain
  Graph g(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}});
  Graph after = local_complement(local_complement(g, 2), 3);
  CHECK(after.edges() == std::vector<std::pair<int, int>>{{1, 2}, {1, 5}, {2, 3}, {3, 4}});
}

TEST_CASE("local complementation is an involution") {
  oracles::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + rng.below(6);
    Graph g = oracles::random_graph(rng, n);
    int v = 1 + rng.below(n);
    CHECK(local_complement(local_complement(g, v), v) == g);
  }
}

TEST_CASE("cut subgraph") {
  Graph chain3 = make_chain(3);
  CutSubgraph cut = cut_subgraph(chain3, {0, 0, 1});
  CHECK(cut.vertices == std::vector<int>{2, 3});
  CHECK(cut.edges == std::vector<std::pair<int, int>>{{2, 3}});

  // all labels distinct: every edge crosses, isolated vertices dropped
  Graph g(4, {{1, 2}, {3, 4}});
  CutSubgraph all = cut_subgraph(g, {0, 1, 2, 3});
  CHECK(all.edges == g.edges());
  CHECK(all.vertices == std::vector<int>{1, 2, 3, 4});

  CHECK_THROWS(cut_subgraph(chain3, {0, 1}));

  // the five-vertex three-partition example: a 4-edge cut subgraph
  Graph fig(5, {{1, 2}, {1, 5}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
  CutSubgraph c3 = cut_subgraph(fig, {0, 1, 2, 0, 0});
  CHECK(c3.edges.size() == 4);
  CHECK(c3.vertices.size() == 5);
}

TEST_CASE("json round trip and family shorthand") {
  Graph g = make_ring(6);
  Json j = graph_to_json(g);
  CHECK(graph_from_json(j) == g);

  Json fam = Json::parse(R"({"family": "ring", "params": {"n": 6}})");
  CHECK(graph_from_json(fam) == g);

  Json lat = Json::parse(R"({"family": "lattice2d", "params": {"nx": 3, "ny": 2}})");
  CHECK(graph_from_json(lat) == make_lattice2d(3, 2));
}
