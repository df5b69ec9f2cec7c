#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gme {

/// An undirected simple graph on vertices 1..n. Edges are stored once with
/// i < j (1-based endpoints). Immutable after construction.
class Graph {
public:
  Graph() : n_(0) {}
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_edge(int i, int j) const;
  /// Neighborhood N(v), ascending, 1-based.
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;  // adj_[v-1]
};

/// Named graph families.
///
/// chain(n), ring(n), star(n) (vertex 1 is the center), complete(n),
/// lattice2d(nx, ny) (row-major numbering), tree(degree, depth) (root 1 with
/// `degree` children, inner vertices degree-1 children each), cthulhu(r)
/// (an (r-1)-vertex complete head sharing two vertices with the leaves of a
/// degree-r star).
Graph make_chain(int n);
Graph make_ring(int n);
Graph make_star(int n);
Graph make_complete(int n);
Graph make_lattice2d(int nx, int ny);
Graph make_tree(int degree, int depth);
Graph make_cthulhu(int r);

/// Dispatch by family name; `params` are family-specific sizes in the order
/// the constructors above take them.
Graph make_family(const std::string& name, const std::vector<int>& params);

/// Local complementation at v: toggles every vertex pair inside N(v).
Graph local_complement(const Graph& g, int v);

/// The subgraph a partition labeling cuts out of g: edges whose endpoints
/// carry different labels, vertices restricted to their endpoints.
struct CutSubgraph {
  std::vector<int> vertices;                 // ascending, 1-based, no isolated vertices
  std::vector<std::pair<int, int>> edges;    // subset of parent edges
};

CutSubgraph cut_subgraph(const Graph& g, const std::vector<int>& labels);

}  // namespace gme
