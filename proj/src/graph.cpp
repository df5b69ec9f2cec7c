#include "gme/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gme {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("Graph: vertex count must be positive");
  std::set<std::pair<int, int>> dedup;
  for (auto [i, j] : edges) {
    if (i == j) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n) throw std::invalid_argument("Graph: edge endpoint out of range 1..n");
    dedup.insert({i, j});
  }
  edges_.assign(dedup.begin(), dedup.end());
  adj_.resize(n);
  for (auto [i, j] : edges_) {
    adj_[i - 1].push_back(j);
    adj_[j - 1].push_back(i);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 1 || v > n_) throw std::out_of_range("Graph: vertex out of range");
  return adj_[v - 1];
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 1; v <= n_; ++v) d = std::max(d, degree(v));
  return d;
}

Graph make_chain(int n) {
  if (n < 1) throw std::invalid_argument("chain: n must be positive");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

Graph make_ring(int n) {
  if (n < 3) throw std::invalid_argument("ring: n must be at least 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
  e.push_back({1, n});
  return Graph(n, e);
}

Graph make_star(int n) {
  if (n < 2) throw std::invalid_argument("star: n must be at least 2");
  std::vector<std::pair<int, int>> e;
  for (int i = 2; i <= n; ++i) e.push_back({1, i});
  return Graph(n, e);
}

Graph make_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: n must be positive");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

Graph make_lattice2d(int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("lattice2d: nx, ny must be positive");
  auto id = [nx](int x, int y) { return (y - 1) * nx + x; };
  std::vector<std::pair<int, int>> e;
  for (int y = 1; y <= ny; ++y)
    for (int x = 1; x <= nx; ++x) {
      if (x < nx) e.push_back({id(x, y), id(x + 1, y)});
      if (y < ny) e.push_back({id(x, y), id(x, y + 1)});
    }
  return Graph(nx * ny, e);
}

Graph make_tree(int degree, int depth) {
  if (degree < 1) throw std::invalid_argument("tree: degree must be at least 1");
  if (depth < 0) throw std::invalid_argument("tree: depth must be nonnegative");
  std::vector<std::pair<int, int>> e;
  int next = 2;
  std::vector<int> level = {1};
  for (int d = 0; d < depth; ++d) {
    std::vector<int> nxt;
    int children = (d == 0) ? degree : degree - 1;
    for (int parent : level)
      for (int c = 0; c < children; ++c) {
        e.push_back({parent, next});
        nxt.push_back(next++);
      }
    level = std::move(nxt);
  }
  return Graph(next - 1, e);
}

Graph make_cthulhu(int r) {
  if (r < 3) throw std::invalid_argument("cthulhu: r must be at least 3");
  // Vertex 1 is the star center; 2..r-1 its pure leaves; r..2(r-1) the
  // complete head, of which the first two are also star leaves.
  int n = 2 * (r - 1);
  std::vector<std::pair<int, int>> e;
  for (int i = 2; i <= r - 1; ++i) e.push_back({1, i});
  e.push_back({1, r});
  e.push_back({1, r + 1});
  for (int i = r; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

Graph make_family(const std::string& name, const std::vector<int>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("family '" + name + "': expected " + std::to_string(k) +
                                  " size parameter(s)");
  };
  if (name == "chain" || name == "path") { need(1); return make_chain(params[0]); }
  if (name == "ring") { need(1); return make_ring(params[0]); }
  if (name == "star") { need(1); return make_star(params[0]); }
  if (name == "complete") { need(1); return make_complete(params[0]); }
  if (name == "lattice2d") { need(2); return make_lattice2d(params[0], params[1]); }
  if (name == "tree") { need(2); return make_tree(params[0], params[1]); }
  if (name == "cthulhu") { need(1); return make_cthulhu(params[0]); }
  throw std::invalid_argument("unknown graph family '" + name + "'");
}

Graph local_complement(const Graph& g, int v) {
  const auto& nb = g.neighbors(v);  // range-checks v
  std::vector<std::pair<int, int>> e = g.edges();
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b) {
      std::pair<int, int> p{nb[a], nb[b]};
      auto it = std::find(e.begin(), e.end(), p);
      if (it != e.end())
        e.erase(it);
      else
        e.push_back(p);
    }
  return Graph(g.n(), e);
}

CutSubgraph cut_subgraph(const Graph& g, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != g.n())
    throw std::invalid_argument("cut_subgraph: labeling length must equal vertex count");
  CutSubgraph cut;
  std::set<int> verts;
  for (auto [i, j] : g.edges())
    if (labels[i - 1] != labels[j - 1]) {
      cut.edges.push_back({i, j});
      verts.insert(i);
      verts.insert(j);
    }
  cut.vertices.assign(verts.begin(), verts.end());
  return cut;
}

}  // namespace gme
