#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdens/error.hpp"
#include "hdens/hypergraph.hpp"

namespace hdens {

/// Simple undirected graph on vertices 1..n.
class graph {
 public:
  using edge = std::pair<vertex_id, vertex_id>;

  graph() = default;
  explicit graph(std::size_t n, const std::vector<edge>& edges = {}) : n_(n) {
    for (auto e : edges) add_edge(e.first, e.second);
  }

  void add_edge(vertex_id u, vertex_id v) {
    if (u == v) throw error(errc::out_of_range, "loop at vertex " + std::to_string(u));
    if (u < 1 || v < 1 || u > n_ || v > n_)
      throw error(errc::vertex_out_of_range, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
    edges_.insert(std::minmax(u, v));
  }

  std::size_t order() const noexcept { return n_; }
  const std::set<edge>& edges() const noexcept { return edges_; }
  bool adjacent(vertex_id u, vertex_id v) const { return edges_.count(std::minmax(u, v)) != 0; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_ + 1, 0);
    for (auto [u, v] : edges_) {
      ++d[u];
      ++d[v];
    }
    return d;
  }

  bool connected() const {
    if (n_ == 0) return false;
    std::vector<std::vector<vertex_id>> adj(n_ + 1);
    for (auto [u, v] : edges_) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<char> seen(n_ + 1, 0);
    std::vector<vertex_id> stack{1};
    seen[1] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    return reached == n_;
  }

  /// Induced on `keep` (sorted), relabeled 1..|keep| order-preservingly.
  graph induced(const std::vector<vertex_id>& keep) const {
    graph g(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = i + 1; j < keep.size(); ++j)
        if (adjacent(keep[i], keep[j])) g.edges_.insert({static_cast<vertex_id>(i + 1), static_cast<vertex_id>(j + 1)});
    return g;
  }

  friend bool operator==(const graph&, const graph&) = default;

 private:
  std::size_t n_ = 0;
  std::set<edge> edges_;
};

inline graph path_graph(std::size_t n) {
  if (n < 1) throw error(errc::bad_order, "path needs n >= 1");
  graph g(n);
  for (vertex_id v = 1; v < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline graph cycle_graph(std::size_t n) {
  if (n < 3) throw error(errc::bad_order, "cycle needs n >= 3");
  graph g = path_graph(n);
  g.add_edge(1, static_cast<vertex_id>(n));
  return g;
}

inline graph clique_graph(std::size_t n) {
  if (n < 1) throw error(errc::bad_order, "clique needs n >= 1");
  graph g(n);
  for (vertex_id u = 1; u <= n; ++u)
    for (vertex_id v = u + 1; v <= n; ++v) g.add_edge(u, v);
  return g;
}

inline graph edgeless_graph(std::size_t n) {
  if (n < 1) throw error(errc::bad_order, "edgeless graph needs n >= 1");
  return graph(n);
}

/// Disjoint union; b's vertices are shifted past a's.
inline graph graph_union(const graph& a, const graph& b) {
  graph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  const auto shift = static_cast<vertex_id>(a.order());
  for (auto [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  return g;
}

/// Each graph edge becomes a 2-element hyperedge.
inline hypergraph as_hypergraph(const graph& g) {
  std::vector<hyperedge> edges;
  edges.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return hypergraph(g.order(), std::move(edges));
}

inline constexpr std::size_t isomorphism_limit = 8;

namespace detail {

class iso_search {
 public:
  iso_search(const graph& a, const graph& b) : a_(a), b_(b), map_(a.order() + 1, 0), used_(b.order() + 1, 0) {
    da_ = a.degrees();
    db_ = b.degrees();
  }

  bool run() { return extend(1); }

 private:
  bool extend(vertex_id u) {
    if (u > a_.order()) return true;
    for (vertex_id w = 1; w <= b_.order(); ++w) {
      if (used_[w] || da_[u] != db_[w]) continue;
      bool ok = true;
      for (vertex_id p = 1; p < u && ok; ++p) ok = a_.adjacent(p, u) == b_.adjacent(map_[p], w);
      if (!ok) continue;
      map_[u] = w;
      used_[w] = 1;
      if (extend(u + 1)) return true;
      used_[w] = 0;
    }
    return false;
  }

  const graph& a_;
  const graph& b_;
  std::vector<vertex_id> map_;
  std::vector<char> used_;
  std::vector<std::size_t> da_, db_;
};

}  // namespace detail

/// Backtracking search for an edge-preserving bijection; orders <= 8.
inline bool graph_isomorphic(const graph& a, const graph& b) {
  if (a.order() > isomorphism_limit || b.order() > isomorphism_limit)
    throw error(errc::too_large, "isomorphism test limited to order <= 8");
  if (a.order() != b.order() || a.edges().size() != b.edges().size()) return false;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return detail::iso_search(a, b).run();
}

}  // namespace hdens
