#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdens/error.hpp"

namespace hdens {

/// Vertices are 1-based and contiguous: a hypergraph of order n owns ids 1..n.
using vertex_id = std::uint32_t;

/// Strictly increasing vertex ids. May be empty (then nothing is independent).
using hyperedge = std::vector<vertex_id>;

class hypergraph {
 public:
  hypergraph() = default;

  /// Sorts each edge; rejects ids outside 1..n and repeated ids within an edge.
  explicit hypergraph(std::size_t n, std::vector<hyperedge> edges = {}) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      std::sort(e.begin(), e.end());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || e[i] > n_)
          throw error(errc::vertex_out_of_range,
                      "vertex " + std::to_string(e[i]) + " not in 1.." + std::to_string(n_));
        if (i > 0 && e[i] == e[i - 1])
          throw error(errc::duplicate_vertex, "vertex " + std::to_string(e[i]) + " repeated in an edge");
      }
    }
  }

  std::size_t order() const noexcept { return n_; }
  const std::vector<hyperedge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }

  /// Largest edge cardinality (0 for an edgeless hypergraph).
  std::size_t rank() const noexcept {
    std::size_t k = 0;
    for (const auto& e : edges_) k = std::max(k, e.size());
    return k;
  }

  bool has_empty_edge() const noexcept {
    return std::any_of(edges_.begin(), edges_.end(), [](const hyperedge& e) { return e.empty(); });
  }

  friend bool operator==(const hypergraph&, const hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<hyperedge> edges_;
};

/// Pairwise vertex-disjoint edges of some host hypergraph.
struct matching {
  std::vector<hyperedge> edges;

  std::size_t size() const noexcept { return edges.size(); }
};

/// True iff `small` is a subset of `large`; both sorted.
inline bool is_subset(std::span<const vertex_id> small, std::span<const vertex_id> large) {
  return std::includes(large.begin(), large.end(), small.begin(), small.end());
}

/// Same order and same edge multiset, ignoring edge order.
inline bool same_up_to_edge_order(const hypergraph& a, const hypergraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  auto ea = a.edges();
  auto eb = b.edges();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

namespace detail {

// Dedupe and drop strict supersets. The survivors come back sorted by (size, lex).
inline std::vector<hyperedge> antichain(std::vector<hyperedge> edges, std::size_t n) {
  std::sort(edges.begin(), edges.end(), [](const hyperedge& a, const hyperedge& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<hyperedge> kept;
  kept.reserve(edges.size());
  // kept edges bucketed by their minimum vertex; an edge f is inside e only if min(f) is in e
  std::vector<std::vector<std::uint32_t>> by_min(n + 1);
  bool has_empty = false;
  for (auto& e : edges) {
    if (has_empty) break;
    if (e.empty()) {
      has_empty = true;
      kept.clear();
      kept.push_back(std::move(e));
      break;
    }
    bool redundant = false;
    for (vertex_id u : e) {
      for (auto idx : by_min[u]) {
        if (is_subset(kept[idx], e)) {
          redundant = true;
          break;
        }
      }
      if (redundant) break;
    }
    if (!redundant) {
      by_min[e.front()].push_back(static_cast<std::uint32_t>(kept.size()));
      kept.push_back(std::move(e));
    }
  }
  return kept;
}

}  // namespace detail

/// Removes duplicate edges and every edge strictly containing another edge.
/// Kept edges stay in their original relative order (first occurrence wins).
/// Independent sets are unchanged.
inline hypergraph normalize(const hypergraph& h) {
  const auto survivors = detail::antichain(h.edges(), h.order());
  std::vector<hyperedge> out;
  out.reserve(survivors.size());
  for (const auto& e : h.edges()) {
    bool wanted = std::binary_search(survivors.begin(), survivors.end(), e, [](const hyperedge& a, const hyperedge& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    if (wanted && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return hypergraph(h.order(), std::move(out));
}

/// Subhypergraph induced by `keep`, relabeled 1..|keep| preserving order.
inline hypergraph induced(const hypergraph& h, std::vector<vertex_id> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<vertex_id> label(h.order() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 1 || keep[i] > h.order())
      throw error(errc::vertex_out_of_range, "induced: vertex " + std::to_string(keep[i]) + " not in hypergraph");
    label[keep[i]] = static_cast<vertex_id>(i + 1);
  }
  std::vector<hyperedge> edges;
  for (const auto& e : h.edges()) {
    hyperedge mapped;
    mapped.reserve(e.size());
    bool inside = true;
    for (vertex_id v : e) {
      if (label[v] == 0) {
        inside = false;
        break;
      }
      mapped.push_back(label[v]);
    }
    if (inside) edges.push_back(std::move(mapped));
  }
  return hypergraph(keep.size(), std::move(edges));
}

/// Induced on the prefix 1..m.
inline hypergraph prefix(const hypergraph& h, std::size_t m) {
  std::vector<vertex_id> keep(m);
  std::iota(keep.begin(), keep.end(), vertex_id{1});
  return induced(h, std::move(keep));
}

inline hypergraph disjoint_union(const hypergraph& a, const hypergraph& b) {
  auto edges = a.edges();
  const auto shift = static_cast<vertex_id>(a.order());
  for (auto e : b.edges()) {
    for (auto& v : e) v += shift;
    edges.push_back(std::move(e));
  }
  return hypergraph(a.order() + b.order(), std::move(edges));
}

/// Greedy scan in stored edge order; the result is maximal.
inline matching greedy_maximal_matching(const hypergraph& h) {
  if (h.has_empty_edge()) throw error(errc::empty_edge, "matching undefined with an empty edge");
  std::vector<char> covered(h.order() + 1, 0);
  matching m;
  for (const auto& e : h.edges()) {
    if (std::none_of(e.begin(), e.end(), [&](vertex_id v) { return covered[v]; })) {
      for (vertex_id v : e) covered[v] = 1;
      m.edges.push_back(e);
    }
  }
  return m;
}

namespace detail {

class matching_search {
 public:
  explicit matching_search(const hypergraph& h) : edges_(h.edges()), covered_(h.order() + 1, 0) {
    // small edges first: the greedy seed and early branches pack more edges
    std::stable_sort(edges_.begin(), edges_.end(),
                     [](const hyperedge& a, const hyperedge& b) { return a.size() < b.size(); });
    min_size_ = edges_.empty() ? 1 : edges_.front().size();
    free_vertices_ = h.order();
  }

  matching run() {
    best_ = greedy();
    descend(0);
    matching m;
    for (auto idx : best_) m.edges.push_back(edges_[idx]);
    return m;
  }

 private:
  std::vector<std::size_t> greedy() {
    std::vector<char> cov(covered_.size(), 0);
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (std::none_of(e.begin(), e.end(), [&](vertex_id v) { return cov[v]; })) {
        for (vertex_id v : e) cov[v] = 1;
        pick.push_back(i);
      }
    }
    return pick;
  }

  void descend(std::size_t from) {
    const std::size_t bound_by_vertices = free_vertices_ / min_size_;
    const std::size_t bound_by_edges = edges_.size() - from;
    if (current_.size() + std::min(bound_by_vertices, bound_by_edges) <= best_.size()) return;
    if (from == edges_.size()) {
      if (current_.size() > best_.size()) best_ = current_;
      return;
    }
    const auto& e = edges_[from];
    if (std::none_of(e.begin(), e.end(), [&](vertex_id v) { return covered_[v]; })) {
      for (vertex_id v : e) covered_[v] = 1;
      free_vertices_ -= e.size();
      current_.push_back(from);
      descend(from + 1);
      current_.pop_back();
      free_vertices_ += e.size();
      for (vertex_id v : e) covered_[v] = 0;
    }
    descend(from + 1);
  }

  std::vector<hyperedge> edges_;
  std::vector<char> covered_;
  std::size_t min_size_ = 1;
  std::size_t free_vertices_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
};

}  // namespace detail

/// Exhaustive branch and bound; exponential, desk scale only.
inline matching maximum_matching(const hypergraph& h) {
  if (h.has_empty_edge()) throw error(errc::empty_edge, "matching undefined with an empty edge");
  return detail::matching_search(h).run();
}

/// Pairwise disjoint and drawn from the host.
inline bool is_matching_of(const matching& m, const hypergraph& h) {
  std::vector<char> covered(h.order() + 1, 0);
  for (const auto& e : m.edges) {
    if (std::find(h.edges().begin(), h.edges().end(), e) == h.edges().end()) return false;
    for (vertex_id v : e) {
      if (v < 1 || v > h.order() || covered[v]) return false;
      covered[v] = 1;
    }
  }
  return true;
}

}  // namespace hdens
