#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hdens/error.hpp"
#include "hdens/hypergraph.hpp"

namespace hdens {

/// Coefficients i_0..i_beta of sum_k i_k x^k, stored dense from degree 0.
/// The zero polynomial (no independent set at all) has no coefficients.
class independence_polynomial {
 public:
  independence_polynomial() = default;
  explicit independence_polynomial(std::vector<mpz_class> coefficients) : c_(std::move(coefficients)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const std::vector<mpz_class>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Highest power with a nonzero coefficient; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  const mpz_class& operator[](std::size_t k) const { return c_.at(k); }

  /// Value at x = 1.
  mpz_class total() const {
    mpz_class s = 0;
    for (const auto& c : c_) s += c;
    return s;
  }

  friend bool operator==(const independence_polynomial&, const independence_polynomial&) = default;

  /// "[1,4,3]"
  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) out += ",";
      out += c_[i].get_str();
    }
    return out + "]";
  }

 private:
  std::vector<mpz_class> c_;
};

/// Horner evaluation in exact arithmetic; x must be non-negative.
inline mpq_class eval_poly(const independence_polynomial& p, const mpq_class& x) {
  if (x < 0) throw error(errc::negative_x, "evaluation point must be >= 0, got " + x.get_str());
  mpq_class acc = 0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

namespace detail {

struct count_ring {
  using value_type = mpz_class;
  static value_type zero() { return 0; }
  static bool is_zero(const value_type& v) { return v == 0; }
  static value_type free_vertices(std::size_t k) {
    mpz_class r = 1;
    r <<= static_cast<mp_bitcnt_t>(k);
    return r;
  }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static void add(value_type& a, const value_type& b) { a += b; }
  static value_type times_x(value_type v) { return v; }
};

struct poly_ring {
  using value_type = std::vector<mpz_class>;
  static value_type zero() { return {}; }
  static bool is_zero(const value_type& v) { return v.empty(); }
  // (1+x)^k
  static value_type free_vertices(std::size_t k) {
    value_type row(k + 1);
    for (std::size_t i = 0; i <= k; ++i) mpz_bin_uiui(row[i].get_mpz_t(), k, i);
    return row;
  }
  static value_type mul(const value_type& a, const value_type& b) {
    if (a.empty() || b.empty()) return {};
    value_type r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return r;
  }
  static void add(value_type& a, const value_type& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  }
  static value_type times_x(value_type v) {
    if (!v.empty()) v.insert(v.begin(), mpz_class(0));
    return v;
  }
};

using local_edges = std::vector<std::vector<std::uint32_t>>;

/// Branching counter over a ring: the value of a hypergraph is
/// (exclude v) + x * (include v), with components multiplied and each
/// isolated vertex contributing (1 + x). Components are memoized on their
/// canonical serialization.
template <class Ring>
class independence_engine {
 public:
  using value = typename Ring::value_type;

  /// Vertices are 0..n-1 here.
  value solve(std::size_t n, local_edges edges) {
    for (const auto& e : edges)
      if (e.empty()) return Ring::zero();
    if (edges.empty()) return Ring::free_vertices(n);
    edges = antichain(std::move(edges), n);

    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::vector<char> touched(n, 0);
    for (const auto& e : edges) {
      for (auto v : e) touched[v] = 1;
      for (std::size_t i = 1; i < e.size(); ++i) {
        auto a = find(e[0]), b = find(e[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::size_t isolated = 0;
    for (std::size_t v = 0; v < n; ++v) isolated += touched[v] ? 0 : 1;

    // Group edges by component root; components ordered by smallest vertex.
    std::vector<std::uint32_t> comp_of_root(n, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> comp_vertices;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!touched[v]) continue;
      auto r = find(v);
      if (comp_of_root[r] == UINT32_MAX) {
        comp_of_root[r] = static_cast<std::uint32_t>(comp_vertices.size());
        comp_vertices.emplace_back();
      }
      comp_vertices[comp_of_root[r]].push_back(v);
    }
    std::vector<local_edges> comp_edges(comp_vertices.size());
    for (auto& e : edges) comp_edges[comp_of_root[find(e[0])]].push_back(std::move(e));

    value result = Ring::free_vertices(isolated);
    std::vector<std::uint32_t> label(n, 0);
    for (std::size_t c = 0; c < comp_vertices.size(); ++c) {
      const auto& verts = comp_vertices[c];
      for (std::size_t i = 0; i < verts.size(); ++i) label[verts[i]] = static_cast<std::uint32_t>(i);
      for (auto& e : comp_edges[c])
        for (auto& v : e) v = label[v];
      value part = component(verts.size(), std::move(comp_edges[c]));
      if (Ring::is_zero(part)) return Ring::zero();
      result = Ring::mul(result, part);
    }
    return result;
  }

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  // Same contract as hypergraph normalize, on 0-based labels; output sorted by (size, lex).
  static local_edges antichain(local_edges edges, std::size_t n) { return hdens::detail::antichain(std::move(edges), n); }

  static std::string key_of(std::size_t n, const local_edges& edges) {
    std::string key;
    std::size_t words = 2;
    for (const auto& e : edges) words += e.size() + 1;
    key.resize(words * sizeof(std::uint32_t));
    char* out = key.data();
    auto put = [&](std::uint32_t w) {
      std::memcpy(out, &w, sizeof w);
      out += sizeof w;
    };
    put(static_cast<std::uint32_t>(n));
    put(static_cast<std::uint32_t>(edges.size()));
    for (const auto& e : edges) {
      put(static_cast<std::uint32_t>(e.size()));
      for (auto v : e) put(v);
    }
    return key;
  }

  // Connected, antichain, no empty edge, at least one edge; edges sorted by (size, lex).
  value component(std::size_t n, local_edges edges) {
    std::string key = key_of(n, edges);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // A singleton edge forces its vertex out. Otherwise branch on the vertex
    // of largest weighted degree, small edges weighing more.
    std::uint32_t pivot = edges.front().front();
    if (edges.front().size() > 1) {
      std::vector<double> weight(n, 0.0);
      for (const auto& e : edges)
        for (auto v : e) weight[v] += std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(e.size(), 60)));
      pivot = static_cast<std::uint32_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());
    }

    auto relabel = [pivot](std::uint32_t v) { return v > pivot ? v - 1 : v; };
    local_edges excluded, included;
    excluded.reserve(edges.size());
    included.reserve(edges.size());
    for (const auto& e : edges) {
      std::vector<std::uint32_t> shrunk;
      shrunk.reserve(e.size());
      bool has_pivot = false;
      for (auto v : e) {
        if (v == pivot)
          has_pivot = true;
        else
          shrunk.push_back(relabel(v));
      }
      if (!has_pivot) excluded.push_back(shrunk);
      included.push_back(std::move(shrunk));
    }

    value result = solve(n - 1, std::move(excluded));
    Ring::add(result, Ring::times_x(solve(n - 1, std::move(included))));
    memo_.emplace(std::move(key), result);
    return result;
  }

  std::unordered_map<std::string, value> memo_;
};

inline local_edges to_local(const hypergraph& h) {
  local_edges out;
  out.reserve(h.size());
  for (const auto& e : h.edges()) {
    std::vector<std::uint32_t> l(e.begin(), e.end());
    for (auto& v : l) --v;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace detail

/// Exact number of independent sets (the empty set included).
inline mpz_class count_independent(const hypergraph& h) {
  detail::independence_engine<detail::count_ring> engine;
  return engine.solve(h.order(), detail::to_local(h));
}

inline independence_polynomial independence_polynomial_of(const hypergraph& h) {
  detail::independence_engine<detail::poly_ring> engine;
  return independence_polynomial(engine.solve(h.order(), detail::to_local(h)));
}

/// Largest independent set size. With an empty edge nothing is independent and 0 is returned.
inline std::size_t independence_number(const hypergraph& h) { return independence_polynomial_of(h).degree(); }

inline constexpr std::size_t bruteforce_limit = 25;

/// Enumerates all 2^n subsets. Testing oracle; n <= 25.
inline mpz_class count_independent_bruteforce(const hypergraph& h) {
  if (h.order() > bruteforce_limit)
    throw error(errc::too_large, "brute force limited to n <= 25, got " + std::to_string(h.order()));
  std::vector<std::uint32_t> masks;
  masks.reserve(h.size());
  for (const auto& e : h.edges()) {
    std::uint32_t m = 0;
    for (auto v : e) m |= 1u << (v - 1);
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << h.order();
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < total; ++s) {
    const auto set = static_cast<std::uint32_t>(s);
    bool independent = true;
    for (auto m : masks) {
      if ((set & m) == m) {
        independent = false;
        break;
      }
    }
    count += independent ? 1 : 0;
  }
  return mpz_class(std::to_string(count));
}

}  // namespace hdens
