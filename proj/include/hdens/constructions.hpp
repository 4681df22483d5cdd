#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hdens/dyadic.hpp"
#include "hdens/error.hpp"
#include "hdens/graph.hpp"
#include "hdens/hypergraph.hpp"

namespace hdens {

/// One edge of each size 1..n, pairwise disjoint, on consecutive labels:
/// {1}, {2,3}, {4,5,6}, ...
inline hypergraph hhat_prefix(std::size_t n) {
  if (n < 1) throw error(errc::out_of_range, "hhat prefix needs n >= 1");
  std::vector<hyperedge> edges;
  edges.reserve(n);
  vertex_id next = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    hyperedge e(k);
    for (auto& v : e) v = next++;
    edges.push_back(std::move(e));
  }
  return hypergraph(n * (n + 1) / 2, std::move(edges));
}

/// prod_{k=1}^{K} (1 - 2^-k), exactly.
inline dyadic product_prefix_S(std::size_t terms) {
  if (terms < 1) throw error(errc::out_of_range, "product needs K >= 1");
  mpz_class num = 1;
  std::uint64_t exp = 0;
  for (std::size_t k = 1; k <= terms; ++k) {
    mpz_class factor = 1;
    factor <<= static_cast<mp_bitcnt_t>(k);
    num *= factor - 1;
    exp += k;
  }
  return dyadic(num, exp);
}

/// prod_{k>K}(1 - 2^-k) >= 1 - 2^-K, so S lies in [P_K - 2^-K, P_K].
inline interval_value product_enclosure(std::size_t terms) {
  const dyadic p = product_prefix_S(terms);
  return {p - dyadic::pow2_neg(terms), p};
}

struct pentagonal_result {
  dyadic value;       ///< sum over |k| <= N-1 of (-1)^k 2^{-k(3k+1)/2}
  dyadic tail_bound;  ///< 2^{-N(3N-1)/2 + 1}
  std::size_t terms = 0;

  interval_value enclosure() const { return {value - tail_bound, value + tail_bound}; }
};

namespace detail {

// exponent k(3k+1)/2 for signed k
inline std::uint64_t pentagonal_exponent(std::int64_t k) { return static_cast<std::uint64_t>(k * (3 * k + 1) / 2); }

// sum_{j>=0} 2^{-(3j^2+6jN-j)/2}(1 + 2^{-j-N}) < 2, certified with exact
// partial sums and the geometric remainder (term j <= (1+2^-N) 2^{-3jN}).
inline bool tail_bracket_below_two(std::size_t n) {
  const std::size_t explicit_terms = 8;
  dyadic sum(0);
  const auto N = static_cast<std::int64_t>(n);
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(explicit_terms); ++j) {
    const auto e = static_cast<std::uint64_t>((3 * j * j + 6 * j * N - j) / 2);
    sum += dyadic::pow2_neg(e) * (dyadic(1) + dyadic::pow2_neg(static_cast<std::uint64_t>(j + N)));
  }
  // remainder <= (1 + 2^-N) 2^{-3 T N} / (1 - 2^{-3N}) <= (1 + 2^-N) 2^{-3TN + 1}
  const dyadic remainder =
      (dyadic(1) + dyadic::pow2_neg(n)) * dyadic::pow2_neg(3 * explicit_terms * n - 1);
  return sum + remainder < dyadic(2);
}

}  // namespace detail

/// Truncated pentagonal series for prod (1 - 2^-k) with a certified tail bound.
inline pentagonal_result pentagonal_partial(std::size_t n) {
  if (n < 3) throw error(errc::n_too_small, "pentagonal series needs N >= 3, got " + std::to_string(n));
  if (!detail::tail_bracket_below_two(n))
    throw error(errc::n_too_small, "tail bracket not certified below 2 for N = " + std::to_string(n));
  pentagonal_result r;
  r.terms = n;
  const auto N = static_cast<std::int64_t>(n);
  for (std::int64_t k = -(N - 1); k <= N - 1; ++k) {
    const dyadic term = dyadic::pow2_neg(detail::pentagonal_exponent(k));
    r.value += (k % 2 == 0) ? term : -term;
  }
  r.tail_bound = dyadic::pow2_neg(n * (3 * n - 1) / 2 - 1);
  return r;
}

/// Binary digits r_1 r_2 ... of a real in [0,1]; indices are 1-based.
class bit_stream {
 public:
  using generator = std::function<int(std::size_t)>;

  bit_stream(generator gen, std::string provenance) : gen_(std::move(gen)), provenance_(std::move(provenance)) {}

  int operator()(std::size_t i) const { return gen_(i); }
  const std::string& provenance() const noexcept { return provenance_; }

  /// 0.r_1...r_n as an exact dyadic.
  dyadic truncation(std::size_t n) const {
    mpz_class num = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      num <<= 1;
      num += (*this)(i);
    }
    return dyadic(num, n);
  }

 private:
  generator gen_;
  std::string provenance_;
};

/// Long-division digits of p/q. A dyadic value uses the expansion ending in
/// repeating ones (7/8 -> 0.110111...); 1 is all ones and 0 all zeros.
inline bit_stream bits_of_rational(const mpz_class& p, const mpz_class& q) {
  if (q <= 0 || p < 0 || p > q)
    throw error(errc::out_of_range, "need 0 <= p <= q, got " + p.get_str() + "/" + q.get_str());
  mpq_class r(p, q);
  r.canonicalize();
  const std::string name = r.get_str();
  if (r == 0) return bit_stream([](std::size_t) { return 0; }, name);
  if (r == 1) return bit_stream([](std::size_t) { return 1; }, name);

  const mpz_class num = r.get_num();
  const mpz_class den = r.get_den();
  const auto twos = mpz_scan1(den.get_mpz_t(), 0);
  if (mpz_sizeinbase(den.get_mpz_t(), 2) == twos + 1) {
    // den = 2^e, num odd: digits are num's bits; the final 1 becomes 0 followed by ones
    const std::size_t e = twos;
    return bit_stream(
        [num, e](std::size_t i) -> int {
          if (i < e) return mpz_tstbit(num.get_mpz_t(), e - i);
          return i == e ? 0 : 1;
        },
        name);
  }
  // r_i = floor(2 * rem_{i-1} / q) with rem_{i-1} = p 2^{i-1} mod q
  return bit_stream(
      [num, den](std::size_t i) -> int {
        mpz_class rem, two = 2;
        mpz_powm_ui(rem.get_mpz_t(), two.get_mpz_t(), i - 1, den.get_mpz_t());
        rem = (rem * num) % den;
        return 2 * rem >= den ? 1 : 0;
      },
      name);
}

inline bit_stream bits_of_rational(long p, long q) { return bits_of_rational(mpz_class(p), mpz_class(q)); }

/// Vertices 1..n; for each i <= n with r_i = 0 the edge {j < i : r_j = 1} + {i}.
inline hypergraph h_of_r_prefix(const bit_stream& bits, std::size_t n) {
  if (n < 1) throw error(errc::out_of_range, "prefix needs n >= 1");
  std::vector<hyperedge> edges;
  hyperedge ones;
  for (vertex_id i = 1; i <= n; ++i) {
    if (bits(i) == 0) {
      hyperedge e = ones;
      e.push_back(i);
      edges.push_back(std::move(e));
    } else {
      ones.push_back(i);
    }
  }
  return hypergraph(n, std::move(edges));
}

/// F_i = {j < i : r_j = 1}
inline std::vector<vertex_id> ones_before(const bit_stream& bits, std::size_t i) {
  std::vector<vertex_id> f;
  for (vertex_id j = 1; j < i; ++j)
    if (bits(j) == 1) f.push_back(j);
  return f;
}

/// Cycles of every order 3..max_order.
inline std::vector<graph> all_cycles(std::size_t max_order) {
  std::vector<graph> out;
  for (std::size_t k = 3; k <= max_order; ++k) out.push_back(cycle_graph(k));
  return out;
}

/// Hyperedges are the vertex subsets S with G[S] isomorphic to a family member.
/// Subsets containing an already found hyperedge are skipped, so the result is
/// an antichain. Independent sets of the lift are the family-free subsets of G.
inline hypergraph ffree_lift(const graph& g, const std::vector<graph>& family) {
  std::size_t max_order = 0;
  for (const auto& f : family) {
    if (f.order() < 1) throw error(errc::bad_order, "family member of order 0");
    if (!f.connected()) throw error(errc::disconnected_family, "family members must be connected");
    max_order = std::max(max_order, f.order());
  }
  const std::size_t n = g.order();
  max_order = std::min(max_order, n);

  std::vector<hyperedge> edges;
  std::vector<vertex_id> pick;
  // by size, so a superset of a found hyperedge is always seen after it
  for (std::size_t size = 1; size <= max_order; ++size) {
    std::vector<hyperedge> found;
    std::function<void(vertex_id)> choose = [&](vertex_id from) {
      if (pick.size() == size) {
        for (const auto& e : edges)
          if (is_subset(e, pick)) return;
        const graph sub = g.induced(pick);
        for (const auto& f : family) {
          if (f.order() != size) continue;
          if (graph_isomorphic(sub, f)) {
            found.push_back(pick);
            return;
          }
        }
        return;
      }
      for (vertex_id v = from; v <= n; ++v) {
        if (n - v + 1 < size - pick.size()) return;
        pick.push_back(v);
        choose(v + 1);
        pick.pop_back();
      }
    };
    choose(1);
    edges.insert(edges.end(), found.begin(), found.end());
  }
  return hypergraph(n, std::move(edges));
}

}  // namespace hdens
