#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "hdens/bigfloat.hpp"
#include "hdens/count.hpp"
#include "hdens/dyadic.hpp"
#include "hdens/error.hpp"
#include "hdens/hypergraph.hpp"

namespace hdens {

/// i(H) / 2^n
inline dyadic id(const hypergraph& h) { return dyadic(count_independent(h), h.order()); }

/// Required-in set `in` and required-out set `out`; disjoint, sorted, deduplicated.
class constraint_pair {
 public:
  constraint_pair() = default;
  constraint_pair(std::vector<vertex_id> in, std::vector<vertex_id> out) : in_(std::move(in)), out_(std::move(out)) {
    tidy(in_);
    tidy(out_);
    std::vector<vertex_id> both;
    std::set_intersection(in_.begin(), in_.end(), out_.begin(), out_.end(), std::back_inserter(both));
    if (!both.empty())
      throw error(errc::overlapping_constraints, "vertex " + std::to_string(both.front()) + " is both in and out");
  }

  const std::vector<vertex_id>& in() const noexcept { return in_; }
  const std::vector<vertex_id>& out() const noexcept { return out_; }

  void check_against(const hypergraph& h) const {
    for (const auto* set : {&in_, &out_})
      for (auto v : *set)
        if (v < 1 || v > h.order())
          throw error(errc::vertex_out_of_range, "constraint vertex " + std::to_string(v) + " not in hypergraph");
  }

 private:
  static void tidy(std::vector<vertex_id>& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  std::vector<vertex_id> in_;
  std::vector<vertex_id> out_;
};

/// Density of independent sets containing all of `in` and none of `out`,
/// counted directly: force the constraints, then count the rest.
inline dyadic rho(const hypergraph& h, const constraint_pair& c) {
  c.check_against(h);
  std::vector<char> state(h.order() + 1, 0);  // 1 = in, 2 = out
  for (auto v : c.in()) state[v] = 1;
  for (auto v : c.out()) state[v] = 2;
  std::vector<vertex_id> label(h.order() + 1, 0);
  vertex_id next = 0;
  for (vertex_id v = 1; v <= h.order(); ++v)
    if (state[v] == 0) label[v] = ++next;

  std::vector<hyperedge> rest;
  for (const auto& e : h.edges()) {
    hyperedge shrunk;
    bool touches_out = false;
    for (auto v : e) {
      if (state[v] == 2) {
        touches_out = true;
        break;
      }
      if (state[v] == 0) shrunk.push_back(label[v]);
    }
    if (touches_out) continue;
    if (shrunk.empty()) return dyadic(0);  // an edge lies inside `in`
    rest.push_back(std::move(shrunk));
  }
  return dyadic(count_independent(hypergraph(next, std::move(rest))), h.order());
}

namespace detail {

// Recursion over (A, B) with the out-set size bound r. `in`/`out` are membership flags.
class rho_recursion {
 public:
  explicit rho_recursion(const hypergraph& h) : h_(h) {}

  dyadic run(std::vector<char>& in, std::vector<char>& out, std::size_t fixed, std::size_t r) {
    // An edge inside A: nothing qualifies.
    for (const auto& e : h_.edges())
      if (std::all_of(e.begin(), e.end(), [&](vertex_id v) { return in[v] != 0; })) return dyadic(0);

    // Out-sets: S \ A for edges S avoiding B. Greedy maximal disjoint family in stored order.
    std::vector<char> used(h_.order() + 1, 0);
    std::vector<vertex_id> w;
    std::size_t largest = 0;
    for (const auto& e : h_.edges()) {
      if (std::any_of(e.begin(), e.end(), [&](vertex_id v) { return out[v] != 0; })) continue;
      std::vector<vertex_id> outset;
      for (auto v : e)
        if (!in[v]) outset.push_back(v);
      largest = std::max(largest, outset.size());
      if (std::none_of(outset.begin(), outset.end(), [&](vertex_id v) { return used[v] != 0; })) {
        for (auto v : outset) {
          used[v] = 1;
          w.push_back(v);
        }
      }
    }
    // the bound r must dominate every out-set at this level
    assert(largest <= r);
    (void)r;
    if (largest == 0) return dyadic::pow2_neg(fixed);

    // Sum over C subset of W of rho(A + C, B + (W \ C)) with bound r - 1.
    const std::size_t width = w.size();
    if (width >= 63) throw error(errc::too_large, "out-set union too wide for enumeration");
    dyadic sum(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask) {
      for (std::size_t i = 0; i < width; ++i) ((mask >> i) & 1 ? in : out)[w[i]] = 1;
      sum += run(in, out, fixed + width, largest - 1);
      for (std::size_t i = 0; i < width; ++i) in[w[i]] = out[w[i]] = 0;
    }
    return sum;
  }

 private:
  const hypergraph& h_;
};

}  // namespace detail

/// Same value as rho(), computed by splitting on a maximal family of disjoint
/// out-sets; each level strictly shrinks the largest out-set, so the depth is
/// at most the rank.
inline dyadic rho_recursive(const hypergraph& h, const constraint_pair& c) {
  c.check_against(h);
  const hypergraph g = normalize(h);
  std::vector<char> in(g.order() + 1, 0), out(g.order() + 1, 0);
  for (auto v : c.in()) in[v] = 1;
  for (auto v : c.out()) out[v] = 1;
  return detail::rho_recursion(g).run(in, out, c.in().size() + c.out().size(), g.rank());
}

struct density_bounds {
  dyadic lower;
  dyadic upper;
  std::size_t matching_size = 0;
  std::size_t rank = 0;
};

/// 2^{-k m} <= id(H) <= (1 - 2^{-k})^m, with m the maximum matching size when
/// `exact`, else the size of the greedy maximal matching. Both bounds hold for
/// any maximal matching.
inline density_bounds matching_bounds(const hypergraph& h, bool exact = false) {
  if (h.has_empty_edge()) throw error(errc::empty_edge, "bounds undefined with an empty edge");
  const std::size_t k = h.rank();
  const std::size_t m = exact ? maximum_matching(h).size() : greedy_maximal_matching(h).size();
  if (k == 0) return {dyadic(1), dyadic(1), 0, 0};
  density_bounds b;
  b.matching_size = m;
  b.rank = k;
  b.lower = dyadic::pow2_neg(k * m);
  mpz_class base = 1;
  base <<= static_cast<mp_bitcnt_t>(k);
  base -= 1;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), m);
  b.upper = dyadic(p, k * m);
  return b;
}

/// (beta + 1)(e n x / beta)^beta / 2^n, every step rounded upward, so the
/// result is a valid upper bound on i(H_n, x) / 2^n whenever H_n has order n,
/// independence number at most beta, and beta < n / 2.
inline bigfloat nnn_bound(std::size_t n, std::size_t beta, const mpq_class& x,
                          mpfr_prec_t precision = bigfloat::default_precision) {
  if (beta < 1 || beta > n) throw error(errc::out_of_range, "need 1 <= beta <= n");
  if (x < 1) throw error(errc::out_of_range, "need x >= 1, got " + x.get_str());
  bigfloat t(precision);
  mpfr_set_ui(t.get(), 1, MPFR_RNDU);
  mpfr_exp(t.get(), t.get(), MPFR_RNDU);
  mpfr_mul_ui(t.get(), t.get(), n, MPFR_RNDU);
  mpfr_mul_q(t.get(), t.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_div_ui(t.get(), t.get(), beta, MPFR_RNDU);
  mpfr_pow_ui(t.get(), t.get(), beta, MPFR_RNDU);
  mpfr_mul_ui(t.get(), t.get(), beta + 1, MPFR_RNDU);
  mpfr_div_2ui(t.get(), t.get(), n, MPFR_RNDU);
  return t;
}

}  // namespace hdens
