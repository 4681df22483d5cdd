#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "hdens/bigfloat.hpp"
#include "hdens/constructions.hpp"
#include "hdens/count.hpp"
#include "hdens/error.hpp"
#include "hdens/graph.hpp"
#include "hdens/hypergraph.hpp"
#include "hdens/parallel.hpp"
#include "hdens/quadratic.hpp"

namespace hdens {

/// K_clique disjoint union with `isolated` isolated vertices.
struct clique_union_shape {
  std::size_t clique = 0;
  std::size_t isolated = 0;

  std::size_t order() const noexcept { return clique + isolated; }
  bool dominates(const clique_union_shape& o) const noexcept { return clique >= o.clique && isolated >= o.isolated; }
  friend bool operator==(const clique_union_shape&, const clique_union_shape&) = default;
};

/// A lazily generated chain H_1, H_2, ... with H_m the induced prefix
/// 1..order(m) of H_{m+1}. Generators must be deterministic in m.
///
/// `value(m, x)` returns i(H_m, x). When not supplied it is computed from the
/// independence polynomial of the materialized H_m; families with a closed form
/// supply it so that long chains stay cheap.
class chain {
 public:
  using graph_fn = std::function<hypergraph(std::size_t)>;
  using order_fn = std::function<std::size_t(std::size_t)>;
  using value_fn = std::function<mpq_class(std::size_t, const mpq_class&)>;
  using shape_fn = std::function<clique_union_shape(std::size_t)>;

  chain(std::string name, std::string params, graph_fn at, order_fn order, value_fn value = {}, shape_fn shape = {})
      : name_(std::move(name)),
        params_(std::move(params)),
        at_(std::move(at)),
        order_(std::move(order)),
        value_(std::move(value)),
        shape_(std::move(shape)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& params() const noexcept { return params_; }
  /// "name(params)"
  std::string label() const { return params_.empty() ? name_ : name_ + "(" + params_ + ")"; }

  hypergraph at(std::size_t m) const { return at_(m); }
  std::size_t order(std::size_t m) const { return order_ ? order_(m) : at_(m).order(); }

  mpq_class value(std::size_t m, const mpq_class& x) const {
    if (x < 0) throw error(errc::negative_x, "x must be >= 0");
    if (value_) return value_(m, x);
    return eval_poly(independence_polynomial_of(at_(m)), x);
  }

  bool has_closed_form() const noexcept { return static_cast<bool>(value_); }
  bool has_shape() const noexcept { return static_cast<bool>(shape_); }
  clique_union_shape shape(std::size_t m) const { return shape_(m); }

  /// Same chain with the generic (counting) evaluation route.
  chain without_closed_form() const { return chain(name_, params_, at_, order_, {}, shape_); }

 private:
  std::string name_;
  std::string params_;
  graph_fn at_;
  order_fn order_;
  value_fn value_;
  shape_fn shape_;
};

/// Exact values i(H_m, x) / 2^{n_m}, m = 1..steps. Always tied to its chain:
/// for x != 1 the limit can depend on the chain.
struct density_sequence {
  std::string chain_label;
  mpq_class x;
  std::vector<std::size_t> orders;
  std::vector<mpq_class> values;
};

inline mpq_class pow2_rational(std::size_t e) {
  mpz_class d = 1;
  d <<= static_cast<mp_bitcnt_t>(e);
  return mpq_class(d);
}

inline density_sequence make_density_sequence(const chain& c, std::size_t steps, const mpq_class& x) {
  if (x < 0) throw error(errc::negative_x, "x must be >= 0, got " + x.get_str());
  if (steps < 1) throw error(errc::out_of_range, "steps must be >= 1");
  density_sequence seq{c.label(), x, std::vector<std::size_t>(steps), std::vector<mpq_class>(steps)};
  parallel_for(steps, [&](std::size_t i) {
    const std::size_t m = i + 1;
    seq.orders[i] = c.order(m);
    seq.values[i] = c.value(m, x) / pow2_rational(seq.orders[i]);
  });
  return seq;
}

enum class limit_tag { zero, finite_positive, infinite, undetermined };

inline std::string to_string(limit_tag t) {
  switch (t) {
    case limit_tag::zero: return "Zero";
    case limit_tag::finite_positive: return "FinitePositive";
    case limit_tag::infinite: return "Infinite";
    case limit_tag::undetermined: return "Undetermined";
  }
  return "Undetermined";
}

struct limit_class {
  limit_tag tag = limit_tag::undetermined;
  double estimate = 0;  ///< FinitePositive only
  double width = 0;     ///< FinitePositive only: width of [estimate - tail, estimate + tail]
};

inline constexpr std::size_t classify_min_length = 10;
inline constexpr std::size_t classify_window = 20;

/// Detection rules, checked in order over the last 20 differences:
///  - Zero: last value < 1e-12 and strictly decreasing throughout.
///  - Infinite: strictly increasing throughout, and either last value > 1e12
///    or the increments never shrink.
///  - FinitePositive: |d_{i+1}| < 0.9 |d_i| throughout (or the differences
///    are all zero), the geometric tail bound keeps the value positive, and
///    that bound is at most 1e-6 of the value.
///  - Undetermined otherwise.
inline limit_class classify_limit(const density_sequence& seq) {
  const auto& v = seq.values;
  if (v.size() < classify_min_length)
    throw error(errc::too_short, "classification needs >= 10 values, got " + std::to_string(v.size()));
  if (v.size() < classify_window + 1) return {};

  std::vector<mpq_class> d;
  for (std::size_t i = v.size() - classify_window; i < v.size(); ++i) d.push_back(v[i] - v[i - 1]);
  const mpq_class& last = v.back();
  const mpq_class tiny(1, mpz_class("1000000000000")), huge(mpz_class("1000000000000"));

  const bool decreasing = std::all_of(d.begin(), d.end(), [](const mpq_class& x) { return x < 0; });
  if (decreasing && last < tiny) return {limit_tag::zero};

  const bool increasing = std::all_of(d.begin(), d.end(), [](const mpq_class& x) { return x > 0; });
  if (increasing) {
    bool convex = true;
    for (std::size_t i = 1; i < d.size(); ++i) convex = convex && d[i] >= d[i - 1];
    if (last > huge || convex) return {limit_tag::infinite};
  }

  // geometric shrinking of |d|
  const mpq_class limit_ratio(9, 10);
  mpq_class worst = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const mpq_class prev = abs(d[i - 1]), cur = abs(d[i]);
    if (prev == 0) {
      if (cur != 0) return {};
      continue;
    }
    const mpq_class ratio = cur / prev;
    if (ratio >= limit_ratio) return {};
    worst = std::max(worst, ratio);
  }
  const mpq_class tail = abs(d.back()) * worst / (1 - worst);
  if (last - tail <= 0 || tail > last / 1000000) return {};
  return {limit_tag::finite_positive, last.get_d(), mpq_class(2 * tail).get_d()};
}

/// i(P_n, x) from the two-term closed form, evaluated exactly in
/// Q[sqrt(1+4x)] (or in Q when 1+4x is a rational square).
inline mpq_class path_closed_form(std::size_t n, const mpq_class& x) {
  if (n < 1) throw error(errc::out_of_range, "path order must be >= 1");
  if (x < 0) throw error(errc::negative_x, "x must be >= 0");
  const mpq_class d = 1 + 4 * x;
  const mpq_class c = 1 + 2 * x;
  mpq_class s;
  if (rational_sqrt(d, s)) {
    mpq_class up = 1, down = 1;
    const mpq_class r1 = (1 + s) / 2, r2 = (1 - s) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      up *= r1;
      down *= r2;
    }
    return (s + c) / (2 * s) * up + (s - c) / (2 * s) * down;
  }
  const quadratic root(0, 1, d), one(1, 0, d), two(2, 0, d), cq(c, 0, d);
  const quadratic value = (root + cq) / (two * root) * ((one + root) / two).pow(n) +
                          (root - cq) / (two * root) * ((one - root) / two).pow(n);
  if (value.radical_part() != 0) throw error(errc::cross_check_failure, "closed form left an irrational part");
  return value.rational_part();
}

/// (1 + a x)(1 + x)^b / 2^{a+b}
inline mpq_class clique_union_density(std::size_t a, std::size_t b, const mpq_class& x) {
  if (x < 0) throw error(errc::negative_x, "x must be >= 0");
  mpq_class base = 1 + x, p = 1;
  mpz_pow_ui(p.get_num_mpz_t(), base.get_num_mpz_t(), b);
  mpz_pow_ui(p.get_den_mpz_t(), base.get_den_mpz_t(), b);
  p.canonicalize();
  return (1 + mpq_class(a) * x) * p / pow2_rational(a + b);
}

/// i(K_a + b isolated, x) = (1 + a x)(1 + x)^b
inline mpq_class clique_union_value(const clique_union_shape& s, const mpq_class& x) {
  return clique_union_density(s.clique, s.isolated, x) * pow2_rational(s.order());
}

/// Chain of clique unions. Vertex labels follow a fixed enumeration: step m
/// appends its new clique vertices, then its new isolated vertices, so every
/// member is an induced prefix of the next. Shapes must be non-decreasing.
inline chain clique_union_chain(std::string name, std::string params, chain::shape_fn shape) {
  auto at = [shape](std::size_t m) {
    std::vector<char> is_clique;
    clique_union_shape prev;
    for (std::size_t i = 1; i <= m; ++i) {
      const auto s = shape(i);
      if (!s.dominates(prev))
        throw error(errc::embedding_violation, "clique-union shapes must be non-decreasing");
      is_clique.insert(is_clique.end(), s.clique - prev.clique, 1);
      is_clique.insert(is_clique.end(), s.isolated - prev.isolated, 0);
      prev = s;
    }
    std::vector<vertex_id> members;
    for (std::size_t i = 0; i < is_clique.size(); ++i)
      if (is_clique[i]) members.push_back(static_cast<vertex_id>(i + 1));
    std::vector<hyperedge> edges;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) edges.push_back({members[i], members[j]});
    return hypergraph(is_clique.size(), std::move(edges));
  };
  return chain(
      std::move(name), std::move(params), at, [shape](std::size_t m) { return shape(m).order(); },
      [shape](std::size_t m, const mpq_class& x) { return clique_union_value(shape(m), x); }, shape);
}

/// floor(C n) for C = log2(1 + r) - 1, exact. C is an integer when 1 + r is a
/// power of two and irrational otherwise, so interval evaluation with growing
/// precision always separates the floor.
inline mpz_class jump_floor(const mpq_class& r, std::size_t n) {
  const mpq_class base = 1 + r;
  if (base.get_den() == 1 && mpz_popcount(base.get_num_mpz_t()) == 1) {
    const auto j = mpz_sizeinbase(base.get_num_mpz_t(), 2) - 1;
    return mpz_class(static_cast<unsigned long>(j - 1)) * static_cast<unsigned long>(n);
  }
  for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
    bigfloat lo(base, MPFR_RNDD, prec), hi(base, MPFR_RNDU, prec);
    mpfr_log2(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log2(hi.get(), hi.get(), MPFR_RNDU);
    mpfr_sub_ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    mpfr_sub_ui(hi.get(), hi.get(), 1, MPFR_RNDU);
    mpfr_mul_ui(lo.get(), lo.get(), n, MPFR_RNDD);
    mpfr_mul_ui(hi.get(), hi.get(), n, MPFR_RNDU);
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (flo == fhi) return flo;
  }
  throw error(errc::cross_check_failure, "could not separate floor(C n)");
}

/// K_{floor(C n)} + n isolated vertices with 2^{C+1} = 1 + r; r is a jumping point.
inline chain jumping_chain(const mpq_class& r) {
  if (r <= 1) throw error(errc::r_out_of_range, "jumping chain needs r > 1, got " + r.get_str());
  auto shape = [r](std::size_t n) {
    return clique_union_shape{static_cast<std::size_t>(jump_floor(r, n).get_ui()), n};
  };
  return clique_union_chain("jump", r.get_str(), shape);
}

/// K_{a m} + (b m) isolated vertices.
inline chain scaled_clique_union_chain(std::size_t a, std::size_t b) {
  if (a + b == 0) throw error(errc::out_of_range, "clique union needs a + b >= 1");
  return clique_union_chain("cliqueunion", std::to_string(a) + "," + std::to_string(b),
                            [a, b](std::size_t m) { return clique_union_shape{a * m, b * m}; });
}

inline chain hhat_chain() {
  return chain("hhat", "", [](std::size_t m) { return hhat_prefix(m); },
               [](std::size_t m) { return m * (m + 1) / 2; });
}

/// Hhat presented vertex by vertex: H_m is induced on the first stride * m
/// vertices of an enumeration listing the edges block by block. With
/// `swap_pairs` the blocks come in the order 2,1,4,3,...
inline chain hhat_vertex_chain(std::size_t stride, bool swap_pairs) {
  if (stride < 1) throw error(errc::out_of_range, "stride must be >= 1");
  auto at = [stride, swap_pairs](std::size_t m) {
    const std::size_t n = stride * m;
    std::vector<hyperedge> edges;
    std::size_t placed = 0;
    for (std::size_t i = 1; placed < n; ++i) {
      std::size_t block = i;
      if (swap_pairs) block = (i % 2 == 1) ? i + 1 : i - 1;
      if (placed + block > n) break;
      hyperedge e(block);
      for (auto& v : e) v = static_cast<vertex_id>(++placed);
      edges.push_back(std::move(e));
    }
    return hypergraph(n, std::move(edges));
  };
  return chain("hhat-vertex", std::to_string(stride) + (swap_pairs ? ",swapped" : ""), at,
               [stride](std::size_t m) { return stride * m; });
}

/// Paths P_m. With `both_ends` new vertices alternate between the two ends
/// (edges {1,2} and {i, i+2}), presenting the two-way ray.
inline chain path_chain(bool both_ends = false) {
  auto at = [both_ends](std::size_t m) {
    std::vector<hyperedge> edges;
    if (!both_ends) {
      for (vertex_id v = 1; v < m; ++v) edges.push_back({v, v + 1});
    } else {
      if (m >= 2) edges.push_back({1, 2});
      for (vertex_id v = 1; v + 2 <= m; ++v) edges.push_back({v, v + 2});
    }
    return hypergraph(m, std::move(edges));
  };
  return chain("path", both_ends ? "both-ends" : "", at, [](std::size_t m) { return m; });
}

inline chain clique_chain() {
  return chain("clique", "", [](std::size_t m) { return as_hypergraph(clique_graph(m)); },
               [](std::size_t m) { return m; });
}

inline chain hofr_chain(const bit_stream& bits) {
  return chain("hofr", bits.provenance(), [bits](std::size_t m) { return h_of_r_prefix(bits, m); },
               [](std::size_t m) { return m; });
}

namespace detail {

struct interleave_state {
  chain first, second;  // even steps draw from `first`, odd steps from `second`
  bool by_shape = false;
  std::mutex mutex;
  struct pick {
    int source;
    std::size_t index;
  };
  std::vector<pick> picks;
  std::vector<hypergraph> graphs;  // generic mode only
  std::size_t cursor[2] = {0, 0};

  interleave_state(chain a, chain b) : first(std::move(a)), second(std::move(b)) {
    by_shape = first.has_shape() && second.has_shape();
  }

  const chain& source(int s) const { return s == 0 ? first : second; }

  // Smallest j >= lo with pred(j), assuming pred is monotone in j.
  template <class Pred>
  static std::size_t gallop(std::size_t lo, Pred pred) {
    if (pred(lo)) return lo;
    std::size_t step = 1, hi = lo + 1;
    while (!pred(hi)) {
      lo = hi;
      if (step > (std::size_t{1} << 40)) throw error(errc::embedding_violation, "no embedding index found");
      step *= 2;
      hi = lo + step;
    }
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (pred(mid) ? hi : lo) = mid;
    }
    return hi;
  }

  void extend_to(std::size_t steps) {
    while (picks.size() < steps) {
      const std::size_t s = picks.size() + 1;
      const int src = (s % 2 == 0) ? 0 : 1;
      const chain& c = source(src);
      std::size_t j;
      if (picks.empty()) {
        j = cursor[src] + 1;
      } else if (by_shape) {
        const auto prev = source(picks.back().source).shape(picks.back().index);
        j = gallop(cursor[src] + 1, [&](std::size_t k) {
          const auto sh = c.shape(k);
          return sh.dominates(prev) && sh.order() > prev.order();
        });
      } else {
        const std::size_t prev_order = graphs.back().order();
        j = gallop(cursor[src] + 1, [&](std::size_t k) { return c.order(k) > prev_order; });
      }
      if (!by_shape) {
        hypergraph g = c.at(j);
        if (!graphs.empty() && !same_up_to_edge_order(prefix(g, graphs.back().order()), graphs.back()))
          throw error(errc::embedding_violation, "step " + std::to_string(s) + ": previous member is not a prefix");
        graphs.push_back(std::move(g));
      }
      cursor[src] = j;
      picks.push_back({src, j});
    }
  }

  pick pick_at(std::size_t m) {
    std::lock_guard lock(mutex);
    extend_to(m);
    return picks[m - 1];
  }

  hypergraph graph_at(std::size_t m) {
    std::lock_guard lock(mutex);
    extend_to(m);
    return graphs[m - 1];
  }
};

}  // namespace detail

/// Alternates between two chains presenting the same limit: odd steps from
/// `second`, even steps from `first`, each time advancing to the first member
/// that has the previous pick as an induced subhypergraph. Clique-union chains
/// are matched by shape and relabeled; other chains must satisfy the identity
/// prefix property, checked on the materialized members.
inline chain interleaved_chain(const chain& first, const chain& second) {
  auto state = std::make_shared<detail::interleave_state>(first, second);
  const std::string params = first.label() + "," + second.label();
  auto value = [state](std::size_t m, const mpq_class& x) {
    const auto p = state->pick_at(m);
    return state->source(p.source).value(p.index, x);
  };
  if (state->by_shape) {
    auto shape = [state](std::size_t m) {
      const auto p = state->pick_at(m);
      return state->source(p.source).shape(p.index);
    };
    chain relabeled = clique_union_chain("interleave", params, shape);
    return chain("interleave", params, [relabeled](std::size_t m) { return relabeled.at(m); },
                 [shape](std::size_t m) { return shape(m).order(); }, value, shape);
  }
  return chain(
      "interleave", params, [state](std::size_t m) { return state->graph_at(m); },
      [state](std::size_t m) {
        const auto p = state->pick_at(m);
        return state->source(p.source).order(p.index);
      },
      value);
}

/// The oscillating chain at a fixed x > 1: jumping chains with constants
/// C((1+x)/2) (density at x tends to infinity) and C(2x) (tends to zero).
inline chain oscillating_chain(const mpq_class& x) {
  if (x <= 1) throw error(errc::r_out_of_range, "oscillating chain needs x > 1");
  return interleaved_chain(jumping_chain((1 + x) / 2), jumping_chain(2 * x));
}

/// True iff both sequences at x = 1 are non-increasing (exactly) and their
/// values at `steps` differ by at most `tol`.
inline bool chain_invariance_check(const chain& a, const chain& b, std::size_t steps, const mpq_class& tol) {
  const auto sa = make_density_sequence(a, steps, 1);
  const auto sb = make_density_sequence(b, steps, 1);
  auto non_increasing = [](const std::vector<mpq_class>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1]) return false;
    return true;
  };
  return non_increasing(sa.values) && non_increasing(sb.values) && abs(sa.values.back() - sb.values.back()) <= tol;
}

}  // namespace hdens
