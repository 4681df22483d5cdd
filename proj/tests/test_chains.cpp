#include <atomic>
#include <cstdlib>
#include <thread>

#include <gtest/gtest.h>

#include "hdens/chains.hpp"
#include "hdens/density.hpp"
#include "hdens/parallel.hpp"

using namespace hdens;

namespace {

mpq_class pow2(std::size_t e) { return pow2_rational(e); }

// density_sequence from a plain list of values
density_sequence seq_of(std::vector<mpq_class> v) {
  density_sequence s;
  s.chain_label = "test";
  s.x = 1;
  s.values = std::move(v);
  s.orders.resize(s.values.size());
  return s;
}

}  // namespace

TEST(Chains, HhatSequence) {
  const auto s = make_density_sequence(hhat_chain(), 3, 1);
  EXPECT_EQ(s.values, (std::vector<mpq_class>{mpq_class(1, 2), mpq_class(3, 8), mpq_class(21, 64)}));
  EXPECT_EQ(s.orders, (std::vector<std::size_t>{1, 3, 6}));
}

TEST(Chains, PathSequence) {
  const auto s = make_density_sequence(path_chain(), 30, 1);
  for (std::size_t n = 1; n <= 30; ++n) {
    mpz_class f;
    mpz_fib_ui(f.get_mpz_t(), n + 2);
    EXPECT_EQ(s.values[n - 1], mpq_class(f) / pow2(n));
    if (n > 1) {
      EXPECT_LT(s.values[n - 1], s.values[n - 2]);
    }
  }
}

TEST(Chains, PathClosedForm) {
  EXPECT_EQ(path_closed_form(2, 1), 3);
  EXPECT_EQ(path_closed_form(5, 1), 13);
  EXPECT_EQ(path_closed_form(4, 2), 21);
  for (const mpq_class x : {mpq_class(0), mpq_class(1, 3), mpq_class(2), mpq_class(5, 2), mpq_class(6)}) {
    for (std::size_t n = 1; n <= 25; ++n)
      EXPECT_EQ(path_closed_form(n, x), eval_poly(independence_polynomial_of(path_chain().at(n)), x)) << n << " " << x;
  }
  EXPECT_THROW(path_closed_form(0, 1), error);
  EXPECT_THROW(path_closed_form(3, -1), error);
}

TEST(Chains, CliqueUnionDensity) {
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(clique_union_density(n, n, 3), 1 + 3 * n);
  EXPECT_EQ(clique_union_density(0, 0, 5), 1);
  EXPECT_EQ(clique_union_density(2, 1, 1), mpq_class(3, 4));
}

TEST(Chains, ClosedFormsMatchCounting) {
  const std::vector<chain> chains{scaled_clique_union_chain(1, 1), scaled_clique_union_chain(2, 3), jumping_chain(3),
                                  jumping_chain(mpq_class(3, 2)), jumping_chain(7), oscillating_chain(2)};
  for (const auto& c : chains) {
    ASSERT_TRUE(c.has_closed_form());
    const auto plain = c.without_closed_form();
    for (const mpq_class x : {mpq_class(1), mpq_class(5, 2), mpq_class(7)})
      for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(c.value(m, x), plain.value(m, x)) << c.label() << " m=" << m;
  }
}

TEST(Chains, JumpFloor) {
  EXPECT_EQ(jump_floor(3, 10), 10);
  EXPECT_EQ(jump_floor(7, 10), 20);
  EXPECT_EQ(jump_floor(1, 10), 0);
  // log2(2.5) - 1 = 0.32192809...
  EXPECT_EQ(jump_floor(mpq_class(3, 2), 1000), 321);
  EXPECT_EQ(jump_floor(mpq_class(3, 2), 100000), 32192);
}

TEST(Chains, JumpingChainShapes) {
  const auto three = jumping_chain(3).at(4);
  EXPECT_EQ(three.order(), 8u);
  EXPECT_EQ(three.size(), 6u);  // K_4 plus 4 isolated vertices
  const auto seven = jumping_chain(7).at(3);
  EXPECT_EQ(seven.order(), 9u);
  EXPECT_EQ(seven.size(), 15u);  // K_6
  EXPECT_THROW(jumping_chain(1), error);
  EXPECT_THROW(jumping_chain(mpq_class(1, 2)), error);
}

TEST(Chains, CliqueUnionMembersArePrefixes) {
  const auto c = jumping_chain(mpq_class(3, 2));
  for (std::size_t m = 1; m < 12; ++m) {
    const auto a = c.at(m), b = c.at(m + 1);
    EXPECT_TRUE(same_up_to_edge_order(prefix(b, a.order()), a)) << m;
  }
}

TEST(Chains, TrendAroundJumpingPoint) {
  for (const mpq_class r : {mpq_class(3), mpq_class(7), mpq_class(3, 2)}) {
    const auto c = jumping_chain(r);
    const auto below = make_density_sequence(c, 200, r - mpq_class(1, 4));
    const auto above = make_density_sequence(c, 200, r + mpq_class(1, 4));
    EXPECT_LT(below.values.back(), below.values[99]) << r;
    EXPECT_GT(above.values.back(), above.values[99]) << r;
  }
}

TEST(Chains, Classify) {
  EXPECT_EQ(classify_limit(make_density_sequence(clique_chain(), 60, 1)).tag, limit_tag::zero);
  const auto path = classify_limit(make_density_sequence(path_chain(), 40, 2));
  EXPECT_EQ(path.tag, limit_tag::finite_positive);
  EXPECT_NEAR(path.estimate, 4.0 / 3.0, 1e-6);
  EXPECT_EQ(classify_limit(make_density_sequence(scaled_clique_union_chain(1, 1), 50, 3)).tag, limit_tag::infinite);
  EXPECT_EQ(classify_limit(make_density_sequence(oscillating_chain(2), 21, 2)).tag, limit_tag::undetermined);
  EXPECT_THROW(classify_limit(seq_of(std::vector<mpq_class>(9, 1))), error);
  EXPECT_EQ(classify_limit(seq_of(std::vector<mpq_class>(15, 1))).tag, limit_tag::undetermined);
  EXPECT_EQ(classify_limit(seq_of(std::vector<mpq_class>(30, 1))).tag, limit_tag::finite_positive);
}

TEST(Chains, HofrReachesValue) {
  const auto s = make_density_sequence(hofr_chain(bits_of_rational(7, 8)), 10, 1);
  for (std::size_t i = 2; i < 10; ++i) EXPECT_EQ(s.values[i], mpq_class(7, 8));
}

TEST(Chains, InterleaveWithItself) {
  const auto c = path_chain();
  const auto both = interleaved_chain(c, c);
  const auto a = make_density_sequence(c, 12, 2), b = make_density_sequence(both, 12, 2);
  EXPECT_EQ(a.values, b.values);
  const auto j = jumping_chain(3);
  EXPECT_EQ(make_density_sequence(interleaved_chain(j, j), 12, 2).values, make_density_sequence(j, 12, 2).values);
}

TEST(Chains, InterleaveHhatStrides) {
  const auto mixed = interleaved_chain(hhat_vertex_chain(3, false), hhat_vertex_chain(5, false));
  const auto s = make_density_sequence(mixed, 20, 1);
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    EXPECT_GT(s.orders[i], s.orders[i - 1]);
    EXPECT_LE(s.values[i], s.values[i - 1]);
  }
  EXPECT_LT(abs(s.values.back() - product_prefix_S(60).to_rational()), mpq_class(1, 1000));
}

TEST(Chains, InterleaveRejectsNonPrefix) {
  const auto bad = interleaved_chain(hhat_vertex_chain(2, false), hhat_vertex_chain(2, true));
  EXPECT_THROW(make_density_sequence(bad, 6, 1), error);
}

TEST(Chains, OscillatingMembersNest) {
  const auto c = oscillating_chain(2);
  for (std::size_t m = 1; m < 8; ++m) {
    const auto a = c.at(m), b = c.at(m + 1);
    EXPECT_TRUE(same_up_to_edge_order(prefix(b, a.order()), a)) << m;
  }
}

TEST(Chains, Invariance) {
  EXPECT_TRUE(chain_invariance_check(hhat_vertex_chain(23, true), hhat_chain(), 20, mpq_class(1, 1000)));
  // isolated padding in two orders
  const auto padded = [](bool front) {
    return chain("padded", front ? "front" : "back", [front](std::size_t m) {
      std::vector<hyperedge> e;
      const vertex_id base = front ? static_cast<vertex_id>(m) : 0;
      e.push_back({base + 1, base + 2});
      return hypergraph(m + 2, e);
    }, {});
  };
  const auto a = make_density_sequence(padded(true), 8, 1), b = make_density_sequence(padded(false), 8, 1);
  EXPECT_EQ(a.values, b.values);
  EXPECT_TRUE(chain_invariance_check(path_chain(false), path_chain(true), 40, mpq_class(1, 10000)));
  EXPECT_FALSE(chain_invariance_check(path_chain(), clique_chain(), 5, 0));
}

TEST(Chains, Preconditions) {
  EXPECT_THROW(make_density_sequence(path_chain(), 5, -1), error);
  EXPECT_THROW(make_density_sequence(path_chain(), 0, 1), error);
  EXPECT_THROW(oscillating_chain(1), error);
}

TEST(Parallel, ThreadedSequencesMatchSerial) {
  auto with_threads = [](const char* n, const chain& c, std::size_t steps, const mpq_class& x) {
    setenv("HD_THREADS", n, 1);
    auto s = make_density_sequence(c, steps, x);
    unsetenv("HD_THREADS");
    return s.values;
  };
  EXPECT_EQ(thread_budget(), std::max(1u, std::thread::hardware_concurrency()));
  for (const auto& c : {path_chain(), hhat_chain(), oscillating_chain(2), jumping_chain(mpq_class(3, 2))}) {
    EXPECT_EQ(with_threads("4", c, 14, 2), with_threads("1", c, 14, 2)) << c.label();
  }
  // interleave state is shared between workers
  const auto mixed = interleaved_chain(hhat_vertex_chain(3, false), hhat_vertex_chain(5, false));
  EXPECT_EQ(with_threads("4", mixed, 16, 1), with_threads("1", mixed, 16, 1));
}

TEST(Parallel, FirstExceptionIsRethrown) {
  setenv("HD_THREADS", "4", 1);
  std::atomic<int> ran{0};
  EXPECT_THROW(parallel_for(64,
                            [&](std::size_t i) {
                              ++ran;
                              if (i == 5) throw error(errc::out_of_range, "boom");
                            }),
               error);
  unsetenv("HD_THREADS");
  EXPECT_GE(ran.load(), 1);
}
