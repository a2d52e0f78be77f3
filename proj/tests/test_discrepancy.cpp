#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasipack;

namespace {

disc_params lower(rational p, rational mu) { return {p, mu, disc_mode::lower}; }

layout empty_layout(vertex n, unsigned k) { return layout(antichain(k, {{}}), {empty_member_graph(n, true)}); }

}  // namespace

TEST(check_witness, complete_host_always_holds) {
  rng gen(1);
  auto h = complete(7, 3);
  for (int t = 0; t < 10; ++t) {
    std::vector<kgraph> g;
    for (int m = 0; m < 3; ++m) g.push_back(oracle::random_graph(2, 7, 1, 2, gen));
    auto res = check_witness(h, layout(level_antichain(3, 2), g), lower(rational(99, 100), rational(1, 1000)));
    EXPECT_TRUE(res.holds);
    EXPECT_GE(res.margin, 0);
  }
}

TEST(check_witness, cliqueless_layout_holds_in_lower_mode) {
  layout none(antichain(3, {{1, 2}, {3}}), {kgraph(2, 6), complete(6, 1)});
  EXPECT_EQ(count_cliques(none), 0u);
  auto res = check_witness(kgraph(3, 6), none, lower(rational(1, 2), rational(1, 1000)));
  EXPECT_TRUE(res.holds);
  EXPECT_EQ(res.margin, rational(1, 1000) * 216);
}

TEST(check_witness, margin_formula) {
  auto h = kgraph(3, 5, {{0, 1, 2}});
  auto l = empty_layout(5, 3);
  auto res = check_witness(h, l, lower(rational(1, 2), rational(1, 100)));
  EXPECT_EQ(res.counts.cliques, 60u);
  EXPECT_EQ(res.counts.in_host, 6u);
  EXPECT_EQ(res.margin, rational(6) - rational(30) + rational(125, 100));
  EXPECT_FALSE(res.holds);
  auto two = check_witness(h, l, {rational(1, 2), rational(1, 100), disc_mode::two_sided});
  EXPECT_EQ(two.margin, rational(125, 100) - 24);
}

TEST(check_witness, monotone_in_mu) {
  rng gen(4);
  auto h = oracle::random_graph(3, 6, 1, 3, gen);
  auto l = empty_layout(6, 3);
  bool violated_before = true;
  for (int mu_num = 1; mu_num < 40; ++mu_num) {
    bool violated = !check_witness(h, l, lower(rational(2, 3), rational(mu_num, 400))).holds;
    if (violated) EXPECT_TRUE(violated_before);
    violated_before = violated;
  }
}

TEST(edge_density_disc, examples) {
  EXPECT_TRUE(edge_density_disc(complete(10, 3), lower(rational(99, 100), rational(1, 1000))));
  EXPECT_FALSE(edge_density_disc(kgraph(3, 40), lower(rational(1, 2), rational(1, 100))));
  EXPECT_THROW(edge_density_disc(kgraph(3, 4), lower(rational(1), rational(1, 2))), error);
  EXPECT_THROW(edge_density_disc(kgraph(3, 4), lower(rational(1, 2), rational(0))), error);
}

TEST(edge_density_disc, agrees_with_empty_layout_witness) {
  rng gen(21);
  for (int t = 0; t < 50; ++t) {
    unsigned k = 2 + static_cast<unsigned>(gen.below(2));
    vertex n = static_cast<vertex>(k + gen.below(8));
    auto h = oracle::random_graph(k, n, gen.below(5), 4, gen);
    disc_params params{rational(1 + gen.below(9), 10), rational(1 + gen.below(20), 200),
                       gen.chance(1, 2) ? disc_mode::lower : disc_mode::two_sided};
    EXPECT_EQ(edge_density_disc(h, params), check_witness(h, empty_layout(n, k), params).holds);
  }
}

TEST(exhaustive_check, small_space) {
  auto params = lower(rational(1, 2), rational(1, 100));
  auto complete_verdict = exhaustive_check(complete(4, 2), antichain(2, {{1}, {2}}), params, 256);
  EXPECT_EQ(complete_verdict.status, disc_status::satisfied_exhaustive);
  EXPECT_EQ(complete_verdict.layouts_examined, 256u);
  auto empty_verdict = exhaustive_check(kgraph(2, 4), antichain(2, {{1}, {2}}), params, 256);
  EXPECT_EQ(empty_verdict.status, disc_status::violated);
  ASSERT_TRUE(empty_verdict.witness);
  EXPECT_FALSE(check_witness(kgraph(2, 4), *empty_verdict.witness, params).holds);
  EXPECT_EQ(check_witness(kgraph(2, 4), *empty_verdict.witness, params).margin, empty_verdict.margin);
  try {
    exhaustive_check(complete(4, 2), antichain(2, {{1}, {2}}), params, 255);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::cap_exceeded);
  }
}

TEST(exhaustive_check, implication_between_antichains) {
  // {{1,2}} implies {{1},{2}} for k = 2
  rng gen(6);
  auto params = lower(rational(1, 3), rational(1, 20));
  for (int t = 0; t < 20; ++t) {
    auto h = oracle::random_graph(2, 4, 1 + gen.below(3), 4, gen);
    auto strong = exhaustive_check(h, antichain(2, {{1, 2}}), params, 1 << 8);
    auto weak = exhaustive_check(h, antichain(2, {{1}, {2}}), params, 1 << 8);
    if (strong.status == disc_status::satisfied_exhaustive) EXPECT_EQ(weak.status, disc_status::satisfied_exhaustive);
  }
}

TEST(search_violation, agrees_with_exhaustive_when_it_finds_one) {
  rng gen(13);
  search_budget budget{4, 400, 50, 1};
  for (int t = 0; t < 20; ++t) {
    auto h = oracle::random_graph(2, 4, gen.below(4), 4, gen);
    disc_params params{rational(1 + gen.below(3), 4), rational(1, 50),
                       gen.chance(1, 2) ? disc_mode::lower : disc_mode::two_sided};
    auto heuristic = search_violation(h, antichain(2, {{1}, {2}}), params, budget, gen.next());
    auto exact = exhaustive_check(h, antichain(2, {{1}, {2}}), params, 1 << 8);
    if (heuristic.status == disc_status::violated) {
      EXPECT_EQ(exact.status, disc_status::violated);
      ASSERT_TRUE(heuristic.witness);
      EXPECT_FALSE(check_witness(h, *heuristic.witness, params).holds);
    } else {
      EXPECT_EQ(heuristic.status, disc_status::undetermined);
    }
    EXPECT_GE(heuristic.margin, exact.margin);
  }
}

TEST(search_violation, complete_host_is_undetermined) {
  auto v = search_violation(complete(8, 3), level_antichain(3, 2), lower(rational(2, 3), rational(1, 1000)),
                            {2, 200, 20, 1}, 5);
  EXPECT_EQ(v.status, disc_status::undetermined);
  EXPECT_FALSE(v.witness);
}

TEST(search_violation, finds_violation_in_empty_host) {
  auto h = kgraph(3, 8);
  auto v = search_violation(h, level_antichain(3, 2), lower(rational(1, 2), rational(1, 1000)), {2, 500, 20, 1}, 3);
  ASSERT_EQ(v.status, disc_status::violated);
  EXPECT_FALSE(check_witness(h, *v.witness, lower(rational(1, 2), rational(1, 1000))).holds);
}

TEST(search_violation, deterministic_and_thread_independent) {
  rng gen(2);
  auto h = oracle::random_graph(3, 9, 2, 3, gen);
  auto params = lower(rational(2, 3), rational(1, 1000));
  search_budget one{4, 300, 30, 1};
  search_budget four{4, 300, 30, 4};
  auto a = search_violation(h, level_antichain(3, 2), params, one, 77);
  auto b = search_violation(h, level_antichain(3, 2), params, one, 77);
  auto c = search_violation(h, level_antichain(3, 2), params, four, 77);
  EXPECT_EQ(serialize(a), serialize(b));
  EXPECT_EQ(serialize(a), serialize(c));
}

TEST(search_violation, rejects_mismatched_inputs) {
  auto params = lower(rational(1, 2), rational(1, 100));
  EXPECT_THROW(search_violation(complete(5, 3), level_antichain(2, 1), params, {}, 1), error);
  layout wrong(level_antichain(3, 2), std::vector<kgraph>(3, kgraph(2, 6)));
  EXPECT_THROW(search_violation(complete(5, 3), level_antichain(3, 2), params, {}, 1, {wrong}), error);
}

TEST(verdict, text_round_trip) {
  auto v = exhaustive_check(kgraph(2, 4), antichain(2, {{1}, {2}}), lower(rational(1, 2), rational(1, 100)), 256);
  auto text = serialize(v);
  auto back = parse_verdict(text);
  EXPECT_EQ(back.status, v.status);
  EXPECT_EQ(back.margin, v.margin);
  ASSERT_TRUE(back.witness);
  EXPECT_EQ(*back.witness, *v.witness);
  EXPECT_THROW(parse_verdict("verdict maybe\nmargin 0/1\n"), error);
}
