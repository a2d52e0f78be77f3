#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasipack;

namespace {

const antichain singletons(3, {{1}, {2}, {3}});
const antichain pair_and_one(3, {{1, 2}, {3}});
const antichain pairs = level_antichain(3, 2);

bool found(const certificate_search& s) { return s.status == search_status::found; }

}  // namespace

TEST(verify_certificate, single_edge_is_trivially_adapted) {
  kgraph f(3, 3, {{0, 1, 2}});
  adaptedness_certificate cert;
  cert.primary = {{0}, {{3, 1, 2}}};
  EXPECT_TRUE(verify_certificate(f, singletons, std::nullopt, cert));
}

TEST(verify_certificate, hand_written_cycle_certificate) {
  // a..f = 0..5; phi places abc, bcd, aef, def; psi puts the a-edges first
  auto c = oracle::cycle_c();
  adaptedness_certificate cert;
  cert.mode = adapted_mode::ij_adapted;
  // edges sorted: {0,1,2}=0, {0,4,5}=1, {1,2,3}=2, {3,4,5}=3
  cert.primary = {{0, 2, 1, 3}, {{1, 2, 3}, {1, 2, 3}, {3, 1, 2}, {3, 1, 2}}};
  cert.special = 0;
  cert.anchored = labeled_ordering{{0, 1, 2, 3}, {{3, 1, 2}, {3, 1, 2}, {1, 2, 3}, {3, 1, 2}}};
  EXPECT_TRUE(verify_certificate(c, pair_and_one, antichain(2, {{}}), cert));
}

TEST(verify_certificate, bad_labels_fail_or_throw) {
  kgraph f(3, 4, {{0, 1, 2}, {0, 1, 3}});
  adaptedness_certificate cert;
  cert.primary = {{0, 1}, {{1, 2, 3}, {1, 2, 3}}};
  // second edge meets the first in {0,1}, labelled {1,2}: not inside a singleton
  EXPECT_FALSE(verify_certificate(f, singletons, std::nullopt, cert));
  EXPECT_TRUE(verify_certificate(f, pair_and_one, std::nullopt, cert));
  cert.primary.labels[1] = {1, 1, 3};
  EXPECT_THROW(verify_certificate(f, pair_and_one, std::nullopt, cert), error);
  cert.primary = {{0, 0}, {{1, 2, 3}, {1, 2, 3}}};
  EXPECT_THROW(verify_certificate(f, pair_and_one, std::nullopt, cert), error);
  cert.primary = {{0}, {{1, 2, 3}}};
  EXPECT_THROW(verify_certificate(f, pair_and_one, std::nullopt, cert), error);
  EXPECT_THROW(verify_certificate(f, antichain(2, {{1}, {2}}), std::nullopt, cert), error);
}

TEST(find_certificate, examples) {
  EXPECT_TRUE(found(find_certificate(kgraph(3, 6, {{0, 1, 2}, {3, 4, 5}}), singletons, adapted_query::plain())));
  auto k4 = find_certificate(complete(4, 3), singletons, adapted_query::plain());
  EXPECT_EQ(k4.status, search_status::proven_none);
  auto c = find_certificate(oracle::cycle_c(), pair_and_one, adapted_query::ij(antichain(2, {{}})));
  ASSERT_TRUE(found(c));
  EXPECT_TRUE(verify_certificate(oracle::cycle_c(), pair_and_one, antichain(2, {{}}), *c.certificate));
}

TEST(find_certificate, every_graph_is_pairs_adapted) {
  rng gen(31);
  for (int t = 0; t < 20; ++t) {
    auto f = oracle::random_graph(3, 7, 1, 2, gen);
    auto res = find_certificate(f, pairs, adapted_query::ij(antichain(2, {{1}, {2}})));
    ASSERT_TRUE(found(res));
    EXPECT_TRUE(verify_certificate(f, pairs, antichain(2, {{1}, {2}}), *res.certificate));
  }
  EXPECT_TRUE(found(find_certificate(complete(6, 3), pairs, adapted_query::ij(antichain(2, {{1}, {2}})))));
}

TEST(find_certificate, matches_naive_search_in_all_modes) {
  rng gen(41);
  const std::vector<antichain> families = {singletons, pair_and_one, pairs, antichain(3, {{1, 3}, {2}}),
                                           antichain(3, {{1, 2, 3}})};
  const std::vector<antichain> js = {antichain(2, {{}}), antichain(2, {{1}, {2}}), antichain(2, {{1, 2}}),
                                     antichain(2, {{1}})};
  for (int t = 0; t < 150; ++t) {
    const auto& i = families[gen.below(families.size())];
    const auto& j = js[gen.below(js.size())];
    auto f = oracle::random_graph(3, 6, 1, 5, gen);
    if (f.size() > 5) continue;
    auto plain = find_certificate(f, i, adapted_query::plain());
    EXPECT_EQ(found(plain), oracle::adapted(f, i));
    if (found(plain)) EXPECT_TRUE(verify_certificate(f, i, std::nullopt, *plain.certificate));
    auto ij = find_certificate(f, i, adapted_query::ij(j));
    EXPECT_EQ(found(ij), oracle::ij_adapted(f, i, j));
    if (found(ij)) EXPECT_TRUE(verify_certificate(f, i, j, *ij.certificate));
    vertex_set pinned{static_cast<vertex>(gen.below(6)), static_cast<vertex>(gen.below(6))};
    auto at = find_certificate(f, i, adapted_query::at(j, pinned));
    std::sort(pinned.begin(), pinned.end());
    pinned.erase(std::unique(pinned.begin(), pinned.end()), pinned.end());
    EXPECT_EQ(found(at), oracle::adapted_at(f, i, j, pinned));
    if (found(at)) EXPECT_TRUE(verify_certificate(f, i, j, *at.certificate));
  }
}

TEST(find_certificate, monotone_under_implication) {
  rng gen(12);
  for (int t = 0; t < 40; ++t) {
    auto f = oracle::random_graph(3, 6, 1, 4, gen);
    ASSERT_TRUE(antichain_implies(pair_and_one, singletons));
    if (found(find_certificate(f, singletons, adapted_query::plain())))
      EXPECT_TRUE(found(find_certificate(f, pair_and_one, adapted_query::plain())));
  }
}

TEST(find_certificate, node_cap_is_reported) {
  auto res = find_certificate(complete(7, 3), singletons, adapted_query::plain(), 1);
  EXPECT_EQ(res.status, search_status::budget_exceeded);
  EXPECT_THROW(find_certificate(complete(4, 3), singletons, adapted_query{adapted_mode::ij_adapted, {}, {}}), error);
}

TEST(antichain_implies, examples) {
  EXPECT_TRUE(antichain_implies(pair_and_one, singletons));
  EXPECT_TRUE(antichain_implies(pair_and_one, pair_and_one));
  EXPECT_FALSE(antichain_implies(singletons, pair_and_one));
  EXPECT_THROW(antichain_implies(singletons, antichain(2, {{1}})), error);
}

TEST(grid_graph, structure) {
  auto edge_grid = grid_graph(kgraph(3, 3, {{0, 1, 2}}));
  EXPECT_EQ(edge_grid.graph.order(), 9u);
  EXPECT_EQ(edge_grid.column_copies.size() + edge_grid.row_copies.size(), 5u);
  EXPECT_EQ(edge_grid.graph.size(), 5u);

  auto k4 = complete(4, 3);
  auto g = grid_graph(k4);
  EXPECT_EQ(g.graph.order(), 16u);
  EXPECT_EQ(g.column_copies.size(), 4u);
  EXPECT_EQ(g.row_copies.size(), 3u);
  EXPECT_EQ(g.zeroth_row, (std::vector<vertex>{0, 1, 2, 3}));
  for (const auto& copy : g.column_copies)
    for (const auto& e : k4.edges()) {
      std::vector<vertex> mapped;
      for (vertex v : e) mapped.push_back(copy[v]);
      EXPECT_TRUE(g.graph.has_edge(mapped));
    }
  std::vector<vertex> identity(16);
  std::iota(identity.begin(), identity.end(), 0u);
  EXPECT_EQ(g.absorber_part(identity).size(), 12u);
  EXPECT_THROW(grid_graph(kgraph(3, 2)), error);
}

TEST(grid_graph, adapted_at_zeroth_row) {
  antichain j(2, {{1}, {2}});
  for (const auto& f : {kgraph(3, 3, {{0, 1, 2}}), complete(4, 3), oracle::cycle_c()}) {
    auto g = grid_graph(f);
    auto res = find_certificate(g.graph, pairs, adapted_query::at(j, g.zeroth_row));
    ASSERT_TRUE(found(res));
    EXPECT_TRUE(verify_certificate(g.graph, pairs, j, *res.certificate));
  }
}

TEST(certificate, text_round_trip) {
  auto c = oracle::cycle_c();
  auto res = find_certificate(c, pair_and_one, adapted_query::ij(antichain(2, {{}})));
  ASSERT_TRUE(found(res));
  auto text = serialize(c, *res.certificate);
  EXPECT_EQ(parse_certificate(text, c), *res.certificate);
  auto g = grid_graph(kgraph(3, 3, {{0, 1, 2}}));
  auto at = find_certificate(g.graph, pairs, adapted_query::at(antichain(2, {{1}, {2}}), g.zeroth_row));
  ASSERT_TRUE(found(at));
  EXPECT_EQ(parse_certificate(serialize(g.graph, *at.certificate), g.graph), *at.certificate);
  EXPECT_THROW(parse_certificate("certificate adapted 3\nordering phi 1\n0 1 9 | 0->1 1->2 9->3\n", c), error);
  EXPECT_THROW(parse_certificate("certificate sideways 3\n", c), error);
}
