#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasipack;

TEST(kgraph, complete_sizes) {
  EXPECT_EQ(complete(3, 2).size(), 3u);
  EXPECT_EQ(complete(4, 3).size(), 4u);
  EXPECT_EQ(complete(5, 5).size(), 1u);
  EXPECT_THROW(complete(2, 3), error);
  EXPECT_THROW(complete(3, 0), error);
}

TEST(kgraph, rejects_bad_edges) {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const error& e) {
      return e.kind();
    }
    return error_kind::precondition;
  };
  EXPECT_EQ(kind_of([] { kgraph(3, 4, {{0, 1}}); }), error_kind::invariant_violation);
  EXPECT_EQ(kind_of([] { kgraph(3, 4, {{0, 1, 4}}); }), error_kind::vertex_out_of_range);
  EXPECT_EQ(kind_of([] { kgraph(3, 4, {{0, 1, 1}}); }), error_kind::invariant_violation);
  EXPECT_EQ(kind_of([] { kgraph(3, 4, {{0, 1, 2}, {2, 1, 0}}); }), error_kind::invariant_violation);
}

TEST(kgraph, edge_queries_any_order) {
  kgraph h(3, 5, {{4, 0, 2}});
  EXPECT_EQ(h.edges().front(), (edge{0, 2, 4}));
  EXPECT_TRUE(h.has_edge(std::vector<vertex>{2, 4, 0}));
  EXPECT_FALSE(h.has_edge(std::vector<vertex>{2, 2, 0}));
  EXPECT_FALSE(h.has_edge(std::vector<vertex>{0, 2, 9}));
  EXPECT_FALSE(h.has_edge(std::vector<vertex>{0, 2}));
}

TEST(kgraph, sparse_index_matches_dense) {
  // C(400, 4) is beyond the dense limit
  kgraph big(4, 400, {{1, 50, 200, 399}, {0, 1, 2, 3}});
  EXPECT_TRUE(big.has_edge(std::vector<vertex>{399, 200, 50, 1}));
  EXPECT_FALSE(big.has_edge(std::vector<vertex>{0, 1, 2, 4}));
}

TEST(link, examples) {
  auto single = link(kgraph(3, 3, {{0, 1, 2}}), 0);
  EXPECT_EQ(single.graph, kgraph(2, 2, {{0, 1}}));
  EXPECT_EQ(single.to_parent, (std::vector<vertex>{1, 2}));
  for (vertex x = 0; x < 4; ++x) EXPECT_EQ(link(complete(4, 3), x).graph, complete(3, 2));
  EXPECT_TRUE(link(kgraph(3, 5, {{0, 1, 2}}), 4).graph.empty());
  EXPECT_THROW(link(complete(4, 3), 4), error);
}

TEST(degree, examples) {
  EXPECT_EQ(degree(complete(7, 3), {0}), binomial(6, 2));
  EXPECT_EQ(degree(complete(7, 4), {1, 5}), binomial(5, 2));
  EXPECT_EQ(degree(kgraph(3, 6), {2}), 0u);
  EXPECT_EQ(degree(kgraph(3, 4, {{0, 1, 2}, {0, 1, 3}}), {0, 1}), 2u);
  EXPECT_EQ(degree(complete(4, 3), {}), 4u);
  try {
    degree(complete(4, 3), {0, 1, 2});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), error_kind::set_too_large);
  }
}

TEST(min_degree, examples) {
  EXPECT_EQ(min_degree(complete(6, 3), 1), binomial(5, 2));
  EXPECT_EQ(min_degree(complete(6, 3), 2), 4u);
  EXPECT_EQ(min_degree(kgraph(3, 6), 1), 0u);
  EXPECT_EQ(min_degree(kgraph(3, 4, {{0, 1, 2}}), 1), 0u);
  EXPECT_THROW(min_degree(complete(6, 3), 3), error);
}

TEST(induced, examples) {
  auto h = kgraph(3, 5, {{0, 1, 2}, {1, 3, 4}});
  auto all = induced(h, {0, 1, 2, 3, 4});
  EXPECT_EQ(all.graph, h);
  auto none = induced(h, {});
  EXPECT_EQ(none.graph.order(), 0u);
  EXPECT_TRUE(none.graph.empty());
  EXPECT_EQ(induced(complete(5, 3), {0, 2, 3, 4}).graph, complete(4, 3));
  auto part = induced(h, {4, 1, 3});
  EXPECT_EQ(part.graph, kgraph(3, 3, {{0, 1, 2}}));
  EXPECT_EQ(part.to_parent, (std::vector<vertex>{1, 3, 4}));
}

TEST(hypercore, link_degree_and_induced_invariants) {
  rng gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto h = oracle::random_graph(3, 9, 1, 2, gen);
    for (vertex x = 0; x < h.order(); ++x) EXPECT_EQ(link(h, x).graph.size(), degree(h, {x}));
    vertex_set w;
    for (vertex v = 0; v < h.order(); ++v)
      if (gen.chance(1, 2)) w.push_back(v);
    auto sub = induced(h, w);
    for (const auto& e : sub.graph.edges()) {
      edge back;
      for (vertex v : e) back.push_back(sub.to_parent[v]);
      EXPECT_TRUE(h.has_edge(back));
    }
    std::uint64_t expected = 0;
    for (const auto& e : h.edges())
      expected += std::all_of(e.begin(), e.end(), [&](vertex v) { return std::binary_search(w.begin(), w.end(), v); });
    EXPECT_EQ(sub.graph.size(), expected);
  }
}

TEST(text_format, parse_and_round_trip) {
  EXPECT_EQ(parse_kgraph("3 4 1\n0 1 2\n"), kgraph(3, 4, {{0, 1, 2}}));
  std::string messy = "# a comment\n3 5 2\r\n\n1 2 4\n0 1 2\n";
  auto h = parse_kgraph(messy);
  EXPECT_EQ(serialize(h), "3 5 2\n0 1 2\n1 2 4\n");
  EXPECT_EQ(parse_kgraph(serialize(h)), h);
}

TEST(text_format, errors_name_the_line) {
  auto kind_and_message = [](const std::string& text) -> std::pair<error_kind, std::string> {
    try {
      parse_kgraph(text);
    } catch (const error& e) {
      return {e.kind(), e.what()};
    }
    return {error_kind::precondition, ""};
  };
  auto dup = kind_and_message("3 4 2\n0 1 2\n0 1 2\n");
  EXPECT_EQ(dup.first, error_kind::parse_error);
  EXPECT_NE(dup.second.find("duplicate"), std::string::npos);
  EXPECT_EQ(kind_and_message("3 4 1\n2 1 0\n").first, error_kind::parse_error);
  EXPECT_EQ(kind_and_message("3 4 1\n0 1 7\n").first, error_kind::parse_error);
  EXPECT_EQ(kind_and_message("3 4 2\n0 1 2\n").first, error_kind::parse_error);
  EXPECT_EQ(kind_and_message("3 4 1\n0 1 2\n0 1 3\n").first, error_kind::parse_error);
  EXPECT_EQ(kind_and_message("3 x 1\n").first, error_kind::parse_error);
  EXPECT_NE(kind_and_message("3 4 1\n0 1 9\n").second.find("line 2"), std::string::npos);
}

TEST(subsets, colex_rank_is_dense) {
  std::vector<char> seen(binomial(7, 3), 0);
  std::uint64_t visited = 0;
  for_each_subset(7, 3, [&](std::span<const vertex> s) {
    auto r = colex_rank(s);
    EXPECT_LT(r, seen.size());
    EXPECT_FALSE(seen[r]);
    seen[r] = 1;
    ++visited;
    return true;
  });
  EXPECT_EQ(visited, 35u);
  EXPECT_EQ(falling_factorial(6, 3), 120u);
  EXPECT_EQ(binomial(200, 100), saturated);
}
