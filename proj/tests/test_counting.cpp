#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasipack;

namespace {

embedding_constraints random_constraints(const kgraph& f, const kgraph& h, rng& gen) {
  embedding_constraints c;
  std::vector<vertex> fv(f.order()), hv(h.order());
  std::iota(fv.begin(), fv.end(), 0u);
  std::iota(hv.begin(), hv.end(), 0u);
  gen.shuffle(fv);
  gen.shuffle(hv);
  auto pins = gen.below(std::min<std::uint64_t>(3, f.order()));
  for (std::uint64_t i = 0; i < pins; ++i) c.pins.emplace_back(fv[i], hv[i]);
  for (std::size_t i = pins; i < fv.size(); ++i) {
    if (!gen.chance(1, 3)) continue;
    vertex_set t;
    for (vertex v = 0; v < h.order(); ++v)
      if (gen.chance(2, 3)) t.push_back(v);
    c.targets[fv[i]] = t;
  }
  return c;
}

}  // namespace

TEST(count_inj, examples) {
  EXPECT_EQ(count_inj(complete(2, 2), complete(3, 2)), 6u);
  auto h = kgraph(3, 6, {{0, 1, 2}, {1, 3, 5}, {2, 4, 5}});
  EXPECT_EQ(count_inj(complete(3, 3), h), 6u * h.size());
  embedding_constraints pin;
  pin.pins.emplace_back(0, 2);
  EXPECT_EQ(count_inj(complete(3, 2), complete(4, 2), pin), oracle::inj(complete(3, 2), complete(4, 2), pin));
  EXPECT_EQ(count_inj(complete(3, 2), complete(4, 2), pin), 6u);
  EXPECT_THROW(count_inj(complete(3, 2), complete(4, 3)), error);
}

TEST(count_inj, edgeless_pattern_and_isolated_vertices) {
  EXPECT_EQ(count_inj(kgraph(3, 3), kgraph(3, 5)), 60u);
  EXPECT_EQ(count_inj(kgraph(3, 6), kgraph(3, 5)), 0u);
  auto f = kgraph(3, 4, {{0, 1, 2}});
  EXPECT_EQ(count_inj(f, complete(5, 3)), 120u);
}

TEST(count_inj, constraint_validation) {
  embedding_constraints twice;
  twice.pins = {{0, 1}, {0, 2}};
  EXPECT_THROW(count_inj(complete(3, 2), complete(4, 2), twice), error);
  embedding_constraints shared;
  shared.pins = {{0, 1}, {1, 1}};
  EXPECT_THROW(count_inj(complete(3, 2), complete(4, 2), shared), error);
  embedding_constraints target_on_pin;
  target_on_pin.pins = {{0, 1}};
  target_on_pin.targets[0] = {1};
  EXPECT_THROW(count_inj(complete(3, 2), complete(4, 2), target_on_pin), error);
  embedding_constraints out_of_range;
  out_of_range.pins = {{0, 9}};
  EXPECT_THROW(count_inj(complete(3, 2), complete(4, 2), out_of_range), error);
}

TEST(count_inj, brute_force_equivalence) {
  rng gen(99);
  for (int t = 0; t < 150; ++t) {
    unsigned k = 2 + static_cast<unsigned>(gen.below(2));
    vertex fv = static_cast<vertex>(k + gen.below(6 - k));
    vertex n = static_cast<vertex>(fv + gen.below(9 - fv));
    auto f = oracle::random_graph(k, fv, 1, 2, gen);
    auto h = oracle::random_graph(k, n, 2, 3, gen);
    auto c = random_constraints(f, h, gen);
    EXPECT_EQ(count_inj(f, h, c), oracle::inj(f, h, c)) << "trial " << t;
  }
}

TEST(count_inj, pins_partition_the_unpinned_count) {
  rng gen(5);
  for (int t = 0; t < 10; ++t) {
    auto f = oracle::random_graph(3, 5, 1, 2, gen);
    auto h = oracle::random_graph(3, 8, 2, 3, gen);
    std::uint64_t sum = 0;
    for (vertex y = 0; y < h.order(); ++y) {
      embedding_constraints c;
      c.pins.emplace_back(0, y);
      sum += count_inj(f, h, c);
    }
    EXPECT_EQ(sum, count_inj(f, h));
  }
}

TEST(count_inj, shrinking_targets_never_increases) {
  rng gen(6);
  auto f = oracle::cycle_c();
  auto h = oracle::random_graph(3, 8, 3, 4, gen);
  embedding_constraints c;
  vertex_set t{0, 1, 2, 3, 4, 5, 6, 7};
  std::uint64_t prev = count_inj(f, h, c);
  while (!t.empty()) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(gen.below(t.size())));
    c.targets[2] = t;
    auto now = count_inj(f, h, c);
    EXPECT_LE(now, prev);
    prev = now;
  }
}

TEST(for_each_inj, streams_valid_distinct_images) {
  auto f = oracle::cycle_c();
  auto h = gen_gnp(3, 8, rational(3, 4), 2);
  std::set<std::vector<vertex>> seen;
  for_each_inj(f, h, {}, [&](std::span<const vertex> image) {
    std::vector<vertex> img(image.begin(), image.end());
    for (const auto& e : f.edges()) {
      std::vector<vertex> mapped;
      for (vertex v : e) mapped.push_back(img[v]);
      EXPECT_TRUE(h.has_edge(mapped));
    }
    EXPECT_TRUE(seen.insert(img).second);
    return true;
  });
  EXPECT_EQ(seen.size(), count_inj(f, h));
}

TEST(find_inj_limited, respects_node_cap) {
  auto f = complete(5, 3);
  auto h = gen_gnp(3, 30, rational(1, 10), 1);
  auto capped = find_inj_limited(f, h, {}, 10);
  EXPECT_FALSE(capped.image);
  EXPECT_TRUE(capped.budget_exceeded);
  auto easy = find_inj_limited(complete(3, 3), complete(5, 3), {}, 100);
  ASSERT_TRUE(easy.image);
  EXPECT_FALSE(easy.budget_exceeded);
}

TEST(estimate_density, examples) {
  auto f = oracle::cycle_c();
  EXPECT_EQ(estimate_density(f, kgraph(3, 20), 2000, 1).value, 0);
  auto full = estimate_density(complete(3, 3), complete(10, 3), 40000, 4);
  double exact = 720.0 / 1000.0;
  EXPECT_NEAR(to_double(full.value), exact, 4 * full.standard_error + 1e-9);
  EXPECT_EQ(full.degenerate, 0u);
  auto again = estimate_density(complete(3, 3), complete(10, 3), 40000, 4);
  EXPECT_EQ(again.value, full.value);
  // a and d share no edge of C, so collapsing them still preserves every edge
  EXPECT_GT(estimate_density(f, complete(5, 3), 20000, 2).degenerate, 0u);
  EXPECT_THROW(estimate_density(f, kgraph(3, 20), 0, 1), error);
}

TEST(estimate_density, unbiased_against_exact_count) {
  auto f = oracle::cycle_c();
  auto h = gen_gnp(3, 9, rational(3, 4), 3);
  double exact = static_cast<double>(count_inj(f, h)) / std::pow(9.0, 6);
  auto est = estimate_density(f, h, 200000, 8);
  EXPECT_NEAR(to_double(est.value), exact, 4 * est.standard_error + 1e-4);
}

TEST(embedding_bound, substitution_cases) {
  embed_bound_params params{rational(1, 2), rational(3, 4), rational(1, 10)};
  auto f = oracle::cycle_c();
  EXPECT_EQ(embedding_bound(f, {}, params, 10), power(rational(3, 4), 4) * 1000000 - rational(1, 10) * 1000000);
  embedding_constraints c;
  c.pins.emplace_back(0, 3);
  c.targets[1] = {0, 1, 2};
  // d_F(a) = 2: alpha^2 p^2 * 3 * 10^4 - gamma 10^5
  EXPECT_EQ(embedding_bound(f, c, params, 10),
            rational(1, 4) * rational(9, 16) * 3 * 10000 - rational(1, 10) * 100000);
  embedding_constraints t;
  t.targets[0] = {1, 2};
  t.targets[2] = {1, 2, 3, 4};
  EXPECT_EQ(embedding_bound(kgraph(3, 3), t, params, 7), rational(2 * 4 * 7) - rational(1, 10) * 343);
  EXPECT_THROW(embedding_bound(f, {}, {rational(0), rational(1, 2), rational(1, 2)}, 5), error);
}
