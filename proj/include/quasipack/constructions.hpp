#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "quasipack/hypercore.hpp"
#include "quasipack/layouts.hpp"
#include "quasipack/rational.hpp"
#include "quasipack/rng.hpp"

namespace quasipack {

// Known Ramsey numbers for monochromatic triangles, used only to name the
// excluded clique size. r(3,3) = 6 for 2 colors and r(3,3,3) = 17 for 3.
inline constexpr vertex ramsey_triangle_2_colors = 6;
inline constexpr vertex ramsey_triangle_3_colors = 17;

// A k-coloring of the (k-1)-subsets of [0, n), indexed by colex rank.
class coloring {
 public:
  coloring() = default;
  coloring(unsigned k, vertex n, std::vector<std::uint8_t> colors) : k_(k), n_(n), colors_(std::move(colors)) {
    if (k_ < 2) throw error(error_kind::invalid_parameters, "coloring needs k >= 2");
    if (colors_.size() != binomial(n_, k_ - 1)) throw error(error_kind::invariant_violation, "coloring is not total");
    for (auto c : colors_)
      if (c >= k_) throw error(error_kind::invariant_violation, "color outside [0, k)");
  }

  unsigned k() const noexcept { return k_; }
  vertex order() const noexcept { return n_; }
  const std::vector<std::uint8_t>& colors() const noexcept { return colors_; }

  // `sorted` is a strictly increasing (k-1)-subset.
  unsigned color_of(std::span<const vertex> sorted) const noexcept { return colors_[colex_rank(sorted)]; }

  // Sum of the colors of the k (k-1)-subsets of a sorted k-set, mod k.
  unsigned color_sum(std::span<const vertex> sorted_kset) const noexcept {
    unsigned sum = 0;
    vertex buf[max_uniformity];
    for (unsigned skip = 0; skip < k_; ++skip) {
      unsigned len = 0;
      for (unsigned t = 0; t < k_; ++t)
        if (t != skip) buf[len++] = sorted_kset[t];
      sum += color_of(std::span<const vertex>(buf, len));
    }
    return sum % k_;
  }

  friend bool operator==(const coloring&, const coloring&) = default;

 private:
  unsigned k_ = 2;
  vertex n_ = 0;
  std::vector<std::uint8_t> colors_;
};

struct colored_graph {
  kgraph graph;
  coloring colors;
};

// A_n^(k): color every (k-1)-set uniformly from {0..k-1}; a k-set is an edge
// iff its (k-1)-subsets' colors sum to a nonzero residue mod k.
inline colored_graph gen_a(unsigned k, vertex n, std::uint64_t seed) {
  if (k < 2 || n < k || k > max_uniformity)
    throw error(error_kind::invalid_parameters, "A_n^(k) needs 2 <= k <= n");
  std::vector<std::uint8_t> colors(binomial(n, k - 1));
  for_each_subset(n, k - 1, [&](std::span<const vertex> s) {
    colors[colex_rank(s)] = static_cast<std::uint8_t>(subset_below(seed, stream_tag::coloring, s, k));
    return true;
  });
  coloring col(k, n, std::move(colors));
  std::vector<edge> edges;
  for_each_subset(n, k, [&](std::span<const vertex> s) {
    if (col.color_sum(s) != 0) edges.emplace_back(s.begin(), s.end());
    return true;
  });
  return {kgraph(k, n, std::move(edges)), std::move(col)};
}

// G^(k)(n, p): each k-set independently with probability p.
inline kgraph gen_gnp(unsigned k, vertex n, const rational& p, std::uint64_t seed) {
  if (k < 1 || k > max_uniformity) throw error(error_kind::invalid_parameters, "G(n,p) needs 1 <= k");
  if (p < 0 || p > 1) throw error(error_kind::invalid_parameters, "p must lie in [0, 1]");
  auto frac = to_small_fraction(p);
  std::vector<edge> edges;
  for_each_subset(n, k, [&](std::span<const vertex> s) {
    if (subset_below(seed, stream_tag::gnp_edge, s, static_cast<std::uint64_t>(frac.den)) <
        static_cast<std::uint64_t>(frac.num))
      edges.emplace_back(s.begin(), s.end());
    return true;
  });
  return kgraph(k, n, std::move(edges));
}

struct prop19_graph {
  kgraph graph;
  vertex special = 0;
  kgraph base;            // the G^(k)(n, p) draw before the link was replaced
  colored_graph link;     // A^(k-1) on the n-1 remaining vertices, link labels
};

// G^(k)(n, p) with the link of one vertex x replaced by a fresh A^(k-1) on
// V - {x}. Link labels map to graph labels by v -> v < x ? v : v + 1.
inline prop19_graph gen_prop19(unsigned k, vertex n, std::uint64_t seed, std::optional<rational> p = std::nullopt) {
  if (k < 3 || n < k) throw error(error_kind::invalid_parameters, "link-replacement graph needs 3 <= k <= n");
  rational density = p ? *p : rational(k - 1, k);
  prop19_graph out;
  out.base = gen_gnp(k, n, density, seed);
  out.special = static_cast<vertex>(rng(subset_key(seed, stream_tag::prop19_vertex, {})).below(n));
  out.link = gen_a(k - 1, n - 1, subset_key(seed, stream_tag::prop19_link, {}));
  const vertex x = out.special;
  std::vector<edge> edges;
  for (const auto& e : out.base.edges())
    if (!std::binary_search(e.begin(), e.end(), x)) edges.push_back(e);
  for (const auto& s : out.link.graph.edges()) {
    edge e{x};
    for (vertex v : s) e.push_back(v < x ? v : v + 1);
    edges.push_back(std::move(e));
  }
  out.graph = kgraph(k, n, std::move(edges));
  return out;
}

// Z = (k-1)-sets of color 0, placed in every coordinate of a C([k], k-1) layout.
inline layout zero_color_layout(const coloring& c) {
  const unsigned k = c.k();
  std::vector<edge> zero;
  for_each_subset(c.order(), k - 1, [&](std::span<const vertex> s) {
    if (c.color_of(s) == 0) zero.emplace_back(s.begin(), s.end());
    return true;
  });
  kgraph z(k - 1, c.order(), std::move(zero));
  antichain family = level_antichain(k, k - 1);
  return layout(family, std::vector<kgraph>(family.size(), z));
}

// Every k-set obeys the edge rule of A_n^(k) for this coloring.
inline bool follows_color_rule(const kgraph& h, const coloring& c) {
  if (h.uniformity() != c.k() || h.order() != c.order()) return false;
  return for_each_subset(h.order(), h.uniformity(), [&](std::span<const vertex> s) {
    return h.has_sorted_edge(s) == (c.color_sum(s) != 0);
  });
}

// ---------------------------------------------------------------------------
// Coloring text: "coloring k n", then "v1 .. v_{k-1} c" per (k-1)-subset in
// lexicographic order.

inline std::string serialize(const coloring& c) {
  std::ostringstream os;
  os << "coloring " << c.k() << ' ' << c.order() << '\n';
  for_each_subset(c.order(), c.k() - 1, [&](std::span<const vertex> s) {
    for (vertex v : s) os << v << ' ';
    os << c.color_of(s) << '\n';
    return true;
  });
  return os.str();
}

inline coloring parse_coloring(const std::string& text) {
  std::istringstream is(text);
  text_reader in(is);
  auto header = in.expect_line("coloring header");
  if (header.rfind("coloring ", 0) != 0) in.fail("expected 'coloring k n'");
  auto fields = in.integers(header.substr(9), 2);
  auto k = static_cast<unsigned>(fields[0]);
  auto n = static_cast<vertex>(fields[1]);
  if (k < 2 || k > max_uniformity) in.fail("coloring needs 2 <= k");
  std::vector<std::uint8_t> colors(binomial(n, k - 1));
  for_each_subset(n, k - 1, [&](std::span<const vertex> s) {
    auto line = in.expect_line("coloring line");
    auto values = in.integers(line, k);
    for (unsigned t = 0; t + 1 < k; ++t)
      if (values[t] != s[t]) in.fail("coloring lines must list every (k-1)-subset in lexicographic order");
    if (values[k - 1] >= k) in.fail("color outside [0, k)");
    colors[colex_rank(s)] = static_cast<std::uint8_t>(values[k - 1]);
    return true;
  });
  in.expect_end();
  return coloring(k, n, std::move(colors));
}

}  // namespace quasipack
