#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "quasipack/error.hpp"
#include "quasipack/text_reader.hpp"

namespace quasipack {

using vertex = std::uint32_t;
using edge = std::vector<vertex>;
using vertex_set = std::vector<vertex>;  // sorted, no duplicates

inline constexpr unsigned max_uniformity = 16;
inline constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

// Saturates at `saturated` instead of overflowing.
constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    unsigned __int128 next = static_cast<unsigned __int128>(result) * (n - r + i) / i;
    if (next > saturated - 1) return saturated;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

// (n)_r = n (n-1) ... (n-r+1), saturating.
constexpr std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t r) noexcept {
  if (r > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    unsigned __int128 next = static_cast<unsigned __int128>(result) * (n - i);
    if (next > saturated - 1) return saturated;
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

// Colexicographic rank of a strictly increasing tuple: sum of C(v_i, i+1).
// Dense on [0, C(n, r)) for r-subsets of [0, n).
inline std::uint64_t colex_rank(std::span<const vertex> sorted) noexcept {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) rank += binomial(sorted[i], i + 1);
  return rank;
}

// Visits every r-subset of [0, n) in lexicographic order. fn returns false to stop.
template <typename Fn>
bool for_each_subset(vertex n, unsigned r, Fn&& fn) {
  if (r > n) return true;
  std::vector<vertex> current(r);
  for (unsigned i = 0; i < r; ++i) current[i] = i;
  while (true) {
    if (!fn(std::span<const vertex>(current))) return false;
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && current[i] == n - r + static_cast<vertex>(i)) --i;
    if (i < 0) return true;
    ++current[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) current[j] = current[j - 1] + 1;
  }
}

// Visits every r-subset of `items` (kept in the order of `items`).
template <typename Fn>
bool for_each_subset_of(std::span<const vertex> items, unsigned r, Fn&& fn) {
  std::vector<vertex> chosen(r);
  return for_each_subset(static_cast<vertex>(items.size()), r, [&](std::span<const vertex> idx) {
    for (unsigned i = 0; i < r; ++i) chosen[i] = items[idx[i]];
    return fn(std::span<const vertex>(chosen));
  });
}

// A k-uniform hypergraph on vertices 0..n-1. k = 0 is allowed and models the
// two 0-graphs (with or without the empty edge) used by the {empty} antichain.
// Immutable after construction.
class kgraph {
 public:
  kgraph() : kgraph(1, 0) {}

  kgraph(unsigned k, vertex n) : k_(k), n_(n) { build_index(); }

  kgraph(unsigned k, vertex n, std::vector<edge> edges) : k_(k), n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.size() != k_)
        throw error(error_kind::invariant_violation, "edge of size " + std::to_string(e.size()) +
                                                         " in a " + std::to_string(k_) + "-graph");
      std::sort(e.begin(), e.end());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= n_)
          throw error(error_kind::vertex_out_of_range,
                      "vertex " + std::to_string(e[i]) + " not below n = " + std::to_string(n_));
        if (i && e[i] == e[i - 1])
          throw error(error_kind::invariant_violation, "repeated vertex " + std::to_string(e[i]) + " in an edge");
      }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw error(error_kind::invariant_violation, "duplicate edge");
    build_index();
  }

  unsigned uniformity() const noexcept { return k_; }
  vertex order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  // Lexicographically sorted; each edge sorted ascending.
  const std::vector<edge>& edges() const noexcept { return edges_; }

  // Vertices may be given in any order; repeated vertices never form an edge.
  bool has_edge(std::span<const vertex> vertices) const noexcept {
    if (vertices.size() != k_) return false;
    vertex buf[max_uniformity];
    std::copy(vertices.begin(), vertices.end(), buf);
    std::sort(buf, buf + k_);
    for (unsigned i = 0; i < k_; ++i)
      if (buf[i] >= n_ || (i && buf[i] == buf[i - 1])) return false;
    return contains_rank(colex_rank(std::span<const vertex>(buf, k_)));
  }

  // Caller guarantees strictly increasing, in-range input.
  bool has_sorted_edge(std::span<const vertex> sorted) const noexcept {
    return contains_rank(colex_rank(sorted));
  }

  friend bool operator==(const kgraph& a, const kgraph& b) noexcept {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static constexpr std::uint64_t dense_limit = std::uint64_t{1} << 25;

  void build_index() {
    if (k_ > max_uniformity)
      throw error(error_kind::invalid_parameters, "uniformity above " + std::to_string(max_uniformity));
    if (!edges_.empty() && k_ > n_) throw error(error_kind::invariant_violation, "k exceeds n with edges present");
    universe_ = binomial(n_, k_);
    if (universe_ == saturated) throw error(error_kind::invalid_parameters, "C(n, k) does not fit 64 bits");
    if (universe_ <= dense_limit) {
      dense_.assign(universe_, false);
      for (const auto& e : edges_) dense_[colex_rank(e)] = true;
    } else {
      sparse_.reserve(edges_.size());
      for (const auto& e : edges_) sparse_.insert(colex_rank(e));
    }
  }

  bool contains_rank(std::uint64_t rank) const noexcept {
    if (universe_ <= dense_limit) return rank < dense_.size() && dense_[rank];
    return sparse_.count(rank) != 0;
  }

  unsigned k_;
  vertex n_;
  std::vector<edge> edges_;
  std::uint64_t universe_ = 0;
  std::vector<bool> dense_;
  std::unordered_set<std::uint64_t> sparse_;
};

// A graph together with the order-preserving map back to the parent's labels:
// new vertex i corresponds to parent vertex to_parent[i].
struct relabeled {
  kgraph graph;
  std::vector<vertex> to_parent;
};

inline kgraph complete(vertex r, unsigned k) {
  if (k < 1 || k > r)
    throw error(error_kind::invalid_parameters, "complete(" + std::to_string(r) + ", " + std::to_string(k) +
                                                    ") needs 1 <= k <= r");
  std::vector<edge> edges;
  edges.reserve(binomial(r, k));
  for_each_subset(r, k, [&](std::span<const vertex> s) {
    edges.emplace_back(s.begin(), s.end());
    return true;
  });
  return kgraph(k, r, std::move(edges));
}

inline void require_vertex(const kgraph& h, vertex x) {
  if (x >= h.order())
    throw error(error_kind::vertex_out_of_range,
                "vertex " + std::to_string(x) + " not below n = " + std::to_string(h.order()));
}

inline vertex_set normalize_set(const kgraph& h, vertex_set s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (vertex v : s) require_vertex(h, v);
  return s;
}

// Link of x: the (k-1)-graph on V(H) - {x}, relabeled order-preservingly.
inline relabeled link(const kgraph& h, vertex x) {
  require_vertex(h, x);
  if (h.uniformity() == 0) throw error(error_kind::invalid_parameters, "link of a 0-graph");
  std::vector<vertex> to_parent;
  to_parent.reserve(h.order() - 1);
  for (vertex v = 0; v < h.order(); ++v)
    if (v != x) to_parent.push_back(v);
  auto relabel = [x](vertex v) { return v < x ? v : v - 1; };
  std::vector<edge> edges;
  for (const auto& e : h.edges()) {
    if (!std::binary_search(e.begin(), e.end(), x)) continue;
    edge rest;
    rest.reserve(e.size() - 1);
    for (vertex v : e)
      if (v != x) rest.push_back(relabel(v));
    edges.push_back(std::move(rest));
  }
  return {kgraph(h.uniformity() - 1, h.order() - 1, std::move(edges)), std::move(to_parent)};
}

// d_H(S): number of edges containing S.
inline std::uint64_t degree(const kgraph& h, vertex_set s) {
  s = normalize_set(h, std::move(s));
  if (s.size() >= h.uniformity() && h.uniformity() > 0)
    throw error(error_kind::set_too_large,
                "|S| = " + std::to_string(s.size()) + " must be below k = " + std::to_string(h.uniformity()));
  std::uint64_t count = 0;
  for (const auto& e : h.edges())
    if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++count;
  return count;
}

// Minimum l-degree over all l-subsets of V(H).
inline std::uint64_t min_degree(const kgraph& h, unsigned ell) {
  if (ell < 1 || ell + 1 > h.uniformity())
    throw error(error_kind::invalid_parameters, "min_degree needs 1 <= l <= k-1");
  if (h.order() < ell) return 0;
  std::vector<std::uint64_t> counts(binomial(h.order(), ell), 0);
  for (const auto& e : h.edges())
    for_each_subset_of(e, ell, [&](std::span<const vertex> s) {
      ++counts[colex_rank(s)];
      return true;
    });
  return *std::min_element(counts.begin(), counts.end());
}

// H[W] with W relabeled to 0..|W|-1 in increasing order.
inline relabeled induced(const kgraph& h, vertex_set w) {
  w = normalize_set(h, std::move(w));
  std::vector<vertex> index(h.order(), std::numeric_limits<vertex>::max());
  for (vertex i = 0; i < w.size(); ++i) index[w[i]] = i;
  std::vector<edge> edges;
  for (const auto& e : h.edges()) {
    edge mapped;
    mapped.reserve(e.size());
    for (vertex v : e) {
      if (index[v] == std::numeric_limits<vertex>::max()) break;
      mapped.push_back(index[v]);
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  return {kgraph(h.uniformity(), static_cast<vertex>(w.size()), std::move(edges)), std::move(w)};
}

inline vertex_set complement(vertex n, const vertex_set& s) {
  vertex_set out;
  std::size_t j = 0;
  for (vertex v = 0; v < n; ++v) {
    while (j < s.size() && s[j] < v) ++j;
    if (j < s.size() && s[j] == v) continue;
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format v1: "k n m", then m lines of k ascending vertex indices.

inline void write_kgraph(std::ostream& os, const kgraph& h) {
  os << h.uniformity() << ' ' << h.order() << ' ' << h.size() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
}

inline kgraph read_kgraph(text_reader& in) {
  auto header = in.expect_line("kgraph header");
  auto fields = in.integers(header, 3);
  if (fields[0] > max_uniformity) in.fail("uniformity too large");
  auto k = static_cast<unsigned>(fields[0]);
  auto n = static_cast<vertex>(fields[1]);
  std::vector<edge> edges;
  edges.reserve(fields[2]);
  for (std::uint64_t i = 0; i < fields[2]; ++i) {
    auto line = in.expect_line("edge line");
    auto values = in.integers(line, k);
    edge e(values.begin(), values.end());
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] >= n) in.fail("vertex " + std::to_string(e[j]) + " not below n = " + std::to_string(n));
      if (j && e[j] <= e[j - 1]) in.fail("edge vertices must be strictly ascending");
    }
    edges.push_back(std::move(e));
  }
  std::vector<edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    in.fail("duplicate edge");
  return kgraph(k, n, std::move(edges));
}

inline kgraph parse_kgraph(const std::string& text) {
  std::istringstream is(text);
  text_reader reader(is);
  kgraph h = read_kgraph(reader);
  reader.expect_end();
  return h;
}

inline std::string serialize(const kgraph& h) {
  std::ostringstream os;
  write_kgraph(os, h);
  return os.str();
}

}  // namespace quasipack
