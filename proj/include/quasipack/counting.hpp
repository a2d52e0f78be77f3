#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quasipack/hypercore.hpp"
#include "quasipack/rational.hpp"
#include "quasipack/rng.hpp"

namespace quasipack {

// Pinned images s_i -> y_i and target sets t_j -> V_j for inj[F -> H; ...].
// F-vertices without a pin or target may map anywhere.
struct embedding_constraints {
  std::vector<std::pair<vertex, vertex>> pins;
  std::map<vertex, vertex_set> targets;
};

inline void validate(const kgraph& f, const kgraph& h, const embedding_constraints& c) {
  if (f.uniformity() != h.uniformity())
    throw error(error_kind::uniformity_mismatch, "F and H have different uniformity");
  std::vector<char> pinned_f(f.order(), 0), pinned_h(h.order(), 0);
  for (auto [w, y] : c.pins) {
    require_vertex(f, w);
    require_vertex(h, y);
    if (pinned_f[w]) throw error(error_kind::invalid_parameters, "F-vertex pinned twice");
    if (pinned_h[y]) throw error(error_kind::invalid_parameters, "two pins share an H-vertex");
    pinned_f[w] = pinned_h[y] = 1;
  }
  for (const auto& [w, set] : c.targets) {
    require_vertex(f, w);
    if (pinned_f[w]) throw error(error_kind::invalid_parameters, "target given for a pinned F-vertex");
    for (vertex v : set) require_vertex(h, v);
  }
}

// For every (k-1)-set S of V(H), the sorted vertices v with S + v in H.
class neighborhood_index {
 public:
  explicit neighborhood_index(const kgraph& h) : n_(h.order()) {
    const unsigned r = h.uniformity() - 1;
    std::uint64_t universe = binomial(h.order(), r);
    dense_ = universe <= (std::uint64_t{1} << 22);
    if (dense_) table_.resize(universe);
    vertex buf[max_uniformity];
    for (const auto& e : h.edges())
      for (unsigned skip = 0; skip < e.size(); ++skip) {
        unsigned len = 0;
        for (unsigned t = 0; t < e.size(); ++t)
          if (t != skip) buf[len++] = e[t];
        auto rank = colex_rank(std::span<const vertex>(buf, len));
        (dense_ ? table_[rank] : sparse_[rank]).push_back(e[skip]);
      }
    for (auto& list : table_) std::sort(list.begin(), list.end());
    for (auto& [rank, list] : sparse_) std::sort(list.begin(), list.end());
  }

  // `sorted` must be strictly increasing.
  std::span<const vertex> completions(std::span<const vertex> sorted) const {
    auto rank = colex_rank(sorted);
    if (dense_) return table_[rank];
    auto it = sparse_.find(rank);
    return it == sparse_.end() ? std::span<const vertex>() : std::span<const vertex>(it->second);
  }

 private:
  vertex n_;
  bool dense_ = true;
  std::vector<std::vector<vertex>> table_;
  std::unordered_map<std::uint64_t, std::vector<vertex>> sparse_;
};

namespace detail {

// Backtracking over F-vertices: pins first, then whichever vertex closes the
// most F-edges against already-placed vertices. Candidates for a vertex that
// closes an edge come from the neighbourhood index of that edge's image.
class embedding_search {
 public:
  embedding_search(const kgraph& f, const kgraph& h, const embedding_constraints& c,
                   const neighborhood_index* index = nullptr)
      : f_(f), h_(h) {
    validate(f, h, c);
    if (!index) {
      owned_index_.emplace(h);
      index = &*owned_index_;
    }
    index_ = index;
    const vertex fn = f.order();
    pin_.assign(fn, std::nullopt);
    for (auto [w, y] : c.pins) pin_[w] = y;
    allowed_.assign(fn, {});
    for (const auto& [w, set] : c.targets) {
      allowed_[w].assign(h.order(), 0);
      for (vertex v : set) allowed_[w][v] = 1;
      domain_[w] = normalize_set(h, set);
    }
    plan(c);
  }

  // Abort after this many search nodes; budget_exceeded() reports it.
  void set_node_cap(std::uint64_t cap) noexcept { node_cap_ = cap; }
  bool budget_exceeded() const noexcept { return budget_hit_; }

  std::uint64_t count() {
    std::uint64_t total = 0;
    if (f_.order() > h_.order()) return 0;
    if (f_.order() == 0) return 1;
    run(0, [&](std::uint64_t n) { total += n; }, nullptr);
    return total;
  }

  // fn(image) with image[w] = H-vertex of F-vertex w; false stops the walk.
  template <typename Fn>
  bool enumerate(Fn&& fn) {
    if (f_.order() > h_.order()) return true;
    std::function<bool(std::span<const vertex>)> visit = std::forward<Fn>(fn);
    stop_ = false;
    if (f_.order() == 0) return visit(std::span<const vertex>());
    run(0, [](std::uint64_t) {}, &visit);
    return !stop_;
  }

 private:
  void plan(const embedding_constraints& c) {
    const vertex fn = f_.order();
    std::vector<char> placed(fn, 0);
    std::vector<std::size_t> deg(fn, 0);
    for (const auto& e : f_.edges())
      for (vertex v : e) ++deg[v];
    for (auto [w, y] : c.pins) {
      order_.push_back(w);
      placed[w] = 1;
    }
    while (order_.size() < fn) {
      vertex best = 0;
      std::tuple<std::size_t, std::size_t, std::size_t, int> best_key{0, 0, 0, 1};
      bool have = false;
      for (vertex w = 0; w < fn; ++w) {
        if (placed[w]) continue;
        std::size_t closes = 0, touches = 0;
        for (const auto& e : f_.edges()) {
          if (!std::binary_search(e.begin(), e.end(), w)) continue;
          std::size_t others = 0;
          for (vertex u : e)
            if (u != w && placed[u]) ++others;
          if (others + 1 == e.size()) ++closes;
          if (others) ++touches;
        }
        std::tuple<std::size_t, std::size_t, std::size_t, int> key{closes, touches, deg[w], -static_cast<int>(w)};
        if (!have || key > best_key) {
          best_key = key;
          best = w;
          have = true;
        }
      }
      order_.push_back(best);
      placed[best] = 1;
    }
    // Edges closed by each step, stored as the other F-vertices.
    std::vector<std::size_t> step_of(fn);
    for (std::size_t d = 0; d < fn; ++d) step_of[order_[d]] = d;
    closing_.assign(fn, {});
    for (const auto& e : f_.edges()) {
      std::size_t last = 0;
      for (vertex u : e) last = std::max(last, step_of[u]);
      std::vector<vertex> others;
      for (vertex u : e)
        if (step_of[u] != last) others.push_back(u);
      closing_[last].push_back(std::move(others));
    }
    image_.assign(fn, 0);
    used_.assign(h_.order(), 0);
    scratch_.assign(fn, {});
    merge_.assign(fn, {});
  }

  // Count mode when `visit` is null: the deepest level adds candidates in bulk.
  template <typename Add>
  void run(std::size_t d, Add&& add, std::function<bool(std::span<const vertex>)>* visit) {
    const std::size_t fn = order_.size();
    const vertex w = order_[d];
    const bool last = d + 1 == fn;
    auto& closing = closing_[d];

    vertex buf[max_uniformity];
    auto other_images = [&](const std::vector<vertex>& others) {
      for (std::size_t t = 0; t < others.size(); ++t) buf[t] = image_[others[t]];
      std::sort(buf, buf + others.size());
      return std::span<const vertex>(buf, others.size());
    };

    // Candidates: the pin, the intersection of the completion lists of every
    // edge this step closes, the target set, or all of V(H).
    std::span<const vertex> source;
    auto& scratch = scratch_[d];
    if (pin_[w]) {
      scratch.assign(1, *pin_[w]);
      source = scratch;
    } else if (!closing.empty()) {
      std::vector<std::span<const vertex>> lists;
      for (const auto& others : closing) lists.push_back(index_->completions(other_images(others)));
      std::sort(lists.begin(), lists.end(), [](auto a, auto b) { return a.size() < b.size(); });
      source = lists.front();
      for (std::size_t c = 1; c < lists.size() && !source.empty(); ++c) {
        auto& into = c % 2 ? merge_[d] : scratch;
        into.clear();
        std::set_intersection(source.begin(), source.end(), lists[c].begin(), lists[c].end(),
                              std::back_inserter(into));
        source = into;
      }
    } else if (auto it = domain_.find(w); it != domain_.end()) {
      source = it->second;
    } else {
      scratch.resize(h_.order());
      for (vertex v = 0; v < h_.order(); ++v) scratch[v] = v;
      source = scratch;
    }

    auto fits = [&](vertex v) {
      if (used_[v]) return false;
      if (!allowed_[w].empty() && !allowed_[w][v]) return false;
      if (pin_[w])
        for (const auto& others : closing) {
          vertex check[max_uniformity];
          for (std::size_t t = 0; t < others.size(); ++t) check[t] = image_[others[t]];
          check[others.size()] = v;
          if (!h_.has_edge(std::span<const vertex>(check, others.size() + 1))) return false;
        }
      return true;
    };

    if (last && !visit) {
      std::uint64_t n = 0;
      for (vertex v : source)
        if (fits(v)) ++n;
      add(n);
      return;
    }
    for (vertex v : source) {
      if (stop_) return;
      if (++nodes_ > node_cap_) {
        budget_hit_ = stop_ = true;
        return;
      }
      if (!fits(v)) continue;
      image_[w] = v;
      if (last) {
        if (!(*visit)(std::span<const vertex>(image_))) stop_ = true;
        continue;
      }
      used_[v] = 1;
      run(d + 1, add, visit);
      used_[v] = 0;
    }
  }

  const kgraph& f_;
  const kgraph& h_;
  std::optional<neighborhood_index> owned_index_;
  const neighborhood_index* index_ = nullptr;
  std::vector<std::optional<vertex>> pin_;
  std::vector<std::vector<char>> allowed_;
  std::map<vertex, vertex_set> domain_;
  std::vector<vertex> order_;
  std::vector<std::vector<std::vector<vertex>>> closing_;
  std::vector<vertex> image_;
  std::vector<char> used_;
  std::vector<std::vector<vertex>> scratch_, merge_;
  bool stop_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_cap_ = UINT64_MAX;
  bool budget_hit_ = false;
};

}  // namespace detail

// Exact number of edge-preserving injections V(F) -> V(H) obeying c.
inline std::uint64_t count_inj(const kgraph& f, const kgraph& h, const embedding_constraints& c = {}) {
  return detail::embedding_search(f, h, c).count();
}

// Visits labeled copies; image[w] is the H-vertex of F-vertex w. fn returns
// false to stop. Returns false iff stopped early.
template <typename Fn>
bool for_each_inj(const kgraph& f, const kgraph& h, const embedding_constraints& c, Fn&& fn,
                  const neighborhood_index* index = nullptr) {
  return detail::embedding_search(f, h, c, index).enumerate(std::forward<Fn>(fn));
}

inline std::optional<std::vector<vertex>> find_inj(const kgraph& f, const kgraph& h, const embedding_constraints& c = {},
                                                   const neighborhood_index* index = nullptr) {
  std::optional<std::vector<vertex>> found;
  for_each_inj(
      f, h, c,
      [&](std::span<const vertex> image) {
        found.emplace(image.begin(), image.end());
        return false;
      },
      index);
  return found;
}

struct limited_inj {
  std::optional<std::vector<vertex>> image;
  bool budget_exceeded = false;
};

// First labeled copy in search order, giving up after `node_cap` nodes.
inline limited_inj find_inj_limited(const kgraph& f, const kgraph& h, const embedding_constraints& c,
                                    std::uint64_t node_cap, const neighborhood_index* index = nullptr) {
  detail::embedding_search search(f, h, c, index);
  search.set_node_cap(node_cap);
  limited_inj out;
  search.enumerate([&](std::span<const vertex> image) {
    out.image.emplace(image.begin(), image.end());
    return false;
  });
  out.budget_exceeded = !out.image && search.budget_exceeded();
  return out;
}

struct density_estimate {
  rational value;            // hits / samples, estimating inj[F -> H] / n^f
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t degenerate = 0;  // edge-preserving but not injective
};

inline density_estimate estimate_density(const kgraph& f, const kgraph& h, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw error(error_kind::invalid_parameters, "samples must be at least 1");
  if (f.uniformity() != h.uniformity())
    throw error(error_kind::uniformity_mismatch, "F and H have different uniformity");
  density_estimate out;
  out.samples = samples;
  rng gen(seed);
  std::vector<vertex> image(f.order());
  std::vector<vertex> sorted;
  vertex buf[max_uniformity];
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : image) v = static_cast<vertex>(gen.below(h.order()));
    bool preserved = true;
    for (const auto& e : f.edges()) {
      for (std::size_t t = 0; t < e.size(); ++t) buf[t] = image[e[t]];
      if (!h.has_edge(std::span<const vertex>(buf, e.size()))) {
        preserved = false;
        break;
      }
    }
    if (!preserved) continue;
    sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) ++out.hits;
    else ++out.degenerate;
  }
  out.value = rational(out.hits, samples);
  double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return out;
}

struct embed_bound_params {
  rational alpha;
  rational p;
  rational gamma;
};

inline void validate(const embed_bound_params& params) {
  for (const rational* r : {&params.alpha, &params.p, &params.gamma})
    if (*r <= 0 || *r >= 1) throw error(error_kind::invalid_parameters, "alpha, p, gamma must lie in (0, 1)");
}

// alpha^{sum d_F(s_i)} p^{|F| - sum d_F(s_i)} prod |V_j| - gamma n^{f-m}
inline rational embedding_bound(const kgraph& f, const embedding_constraints& c, const embed_bound_params& params,
                                vertex n) {
  validate(params);
  std::uint64_t pinned_degree = 0;
  std::vector<char> pinned(f.order(), 0);
  for (auto [w, y] : c.pins) {
    require_vertex(f, w);
    if (pinned[w]) throw error(error_kind::invalid_parameters, "F-vertex pinned twice");
    pinned[w] = 1;
    pinned_degree += degree(f, {w});
  }
  rational product = 1;
  for (vertex w = 0; w < f.order(); ++w) {
    if (pinned[w]) continue;
    auto it = c.targets.find(w);
    if (it == c.targets.end()) {
      product *= n;
      continue;
    }
    vertex_set targets = it->second;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    product *= static_cast<std::uint64_t>(targets.size());
  }
  std::int64_t p_exponent = static_cast<std::int64_t>(f.size()) - static_cast<std::int64_t>(pinned_degree);
  rational p_term = p_exponent >= 0 ? power(params.p, static_cast<std::uint64_t>(p_exponent))
                                    : 1 / power(params.p, static_cast<std::uint64_t>(-p_exponent));
  std::uint64_t free_vertices = f.order() - c.pins.size();
  return power(params.alpha, pinned_degree) * p_term * product - params.gamma * power(rational(n), free_vertices);
}

}  // namespace quasipack
