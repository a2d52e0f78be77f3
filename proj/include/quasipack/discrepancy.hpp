#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quasipack/layouts.hpp"
#include "quasipack/rational.hpp"
#include "quasipack/rng.hpp"

namespace quasipack {

enum class disc_mode { lower, two_sided };

struct disc_params {
  rational p;
  rational mu;
  disc_mode mode = disc_mode::lower;
};

inline void validate(const disc_params& params) {
  if (params.p <= 0 || params.p >= 1) throw error(error_kind::invalid_parameters, "p must lie in (0, 1)");
  if (params.mu <= 0 || params.mu >= 1) throw error(error_kind::invalid_parameters, "mu must lie in (0, 1)");
}

enum class disc_status { satisfied_exhaustive, violated, undetermined };

inline const char* to_string(disc_status s) {
  switch (s) {
    case disc_status::satisfied_exhaustive: return "satisfied_exhaustive";
    case disc_status::violated: return "violated";
    case disc_status::undetermined: return "undetermined";
  }
  return "?";
}

// margin >= 0 iff the inequality holds for the layout in question:
//   lower:     |H cap K| - p |K| + mu n^k
//   two-sided: mu n^k - | |H cap K| - p |K| |
struct witness_check {
  bool holds = true;
  rational margin;
  clique_counts counts;
};

struct disc_verdict {
  disc_status status = disc_status::undetermined;
  std::optional<layout> witness;
  rational margin;  // at the witness, or the worst margin seen
  std::uint64_t layouts_examined = 0;
};

inline rational margin_of(const clique_counts& counts, vertex n, unsigned k, const disc_params& params) {
  rational slack = params.mu * power(rational(n), k);
  rational deviation = rational(counts.in_host) - params.p * rational(counts.cliques);
  if (params.mode == disc_mode::lower) return deviation + slack;
  return slack - abs(deviation);
}

inline witness_check check_witness(const kgraph& h, const layout& l, const disc_params& params) {
  validate(params);
  witness_check out;
  out.counts = count_layout(l, &h);
  out.margin = margin_of(out.counts, h.order(), h.uniformity(), params);
  out.holds = out.margin >= 0;
  return out;
}

// The {empty} special case in closed form: |H| >= p C(n,k) - mu n^k / k!
// (two-sided: | |H| - p C(n,k) | <= mu n^k / k!).
inline bool edge_density_disc(const kgraph& h, const disc_params& params) {
  validate(params);
  const unsigned k = h.uniformity();
  integer k_factorial = 1;
  for (unsigned i = 2; i <= k; ++i) k_factorial *= i;
  rational all = rational(integer(binomial(h.order(), k)));
  rational slack = params.mu * power(rational(h.order()), k) / rational(k_factorial);
  rational deviation = rational(h.size()) - params.p * all;
  if (params.mode == disc_mode::lower) return deviation >= -slack;
  return abs(deviation) <= slack;
}

struct search_budget {
  std::uint64_t restarts = 8;
  std::uint64_t steps = 20'000;     // moves per restart
  std::uint64_t plateau = 200;      // consecutive sideways moves allowed
  unsigned threads = 1;
};

namespace detail {

// Mutable layout for local search: per member a membership bitmap over the
// colex ranks of |I|-subsets. Empty members are always "present".
class layout_state {
 public:
  layout_state(const kgraph& h, const antichain& family) : h_(h), family_(family) {
    for (const auto& m : family.members()) bits_.emplace_back(binomial(h.order(), m.size()), 0);
  }

  static layout_state from_layout(const kgraph& h, const layout& l) {
    layout_state s(h, l.family());
    for (std::size_t i = 0; i < l.graphs().size(); ++i) {
      if (l.family().members()[i].empty()) {
        s.bits_[i][0] = l.graphs()[i].empty() ? 0 : 1;
        continue;
      }
      for (const auto& e : l.graphs()[i].edges()) s.bits_[i][colex_rank(e)] = 1;
    }
    return s;
  }

  void randomize(rng& gen, std::uint64_t num, std::uint64_t den) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (family_.members()[i].empty()) {
        bits_[i][0] = 1;
        continue;
      }
      for (auto& b : bits_[i]) b = gen.chance(num, den) ? 1 : 0;
    }
  }

  clique_counts count_all() const {
    clique_counts out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (family_.members()[i].empty() && !bits_[i][0]) return out;
    std::vector<std::optional<vertex>> fixed(family_.ground());
    std::vector<std::size_t> sizes;
    for (const auto& b : bits_) sizes.push_back(static_cast<std::size_t>(std::count(b.begin(), b.end(), 1)));
    auto order = greedy_order(family_.ground(), family_.members(), sizes, fixed);
    search(order, fixed, std::nullopt, out);
    return out;
  }

  // Tuples whose member-m coordinates form exactly the set `e`, with the
  // member-m constraint ignored: the change in counts when e is toggled.
  clique_counts count_through(std::size_t m, std::span<const vertex> e) const {
    clique_counts out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (family_.members()[i].empty() && !bits_[i][0]) return out;
    const auto& positions = family_.members()[m];
    std::vector<vertex> perm(e.begin(), e.end());
    std::vector<std::size_t> sizes(bits_.size(), 0);
    do {
      std::vector<std::optional<vertex>> fixed(family_.ground());
      for (std::size_t t = 0; t < positions.size(); ++t) fixed[positions[t] - 1] = perm[t];
      auto order = greedy_order(family_.ground(), family_.members(), sizes, fixed);
      search(order, fixed, m, out);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

  bool test(std::size_t m, std::span<const vertex> sorted) const { return bits_[m][colex_rank(sorted)] != 0; }
  void toggle(std::size_t m, std::span<const vertex> sorted) { bits_[m][colex_rank(sorted)] ^= 1; }

  layout to_layout() const {
    std::vector<kgraph> graphs;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      const auto r = static_cast<unsigned>(family_.members()[i].size());
      if (r == 0) {
        graphs.push_back(empty_member_graph(h_.order(), bits_[i][0] != 0));
        continue;
      }
      std::vector<edge> edges;
      for_each_subset(h_.order(), r, [&](std::span<const vertex> s) {
        if (bits_[i][colex_rank(s)]) edges.emplace_back(s.begin(), s.end());
        return true;
      });
      graphs.emplace_back(r, h_.order(), std::move(edges));
    }
    return layout(family_, std::move(graphs));
  }

  std::vector<std::vector<char>>& bits() { return bits_; }

 private:
  void search(const std::vector<unsigned>& order, const std::vector<std::optional<vertex>>& fixed,
              std::optional<std::size_t> skip, clique_counts& out) const {
    search_cliques(
        family_.ground(), h_.order(), family_.members(),
        [&](std::size_t m, std::span<const vertex> s) { return bits_[m][colex_rank(s)] != 0; }, order, fixed, skip,
        [&](std::span<const vertex> t) {
          ++out.cliques;
          if (h_.has_edge(t)) ++out.in_host;
          return true;
        });
  }

  const kgraph& h_;
  const antichain& family_;
  std::vector<std::vector<char>> bits_;
};

// Violation score scaled by den(p): larger is worse for H.
inline __int128 score(const clique_counts& c, const small_fraction& p, disc_mode mode) {
  __int128 dev = static_cast<__int128>(p.num) * c.cliques - static_cast<__int128>(p.den) * c.in_host;
  return mode == disc_mode::lower ? dev : (dev < 0 ? -dev : dev);
}

struct restart_result {
  __int128 best_score = 0;
  std::optional<layout> best_layout;
};

inline restart_result hill_climb(const kgraph& h, const antichain& family, const disc_params& params,
                                 const search_budget& budget, std::uint64_t seed, const layout* start) {
  rng gen(seed);
  auto p = to_small_fraction(params.p);
  layout_state state = start ? layout_state::from_layout(h, *start) : layout_state(h, family);
  if (!start) {
    static constexpr std::uint64_t densities[] = {1, 2, 3};
    state.randomize(gen, densities[gen.below(3)], 4);
  }
  clique_counts counts = state.count_all();
  __int128 current = score(counts, p, params.mode);
  restart_result out{current, state.to_layout()};

  std::vector<std::size_t> movable;
  for (std::size_t m = 0; m < family.size(); ++m)
    if (!family.members()[m].empty() && family.members()[m].size() <= h.order()) movable.push_back(m);
  if (movable.empty()) return out;

  std::uint64_t sideways = 0;
  for (std::uint64_t step = 0; step < budget.steps; ++step) {
    std::size_t m = movable[gen.below(movable.size())];
    auto e = gen.sample_subset(h.order(), static_cast<std::uint32_t>(family.members()[m].size()));
    auto through = state.count_through(m, e);
    clique_counts next = counts;
    if (state.test(m, e)) {
      next.cliques -= through.cliques;
      next.in_host -= through.in_host;
    } else {
      next.cliques += through.cliques;
      next.in_host += through.in_host;
    }
    __int128 candidate = score(next, p, params.mode);
    if (candidate > current) {
      sideways = 0;
    } else if (candidate == current && sideways < budget.plateau) {
      ++sideways;
    } else {
      continue;
    }
    state.toggle(m, e);
    counts = next;
    current = candidate;
    if (current > out.best_score) {
      out.best_score = current;
      out.best_layout = state.to_layout();
    }
  }
  return out;
}

}  // namespace detail

// Seeded hill-climbing over I-layouts. Restart r < seeds.size() starts from
// seeds[r]; the others start from random layouts. Never proves Disc holds.
inline disc_verdict search_violation(const kgraph& h, const antichain& family, const disc_params& params,
                                     const search_budget& budget, std::uint64_t seed,
                                     const std::vector<layout>& seeds = {}) {
  validate(params);
  if (family.ground() != h.uniformity()) throw error(error_kind::ground_mismatch, "antichain must live on [k]");
  for (const auto& s : seeds)
    if (!(s.family() == family) || s.order() != h.order())
      throw error(error_kind::invalid_parameters, "seed layout does not match the antichain or n");
  const std::uint64_t restarts = std::max<std::uint64_t>(budget.restarts, seeds.size());
  std::vector<detail::restart_result> results(restarts);
  auto run = [&](std::uint64_t r) {
    results[r] = detail::hill_climb(h, family, params, budget, derive_seed(seed, r), r < seeds.size() ? &seeds[r] : nullptr);
  };
  const unsigned threads = std::max(1u, budget.threads);
  if (threads == 1) {
    for (std::uint64_t r = 0; r < restarts; ++r) run(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t r = t; r < restarts; r += threads) run(r);
      });
    for (auto& th : pool) th.join();
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].best_score > results[best].best_score) best = r;

  disc_verdict out;
  out.layouts_examined = restarts * (budget.steps + 1);
  auto check = check_witness(h, *results[best].best_layout, params);
  out.margin = check.margin;
  if (!check.holds) {
    out.status = disc_status::violated;
    out.witness = std::move(results[best].best_layout);
  }
  return out;
}

// Enumerates every I-layout. Throws cap_exceeded when the space is larger than `cap`.
inline disc_verdict exhaustive_check(const kgraph& h, const antichain& family, const disc_params& params,
                                     std::uint64_t cap) {
  validate(params);
  if (family.ground() != h.uniformity()) throw error(error_kind::ground_mismatch, "antichain must live on [k]");
  std::uint64_t total_bits = 0;
  for (const auto& m : family.members()) {
    std::uint64_t c = binomial(h.order(), m.size());
    if (c == saturated || total_bits + c > 62) {
      total_bits = 63;
      break;
    }
    total_bits += c;
  }
  if (total_bits > 62 || (std::uint64_t{1} << total_bits) > cap)
    throw error(error_kind::cap_exceeded, "layout space needs 2^" + (total_bits > 62 ? std::string(">62") : std::to_string(total_bits)) +
                                              " layouts, cap is " + std::to_string(cap));
  detail::layout_state state(h, family);
  const std::uint64_t total = std::uint64_t{1} << total_bits;
  disc_verdict out;
  out.layouts_examined = total;
  std::optional<rational> worst;
  std::uint64_t worst_mask = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t bit = 0;
    for (auto& member_bits : state.bits())
      for (auto& b : member_bits) b = static_cast<char>((mask >> bit++) & 1);
    auto margin = margin_of(state.count_all(), h.order(), h.uniformity(), params);
    if (!worst || margin < *worst) {
      worst = margin;
      worst_mask = mask;
    }
  }
  out.margin = *worst;
  if (*worst < 0) {
    std::uint64_t bit = 0;
    for (auto& member_bits : state.bits())
      for (auto& b : member_bits) b = static_cast<char>((worst_mask >> bit++) & 1);
    out.status = disc_status::violated;
    out.witness = state.to_layout();
  } else {
    out.status = disc_status::satisfied_exhaustive;
  }
  return out;
}

// "verdict <status>", "margin a/b", then the witness layout if any.
inline std::string serialize(const disc_verdict& v) {
  std::ostringstream os;
  os << "verdict " << to_string(v.status) << '\n';
  os << "margin " << format_rational(v.margin) << '\n';
  if (v.witness) write_layout(os, *v.witness);
  return os.str();
}

inline disc_verdict parse_verdict(const std::string& text) {
  std::istringstream is(text);
  text_reader in(is);
  disc_verdict v;
  auto status = in.expect_line("verdict line");
  if (status == "verdict satisfied_exhaustive") v.status = disc_status::satisfied_exhaustive;
  else if (status == "verdict violated") v.status = disc_status::violated;
  else if (status == "verdict undetermined") v.status = disc_status::undetermined;
  else in.fail("expected 'verdict <status>'");
  auto margin = in.expect_line("margin line");
  if (margin.rfind("margin ", 0) != 0) in.fail("expected 'margin a/b'");
  try {
    v.margin = parse_rational(margin.substr(7));
  } catch (const error& e) {
    in.fail(e.what());
  }
  if (in.peek()) v.witness = read_layout(in);
  in.expect_end();
  return v;
}

}  // namespace quasipack
