#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quasipack/adapted.hpp"
#include "quasipack/counting.hpp"
#include "quasipack/rational.hpp"
#include "quasipack/rng.hpp"

namespace quasipack {

// One labeled copy of F: copy[w] is the host vertex of F-vertex w.
using copy_map = std::vector<vertex>;

struct packing {
  std::vector<copy_map> copies;

  std::size_t covered() const noexcept {
    std::size_t total = 0;
    for (const auto& c : copies) total += c.size();
    return total;
  }

  friend bool operator==(const packing&, const packing&) = default;
};

// Copies are edge-preserving injections with pairwise disjoint images.
inline bool is_valid_packing(const kgraph& h, const kgraph& f, const packing& p) {
  if (h.uniformity() != f.uniformity()) return false;
  std::vector<char> used(h.order(), 0);
  vertex buf[max_uniformity];
  for (const auto& copy : p.copies) {
    if (copy.size() != f.order()) return false;
    for (vertex v : copy) {
      if (v >= h.order() || used[v]) return false;
      used[v] = 1;
    }
    for (const auto& e : f.edges()) {
      for (std::size_t t = 0; t < e.size(); ++t) buf[t] = copy[e[t]];
      if (!h.has_edge(std::span<const vertex>(buf, e.size()))) return false;
    }
  }
  return true;
}

inline bool is_perfect_packing(const kgraph& h, const kgraph& f, const packing& p) {
  return is_valid_packing(h, f, p) && p.covered() == h.order();
}

// Maps a packing of H[W] (as returned with its relabeling) back to H.
inline packing lift(const packing& p, const std::vector<vertex>& to_parent) {
  packing out;
  for (const auto& copy : p.copies) {
    copy_map mapped;
    for (vertex v : copy) mapped.push_back(to_parent[v]);
    out.copies.push_back(std::move(mapped));
  }
  return out;
}

enum class packing_status { found, proven_none, budget_exceeded, divisibility };

inline const char* to_string(packing_status s) {
  switch (s) {
    case packing_status::found: return "found";
    case packing_status::proven_none: return "proven-none";
    case packing_status::budget_exceeded: return "budget-exceeded";
    case packing_status::divisibility: return "divisibility";
  }
  return "?";
}

struct packing_search {
  packing_status status = packing_status::proven_none;
  std::optional<packing> result;
  std::uint64_t nodes = 0;
};

namespace detail {

// Distinct copies of F (by vertex set) through v inside the free vertices,
// in lexicographic order of their vertex sets. Stops once more than `limit`
// distinct sets are known.
inline std::map<vertex_set, copy_map> copies_through(const kgraph& h, const kgraph& f, const neighborhood_index& index,
                                                     vertex v, const vertex_set& free, std::size_t limit) {
  std::map<vertex_set, copy_map> out;
  for (vertex w = 0; w < f.order() && out.size() <= limit; ++w) {
    embedding_constraints c;
    c.pins.emplace_back(w, v);
    for (vertex u = 0; u < f.order(); ++u)
      if (u != w) c.targets[u] = free;
    for_each_inj(
        f, h, c,
        [&](std::span<const vertex> image) {
          vertex_set key(image.begin(), image.end());
          std::sort(key.begin(), key.end());
          out.try_emplace(std::move(key), copy_map(image.begin(), image.end()));
          return out.size() <= limit;
        },
        &index);
  }
  return out;
}

// Exact cover over F-copies: branch on the free vertex lying in the fewest
// copies. Counts stop at `scan_cap` distinct sets; when every vertex reaches
// it, the lowest free vertex is branched on and its copies are streamed.
class exact_packer {
 public:
  static constexpr std::size_t scan_cap = 24;

  exact_packer(const kgraph& h, const kgraph& f, std::uint64_t budget) : h_(h), f_(f), index_(h), budget_(budget) {}

  packing_status run(packing& out) {
    std::vector<char> free(h_.order(), 1);
    auto status = recurse(free, out);
    return status;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  packing_status place(const vertex_set& set, const copy_map& copy, std::vector<char>& free, packing& out) {
    for (vertex u : set) free[u] = 0;
    out.copies.push_back(copy);
    auto status = recurse(free, out);
    if (status != packing_status::proven_none) return status;
    out.copies.pop_back();
    for (vertex u : set) free[u] = 1;
    return status;
  }

  packing_status recurse(std::vector<char>& free, packing& out) {
    vertex_set free_list;
    for (vertex v = 0; v < h_.order(); ++v)
      if (free[v]) free_list.push_back(v);
    if (free_list.empty()) return packing_status::found;
    if (++nodes_ > budget_) return packing_status::budget_exceeded;

    std::optional<std::map<vertex_set, copy_map>> best;
    for (vertex v : free_list) {
      std::size_t limit = best ? std::min(best->size(), scan_cap) : scan_cap;
      auto options = copies_through(h_, f_, index_, v, free_list, limit);
      if (!best || options.size() < best->size()) best = std::move(options);
      if (best->empty()) return packing_status::proven_none;
      if (best->size() == 1) break;
    }
    if (best->size() <= scan_cap) {
      for (const auto& [set, copy] : *best)
        if (auto status = place(set, copy, free, out); status != packing_status::proven_none) return status;
      return packing_status::proven_none;
    }

    const vertex v = free_list.front();
    std::set<vertex_set> tried;
    packing_status status = packing_status::proven_none;
    for (vertex w = 0; w < f_.order() && status == packing_status::proven_none; ++w) {
      embedding_constraints c;
      c.pins.emplace_back(w, v);
      for (vertex u = 0; u < f_.order(); ++u)
        if (u != w) c.targets[u] = free_list;
      for_each_inj(
          f_, h_, c,
          [&](std::span<const vertex> image) {
            vertex_set key(image.begin(), image.end());
            std::sort(key.begin(), key.end());
            if (!tried.insert(key).second) return true;
            status = place(key, copy_map(image.begin(), image.end()), free, out);
            return status == packing_status::proven_none;
          },
          &index_);
    }
    return status;
  }

  const kgraph& h_;
  const kgraph& f_;
  neighborhood_index index_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline packing_search exact_perfect_packing(const kgraph& h, const kgraph& f, std::uint64_t budget = 1'000'000) {
  if (h.uniformity() != f.uniformity()) throw error(error_kind::uniformity_mismatch, "F and H have different uniformity");
  if (f.order() == 0) throw error(error_kind::invalid_parameters, "F needs at least one vertex");
  packing_search out;
  if (h.order() % f.order() != 0) {
    out.status = packing_status::divisibility;
    return out;
  }
  detail::exact_packer packer(h, f, budget);
  packing p;
  out.status = packer.run(p);
  out.nodes = packer.nodes();
  if (out.status == packing_status::found) {
    std::sort(p.copies.begin(), p.copies.end());
    out.result = std::move(p);
  }
  return out;
}

struct greedy_result {
  packing copies;
  vertex_set leftover;                   // after the divisibility adjustment
  vertex_set leftover_before_adjustment; // contains no copy of F
  std::uint64_t moved_copies = 0;
  bool adjusted = false;                 // b divides |leftover|
};

// Greedy F-packing: seeded attempts through random free vertices, then a
// deterministic sweep; stops when the free vertices hold no copy of F. When
// v(F) | v(H), the last y copies are released so that b | |leftover|, with
// y = -|C|/f mod b/f.
inline greedy_result greedy_packing(const kgraph& h, const kgraph& f, std::uint64_t b, std::uint64_t seed,
                                    unsigned random_attempts = 4) {
  if (h.uniformity() != f.uniformity()) throw error(error_kind::uniformity_mismatch, "F and H have different uniformity");
  const std::uint64_t fv = f.order();
  if (fv == 0 || b == 0 || b % fv != 0) throw error(error_kind::invalid_parameters, "v(F) must divide b");
  rng gen(seed);
  neighborhood_index index(h);
  std::vector<char> used(h.order(), 0);
  greedy_result out;
  auto free_set = [&] {
    vertex_set s;
    for (vertex v = 0; v < h.order(); ++v)
      if (!used[v]) s.push_back(v);
    return s;
  };
  while (true) {
    vertex_set free = free_set();
    if (free.size() < fv) break;
    std::optional<std::vector<vertex>> found;
    for (unsigned attempt = 0; attempt < random_attempts && !found; ++attempt) {
      embedding_constraints c;
      vertex w = static_cast<vertex>(gen.below(fv));
      c.pins.emplace_back(w, free[gen.below(free.size())]);
      for (vertex u = 0; u < fv; ++u)
        if (u != w) c.targets[u] = free;
      found = find_inj(f, h, c, &index);
    }
    if (!found) {
      embedding_constraints c;
      for (vertex u = 0; u < fv; ++u) c.targets[u] = free;
      found = find_inj(f, h, c, &index);
    }
    if (!found) break;
    for (vertex v : *found) used[v] = 1;
    out.copies.copies.push_back(std::move(*found));
  }
  out.leftover_before_adjustment = free_set();
  out.leftover = out.leftover_before_adjustment;
  if (h.order() % fv == 0) {
    const std::uint64_t groups = b / fv;
    std::uint64_t c_over_f = out.leftover.size() / fv;
    std::uint64_t y = (groups - c_over_f % groups) % groups;
    if (y <= out.copies.copies.size()) {
      for (std::uint64_t i = 0; i < y; ++i) {
        for (vertex v : out.copies.copies.back()) out.leftover.push_back(v);
        out.copies.copies.pop_back();
      }
      std::sort(out.leftover.begin(), out.leftover.end());
      out.moved_copies = y;
      out.adjusted = true;
    }
  }
  return out;
}

enum class absorber_status { absorbs, does_not_absorb, undetermined };

inline const char* to_string(absorber_status s) {
  switch (s) {
    case absorber_status::absorbs: return "absorbs";
    case absorber_status::does_not_absorb: return "does-not-absorb";
    case absorber_status::undetermined: return "undetermined";
  }
  return "?";
}

// A F-absorbs B iff H[A] and H[A + B] both have perfect F-packings.
inline absorber_status is_absorber(const kgraph& h, const kgraph& f, vertex_set a, vertex_set b,
                                   std::uint64_t budget = 1'000'000) {
  a = normalize_set(h, std::move(a));
  b = normalize_set(h, std::move(b));
  vertex_set both;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  if (both.size() != a.size() + b.size()) throw error(error_kind::precondition, "A and B must be disjoint");
  if (f.order() == 0 || a.size() % f.order() != 0 || both.size() % f.order() != 0)
    throw error(error_kind::precondition, "v(F) must divide |A| and |A| + |B|");
  auto inner = exact_perfect_packing(induced(h, a).graph, f, budget);
  if (inner.status == packing_status::budget_exceeded) return absorber_status::undetermined;
  if (inner.status != packing_status::found) return absorber_status::does_not_absorb;
  auto outer = exact_perfect_packing(induced(h, both).graph, f, budget);
  if (outer.status == packing_status::budget_exceeded) return absorber_status::undetermined;
  return outer.status == packing_status::found ? absorber_status::absorbs : absorber_status::does_not_absorb;
}

struct absorber_search_options {
  std::uint64_t packing_budget = 1'000'000;
  std::uint64_t embedding_budget = 2'000'000;  // nodes per grid embedding attempt
  std::size_t max_orderings = 24;              // orderings of B tried
  vertex special = 0;                          // w_0 of the grid graph
};

// Embeds the grid graph of F with its zeroth row on B (under several
// orderings of B); rows 1..f-1 of each embedding form a candidate absorber.
// Only sets confirmed by is_absorber are returned, each once.
inline std::vector<vertex_set> find_absorbers(const kgraph& h, const kgraph& f, const vertex_set& b, std::uint64_t seed,
                                              const absorber_search_options& options = {},
                                              const neighborhood_index* index = nullptr) {
  if (b.size() != f.order()) throw error(error_kind::precondition, "|B| must equal v(F)");
  vertex_set sorted_b = normalize_set(h, b);
  if (sorted_b.size() != b.size()) throw error(error_kind::precondition, "B has repeated vertices");
  auto grid = grid_graph(f, options.special);
  std::optional<neighborhood_index> owned;
  if (!index) index = &owned.emplace(h);

  std::vector<std::vector<vertex>> orderings;
  std::uint64_t total = 1;
  for (std::uint64_t i = 2; i <= b.size() && total <= options.max_orderings; ++i) total *= i;
  if (total <= options.max_orderings) {
    std::vector<vertex> perm = sorted_b;
    do orderings.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    rng gen(seed);
    for (std::size_t i = 0; i < options.max_orderings; ++i) {
      std::vector<vertex> perm = sorted_b;
      gen.shuffle(perm);
      orderings.push_back(std::move(perm));
    }
  }

  std::vector<vertex_set> out;
  std::set<vertex_set> seen;
  for (const auto& ordering : orderings) {
    embedding_constraints c;
    for (std::size_t j = 0; j < ordering.size(); ++j) c.pins.emplace_back(grid.zeroth_row[j], ordering[j]);
    auto hit = find_inj_limited(grid.graph, h, c, options.embedding_budget, index);
    if (!hit.image) continue;
    vertex_set a = grid.absorber_part(*hit.image);
    if (!seen.insert(a).second) continue;
    if (is_absorber(h, f, a, sorted_b, options.packing_budget) == absorber_status::absorbs) out.push_back(std::move(a));
  }
  return out;
}

// a = f^2 - f and b = f by default; omega = 1/(4 f^2).
struct absorber_params {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  rational epsilon = rational(1, 100);
  rational omega = 0;

  static absorber_params defaults_for(const kgraph& f) {
    const std::uint64_t fv = f.order();
    return {fv * fv - fv, fv, rational(1, 100), rational(1, 4 * fv * fv)};
  }
};

inline void validate(const absorber_params& params, const kgraph& f) {
  const std::uint64_t fv = f.order();
  if (fv == 0 || params.a % fv != 0 || params.b % fv != 0 || params.b == 0)
    throw error(error_kind::invalid_parameters, "v(F) must divide a and b");
  if (params.epsilon <= 0 || params.epsilon >= 1 || params.omega <= 0 || params.omega >= 1)
    throw error(error_kind::invalid_parameters, "epsilon and omega must lie in (0, 1)");
}

struct richness_report {
  rational fraction;      // absorbing pairs / tested pairs
  rational min_per_set;   // smallest per-B absorbing fraction
  std::uint64_t tested = 0;
  std::uint64_t undetermined = 0;  // counted as not absorbing
};

// Samples `trials` b-sets B and, for each, `samples_per_set` a-sets A
// disjoint from B, and reports how often A absorbs B. Sampling depends only
// on (n, a, b, seed), so runs on H and a supergraph of H see the same pairs.
inline richness_report richness_estimate(const kgraph& h, const kgraph& f, const absorber_params& params,
                                         std::uint64_t trials, std::uint64_t seed, std::uint64_t samples_per_set = 8,
                                         std::uint64_t budget = 200'000) {
  validate(params, f);
  if (trials < 1 || samples_per_set < 1) throw error(error_kind::invalid_parameters, "trials must be at least 1");
  richness_report out;
  if (params.a + params.b > h.order()) return out;
  rng gen(seed);
  std::uint64_t hits = 0;
  std::optional<rational> worst;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto b = gen.sample_subset(h.order(), static_cast<std::uint32_t>(params.b));
    vertex_set rest = complement(h.order(), b);
    std::uint64_t local = 0;
    for (std::uint64_t s = 0; s < samples_per_set; ++s) {
      auto pick = gen.sample_subset(static_cast<std::uint32_t>(rest.size()), static_cast<std::uint32_t>(params.a));
      vertex_set a;
      for (auto i : pick) a.push_back(rest[i]);
      auto status = is_absorber(h, f, a, b, budget);
      ++out.tested;
      if (status == absorber_status::absorbs) ++local;
      if (status == absorber_status::undetermined) ++out.undetermined;
    }
    hits += local;
    rational frac(local, samples_per_set);
    if (!worst || frac < *worst) worst = frac;
  }
  out.fraction = rational(hits, out.tested);
  out.min_per_set = *worst;
  return out;
}

struct family_options {
  std::uint64_t family_size = 0;          // 0: ceil(omega n / b), at least 1
  std::uint64_t candidate_attempts = 0;   // 0: 20 per wanted member
  std::uint64_t validation_sets = 6;      // b-sets each candidate is tested on
  rational keep_threshold = rational(1, 2);
  std::uint64_t max_validated_size = 0;   // 0: 3 b
  absorber_search_options search;
};

struct absorbing_family {
  vertex_set absorber;                 // union of the members, a | |absorber|
  std::vector<vertex_set> members;
  rational omega_achieved;             // largest validated |C| over n
  std::uint64_t validated_size = 0;
};

// Picks pairwise disjoint grid absorbers. A candidate is kept only when it
// absorbs at least keep_threshold of freshly sampled b-sets. The union is
// then validated on sampled sets C of growing size (multiples of b); the
// largest size that always succeeded gives omega_achieved.
inline absorbing_family build_absorbing_family(const kgraph& h, const kgraph& f, const absorber_params& params,
                                               std::uint64_t seed, const family_options& options = {}) {
  validate(params, f);
  const vertex n = h.order();
  std::uint64_t target = options.family_size;
  if (target == 0) {
    rational want = params.omega * n / params.b;
    integer ceil = boost::multiprecision::numerator(want) / boost::multiprecision::denominator(want);
    if (rational(ceil) < want) ++ceil;
    target = std::max<std::uint64_t>(1, ceil.convert_to<std::uint64_t>());
  }
  const std::uint64_t attempts = options.candidate_attempts ? options.candidate_attempts : 20 * target;
  rng gen(seed);
  absorbing_family out;
  std::vector<char> taken(n, 0);

  for (std::uint64_t attempt = 0; attempt < attempts && out.members.size() < target; ++attempt) {
    vertex_set open;
    for (vertex v = 0; v < n; ++v)
      if (!taken[v]) open.push_back(v);
    if (open.size() < params.a + 2 * params.b) break;
    auto sub = induced(h, open);
    auto pick = gen.sample_subset(static_cast<std::uint32_t>(open.size()), static_cast<std::uint32_t>(params.b));
    vertex_set local_b(pick.begin(), pick.end());
    auto found = find_absorbers(sub.graph, f, local_b, gen.next(), options.search);
    if (found.empty()) continue;
    const vertex_set& local_a = found[gen.below(found.size())];
    if (local_a.size() != params.a) continue;

    vertex_set outside = complement(static_cast<vertex>(open.size()), local_a);
    std::uint64_t absorbed = 0;
    for (std::uint64_t s = 0; s < options.validation_sets; ++s) {
      auto idx = gen.sample_subset(static_cast<std::uint32_t>(outside.size()), static_cast<std::uint32_t>(params.b));
      vertex_set trial;
      for (auto i : idx) trial.push_back(outside[i]);
      if (is_absorber(sub.graph, f, local_a, trial, options.search.packing_budget) == absorber_status::absorbs)
        ++absorbed;
    }
    if (options.validation_sets && rational(absorbed, options.validation_sets) < options.keep_threshold) continue;
    vertex_set member;
    for (vertex v : local_a) member.push_back(sub.to_parent[v]);
    for (vertex v : member) taken[v] = 1;
    out.members.push_back(std::move(member));
  }
  if (out.members.size() < target)
    throw error(error_kind::insufficient_absorbers, "found " + std::to_string(out.members.size()) + " of " +
                                                        std::to_string(target) + " absorbers");
  for (const auto& m : out.members) out.absorber.insert(out.absorber.end(), m.begin(), m.end());
  std::sort(out.absorber.begin(), out.absorber.end());

  vertex_set rest = complement(n, out.absorber);
  const std::uint64_t max_size = options.max_validated_size ? options.max_validated_size : 3 * params.b;
  for (std::uint64_t size = params.b; size <= max_size && size <= rest.size(); size += params.b) {
    bool all = true;
    for (std::uint64_t s = 0; s < std::max<std::uint64_t>(1, options.validation_sets) && all; ++s) {
      auto idx = gen.sample_subset(static_cast<std::uint32_t>(rest.size()), static_cast<std::uint32_t>(size));
      vertex_set c;
      for (auto i : idx) c.push_back(rest[i]);
      all = is_absorber(h, f, out.absorber, c, options.search.packing_budget) == absorber_status::absorbs;
    }
    if (!all) break;
    out.validated_size = size;
  }
  out.omega_achieved = rational(out.validated_size, std::max<vertex>(n, 1));
  return out;
}

enum class pack_stage { none, divisibility, family, greedy, absorb, exact };

inline const char* to_string(pack_stage s) {
  switch (s) {
    case pack_stage::none: return "none";
    case pack_stage::divisibility: return "divisibility";
    case pack_stage::family: return "family";
    case pack_stage::greedy: return "greedy";
    case pack_stage::absorb: return "absorb";
    case pack_stage::exact: return "exact";
  }
  return "?";
}

struct absorb_options {
  std::uint64_t exact_threshold = 16;   // hosts this small go straight to the exact solver
  std::uint64_t packing_budget = 2'000'000;
  family_options family;
};

struct pack_outcome {
  std::optional<packing> result;
  pack_stage failed_stage = pack_stage::none;
  bool used_exact_fallback = false;
  std::uint64_t absorber_size = 0;
  std::uint64_t leftover_size = 0;
  std::string diagnostics;
};

// Absorbing-method pipeline: absorbing family A, greedy packing of H - A with
// leftover C (|C| <= omega n, b | |C|), exact packing of H[A + C].
inline pack_outcome absorb_pack(const kgraph& h, const kgraph& f, const absorber_params& params, std::uint64_t seed,
                                const absorb_options& options = {}) {
  validate(params, f);
  pack_outcome out;
  const vertex n = h.order();
  if (n % f.order() != 0) {
    out.failed_stage = pack_stage::divisibility;
    out.diagnostics = "v(F) does not divide v(H)";
    return out;
  }
  if (n <= options.exact_threshold) {
    out.used_exact_fallback = true;
    auto exact = exact_perfect_packing(h, f, options.packing_budget);
    if (exact.status == packing_status::found) out.result = std::move(exact.result);
    else {
      out.failed_stage = pack_stage::exact;
      out.diagnostics = std::string("exact solver: ") + to_string(exact.status);
    }
    return out;
  }

  absorbing_family family;
  try {
    family = build_absorbing_family(h, f, params, derive_seed(seed, 1), options.family);
  } catch (const error& e) {
    if (e.kind() != error_kind::insufficient_absorbers) throw;
    out.failed_stage = pack_stage::family;
    out.diagnostics = e.what();
    return out;
  }
  out.absorber_size = family.absorber.size();

  auto rest = induced(h, complement(n, family.absorber));
  auto greedy = greedy_packing(rest.graph, f, params.b, derive_seed(seed, 2));
  vertex_set leftover;
  for (vertex v : greedy.leftover) leftover.push_back(rest.to_parent[v]);
  out.leftover_size = leftover.size();
  if (!greedy.adjusted || leftover.size() % params.b != 0 || rational(leftover.size()) > params.omega * n) {
    out.failed_stage = pack_stage::greedy;
    out.diagnostics = "leftover of " + std::to_string(leftover.size()) + " vertices exceeds omega n or is not a multiple of b";
    return out;
  }

  vertex_set absorb_set;
  std::set_union(family.absorber.begin(), family.absorber.end(), leftover.begin(), leftover.end(),
                 std::back_inserter(absorb_set));
  auto sub = induced(h, absorb_set);
  auto closing = exact_perfect_packing(sub.graph, f, options.packing_budget);
  if (closing.status != packing_status::found) {
    out.failed_stage = pack_stage::absorb;
    out.diagnostics = std::string("absorbing A + C: ") + to_string(closing.status);
    return out;
  }
  packing total = lift(greedy.copies, rest.to_parent);
  for (auto& copy : lift(*closing.result, sub.to_parent).copies) total.copies.push_back(std::move(copy));
  if (!is_perfect_packing(h, f, total)) {
    out.failed_stage = pack_stage::absorb;
    out.diagnostics = "assembled packing failed verification";
    return out;
  }
  std::sort(total.copies.begin(), total.copies.end());
  out.result = std::move(total);
  return out;
}

// ---------------------------------------------------------------------------
// Packing text: one line per copy, "w0->h0 w1->h1 ...".

inline std::string serialize(const packing& p) {
  std::ostringstream os;
  for (const auto& copy : p.copies) {
    for (std::size_t w = 0; w < copy.size(); ++w) os << (w ? " " : "") << w << "->" << copy[w];
    os << '\n';
  }
  return os.str();
}

inline packing parse_packing(const std::string& text) {
  std::istringstream is(text);
  text_reader in(is);
  packing p;
  while (auto line = in.next()) {
    std::istringstream ls(*line);
    std::map<vertex, vertex> assigned;
    std::string token;
    while (ls >> token) {
      auto arrow = token.find("->");
      if (arrow == std::string::npos) in.fail("expected w->h");
      try {
        auto w = static_cast<vertex>(std::stoul(token.substr(0, arrow)));
        if (!assigned.emplace(w, static_cast<vertex>(std::stoul(token.substr(arrow + 2)))).second)
          in.fail("F-vertex listed twice");
      } catch (const std::logic_error&) {
        in.fail("bad token '" + token + "'");
      }
    }
    copy_map copy;
    for (auto [w, v] : assigned) {
      if (w != copy.size()) in.fail("F-vertices must be 0..f-1");
      copy.push_back(v);
    }
    p.copies.push_back(std::move(copy));
  }
  return p;
}

}  // namespace quasipack
