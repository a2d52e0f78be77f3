#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quasipack/hypercore.hpp"

namespace quasipack {

// A family of subsets of [g] = {1..g} with no strict containment between
// distinct members. Members are stored sorted, 1-based, and the family is
// sorted lexicographically.
class antichain {
 public:
  antichain() = default;

  antichain(unsigned ground, std::vector<std::vector<unsigned>> members) : ground_(ground), members_(std::move(members)) {
    if (members_.empty()) throw error(error_kind::invalid_parameters, "antichain needs at least one member");
    for (auto& m : members_) {
      std::sort(m.begin(), m.end());
      if (std::adjacent_find(m.begin(), m.end()) != m.end())
        throw error(error_kind::invalid_parameters, "repeated position in antichain member");
      for (unsigned x : m)
        if (x < 1 || x > ground_)
          throw error(error_kind::invalid_parameters,
                      "position " + std::to_string(x) + " outside [1, " + std::to_string(ground_) + "]");
    }
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw error(error_kind::invalid_parameters, "repeated antichain member");
    for (const auto& a : members_)
      for (const auto& b : members_)
        if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end()))
          throw error(error_kind::invalid_parameters, "antichain member is contained in another member");
  }

  unsigned ground() const noexcept { return ground_; }
  const std::vector<std::vector<unsigned>>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  // True iff `labels` (any order) lies inside some member.
  bool covers(std::span<const unsigned> labels) const noexcept {
    for (const auto& m : members_) {
      bool inside = std::all_of(labels.begin(), labels.end(),
                                [&](unsigned x) { return std::binary_search(m.begin(), m.end(), x); });
      if (inside) return true;
    }
    return false;
  }

  friend bool operator==(const antichain&, const antichain&) = default;

 private:
  unsigned ground_ = 0;
  std::vector<std::vector<unsigned>> members_;
};

// All r-subsets of [g].
inline antichain level_antichain(unsigned ground, unsigned r) {
  std::vector<std::vector<unsigned>> members;
  for_each_subset(ground, r, [&](std::span<const vertex> s) {
    std::vector<unsigned> m;
    for (vertex x : s) m.push_back(x + 1);
    members.push_back(std::move(m));
    return true;
  });
  return antichain(ground, std::move(members));
}

inline bool is_full(const antichain& a) {
  if (a.size() < 2) return false;
  for (unsigned x = 1; x <= a.ground(); ++x) {
    bool hit = std::any_of(a.members().begin(), a.members().end(),
                           [&](const auto& m) { return std::binary_search(m.begin(), m.end(), x); });
    if (!hit) return false;
  }
  return true;
}

// "1,2|3" -> {{1,2},{3}}; "e" is the empty member.
inline antichain parse_antichain(std::string_view text, unsigned ground) {
  std::vector<std::vector<unsigned>> members;
  std::size_t start = 0;
  while (true) {
    auto bar = text.find('|', start);
    auto part = text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    std::vector<unsigned> member;
    if (part != "e") {
      std::size_t pos = 0;
      while (pos <= part.size()) {
        auto comma = part.find(',', pos);
        auto item = part.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string_view::npos || item.size() > 6)
          throw error(error_kind::invalid_parameters, "bad antichain syntax '" + std::string(text) + "'");
        member.push_back(static_cast<unsigned>(std::stoul(std::string(item))));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    members.push_back(std::move(member));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return antichain(ground, std::move(members));
}

inline std::string format_antichain(const antichain& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += '|';
    const auto& m = a.members()[i];
    if (m.empty()) out += 'e';
    for (std::size_t j = 0; j < m.size(); ++j) out += (j ? "," : "") + std::to_string(m[j]);
  }
  return out;
}

// The 0-graph standing in for the empty member: with or without the empty edge.
inline kgraph empty_member_graph(vertex n, bool present) {
  return present ? kgraph(0, n, {edge{}}) : kgraph(0, n);
}

// An I-layout: graphs[i] is the |I_i|-uniform graph assigned to members()[i].
class layout {
 public:
  layout(antichain family, std::vector<kgraph> graphs) : family_(std::move(family)), graphs_(std::move(graphs)) {
    if (graphs_.size() != family_.size())
      throw error(error_kind::invalid_parameters, "layout needs one graph per antichain member");
    n_ = graphs_.front().order();
    for (std::size_t i = 0; i < graphs_.size(); ++i) {
      if (graphs_[i].uniformity() != family_.members()[i].size())
        throw error(error_kind::invalid_parameters, "layout graph uniformity differs from member size");
      if (graphs_[i].order() != n_) throw error(error_kind::invalid_parameters, "layout graphs differ in n");
    }
  }

  const antichain& family() const noexcept { return family_; }
  const std::vector<kgraph>& graphs() const noexcept { return graphs_; }
  unsigned k() const noexcept { return family_.ground(); }
  vertex order() const noexcept { return n_; }

  friend bool operator==(const layout&, const layout&) = default;

 private:
  antichain family_;
  std::vector<kgraph> graphs_;
  vertex n_ = 0;
};

struct clique_counts {
  std::uint64_t cliques = 0;   // |K_k(L)|
  std::uint64_t in_host = 0;   // |H cap K_k(L)|
};

namespace detail {

// Backtracking over coordinates of a k-tuple. `contains(member, sorted)` is
// the membership test for member graphs (only members with >= 1 position
// are ever asked). Coordinates in `fixed` are pinned. `skip` names a member
// whose constraint is not checked. `leaf(tuple)` returns false to stop.
template <typename Contains, typename Leaf>
void search_cliques(unsigned k, vertex n, const std::vector<std::vector<unsigned>>& members, Contains&& contains,
                    const std::vector<unsigned>& order, const std::vector<std::optional<vertex>>& fixed,
                    std::optional<std::size_t> skip, Leaf&& leaf) {
  // completes[d]: members whose last coordinate (in `order`) is order[d].
  std::vector<unsigned> step_of(k);
  for (unsigned d = 0; d < k; ++d) step_of[order[d]] = d;
  std::vector<std::vector<std::size_t>> completes(k);
  for (std::size_t m = 0; m < members.size(); ++m) {
    if (members[m].empty() || (skip && *skip == m)) continue;
    unsigned last = 0;
    for (unsigned pos : members[m]) last = std::max(last, step_of[pos - 1]);
    completes[last].push_back(m);
  }

  std::vector<vertex> tuple(k, 0);
  std::vector<char> used(n, 0);
  vertex buf[max_uniformity];
  bool stop = false;

  auto satisfied = [&](unsigned d) {
    for (std::size_t m : completes[d]) {
      const auto& pos = members[m];
      for (std::size_t j = 0; j < pos.size(); ++j) buf[j] = tuple[pos[j] - 1];
      std::sort(buf, buf + pos.size());
      if (!contains(m, std::span<const vertex>(buf, pos.size()))) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, unsigned d) -> void {
    if (d == k) {
      if (!leaf(std::span<const vertex>(tuple))) stop = true;
      return;
    }
    unsigned c = order[d];
    auto try_vertex = [&](vertex v) {
      if (used[v]) return;
      tuple[c] = v;
      if (!satisfied(d)) return;
      used[v] = 1;
      self(self, d + 1);
      used[v] = 0;
    };
    if (fixed[c]) {
      try_vertex(*fixed[c]);
      return;
    }
    for (vertex v = 0; v < n && !stop; ++v) try_vertex(v);
  };
  if (k == 0) {
    leaf(std::span<const vertex>(tuple));
    return;
  }
  recurse(recurse, 0);
}

// Pinned coordinates first, then members by ascending graph size, then the rest.
inline std::vector<unsigned> greedy_order(unsigned k, const std::vector<std::vector<unsigned>>& members,
                                          const std::vector<std::size_t>& member_sizes,
                                          const std::vector<std::optional<vertex>>& fixed) {
  std::vector<unsigned> order;
  std::vector<char> placed(k, 0);
  auto place = [&](unsigned c) {
    if (!placed[c]) {
      placed[c] = 1;
      order.push_back(c);
    }
  };
  for (unsigned c = 0; c < k; ++c)
    if (fixed[c]) place(c);
  std::vector<std::size_t> by_size(members.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return member_sizes[a] < member_sizes[b]; });
  for (std::size_t m : by_size)
    for (unsigned pos : members[m]) place(pos - 1);
  for (unsigned c = 0; c < k; ++c) place(c);
  return order;
}

inline bool empty_member_blocks(const layout& l) {
  for (std::size_t i = 0; i < l.graphs().size(); ++i)
    if (l.family().members()[i].empty() && l.graphs()[i].empty()) return true;
  return false;
}

}  // namespace detail

// |K_k(L)| and, when `host` is given, |H cap K_k(L)|, in one pass.
inline clique_counts count_layout(const layout& l, const kgraph* host = nullptr) {
  if (host && (host->order() != l.order() || host->uniformity() != l.k()))
    throw error(error_kind::invalid_parameters, "layout and host disagree on n or k");
  clique_counts out;
  if (detail::empty_member_blocks(l)) return out;
  const auto& members = l.family().members();
  std::vector<std::size_t> sizes;
  for (const auto& g : l.graphs()) sizes.push_back(g.size());
  std::vector<std::optional<vertex>> fixed(l.k());
  auto order = detail::greedy_order(l.k(), members, sizes, fixed);
  detail::search_cliques(
      l.k(), l.order(), members,
      [&](std::size_t m, std::span<const vertex> s) { return l.graphs()[m].has_sorted_edge(s); }, order, fixed,
      std::nullopt, [&](std::span<const vertex> t) {
        ++out.cliques;
        if (host && host->has_edge(t)) ++out.in_host;
        return true;
      });
  return out;
}

inline std::uint64_t count_cliques(const layout& l) { return count_layout(l).cliques; }

inline std::uint64_t intersect_count(const kgraph& h, const layout& l) { return count_layout(l, &h).in_host; }

// Streams K_k(L) in lexicographic tuple order. fn returns false to stop.
template <typename Fn>
void enumerate_cliques(const layout& l, Fn&& fn) {
  if (detail::empty_member_blocks(l)) return;
  std::vector<unsigned> order(l.k());
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::optional<vertex>> fixed(l.k());
  detail::search_cliques(
      l.k(), l.order(), l.family().members(),
      [&](std::size_t m, std::span<const vertex> s) { return l.graphs()[m].has_sorted_edge(s); }, order, fixed,
      std::nullopt, std::forward<Fn>(fn));
}

// ---------------------------------------------------------------------------
// Layout text format:
//   layout k n
//   I: 1,2          followed by an embedded kgraph (format v1)
//   I: empty present|absent

inline void write_layout(std::ostream& os, const layout& l) {
  os << "layout " << l.k() << ' ' << l.order() << '\n';
  for (std::size_t i = 0; i < l.family().size(); ++i) {
    const auto& m = l.family().members()[i];
    if (m.empty()) {
      os << "I: empty " << (l.graphs()[i].empty() ? "absent" : "present") << '\n';
      continue;
    }
    os << "I: ";
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << m[j];
    os << '\n';
    write_kgraph(os, l.graphs()[i]);
  }
}

inline layout read_layout(text_reader& in) {
  auto header = in.expect_line("layout header");
  std::istringstream hs(header);
  std::string word;
  hs >> word;
  if (word != "layout") in.fail("expected 'layout k n'");
  auto fields = in.integers(header.substr(6), 2);
  auto k = static_cast<unsigned>(fields[0]);
  auto n = static_cast<vertex>(fields[1]);
  std::vector<std::pair<std::vector<unsigned>, kgraph>> blocks;
  while (auto line = in.peek()) {
    if (line->rfind("I:", 0) != 0) break;
    in.next();
    std::string body = line->substr(2);
    std::istringstream bs(body);
    std::string positions, flag;
    bs >> positions >> flag;
    if (positions == "empty") {
      if (flag != "present" && flag != "absent") in.fail("empty member needs 'present' or 'absent'");
      blocks.emplace_back(std::vector<unsigned>{}, empty_member_graph(n, flag == "present"));
      continue;
    }
    if (!flag.empty()) in.fail("unexpected text after member positions");
    std::vector<unsigned> member;
    try {
      member = parse_antichain(positions, k).members().front();
    } catch (const error& e) {
      in.fail(e.what());
    }
    kgraph g = read_kgraph(in);
    if (g.uniformity() != member.size() || g.order() != n) in.fail("member graph has wrong uniformity or n");
    blocks.emplace_back(std::move(member), std::move(g));
  }
  if (blocks.empty()) in.fail("layout without members");
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<unsigned>> members;
  std::vector<kgraph> graphs;
  for (auto& [m, g] : blocks) {
    members.push_back(m);
    graphs.push_back(std::move(g));
  }
  try {
    return layout(antichain(k, std::move(members)), std::move(graphs));
  } catch (const error& e) {
    in.fail(e.what());
  }
}

inline std::string serialize(const layout& l) {
  std::ostringstream os;
  write_layout(os, l);
  return os.str();
}

inline layout parse_layout(const std::string& text) {
  std::istringstream is(text);
  text_reader reader(is);
  layout l = read_layout(reader);
  reader.expect_end();
  return l;
}

}  // namespace quasipack
