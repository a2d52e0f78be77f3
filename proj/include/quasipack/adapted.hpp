#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quasipack/layouts.hpp"

namespace quasipack {

// An edge ordering E_1..E_m of F with a labeling of each edge.
// labels[i][t] is the label in [k] of vertex F.edges()[order[i]][t].
// When an edge contains an anchor vertex (the special vertex x, or a pinned
// s_l) that vertex carries label k and the others use [k-1].
struct labeled_ordering {
  std::vector<std::size_t> order;
  std::vector<std::vector<unsigned>> labels;

  friend bool operator==(const labeled_ordering&, const labeled_ordering&) = default;
};

enum class adapted_mode { adapted, ij_adapted, adapted_at };

inline const char* to_string(adapted_mode mode) {
  switch (mode) {
    case adapted_mode::adapted: return "adapted";
    case adapted_mode::ij_adapted: return "ij_adapted";
    case adapted_mode::adapted_at: return "adapted_at";
  }
  return "?";
}

// adapted:    primary carries phi.
// ij_adapted: primary carries phi; `anchored` carries psi around `special`.
//             The two orderings are independent.
// adapted_at: primary carries phi/psi around the `pinned` vertices.
struct adaptedness_certificate {
  adapted_mode mode = adapted_mode::adapted;
  labeled_ordering primary;
  std::optional<vertex> special;
  std::optional<labeled_ordering> anchored;
  vertex_set pinned;

  friend bool operator==(const adaptedness_certificate&, const adaptedness_certificate&) = default;
};

struct adapted_query {
  adapted_mode mode = adapted_mode::adapted;
  std::optional<antichain> j;
  vertex_set pinned;

  static adapted_query plain() { return {}; }
  static adapted_query ij(antichain j) { return {adapted_mode::ij_adapted, std::move(j), {}}; }
  static adapted_query at(antichain j, vertex_set pinned) {
    std::sort(pinned.begin(), pinned.end());
    return {adapted_mode::adapted_at, std::move(j), std::move(pinned)};
  }
};

enum class search_status { found, proven_none, budget_exceeded };

inline const char* to_string(search_status s) {
  switch (s) {
    case search_status::found: return "found";
    case search_status::proven_none: return "proven-none";
    case search_status::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

struct certificate_search {
  search_status status = search_status::proven_none;
  std::optional<adaptedness_certificate> certificate;
  std::uint64_t nodes = 0;
};

namespace detail {

inline void check_grounds(const kgraph& f, const antichain& i, const antichain* j) {
  if (i.ground() != f.uniformity())
    throw error(error_kind::ground_mismatch, "I must live on [k] with k = " + std::to_string(f.uniformity()));
  if (j && j->ground() + 1 != f.uniformity())
    throw error(error_kind::ground_mismatch, "J must live on [k-1]");
}

inline std::vector<vertex> intersection(const edge& a, const edge& b) {
  std::vector<vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::optional<vertex> anchor_in(const edge& e, const vertex_set& anchors, bool& too_many) {
  std::optional<vertex> found;
  too_many = false;
  for (vertex v : e)
    if (std::binary_search(anchors.begin(), anchors.end(), v)) {
      if (found) too_many = true;
      found = v;
    }
  return found;
}

// Checks one labeled ordering against I (edges without an anchor) and J
// (edges through an anchor). Structural defects throw; a labeling that
// merely fails the containment conditions returns false.
inline bool check_ordering(const kgraph& f, const labeled_ordering& ord, const antichain& i, const antichain* j,
                           const vertex_set& anchors) {
  const unsigned k = f.uniformity();
  const auto& edges = f.edges();
  if (ord.order.size() != edges.size() || ord.labels.size() != edges.size())
    throw error(error_kind::malformed_certificate, "ordering does not list every edge once");
  std::vector<char> seen(edges.size(), 0);
  for (std::size_t idx : ord.order) {
    if (idx >= edges.size() || seen[idx]) throw error(error_kind::malformed_certificate, "ordering is not a permutation");
    seen[idx] = 1;
  }
  for (std::size_t pos = 0; pos < edges.size(); ++pos) {
    const auto& e = edges[ord.order[pos]];
    const auto& lab = ord.labels[pos];
    if (lab.size() != k) throw error(error_kind::malformed_certificate, "label count differs from k");
    std::vector<unsigned> sorted = lab;
    std::sort(sorted.begin(), sorted.end());
    for (unsigned t = 0; t < k; ++t)
      if (sorted[t] != t + 1) throw error(error_kind::malformed_certificate, "labels are not a bijection onto [k]");
    bool too_many = false;
    auto anchor = anchor_in(e, anchors, too_many);
    if (too_many) return false;
    if (anchor) {
      if (!j) throw error(error_kind::malformed_certificate, "anchored edge but no J antichain");
      auto t = std::find(e.begin(), e.end(), *anchor) - e.begin();
      if (lab[t] != k) throw error(error_kind::malformed_certificate, "anchor vertex must carry label k");
    }
    for (std::size_t prev = 0; prev < pos; ++prev) {
      auto common = intersection(edges[ord.order[prev]], e);
      std::vector<unsigned> labels;
      for (vertex v : common) {
        if (anchor && v == *anchor) continue;
        labels.push_back(lab[std::find(e.begin(), e.end(), v) - e.begin()]);
      }
      if (!(anchor ? j->covers(labels) : i.covers(labels))) return false;
    }
  }
  return true;
}

// Finds a labeled ordering by peeling edges off the end. An edge E may be
// placed last among a set R iff some labeling of E satisfies the containment
// condition against every other edge of R; this condition only weakens as R
// shrinks, so any edge that fits last can be committed without losing
// solutions. The search is therefore complete: failure is a proof.
class ordering_search {
 public:
  ordering_search(const kgraph& f, const antichain& i, const antichain* j, vertex_set anchors, std::uint64_t cap,
                  std::uint64_t& nodes)
      : f_(f), i_(i), j_(j), anchors_(std::move(anchors)), cap_(cap), nodes_(nodes) {}

  search_status run(labeled_ordering& out) {
    const auto& edges = f_.edges();
    const std::size_t m = edges.size();
    for (const auto& e : edges) {
      bool too_many = false;
      anchor_in(e, anchors_, too_many);
      if (too_many) return search_status::proven_none;
    }
    std::vector<char> remaining(m, 1);
    std::vector<std::size_t> order_rev;
    std::vector<std::vector<unsigned>> labels_rev;
    for (std::size_t placed = 0; placed < m; ++placed) {
      // Fewest remaining neighbours first: those are the cheapest to put last.
      std::vector<std::pair<std::size_t, std::size_t>> candidates;
      for (std::size_t e = 0; e < m; ++e) {
        if (!remaining[e]) continue;
        std::size_t touching = 0;
        for (std::size_t o = 0; o < m; ++o)
          if (o != e && remaining[o] && !intersection(edges[e], edges[o]).empty()) ++touching;
        candidates.emplace_back(touching, e);
      }
      std::sort(candidates.begin(), candidates.end());
      bool committed = false;
      for (auto [touching, e] : candidates) {
        std::vector<unsigned> labels;
        auto status = label_edge(e, remaining, labels);
        if (status == search_status::budget_exceeded) return status;
        if (status == search_status::found) {
          remaining[e] = 0;
          order_rev.push_back(e);
          labels_rev.push_back(std::move(labels));
          committed = true;
          break;
        }
      }
      if (!committed) return search_status::proven_none;
    }
    out.order.assign(order_rev.rbegin(), order_rev.rend());
    out.labels.assign(labels_rev.rbegin(), labels_rev.rend());
    return search_status::found;
  }

 private:
  // Labels for edge e given that every other remaining edge precedes it.
  search_status label_edge(std::size_t e, const std::vector<char>& remaining, std::vector<unsigned>& labels) {
    const auto& edge_e = f_.edges()[e];
    const unsigned k = f_.uniformity();
    bool too_many = false;
    auto anchor = anchor_in(edge_e, anchors_, too_many);
    std::optional<unsigned> anchor_pos;
    if (anchor) anchor_pos = static_cast<unsigned>(std::find(edge_e.begin(), edge_e.end(), *anchor) - edge_e.begin());

    // Distinct constraint sets, as positions within e (anchor removed).
    std::set<std::vector<unsigned>> constraint_set;
    for (std::size_t o = 0; o < f_.edges().size(); ++o) {
      if (o == e || !remaining[o]) continue;
      std::vector<unsigned> positions;
      for (vertex v : intersection(f_.edges()[o], edge_e)) {
        auto p = static_cast<unsigned>(std::find(edge_e.begin(), edge_e.end(), v) - edge_e.begin());
        if (anchor_pos && p == *anchor_pos) continue;
        positions.push_back(p);
      }
      if (!positions.empty()) constraint_set.insert(std::move(positions));
    }
    const antichain& family = anchor ? *j_ : i_;
    // Empty label sets are covered iff the family is nonempty, which it is.
    std::vector<std::vector<unsigned>> constraints(constraint_set.begin(), constraint_set.end());
    // A constraint is checked once its highest position is labeled.
    std::vector<std::vector<std::size_t>> ready(k);
    for (std::size_t c = 0; c < constraints.size(); ++c) ready[constraints[c].back()].push_back(c);

    labels.assign(k, 0);
    std::vector<char> label_used(k + 1, 0);
    if (anchor_pos) {
      labels[*anchor_pos] = k;
      label_used[k] = 1;
    }
    bool over = false;
    std::vector<unsigned> buf;
    auto ok_at = [&](unsigned p) {
      for (std::size_t c : ready[p]) {
        buf.clear();
        for (unsigned q : constraints[c]) buf.push_back(labels[q]);
        if (!family.covers(buf)) return false;
      }
      return true;
    };
    auto recurse = [&](auto&& self, unsigned p) -> bool {
      if (p == k) return true;
      if (anchor_pos && p == *anchor_pos) return ok_at(p) && self(self, p + 1);
      for (unsigned l = 1; l <= k; ++l) {
        if (label_used[l]) continue;
        if (++nodes_ > cap_) {
          over = true;
          return false;
        }
        labels[p] = l;
        label_used[l] = 1;
        if (ok_at(p) && self(self, p + 1)) return true;
        label_used[l] = 0;
        if (over) return false;
      }
      return false;
    };
    if (recurse(recurse, 0)) return search_status::found;
    return over ? search_status::budget_exceeded : search_status::proven_none;
  }

  const kgraph& f_;
  const antichain& i_;
  const antichain* j_;
  vertex_set anchors_;
  std::uint64_t cap_;
  std::uint64_t& nodes_;
};

}  // namespace detail

inline bool verify_certificate(const kgraph& f, const antichain& i, const std::optional<antichain>& j,
                               const adaptedness_certificate& cert) {
  const antichain* jp = j ? &*j : nullptr;
  detail::check_grounds(f, i, jp);
  switch (cert.mode) {
    case adapted_mode::adapted:
      return detail::check_ordering(f, cert.primary, i, nullptr, {});
    case adapted_mode::ij_adapted: {
      if (!jp || !cert.special || !cert.anchored)
        throw error(error_kind::malformed_certificate, "ij certificate needs J, a special vertex and psi");
      require_vertex(f, *cert.special);
      return detail::check_ordering(f, cert.primary, i, nullptr, {}) &&
             detail::check_ordering(f, *cert.anchored, i, jp, {*cert.special});
    }
    case adapted_mode::adapted_at: {
      vertex_set pinned = normalize_set(f, cert.pinned);
      if (pinned.size() != cert.pinned.size())
        throw error(error_kind::malformed_certificate, "pinned vertices must be distinct");
      if (!pinned.empty() && !jp) throw error(error_kind::malformed_certificate, "pinned vertices need J");
      return detail::check_ordering(f, cert.primary, i, jp, pinned);
    }
  }
  return false;
}

inline certificate_search find_certificate(const kgraph& f, const antichain& i, const adapted_query& query,
                                           std::uint64_t node_cap = 50'000'000) {
  const antichain* jp = query.j ? &*query.j : nullptr;
  detail::check_grounds(f, i, jp);
  if (query.mode != adapted_mode::adapted && !jp)
    throw error(error_kind::invalid_parameters, "this mode needs a J antichain");
  certificate_search out;
  adaptedness_certificate cert;
  cert.mode = query.mode;

  if (query.mode == adapted_mode::adapted_at) {
    cert.pinned = normalize_set(f, query.pinned);
    detail::ordering_search search(f, i, jp, cert.pinned, node_cap, out.nodes);
    out.status = search.run(cert.primary);
    if (out.status == search_status::found) out.certificate = std::move(cert);
    return out;
  }

  detail::ordering_search plain(f, i, nullptr, {}, node_cap, out.nodes);
  out.status = plain.run(cert.primary);
  if (out.status != search_status::found || query.mode == adapted_mode::adapted) {
    if (out.status == search_status::found) out.certificate = std::move(cert);
    return out;
  }

  // Special vertex candidates: highest degree first.
  std::vector<vertex> candidates(f.order());
  std::iota(candidates.begin(), candidates.end(), 0u);
  std::vector<std::size_t> deg(f.order(), 0);
  for (const auto& e : f.edges())
    for (vertex v : e) ++deg[v];
  std::stable_sort(candidates.begin(), candidates.end(), [&](vertex a, vertex b) { return deg[a] > deg[b]; });
  bool budget_hit = false;
  for (vertex x : candidates) {
    labeled_ordering psi;
    detail::ordering_search anchored(f, i, jp, {x}, node_cap, out.nodes);
    auto status = anchored.run(psi);
    if (status == search_status::found) {
      cert.special = x;
      cert.anchored = std::move(psi);
      out.status = search_status::found;
      out.certificate = std::move(cert);
      return out;
    }
    if (status == search_status::budget_exceeded) {
      budget_hit = true;
      break;
    }
  }
  out.status = budget_hit ? search_status::budget_exceeded : search_status::proven_none;
  return out;
}

// Every member of b lies inside some member of a, so Disc(a) implies Disc(b).
inline bool antichain_implies(const antichain& a, const antichain& b) {
  if (a.ground() != b.ground()) throw error(error_kind::ground_mismatch, "antichains over different grounds");
  return std::all_of(b.members().begin(), b.members().end(), [&](const auto& m) { return a.covers(m); });
}

// ---------------------------------------------------------------------------
// Grid graph F' on f*f vertices; x_{i,j} has index i*f + j. Column j holds a
// copy of F with x_{i,j} -> w_i, row i >= 1 a copy with x_{i,j} -> w_j, where
// w_0 is `special` and w_1.. are the remaining vertices of F in order.
// Copies are stored as maps from V(F) to V(F').

struct grid_graph_result {
  kgraph graph;
  std::vector<vertex> zeroth_row;
  std::vector<std::vector<vertex>> column_copies;
  std::vector<std::vector<vertex>> row_copies;

  // Vertices of rows 1..f-1 under an embedding `image` of the grid.
  vertex_set absorber_part(std::span<const vertex> image) const {
    vertex_set out;
    for (vertex v = static_cast<vertex>(zeroth_row.size()); v < graph.order(); ++v) out.push_back(image[v]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline grid_graph_result grid_graph(const kgraph& f, vertex special = 0) {
  const vertex size = f.order();
  if (size < f.uniformity() || size == 0)
    throw error(error_kind::invalid_parameters, "grid graph needs v(F) >= k");
  require_vertex(f, special);
  std::vector<vertex> slot(size);  // F-vertex -> its index t in w_0..w_{f-1}
  {
    vertex t = 1;
    for (vertex v = 0; v < size; ++v) slot[v] = v == special ? 0 : t++;
  }
  grid_graph_result out;
  auto add_copy = [&](std::vector<vertex> copy, std::set<edge>& edges) {
    for (const auto& e : f.edges()) {
      edge image;
      for (vertex v : e) image.push_back(copy[v]);
      std::sort(image.begin(), image.end());
      edges.insert(std::move(image));
    }
    return copy;
  };
  std::set<edge> edges;
  for (vertex col = 0; col < size; ++col) {
    std::vector<vertex> copy(size);
    for (vertex v = 0; v < size; ++v) copy[v] = slot[v] * size + col;
    out.column_copies.push_back(add_copy(std::move(copy), edges));
  }
  for (vertex row = 1; row < size; ++row) {
    std::vector<vertex> copy(size);
    for (vertex v = 0; v < size; ++v) copy[v] = row * size + slot[v];
    out.row_copies.push_back(add_copy(std::move(copy), edges));
  }
  for (vertex col = 0; col < size; ++col) out.zeroth_row.push_back(col);
  out.graph = kgraph(f.uniformity(), size * size, std::vector<edge>(edges.begin(), edges.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Certificate text:
//   certificate <mode> <k>
//   special <x>                (ij_adapted)
//   pinned <v> <v> ...         (adapted_at)
//   ordering phi <m>           then m lines "a b c | a->1 b->2 c->3"
//   ordering psi <m>           (ij_adapted)

inline void write_ordering(std::ostream& os, const kgraph& f, const labeled_ordering& ord, const char* name) {
  os << "ordering " << name << ' ' << ord.order.size() << '\n';
  for (std::size_t pos = 0; pos < ord.order.size(); ++pos) {
    const auto& e = f.edges()[ord.order[pos]];
    for (std::size_t t = 0; t < e.size(); ++t) os << (t ? " " : "") << e[t];
    os << " |";
    for (std::size_t t = 0; t < e.size(); ++t) os << ' ' << e[t] << "->" << ord.labels[pos][t];
    os << '\n';
  }
}

inline std::string serialize(const kgraph& f, const adaptedness_certificate& cert) {
  std::ostringstream os;
  os << "certificate " << to_string(cert.mode) << ' ' << f.uniformity() << '\n';
  if (cert.special) os << "special " << *cert.special << '\n';
  if (cert.mode == adapted_mode::adapted_at) {
    os << "pinned";
    for (vertex v : cert.pinned) os << ' ' << v;
    os << '\n';
  }
  write_ordering(os, f, cert.primary, cert.mode == adapted_mode::adapted_at ? "phi-psi" : "phi");
  if (cert.anchored) write_ordering(os, f, *cert.anchored, "psi");
  return os.str();
}

namespace detail {

inline labeled_ordering read_ordering(text_reader& in, const kgraph& f, const std::string& name) {
  auto header = in.expect_line("ordering header");
  std::istringstream hs(header);
  std::string word, got;
  std::size_t m = 0;
  if (!(hs >> word >> got >> m) || word != "ordering" || got != name) in.fail("expected 'ordering " + name + " m'");
  std::map<edge, std::size_t> index;
  for (std::size_t e = 0; e < f.edges().size(); ++e) index[f.edges()[e]] = e;
  labeled_ordering ord;
  for (std::size_t pos = 0; pos < m; ++pos) {
    auto line = in.expect_line("ordering line");
    auto bar = line.find('|');
    if (bar == std::string::npos) in.fail("expected 'vertices | v->label ...'");
    auto values = in.integers(line.substr(0, bar), f.uniformity());
    edge e(values.begin(), values.end());
    auto it = index.find(e);
    if (it == index.end()) in.fail("not an edge of F");
    std::istringstream ls(line.substr(bar + 1));
    std::map<vertex, unsigned> assigned;
    std::string token;
    while (ls >> token) {
      auto arrow = token.find("->");
      if (arrow == std::string::npos) in.fail("expected v->label");
      try {
        assigned[static_cast<vertex>(std::stoul(token.substr(0, arrow)))] =
            static_cast<unsigned>(std::stoul(token.substr(arrow + 2)));
      } catch (const std::exception&) {
        in.fail("bad v->label token '" + token + "'");
      }
    }
    std::vector<unsigned> labels;
    for (vertex v : e) {
      if (!assigned.count(v)) in.fail("vertex " + std::to_string(v) + " has no label");
      labels.push_back(assigned[v]);
    }
    if (assigned.size() != e.size()) in.fail("labels for vertices outside the edge");
    ord.order.push_back(it->second);
    ord.labels.push_back(std::move(labels));
  }
  return ord;
}

}  // namespace detail

inline adaptedness_certificate parse_certificate(const std::string& text, const kgraph& f) {
  std::istringstream is(text);
  text_reader in(is);
  auto header = in.expect_line("certificate header");
  std::istringstream hs(header);
  std::string word, mode;
  unsigned k = 0;
  if (!(hs >> word >> mode >> k) || word != "certificate") in.fail("expected 'certificate <mode> <k>'");
  if (k != f.uniformity()) in.fail("certificate uniformity differs from F");
  adaptedness_certificate cert;
  if (mode == "adapted") cert.mode = adapted_mode::adapted;
  else if (mode == "ij_adapted") cert.mode = adapted_mode::ij_adapted;
  else if (mode == "adapted_at") cert.mode = adapted_mode::adapted_at;
  else in.fail("unknown mode '" + mode + "'");
  if (cert.mode == adapted_mode::ij_adapted) {
    auto line = in.expect_line("special line");
    if (line.rfind("special ", 0) != 0) in.fail("expected 'special x'");
    cert.special = static_cast<vertex>(in.integers(line.substr(8), 1)[0]);
  }
  if (cert.mode == adapted_mode::adapted_at) {
    auto line = in.expect_line("pinned line");
    if (line.rfind("pinned", 0) != 0) in.fail("expected 'pinned ...'");
    std::istringstream ps(line.substr(6));
    vertex v;
    while (ps >> v) cert.pinned.push_back(v);
  }
  cert.primary = detail::read_ordering(in, f, cert.mode == adapted_mode::adapted_at ? "phi-psi" : "phi");
  if (cert.mode == adapted_mode::ij_adapted) cert.anchored = detail::read_ordering(in, f, "psi");
  in.expect_end();
  return cert;
}

}  // namespace quasipack
