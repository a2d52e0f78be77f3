// quasipack command line front end.
// Exit status: 0 success/holds, 1 violated/none, 2 undetermined/budget,
// 3 usage error, 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quasipack.hpp"

using namespace quasipack;
using json = nlohmann::json;

namespace {

enum exit_code { ok = 0, negative = 1, undetermined = 2, usage = 3, io = 4 };

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw io_error("cannot write " + path);
}

// Parse errors in input files are reported against the path.
template <typename T, typename Parse>
T load(const std::string& path, Parse parse) {
  auto text = read_file(path);
  try {
    return parse(text);
  } catch (const error& e) {
    throw io_error(path + ": " + e.what());
  }
}

kgraph load_kgraph(const std::string& path) { return load<kgraph>(path, parse_kgraph); }

rational flag_rational(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const error&) {
    throw usage_error(std::string("--") + name + " expects a rational a/b, got '" + text + "'");
  }
}

antichain flag_antichain(const std::string& text, unsigned ground, const char* name) {
  try {
    return parse_antichain(text, ground);
  } catch (const error& e) {
    throw usage_error(std::string("--") + name + ": " + e.what());
  }
}

vertex_set flag_vertices(const std::string& text) {
  vertex_set out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9)
      throw usage_error("bad vertex list '" + text + "'");
    out.push_back(static_cast<vertex>(std::stoul(item)));
  }
  return out;
}

std::pair<vertex, std::string> split_assignment(const std::string& text, const char* flag) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw usage_error(std::string("--") + flag + " expects w=..., got '" + text + "'");
  auto lhs = flag_vertices(text.substr(0, eq));
  if (lhs.size() != 1) throw usage_error(std::string("--") + flag + " expects one F-vertex before '='");
  return {lhs.front(), text.substr(eq + 1)};
}

embedding_constraints flag_constraints(const std::vector<std::string>& pins, const std::vector<std::string>& targets) {
  embedding_constraints c;
  for (const auto& p : pins) {
    auto [w, rhs] = split_assignment(p, "pin");
    auto y = flag_vertices(rhs);
    if (y.size() != 1) throw usage_error("--pin expects w=y");
    c.pins.emplace_back(w, y.front());
  }
  for (const auto& t : targets) {
    auto [w, rhs] = split_assignment(t, "target");
    c.targets[w] = flag_vertices(rhs);
  }
  return c;
}

json vertices_json(const vertex_set& s) { return json(std::vector<vertex>(s.begin(), s.end())); }

struct common {
  bool as_json = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Prints the report as JSON or as "key: value" lines.
void report(const common& opts, const std::string& command, json body) {
  if (opts.as_json) {
    json out = {{"schema", "quasipack/1"}, {"command", command}};
    out.update(body);
    std::cout << out.dump() << '\n';
    return;
  }
  for (auto& [key, value] : body.items())
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

// ---------------------------------------------------------------------------

struct gen_args {
  std::string construction, out, coloring_out, p = "1/2";
  unsigned k = 3;
  vertex n = 0;
};

int run_gen(const gen_args& a, const common& opts) {
  json body = {{"construction", a.construction}, {"k", a.k}, {"n", a.n}, {"seed", opts.seed}};
  if (a.construction == "a") {
    auto g = gen_a(a.k, a.n, opts.seed);
    write_file(a.out, serialize(g.graph));
    if (!a.coloring_out.empty()) write_file(a.coloring_out, serialize(g.colors));
    body["edges"] = g.graph.size();
  } else if (a.construction == "gnp") {
    auto g = gen_gnp(a.k, a.n, flag_rational(a.p, "p"), opts.seed);
    write_file(a.out, serialize(g));
    body["p"] = format_rational(flag_rational(a.p, "p"));
    body["edges"] = g.size();
  } else {
    auto g = gen_prop19(a.k, a.n, opts.seed, flag_rational(a.p, "p"));
    write_file(a.out, serialize(g.graph));
    if (!a.coloring_out.empty()) write_file(a.coloring_out, serialize(g.link.colors));
    body["p"] = format_rational(flag_rational(a.p, "p"));
    body["special"] = g.special;
    body["edges"] = g.graph.size();
  }
  body["out"] = a.out;
  report(opts, "gen", body);
  return ok;
}

struct disc_args {
  std::string h, i, p, mu, witness_coloring, layout_in, out = "witness.verdict";
  bool two_sided = false, exhaustive = false;
  std::uint64_t cap = 1 << 20, restarts = 8, steps = 20000, plateau = 200;
};

int run_check_disc(const disc_args& a, const common& opts) {
  auto h = load_kgraph(a.h);
  disc_params params{flag_rational(a.p, "p"), flag_rational(a.mu, "mu"),
                     a.two_sided ? disc_mode::two_sided : disc_mode::lower};
  validate(params);
  json body = {{"p", format_rational(params.p)}, {"mu", format_rational(params.mu)},
               {"mode", a.two_sided ? "two-sided" : "lower"}};
  disc_verdict verdict;
  if (!a.layout_in.empty()) {
    // a bare layout, or the witness inside a verdict file
    auto l = load<layout>(a.layout_in, [](const std::string& text) {
      if (text.rfind("verdict", 0) != 0) return parse_layout(text);
      auto v = parse_verdict(text);
      if (!v.witness) throw error(error_kind::parse_error, "verdict carries no witness");
      return *v.witness;
    });
    auto check = check_witness(h, l, params);
    verdict.status = check.holds ? disc_status::undetermined : disc_status::violated;
    verdict.margin = check.margin;
    if (!check.holds) verdict.witness = l;
    verdict.layouts_examined = 1;
    body["antichain"] = format_antichain(l.family());
    body["holds"] = check.holds;
    body["cliques"] = check.counts.cliques;
    body["in_host"] = check.counts.in_host;
  } else {
    if (a.i.empty()) throw usage_error("check-disc needs --i or --layout");
    auto family = flag_antichain(a.i, h.uniformity(), "i");
    body["antichain"] = format_antichain(family);
    if (a.exhaustive) {
      verdict = exhaustive_check(h, family, params, a.cap);
    } else {
      std::vector<layout> seeds;
      if (!a.witness_coloring.empty()) {
        auto c = load<coloring>(a.witness_coloring, parse_coloring);
        if (c.k() != h.uniformity() || c.order() != h.order())
          throw usage_error("--witness coloring does not match the host's k and n");
        auto z = zero_color_layout(c);
        if (!(z.family() == family)) throw usage_error("--witness seeds need the antichain of all (k-1)-subsets");
        seeds.push_back(std::move(z));
      }
      search_budget budget{a.restarts, a.steps, a.plateau, opts.threads};
      verdict = search_violation(h, family, params, budget, opts.seed, seeds);
      body["seed"] = opts.seed;
    }
  }
  body["status"] = to_string(verdict.status);
  body["margin"] = format_rational(verdict.margin);
  body["layouts_examined"] = verdict.layouts_examined;
  if (verdict.status == disc_status::violated && a.layout_in.empty()) {
    write_file(a.out, serialize(verdict));
    body["witness"] = a.out;
  }
  report(opts, "check-disc", body);
  if (verdict.status == disc_status::violated) return negative;
  if (verdict.status == disc_status::satisfied_exhaustive) return ok;
  if (!a.layout_in.empty()) return ok;
  return undetermined;
}

struct adapted_args {
  std::string f, i, j, pinned, verify, out;
  bool pinned_given = false;
  std::uint64_t cap = 50'000'000;
};

int run_check_adapted(const adapted_args& a, const common& opts) {
  auto f = load_kgraph(a.f);
  auto i = flag_antichain(a.i, f.uniformity(), "i");
  std::optional<antichain> j;
  if (!a.j.empty()) {
    if (f.uniformity() < 2) throw usage_error("--j needs k >= 2");
    j = flag_antichain(a.j, f.uniformity() - 1, "j");
  }
  json body = {{"i", format_antichain(i)}};
  if (j) body["j"] = format_antichain(*j);
  if (!a.verify.empty()) {
    auto cert = load<adaptedness_certificate>(a.verify, [&](const std::string& t) { return parse_certificate(t, f); });
    bool valid = false;
    try {
      valid = verify_certificate(f, i, j, cert);
    } catch (const error& e) {
      throw io_error(a.verify + ": " + e.what());
    }
    body["mode"] = to_string(cert.mode);
    body["valid"] = valid;
    report(opts, "check-adapted", body);
    return valid ? ok : negative;
  }
  adapted_query query = adapted_query::plain();
  if (a.pinned_given) {
    if (!j) throw usage_error("--pinned needs --j");
    query = adapted_query::at(*j, flag_vertices(a.pinned));
  } else if (j) {
    query = adapted_query::ij(*j);
  }
  auto res = find_certificate(f, i, query, a.cap);
  body["mode"] = to_string(query.mode);
  body["status"] = to_string(res.status);
  body["nodes"] = res.nodes;
  if (res.certificate) {
    auto text = serialize(f, *res.certificate);
    if (!a.out.empty()) {
      write_file(a.out, text);
      body["certificate"] = a.out;
    } else if (opts.as_json) {
      body["certificate"] = text;
    }
    report(opts, "check-adapted", body);
    if (a.out.empty() && !opts.as_json) std::cout << text;
    return ok;
  }
  report(opts, "check-adapted", body);
  return res.status == search_status::budget_exceeded ? undetermined : negative;
}

struct count_args {
  std::string f, h;
  std::vector<std::string> pins, targets;
  bool bound = false;
  std::string alpha = "1/2", p = "1/2", gamma = "1/10";
};

int run_count(const count_args& a, const common& opts) {
  auto f = load_kgraph(a.f);
  auto h = load_kgraph(a.h);
  auto c = flag_constraints(a.pins, a.targets);
  validate(f, h, c);
  auto count = count_inj(f, h, c);
  json body = {{"count", count}, {"v_f", f.order()}, {"n", h.order()}};
  int code = ok;
  if (a.bound) {
    embed_bound_params params{flag_rational(a.alpha, "alpha"), flag_rational(a.p, "p"), flag_rational(a.gamma, "gamma")};
    auto bound = embedding_bound(f, c, params, h.order());
    body["bound"] = format_rational(bound);
    body["meets_bound"] = rational(count) >= bound;
    if (rational(count) < bound) code = negative;
  }
  report(opts, "count", body);
  return code;
}

struct estimate_args {
  std::string f, h;
  std::uint64_t samples = 100000;
};

int run_estimate(const estimate_args& a, const common& opts) {
  auto f = load_kgraph(a.f);
  auto h = load_kgraph(a.h);
  auto est = estimate_density(f, h, a.samples, opts.seed);
  report(opts, "estimate", {{"estimate", format_rational(est.value)},
                            {"estimate_decimal", to_double(est.value)},
                            {"standard_error", est.standard_error},
                            {"samples", est.samples},
                            {"hits", est.hits},
                            {"degenerate", est.degenerate},
                            {"seed", opts.seed}});
  return ok;
}

struct pack_args {
  std::string h, f, out;
  std::uint64_t budget = 1'000'000;
};

int run_pack(const pack_args& a, const common& opts) {
  auto h = load_kgraph(a.h);
  auto f = load_kgraph(a.f);
  auto res = exact_perfect_packing(h, f, a.budget);
  json body = {{"status", to_string(res.status)}, {"nodes", res.nodes}};
  if (res.result) {
    body["copies"] = res.result->copies.size();
    if (!a.out.empty()) {
      write_file(a.out, serialize(*res.result));
      body["packing"] = a.out;
    }
  }
  report(opts, "pack", body);
  if (res.result && a.out.empty() && !opts.as_json) std::cout << serialize(*res.result);
  if (res.status == packing_status::found) return ok;
  return res.status == packing_status::budget_exceeded ? undetermined : negative;
}

struct absorb_args {
  std::string h, f, out, a, b, epsilon, omega;
  std::uint64_t threshold = 16, budget = 2'000'000, richness = 0;
};

int run_absorb(const absorb_args& a, const common& opts) {
  auto h = load_kgraph(a.h);
  auto f = load_kgraph(a.f);
  auto params = absorber_params::defaults_for(f);
  auto integer_flag = [](const std::string& s, const char* name) {
    auto v = flag_vertices(s);
    if (v.size() != 1) throw usage_error(std::string("--") + name + " expects an integer");
    return static_cast<std::uint64_t>(v.front());
  };
  if (!a.a.empty()) params.a = integer_flag(a.a, "a");
  if (!a.b.empty()) params.b = integer_flag(a.b, "b");
  if (!a.epsilon.empty()) params.epsilon = flag_rational(a.epsilon, "epsilon");
  if (!a.omega.empty()) params.omega = flag_rational(a.omega, "omega");
  try {
    validate(params, f);
  } catch (const error& e) {
    throw usage_error(e.what());
  }
  json body = {{"a", params.a},
               {"b", params.b},
               {"epsilon", format_rational(params.epsilon)},
               {"omega", format_rational(params.omega)},
               {"seed", opts.seed}};
  if (a.richness) {
    auto r = richness_estimate(h, f, params, a.richness, opts.seed);
    body["richness"] = format_rational(r.fraction);
    body["richness_min_per_set"] = format_rational(r.min_per_set);
    body["richness_meets_epsilon"] = r.fraction >= params.epsilon;
  }
  absorb_options options;
  options.exact_threshold = a.threshold;
  options.packing_budget = a.budget;
  auto out = absorb_pack(h, f, params, opts.seed, options);
  body["status"] = out.result ? "packed" : "failed";
  body["failed_stage"] = to_string(out.failed_stage);
  body["exact_fallback"] = out.used_exact_fallback;
  body["absorber_size"] = out.absorber_size;
  body["leftover_size"] = out.leftover_size;
  if (!out.diagnostics.empty()) body["diagnostics"] = out.diagnostics;
  if (out.result && !a.out.empty()) {
    write_file(a.out, serialize(*out.result));
    body["packing"] = a.out;
  }
  report(opts, "absorb", body);
  if (out.result && a.out.empty() && !opts.as_json) std::cout << serialize(*out.result);
  return out.result ? ok : negative;
}

struct grid_args {
  std::string f, out;
  vertex special = 0;
};

int run_grid(const grid_args& a, const common& opts) {
  auto f = load_kgraph(a.f);
  auto g = grid_graph(f, a.special);
  write_file(a.out, serialize(g.graph));
  report(opts, "grid", {{"vertices", g.graph.order()},
                        {"edges", g.graph.size()},
                        {"zeroth_row", vertices_json(g.zeroth_row)},
                        {"column_copies", g.column_copies.size()},
                        {"row_copies", g.row_copies.size()},
                        {"out", a.out}});
  return ok;
}

struct verify_args {
  std::string h, coloring;
  std::optional<vertex> special;
};

int run_verify_construction(const verify_args& a, const common& opts) {
  auto h = load_kgraph(a.h);
  auto c = load<coloring>(a.coloring, parse_coloring);
  json body;
  bool holds = false;
  if (a.special) {
    require_vertex(h, *a.special);
    auto l = link(h, *a.special);
    holds = follows_color_rule(l.graph, c);
    body["special"] = *a.special;
    body["link_follows_rule"] = holds;
    if (l.graph.uniformity() == 2) {
      bool triangle_free = count_inj(complete(3, 2), l.graph) == 0;
      body["link_triangle_free"] = triangle_free;
      holds = holds && triangle_free;
    }
  } else {
    holds = follows_color_rule(h, c);
    body["follows_rule"] = holds;
    if (holds) {
      auto counts = count_layout(zero_color_layout(c), &h);
      body["zero_layout_cliques"] = counts.cliques;
      body["zero_layout_in_host"] = counts.in_host;
      holds = counts.in_host == 0;
    }
  }
  body["verified"] = holds;
  report(opts, "verify-construction", body);
  return holds ? ok : negative;
}

void add_common(CLI::App* cmd, common& opts, bool seeded) {
  cmd->add_flag("--json", opts.as_json, "Print the report as one JSON object");
  auto* seed = cmd->add_option("--seed", opts.seed, "Seed for every randomized step");
  if (seeded) seed->required();
  cmd->add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasirandom hypergraph and perfect packing toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  common opts;

  gen_args ga;
  auto* gen = app.add_subcommand("gen", "Generate a construction");
  gen->add_option("--construction", ga.construction)->required()->check(CLI::IsMember({"a", "gnp", "prop19"}));
  gen->add_option("--k", ga.k)->required()->check(CLI::Range(1u, max_uniformity));
  gen->add_option("--n", ga.n)->required();
  gen->add_option("--p", ga.p, "Edge probability a/b (gnp, prop19)");
  gen->add_option("--out", ga.out)->required();
  gen->add_option("--coloring", ga.coloring_out, "Write the coloring (a) or the link coloring (prop19)");
  add_common(gen, opts, true);

  disc_args da;
  auto* disc = app.add_subcommand("check-disc", "Search for or check a discrepancy violation");
  disc->add_option("--h", da.h)->required();
  disc->add_option("--i", da.i, "Antichain over [k], e.g. 1,2|1,3|2,3");
  disc->add_option("--p", da.p)->required();
  disc->add_option("--mu", da.mu)->required();
  disc->add_flag("--two-sided", da.two_sided);
  disc->add_option("--witness", da.witness_coloring, "Coloring whose zero-color layout seeds the search");
  disc->add_option("--layout", da.layout_in, "Check this layout (or verdict witness) only");
  disc->add_flag("--exhaustive", da.exhaustive);
  disc->add_option("--cap", da.cap, "Largest layout space for --exhaustive");
  disc->add_option("--restarts", da.restarts);
  disc->add_option("--steps", da.steps);
  disc->add_option("--plateau", da.plateau);
  disc->add_option("--out", da.out, "Where a violated verdict and its witness are written");
  add_common(disc, opts, false);

  adapted_args aa;
  auto* adapted = app.add_subcommand("check-adapted", "Find or verify an adaptedness certificate");
  adapted->add_option("--f", aa.f)->required();
  adapted->add_option("--i", aa.i)->required();
  adapted->add_option("--j", aa.j, "Antichain over [k-1]; 'e' is the empty member");
  adapted->add_option("--pinned", aa.pinned, "Comma-separated vertices for adapted-at mode")
      ->each([&](const std::string&) { aa.pinned_given = true; });
  adapted->add_option("--verify", aa.verify, "Certificate file to verify");
  adapted->add_option("--cap", aa.cap, "Search node cap");
  adapted->add_option("--out", aa.out, "Write the certificate here");
  add_common(adapted, opts, false);

  count_args ca;
  auto* count = app.add_subcommand("count", "Count constrained labeled embeddings");
  count->add_option("--f", ca.f)->required();
  count->add_option("--h", ca.h)->required();
  count->add_option("--pin", ca.pins, "w=y, repeatable");
  count->add_option("--target", ca.targets, "w=v1,v2,..., repeatable");
  count->add_flag("--bound", ca.bound, "Also evaluate the embedding lower bound");
  count->add_option("--alpha", ca.alpha);
  count->add_option("--p", ca.p);
  count->add_option("--gamma", ca.gamma);
  add_common(count, opts, false);

  estimate_args ea;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo embedding density");
  estimate->add_option("--f", ea.f)->required();
  estimate->add_option("--h", ea.h)->required();
  estimate->add_option("--samples", ea.samples)->check(CLI::PositiveNumber);
  add_common(estimate, opts, true);

  pack_args pa;
  auto* pack = app.add_subcommand("pack", "Exact perfect packing");
  pack->add_option("--h", pa.h)->required();
  pack->add_option("--f", pa.f)->required();
  pack->add_option("--budget", pa.budget);
  pack->add_option("--out", pa.out);
  add_common(pack, opts, false);

  absorb_args ba;
  auto* absorb = app.add_subcommand("absorb", "Absorbing-method perfect packing");
  absorb->add_option("--h", ba.h)->required();
  absorb->add_option("--f", ba.f)->required();
  absorb->add_option("--a", ba.a);
  absorb->add_option("--b", ba.b);
  absorb->add_option("--epsilon", ba.epsilon);
  absorb->add_option("--omega", ba.omega);
  absorb->add_option("--threshold", ba.threshold, "Hosts this small use the exact solver");
  absorb->add_option("--budget", ba.budget);
  absorb->add_option("--richness", ba.richness, "Also estimate richness with this many b-sets");
  absorb->add_option("--out", ba.out);
  add_common(absorb, opts, true);

  grid_args gr;
  auto* grid = app.add_subcommand("grid", "Build the grid graph of F");
  grid->add_option("--f", gr.f)->required();
  grid->add_option("--special", gr.special);
  grid->add_option("--out", gr.out)->required();
  add_common(grid, opts, false);

  verify_args va;
  auto* verify = app.add_subcommand("verify-construction", "Check a host against its coloring");
  verify->add_option("--h", va.h)->required();
  verify->add_option("--coloring", va.coloring)->required();
  verify->add_option("--special", va.special, "Check the link of this vertex instead");
  add_common(verify, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return usage;
  }

  try {
    if (*gen) return run_gen(ga, opts);
    if (*disc) return run_check_disc(da, opts);
    if (*adapted) return run_check_adapted(aa, opts);
    if (*count) return run_count(ca, opts);
    if (*estimate) return run_estimate(ea, opts);
    if (*pack) return run_pack(pa, opts);
    if (*absorb) return run_absorb(ba, opts);
    if (*grid) return run_grid(gr, opts);
    if (*verify) return run_verify_construction(va, opts);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return usage;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == error_kind::cap_exceeded || e.kind() == error_kind::insufficient_absorbers) return undetermined;
    return usage;
  }
  return usage;
}
