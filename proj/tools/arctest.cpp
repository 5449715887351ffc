#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arctest/arctest.hpp"

namespace {

using arctest::Claim;
using arctest::Outcome;
using arctest::Report;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::string report_path;
  std::uint64_t seed = arctest::Limits{}.seed;
  std::size_t max_elements = arctest::Limits{}.max_elements;
  std::size_t max_vertices = arctest::Limits{}.max_vertices;
  bool no_timing = false;

  arctest::Limits limits() const { return {max_elements, max_vertices, seed}; }
};

json inputs(const std::string& command, const json& args, const std::vector<std::string>& files) {
  json contents = json::array();
  for (const std::string& f : files) contents.push_back(arctest::load_json_file(f));
  return {{"command", command}, {"args", args}, {"files", contents}};
}

int emit(const Report& report, const Globals& g) {
  const std::string text = report.to_json(!g.no_timing).dump(2) + "\n";
  if (g.report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.report_path);
    if (!out) throw arctest::Error(arctest::ErrorKind::InvalidInput, "cannot write " + g.report_path);
    out << text;
  }
  report.summary(std::cerr);
  return report.passed() ? kExitPass : kExitFail;
}

Claim info(std::string id, std::string anchor, json witness) {
  return arctest::check(std::move(id), std::move(anchor), [&] { return Outcome{true, std::move(witness)}; });
}

int run_group(const Globals& g, const std::string& action, const std::string& file) {
  const json j = arctest::load_json_file(file);
  const arctest::PermGroup grp = arctest::group_from_json(j);
  Report report(inputs("group " + action, json::object(), {file}));
  if (action == "order") {
    report.add(info("permgroup.order", "group order from a stabilizer chain",
                    {{"degree", grp.degree()}, {"order", grp.order()}, {"base", grp.chain().base()}}));
  } else if (action == "orbits") {
    report.add(info("permgroup.orbits", "orbits on points", {{"orbits", arctest::orbits(grp)}}));
  } else {
    report.add(arctest::check("permgroup.quasiprimitive", "every nontrivial normal subgroup is transitive", [&] {
      const bool q = arctest::is_quasiprimitive(grp, g.max_elements);
      return Outcome{q, {{"quasiprimitive", q}, {"transitive", arctest::is_transitive(grp)},
                         {"primitive", arctest::is_transitive(grp) && arctest::is_primitive(grp)}}};
    }));
  }
  return emit(report, g);
}

int run_digraph(const Globals& g, const std::string& action, const std::vector<std::string>& files,
                const std::string& group_file, std::size_t s) {
  const std::size_t want = action == "product" ? 2 : 1;
  if (files.size() != want) {
    throw arctest::Error(arctest::ErrorKind::InvalidInput,
                         "digraph " + action + " expects " + std::to_string(want) + " file(s)");
  }
  std::vector<std::string> all = files;
  if (!group_file.empty()) all.push_back(group_file);
  Report report(inputs("digraph " + action, {{"s", s}}, all));

  if (action == "validate") {
    report.add(arctest::check("digraph.validate", "irreflexive antisymmetric arc relation", [&] {
      try {
        const arctest::Digraph d = arctest::digraph_from_json(arctest::load_json_file(files[0]));
        const json arcs = arctest::load_json_file(files[0])["arcs"];
        const bool sorted = std::is_sorted(arcs.begin(), arcs.end());
        return Outcome{true, {{"n", d.size()}, {"arcs", d.arc_count()}, {"sorted", sorted}}};
      } catch (const arctest::Error& e) {
        if (e.kind() == arctest::ErrorKind::InvalidInput) throw;
        return Outcome{false, {{"error", arctest::to_string(e.kind())}}, e.what()};
      }
    }));
    return emit(report, g);
  }

  const arctest::Digraph d = arctest::digraph_from_json(arctest::load_json_file(files[0]));
  if (action == "regularity") {
    report.add(arctest::check("digraph.regularity", "every vertex has k in- and k out-neighbours", [&] {
      const auto k = arctest::regularity(d);
      return Outcome{k.has_value(), {{"regularity", k ? json(*k) : json(nullptr)}}};
    }));
  } else if (action == "connected") {
    report.add(arctest::check("digraph.connected", "underlying graph is connected", [&] {
      const bool c = arctest::is_connected(d);
      return Outcome{c, {{"connected", c}}};
    }));
  } else if (action == "product") {
    const arctest::Digraph e = arctest::digraph_from_json(arctest::load_json_file(files[1]));
    const arctest::Digraph p = arctest::direct_product(d, e);
    report.add(info("digraph.product", "direct product of digraphs",
                    {{"vertices", p.size()}, {"digraph", arctest::digraph_to_json(p)}}));
  } else if (action == "sarc-count") {
    report.add(info("digraph.sarc_count", "number of s-arcs",
                    {{"s", s}, {"count", arctest::count_s_arcs(d, s)}}));
  } else {
    if (group_file.empty()) throw arctest::Error(arctest::ErrorKind::InvalidInput, "sarc-transitive needs --group");
    const arctest::PermGroup grp = arctest::group_from_json(arctest::load_json_file(group_file));
    if (grp.degree() != d.size()) throw arctest::Error(arctest::ErrorKind::DegreeMismatch, "group degree != vertex count");
    arctest::require_automorphisms(d, grp.generators());
    report.add(arctest::check("digraph.sarc_transitive", "G is transitive on s-arcs", [&] {
      const arctest::SArcOrbit o = arctest::s_arc_orbit(d, grp.generators(), s);
      return Outcome{o.transitive(), {{"s", s}, {"orbit", o.orbit_size}, {"s_arcs", o.total}}};
    }));
  }
  return emit(report, g);
}

int run_coset(const Globals& g, const std::string& action, const std::string& file, std::size_t s, bool oracle) {
  const arctest::CosetDigraphSpec spec = arctest::spec_from_json(arctest::load_json_file(file), g.limits());
  Report report(inputs("coset " + action, {{"s", s}, {"oracle", oracle}}, {file}));
  if (action == "build") {
    const arctest::CosetDigraph cd = arctest::build_coset_digraph(spec);
    const auto k = arctest::regularity(cd.digraph);
    report.add(info("cosetgraph.build", "Cos(G, H, g) with Hx -> Hy iff yx^-1 in HgH",
                    {{"vertices", cd.digraph.size()},
                     {"regularity", k ? json(*k) : json(nullptr)},
                     {"faithful", spec.space().is_faithful()},
                     {"digraph", arctest::digraph_to_json(cd.digraph)}}));
    return emit(report, g);
  }
  report.add(info("cosetgraph.regularity", "regularity |H : H n H^g|", {{"regularity", arctest::regularity_formula(spec)}}));
  report.add(info("cosetgraph.primitive", "vertex-primitive iff H is maximal in G",
                  {{"primitive", arctest::primitive_via_maximality(spec)}}));
  report.add(arctest::check("cosetgraph.connected", "connected iff <H, g> = G", [&] {
    const bool c = arctest::connected_via_generation(spec);
    return Outcome{c, {{"connected", c}}};
  }));
  report.add(arctest::check("cosetgraph.s_arc_transitive", "s-arc-transitive iff the stabilizer chain factorizes", [&] {
    json links = json::array();
    bool all = true;
    for (const arctest::ChainLink& l : arctest::factorization_chain(spec, s)) {
      links.push_back({{"i", l.i}, {"A", l.a}, {"B", l.b}, {"C", l.c}, {"B_and_C", l.b_and_c}, {"holds", l.holds}});
      all = all && l.holds;
    }
    return Outcome{all, {{"s", s}, {"chain", links}}};
  }));
  if (s >= 2) {
    report.add(arctest::check("cosetgraph.two_arc", "H = (gHg^-1 n H)(H n g^-1Hg)", [&] {
      const bool t = arctest::two_arc_check(spec, g.max_elements);
      return Outcome{t, {{"two_arc", t}}};
    }));
  }
  if (oracle) {
    report.add(arctest::check("cosetgraph.oracle_agreement", "factorization criteria agree with the s-arc orbit oracle", [&] {
      const arctest::CosetDigraph cd = arctest::build_coset_digraph(spec);
      const bool by_oracle = arctest::s_arc_orbit(cd.digraph, cd.acting.generators(), s).transitive();
      const bool by_chain = arctest::s_arc_transitive_by_factorization(spec, s);
      const bool conn = arctest::is_connected(cd.digraph);
      const auto k = arctest::regularity(cd.digraph);
      const bool ok = by_oracle == by_chain && conn == arctest::connected_via_generation(spec) && k &&
                      *k == arctest::regularity_formula(spec);
      return Outcome{ok, {{"oracle", by_oracle}, {"factorization", by_chain}, {"connected", conn}}};
    }));
  }
  return emit(report, g);
}

int run_diagonal(const Globals& g, const std::string& group, const std::string& level) {
  const arctest::CatalogGroup cg = arctest::catalog_group(group);
  Report report(json{{"command", "diagonal check"}, {"group", group}, {"level", level}, {"seed", g.seed},
                     {"max_vertices", g.max_vertices}});
  if (level == "explicit") {
    const arctest::DiagonalSpace sp(cg.group);
    if (!sp.vertex_count(g.max_vertices)) {
      throw arctest::Error(arctest::ErrorKind::BoundExceeded,
                           "|T|^(|T|-1) vertices for T = " + group + " exceed --max-vertices " +
                               std::to_string(g.max_vertices) + "; use --level element");
    }
    if (group != "s3") throw arctest::Error(arctest::ErrorKind::InvalidInput, "no explicit suite for " + group);
    report.add_all(arctest::acceptance::gamma_s3(g.limits()));
  } else {
    report.add_all(arctest::acceptance::element_level(cg, g.limits()));
  }
  return emit(report, g);
}

int run_gamma_n(const Globals& g, std::size_t n, bool explicit_build) {
  arctest::GammaNOptions opt;
  opt.explicit_build = explicit_build;
  opt.max_elements = g.max_elements;
  opt.max_vertices = g.max_vertices;
  Report report(json{{"command", "gamma-n"}, {"n", n}, {"explicit", explicit_build},
                     {"max_elements", g.max_elements}, {"max_vertices", g.max_vertices}});
  report.add_all(arctest::verify_gamma_n(n, opt));
  return emit(report, g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset digraphs and s-arc-transitivity checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--report", g.report_path, "write the JSON report here instead of stdout");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--max-elements", g.max_elements, "cap on explicit element lists");
  app.add_option("--max-vertices", g.max_vertices, "cap on explicit vertex sets");
  app.add_flag("--no-timing", g.no_timing, "omit elapsed_ms from the report");

  std::string action, file, group_file, group_name, level = "element", filter;
  std::vector<std::string> files;
  std::size_t s = 2, n = 5;
  bool explicit_build = false, oracle = false;

  auto* group = app.add_subcommand("group", "permutation group queries");
  group->add_option("action", action)->required()->check(CLI::IsMember({"order", "orbits", "quasiprimitive"}));
  group->add_option("file", file, "group JSON")->required();

  auto* digraph = app.add_subcommand("digraph", "digraph queries");
  digraph->add_option("action", action)
      ->required()
      ->check(CLI::IsMember({"validate", "regularity", "connected", "product", "sarc-count", "sarc-transitive"}));
  digraph->add_option("files", files, "digraph JSON (two for product)")->required();
  digraph->add_option("--group", group_file, "group JSON acting on the vertices");
  digraph->add_option("--s", s, "arc length")->check(CLI::Range(1, 8));

  auto* coset = app.add_subcommand("coset", "coset digraph construction and criteria");
  coset->add_option("action", action)->required()->check(CLI::IsMember({"build", "criteria"}));
  coset->add_option("file", file, "spec JSON")->required();
  coset->add_option("--s", s, "arc length")->check(CLI::Range(1, 8));
  coset->add_flag("--oracle", oracle, "also build the digraph and compare with the orbit oracle");

  auto* diagonal = app.add_subcommand("diagonal", "diagonal construction checks");
  diagonal->add_option("action", action)->required()->check(CLI::IsMember({"check"}));
  diagonal->add_option("--group", group_name, "catalog group")->required()->check(CLI::IsMember({"s3", "a5"}));
  diagonal->add_option("--level", level)->check(CLI::IsMember({"element", "explicit"}));

  auto* gamma = app.add_subcommand("gamma-n", "the product-action family");
  gamma->add_option("--n", n, "odd n >= 5")->required();
  gamma->add_flag("--explicit", explicit_build, "also build the digraph");

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--filter", filter, "claim id prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*group) return run_group(g, action, file);
    if (*digraph) return run_digraph(g, action, files, group_file, s);
    if (*coset) return run_coset(g, action, file, s, oracle);
    if (*diagonal) return run_diagonal(g, group_name, level);
    if (*gamma) return run_gamma_n(g, n, explicit_build);
    if (*self) return emit(arctest::selftest(filter, g.limits()), g);
  } catch (const arctest::Error& e) {
    std::cerr << "arctest: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "arctest: malformed input: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
