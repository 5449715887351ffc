#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "arctest/cayley.hpp"
#include "arctest/coset.hpp"
#include "arctest/diagonal.hpp"
#include "arctest/digraph.hpp"
#include "arctest/error.hpp"
#include "arctest/families.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/report.hpp"
#include "arctest/structure.hpp"
#include "arctest/subgroup.hpp"

namespace arctest {

struct Criterion {
  int number = 0;
  std::string title;
  std::string prefix;  ///< every claim id of this criterion starts with it
  double limit_seconds = 0;
  std::function<std::vector<Claim>(const Limits&)> run;
};

namespace acceptance {

using nlohmann::json;

/// Wraps a throwing check so that an exception becomes a failed claim.
template <class F>
Claim guarded(std::string id, std::string anchor, F&& f) {
  return check(std::move(id), std::move(anchor), [&]() -> Outcome {
    try {
      return f();
    } catch (const std::exception& e) {
      return Outcome{false, json::object(), e.what()};
    }
  });
}

inline std::vector<Claim> gamma_five(const Limits& limits) {
  GammaNOptions opt;
  opt.explicit_build = true;
  opt.max_elements = limits.max_elements;
  opt.max_vertices = limits.max_vertices;
  std::vector<Claim> claims = verify_gamma_n(5, opt);
  std::string witness;
  for (Claim& c : claims) {
    if (c.id == "gamma_n.explicit" && c.witness.contains("s3_witness")) witness = c.witness["s3_witness"].get<std::string>();
    if (c.status == Status::Skipped) {
      c.status = Status::Fail;
      c.reason = "required for n = 5 but skipped: " + c.reason;
    }
    c.id = "families.gamma5." + c.id.substr(std::string("gamma_n.").size());
  }
  claims.push_back(check("families.gamma5.three_arc_witness", "Gamma_n not (G,3)-arc-transitive, witness string",
                         [&] {
                           return Outcome{witness == "3-arc count 14400 > |G| 7200", {{"witness", witness}}};
                         }));
  return claims;
}

/// Lexicographically first and last `g` that are valid connectors for `H`.
inline std::pair<Perm, Perm> extreme_connectors(const PermGroup& g, const SubgroupSet& h, const Limits& limits) {
  std::vector<Perm> elems = elements(g, limits.max_elements);
  std::sort(elems.begin(), elems.end());
  std::optional<Perm> first, last;
  for (const Perm& x : elems) {
    if (h.contains(x) || in_double_coset(x.inverse(), h, x, h, limits.max_elements)) continue;
    if (!first) first = x;
    last = x;
  }
  if (!first) throw Error(ErrorKind::InvalidConnector, "no valid connector");
  return {*first, *last};
}

struct CorpusSpec {
  std::string name;
  std::function<CosetDigraphSpec()> make;
};

inline std::vector<CorpusSpec> equivalence_corpus(const Limits& limits) {
  std::vector<CorpusSpec> corpus;
  auto cyclic = [&](std::size_t n, long long j) {
    corpus.push_back({"c" + std::to_string(n) + "_x" + std::to_string(j), [n, j, limits] {
                        const Perm x = cyclic_shift(n);
                        CosetSpace cs = CosetSpace::build(PermGroup(n, {x}), SubgroupSet::trivial(n), limits.max_vertices);
                        return CosetDigraphSpec(std::move(cs), power(x, j), limits.max_elements);
                      }});
  };
  cyclic(5, 1);
  cyclic(6, 1);
  cyclic(6, 2);
  cyclic(7, 3);
  cyclic(8, 1);
  cyclic(9, 3);

  struct Family {
    std::string name;
    std::size_t degree;
    std::vector<Perm> group;
    std::vector<Perm> subgroup;
  };
  const Perm s5a = Perm::from_cycles(5, {{0, 1, 2, 3, 4}});
  const Perm s6a = Perm::from_cycles(6, {{0, 1, 2, 3, 4, 5}});
  const std::vector<Perm> s5{s5a, Perm::from_cycles(5, {{0, 1}})};
  const std::vector<Perm> a5{s5a, Perm::from_cycles(5, {{0, 1, 2}})};
  const std::vector<Perm> s6{s6a, Perm::from_cycles(6, {{0, 1}})};
  const std::vector<Family> families{
      {"s5_h_transposition", 5, s5, {Perm::from_cycles(5, {{0, 1}})}},
      {"s5_h_three_cycle", 5, s5, {Perm::from_cycles(5, {{0, 1, 2}})}},
      {"s5_h_double_transposition", 5, s5, {Perm::from_cycles(5, {{0, 1}, {2, 3}})}},
      {"s5_h_klein", 5, s5, {Perm::from_cycles(5, {{0, 1}}), Perm::from_cycles(5, {{2, 3}})}},
      {"s5_h_five_cycle", 5, s5, {s5a}},
      {"a5_h_double_transposition", 5, a5, {Perm::from_cycles(5, {{0, 1}, {2, 3}})}},
      {"a5_h_three_cycle", 5, a5, {Perm::from_cycles(5, {{0, 1, 2}})}},
      {"s6_h_triple_transposition", 6, s6, {Perm::from_cycles(6, {{0, 1}, {2, 3}, {4, 5}})}},
      {"s6_h_two_three_cycles", 6, s6, {Perm::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})}},
  };
  for (const Family& f : families) {
    for (int which = 0; which < 2; ++which) {
      corpus.push_back({f.name + (which == 0 ? "_first_g" : "_last_g"), [f, which, limits] {
                          const PermGroup g(f.degree, f.group);
                          SubgroupSet h = SubgroupSet::generated_by(f.degree, f.subgroup, limits.max_elements);
                          const auto [first, last] = extreme_connectors(g, h, limits);
                          CosetSpace cs = CosetSpace::build(g, std::move(h), limits.max_vertices);
                          return CosetDigraphSpec(std::move(cs), which == 0 ? first : last, limits.max_elements);
                        }});
    }
  }
  corpus.push_back({"gamma5", [limits] { return gamma_n_spec(build_gamma_n(5), limits); }});
  return corpus;
}

inline Outcome criterion_oracle_agreement(const CosetDigraphSpec& spec) {
  const CosetDigraph cd = build_coset_digraph(spec);
  const Digraph& d = cd.digraph;
  const std::size_t reg_formula = regularity_formula(spec);
  const auto reg = regularity(d);
  const bool conn_formula = connected_via_generation(spec);
  const bool conn = is_connected(d);
  const bool f2 = s_arc_transitive_by_factorization(spec, 2);
  const bool f3 = s_arc_transitive_by_factorization(spec, 3);
  const bool two = two_arc_check(spec);
  const bool o1 = is_G_s_arc_transitive(d, cd.acting, 1);
  const bool o2 = s_arc_orbit(d, cd.acting.generators(), 2).transitive();
  const bool o3 = s_arc_orbit(d, cd.acting.generators(), 3).transitive();
  const bool ok = reg && *reg == reg_formula && conn == conn_formula && f2 == o2 && f3 == o3 && two == o2 && o1;
  return Outcome{ok,
                 {{"vertices", d.size()},
                  {"regularity", reg ? json(*reg) : json(nullptr)},
                  {"regularity_formula", reg_formula},
                  {"connected", conn},
                  {"connected_formula", conn_formula},
                  {"factorization_s2", f2},
                  {"oracle_s2", o2},
                  {"two_arc_check", two},
                  {"factorization_s3", f3},
                  {"oracle_s3", o3},
                  {"arc_transitive", o1}}};
}

inline std::vector<Claim> equivalence(const Limits& limits) {
  std::vector<Claim> out;
  const std::string anchor = "factorization criteria agree with the s-arc orbit oracle";
  for (const CorpusSpec& c : equivalence_corpus(limits)) {
    out.push_back(guarded("cosetgraph.equivalence." + c.name, anchor,
                          [&] { return criterion_oracle_agreement(c.make()); }));
  }
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  for (bool with_lambda : {false, true}) {
    out.push_back(guarded(std::string("cosetgraph.equivalence.gamma_s3_") + (with_lambda ? "m_lambda" : "m"), anchor,
                          [&] { return criterion_oracle_agreement(generic_gamma_T_spec(sp, with_lambda, limits.max_elements).spec); }));
  }
  return out;
}

inline std::size_t component_count(const Digraph& d) {
  std::vector<char> seen(d.size(), 0);
  std::size_t count = 0;
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < d.size(); ++s) {
    if (seen[s]) continue;
    ++count;
    seen[s] = 1;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto list : {d.out(queue[i]), d.in(queue[i])}) {
        for (Vertex w : list) {
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
  }
  return count;
}

inline std::vector<Claim> gamma_s3(const Limits& limits) {
  std::vector<Claim> out;
  const std::string pre = "diagonal.s3.";
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  std::optional<ExplicitGammaT> ex;

  out.push_back(guarded(pre + "automorphisms", "M, lambda, rho and delta generators are digraph automorphisms", [&] {
    ex.emplace(build_explicit_gamma_T(sp, s3.automorphisms, limits.max_vertices));
    return Outcome{true,
                   {{"m", ex->m_generators.size()},
                    {"lambda", ex->lambda_generators.size()},
                    {"rho", ex->rho_generators.size()},
                    {"delta", ex->delta_generators.size()}}};
  }));
  if (!ex) return out;
  const Digraph& d = ex->digraph;

  out.push_back(check(pre + "shape", "Gamma(T) has |T|^(|T|-1) vertices and is |T|-regular", [&] {
    const auto reg = regularity(d);
    return Outcome{d.size() == 7776 && reg && *reg == 6,
                   {{"vertices", d.size()}, {"regularity", reg ? json(*reg) : json(nullptr)}}};
  }));

  out.push_back(guarded(pre + "connected", "Gamma(T) is connected", [&] {
    const bool conn = is_connected(d);
    const auto generic = generic_gamma_T_spec(sp, false, limits.max_elements);
    const Perm extra[] = {generic.spec.connector()};
    const std::uint64_t dg = generated_with(generic.spec.subgroup(), extra).order();
    const std::uint64_t full = generic.spec.group().order();
    json w{{"connected", conn}, {"components", component_count(d)}, {"order_D_g", dg}, {"order_T_k", full}};
    return Outcome{conn, w, conn ? "" : "<D, g> is a proper subgroup of T^k, so the digraph splits into components"};
  }));

  out.push_back(check(pre + "local_checks", "D n g^-1Dg = 1 and g^-1 not in DgD", [&] {
    const LocalChecks l = gamma_T_local_checks(sp);
    return Outcome{l.holds() && l.intersection_iterations == 6 && l.double_coset_pairs == 36,
                   {{"intersection_iterations", l.intersection_iterations},
                    {"intersection_hits", l.intersection_hits},
                    {"double_coset_pairs", l.double_coset_pairs},
                    {"double_coset_hits", l.double_coset_hits}}};
  }));

  out.push_back(check(pre + "monomorphisms", "lambda and rho are monomorphisms", [&] {
    const auto all = all_cosets(sp, limits.max_vertices);
    const MonomorphismReport m = verify_monomorphisms(sp, s3.automorphisms, all);
    return Outcome{m.holds() && m.lambda_pairs == 36 && m.rho_pairs == 36,
                   {{"cosets", m.cosets_tested},
                    {"lambda_pairs", m.lambda_pairs},
                    {"rho_pairs", m.rho_pairs},
                    {"delta_pairs", m.delta_pairs}}};
  }));

  out.push_back(check(pre + "two_arc_oracle", "Gamma(T) is (<M, lambda(T)>, 2)-arc-transitive", [&] {
    const SArcOrbit o = s_arc_orbit(d, ex->m_and_lambda(), 2);
    return Outcome{o.transitive() && o.total == 279936, {{"orbit", o.orbit_size}, {"two_arcs", o.total}}};
  }));

  out.push_back(guarded(pre + "two_arc_factorization", "H_v = K (g^-1 K g) for H_v = sigma(T) x lambda(T)", [&] {
    const auto generic = generic_gamma_T_spec(sp, true, limits.max_elements);
    const bool chain = s_arc_transitive_by_factorization(generic.spec, 2);
    const bool product = two_arc_check(generic.spec);
    const TwoArcLocal local = verify_two_arc_local(sp, limits.seed);
    const CosetDigraph cd = build_coset_digraph(generic.spec);
    const auto phi = equivariant_bijection(generic, sp, d.size());
    const bool same = phi && preserves_arcs(cd.digraph, d, *phi);
    return Outcome{chain && product && local.holds() && same,
                   {{"chain", chain},
                    {"product_set", product},
                    {"element_level", local.holds()},
                    {"hv_elements", local.hv_elements},
                    {"generic_matches_explicit", same}}};
  }));

  out.push_back(check(pre + "m_not_two_arc", "M is not 2-arc-transitive: |M_v| = |T| < |T|^2", [&] {
    const ThreeArcCount c = not_three_arc_count(sp);
    const SArcOrbit o = s_arc_orbit(d, ex->m_generators, 2);
    return Outcome{c.impossible() && c.m_v == 6 && c.two_arcs_from_v == 36 && !o.transitive(),
                   {{"m_v", c.m_v}, {"two_arcs_from_v", c.two_arcs_from_v}, {"oracle_orbit", o.orbit_size},
                    {"two_arcs", o.total}}};
  }));

  out.push_back(check(pre + "stabilizer_order", "X_v has order |T|^3 |Out(T)|", [&] {
    const auto gens = ex->x_generators(s3.group.generators().size());
    const Point v = static_cast<Point>(sp.vertex_id(sp.base()));
    const std::vector<Point> base{v};
    const PermGroup x(d.size(), gens, base);
    const std::uint64_t xv = point_stabilizer(x, v).order();
    const std::uint64_t out_t = s3.automorphisms.size() / s3.automorphisms.inner_count();
    return Outcome{xv == 216 && xv == 216 * out_t, {{"X", x.order()}, {"X_v", xv}, {"out", out_t}}};
  }));

  out.push_back(check(pre + "enumeration_isomorphism", "Gamma(T) does not depend on the enumeration of T", [&] {
    const auto e = DiagonalSpace::default_enumeration(s3.group);
    const std::vector<Elem> rev(e.rbegin(), e.rend());
    const IsomorphismReport r = enumeration_independence(s3.group, e, rev, limits.max_vertices);
    return Outcome{r.holds(), {{"vertices", r.vertices}, {"arcs_checked", r.arcs_checked}}};
  }));
  return out;
}

inline std::vector<Claim> gamma_a5(const Limits& limits) {
  std::vector<Claim> out;
  const std::string pre = "diagonal.a5.";
  const CatalogGroup a5 = catalog_group("a5");
  const DiagonalSpace sp(a5.group);

  out.push_back(check(pre + "local_checks", "D n g^-1Dg = 1 and g^-1 not in DgD", [&] {
    const LocalChecks l = gamma_T_local_checks(sp);
    return Outcome{l.holds() && l.intersection_iterations == 60 && l.double_coset_pairs == 3600,
                   {{"intersection_iterations", l.intersection_iterations},
                    {"intersection_hits", l.intersection_hits},
                    {"double_coset_pairs", l.double_coset_pairs},
                    {"double_coset_hits", l.double_coset_hits}}};
  }));

  std::optional<TwoArcLocal> local;
  out.push_back(check(pre + "conjugation_identity", "g^-1 sigma(t) lambda(t) g = lambda(t)", [&] {
    local = verify_two_arc_local(sp, limits.seed, 1000);
    return Outcome{local->identity_failures == 0 && local->cosets_tested == 1 + 60 * 59 + 1000,
                   {{"t_tested", 60}, {"cosets", local->cosets_tested}, {"failures", local->identity_failures}}};
  }));

  out.push_back(check(pre + "stabilizer_factorization", "H_v = K (g^-1 K g)", [&] {
    return Outcome{local->product_equals_hv && local->hv_elements == 3600,
                   {{"hv_elements", local->hv_elements}, {"product_elements", local->product_elements}}};
  }));

  out.push_back(check(pre + "monomorphisms", "lambda and rho are monomorphisms", [&] {
    const auto cosets = test_cosets(sp, limits.seed);
    const MonomorphismReport m = verify_monomorphisms(sp, a5.automorphisms, cosets);
    return Outcome{m.holds() && m.lambda_pairs == 3600 && m.rho_pairs == 3600,
                   {{"cosets", m.cosets_tested},
                    {"lambda_pairs", m.lambda_pairs},
                    {"rho_pairs", m.rho_pairs},
                    {"delta_pairs", m.delta_pairs}}};
  }));

  out.push_back(check(pre + "m_not_two_arc", "M is not 2-arc-transitive: |M_v| = |T| < |T|^2", [&] {
    const ThreeArcCount c = not_three_arc_count(sp);
    return Outcome{c.impossible() && c.m_v == 60 && c.two_arcs_from_v == 3600,
                   {{"m_v", c.m_v}, {"two_arcs_from_v", c.two_arcs_from_v}}};
  }));

  out.push_back(check(pre + "explicit_bound", "explicit Gamma(A_5) exceeds the vertex bound", [&] {
    try {
      (void)explicit_digraph(sp, limits.max_vertices);
    } catch (const Error& e) {
      return Outcome{e.kind() == ErrorKind::BoundExceeded, {{"message", e.what()}}};
    }
    return Outcome{false, json::object(), "explicit build was not refused"};
  }));
  return out;
}

/// Element-level checks for any catalog group; nothing here builds the digraph.
inline std::vector<Claim> element_level(const CatalogGroup& cg, const Limits& limits) {
  std::vector<Claim> out;
  const std::string pre = "diagonal." + cg.group.name() + ".";
  const DiagonalSpace sp(cg.group);
  const std::size_t k = sp.k();

  out.push_back(check(pre + "local_checks", "D n g^-1Dg = 1 and g^-1 not in DgD", [&] {
    const LocalChecks l = gamma_T_local_checks(sp);
    return Outcome{l.holds(),
                   {{"intersection_iterations", l.intersection_iterations},
                    {"intersection_hits", l.intersection_hits},
                    {"double_coset_pairs", l.double_coset_pairs},
                    {"double_coset_hits", l.double_coset_hits}}};
  }));
  const TwoArcLocal local = verify_two_arc_local(sp, limits.seed, 1000);
  out.push_back(check(pre + "conjugation_identity", "g^-1 sigma(t) lambda(t) g = lambda(t)", [&] {
    return Outcome{local.identity_failures == 0, {{"cosets", local.cosets_tested}, {"failures", local.identity_failures}}};
  }));
  out.push_back(check(pre + "stabilizer_factorization", "H_v = K (g^-1 K g)", [&] {
    return Outcome{local.product_equals_hv && local.hv_elements == k * k,
                   {{"hv_elements", local.hv_elements}, {"product_elements", local.product_elements}}};
  }));
  out.push_back(check(pre + "monomorphisms", "lambda and rho are monomorphisms", [&] {
    const auto cosets = test_cosets(sp, limits.seed);
    const MonomorphismReport m = verify_monomorphisms(sp, cg.automorphisms, cosets);
    return Outcome{m.holds(),
                   {{"cosets", m.cosets_tested},
                    {"lambda_pairs", m.lambda_pairs},
                    {"rho_pairs", m.rho_pairs},
                    {"delta_pairs", m.delta_pairs}}};
  }));
  out.push_back(check(pre + "m_not_two_arc", "M is not 2-arc-transitive: |M_v| = |T| < |T|^2", [&] {
    const ThreeArcCount c = not_three_arc_count(sp);
    return Outcome{c.impossible() && c.m_v == k && c.two_arcs_from_v == k * k,
                   {{"m_v", c.m_v}, {"two_arcs_from_v", c.two_arcs_from_v}}};
  }));
  out.push_back(check(pre + "index_action", "index action of <x(T), z(Aut T)> is Hol(T) and contains y(T)", [&] {
    const IndexActionReport r = verify_index_action(sp, cg.automorphisms);
    return Outcome{r.defining_identities && r.order_matches() && r.y_inside && r.transitive,
                   {{"order", r.order}, {"expected_order", r.expected_order}, {"y_inside", r.y_inside},
                    {"primitive", r.primitive}}};
  }));
  return out;
}

inline std::vector<Claim> descent(const Limits& limits) {
  std::vector<Claim> out;
  const std::string pre = "cosetgraph.descent.";
  auto report_json = [](const DescentReport& r) {
    return json{{"precondition", r.precondition},
                {"arc", r.arc},
                {"factorizations", r.factorizations},
                {"m_arc_transitive", r.m_arc_transitive},
                {"m_regular", r.m_regular},
                {"directed_cycle", r.directed_cycle ? json(*r.directed_cycle) : json(nullptr)}};
  };

  out.push_back(guarded(pre + "gamma5_socle", "G = M G_uv and (M, 1)-arc-transitivity for a normal transitive M", [&] {
    const GammaNData data = build_gamma_n(5);
    const CosetDigraphSpec spec = gamma_n_spec(data, limits);
    const CosetDigraph cd = build_coset_digraph(spec);
    std::vector<Perm> socle;
    for (const Perm& x : data.socle.generators()) socle.push_back(spec.space().action_of(x));
    const PermGroup m(cd.digraph.size(), socle);
    const DescentReport r = normal_descent_checks(cd.digraph, cd.acting, m, 2);
    json w = report_json(r);
    w["m_order"] = m.order();
    return Outcome{r.holds() && r.factorizations.size() == 2 && m.order() == 3600 && !r.m_regular, w};
  }));

  out.push_back(guarded(pre + "cycle7", "regular normal subgroup forces a directed cycle", [&] {
    const Digraph c7 = directed_cycle(7);
    const PermGroup g(7, {cyclic_shift(7)});
    const DescentReport r = normal_descent_checks(c7, g, g, 2);
    return Outcome{r.holds() && r.m_regular && r.directed_cycle.value_or(false), report_json(r)};
  }));

  out.push_back(guarded(pre + "fault_injection", "2-regular digraph with a regular group is not 2-arc-transitive", [&] {
    const std::size_t jumps[] = {1, 2};
    const Digraph d = circulant(7, jumps);
    const PermGroup g(7, {cyclic_shift(7)});
    const DescentReport r = normal_descent_checks(d, g, g, 2);
    const bool cycle = is_directed_cycle(d);
    json w = report_json(r);
    w["is_directed_cycle"] = cycle;
    return Outcome{!r.precondition && !r.holds() && !cycle && r.m_regular, w};
  }));
  return out;
}

inline std::vector<Claim> products(const Limits& limits) {
  std::vector<Claim> out;
  const std::string pre = "digraph.product.";
  auto product_claim = [&](const Digraph& a, const PermGroup& ga, const Digraph& b, const PermGroup& gb,
                           std::size_t s) {
    const bool fa = is_G_s_arc_transitive(a, ga, s);
    const bool fb = is_G_s_arc_transitive(b, gb, s);
    const Digraph p = direct_product(a, b);
    const auto gens = product_action_generators(ga.generators(), a.size(), gb.generators(), b.size());
    require_automorphisms(p, gens);
    const SArcOrbit o = s_arc_orbit(p, gens, s);
    return Outcome{fa && fb && o.transitive(),
                   {{"factor_a", fa}, {"factor_b", fb}, {"vertices", p.size()}, {"orbit", o.orbit_size},
                    {"s_arcs", o.total}}};
  };
  const std::string anchor = "direct product of s-arc-transitive digraphs is s-arc-transitive";

  out.push_back(guarded(pre + "c5_c5_s3", anchor, [&] {
    const PermGroup c5(5, {cyclic_shift(5)});
    return product_claim(directed_cycle(5), c5, directed_cycle(5), c5, 3);
  }));

  out.push_back(guarded(pre + "gamma5_c3_s2", anchor, [&] {
    const CosetDigraphSpec spec = gamma_n_spec(build_gamma_n(5), limits);
    const CosetDigraph cd = build_coset_digraph(spec);
    return product_claim(cd.digraph, cd.acting, directed_cycle(3), PermGroup(3, {cyclic_shift(3)}), 2);
  }));

  const Perm rot = cyclic_shift(5);
  const Perm refl = Perm::from_cycles(5, {{1, 4}, {2, 3}});
  const PermGroup n5(5, {rot});
  const PermGroup d5(5, {rot, refl});
  const std::string extract_anchor = "Gamma^h = Sigma^m for the factor recovered from an N-orbit of arcs";

  out.push_back(guarded(pre + "extract_c5_squared", extract_anchor, [&] {
    const Digraph c5 = directed_cycle(5);
    const ProductFactor f = extract_product_factor(power(c5, 2), 5, 2, n5, d5, 0);
    return Outcome{f.factor == c5 && f.relabeled == power(f.factor, 2), {{"factor_arcs", f.factor.arc_count()}}};
  }));

  out.push_back(guarded(pre + "extract_c5_relabeled", extract_anchor, [&] {
    const Digraph c5 = directed_cycle(5);
    const Perm h[] = {Perm::identity(5), refl};
    const Digraph twisted = relabel(power(c5, 2), coordinatewise(h, 5));
    const ProductFactor f = extract_product_factor(twisted, 5, 2, n5, d5, 0);
    json rel = json::array();
    for (const Perm& x : f.relabeling) rel.push_back(x.cycle_string());
    return Outcome{!(twisted == power(c5, 2)) && f.factor == c5 && f.relabeled == power(f.factor, 2),
                   {{"relabeling", rel}}};
  }));

  out.push_back(guarded(pre + "extract_c3_cubed", extract_anchor, [&] {
    const Digraph c3 = directed_cycle(3);
    const PermGroup n3(3, {cyclic_shift(3)});
    const ProductFactor f = extract_product_factor(power(c3, 3), 3, 3, n3, n3, 0);
    return Outcome{f.factor == c3 && f.relabeled == power(c3, 3), {{"vertices", f.relabeled.size()}}};
  }));
  return out;
}

inline std::vector<Claim> arithmetic(const Limits&) {
  std::vector<Claim> out;
  for (std::size_t n : {5, 7, 9}) {
    out.push_back(check("families.arithmetic.n" + std::to_string(n),
                        "(n!)^2/8 is not a proper power, by a prime in (n/2, n)", [&] {
                          const VertexCountCheck v = gamma_n_vertex_count_check(n);
                          return Outcome{v.holds(),
                                         {{"count", v.count},
                                          {"proper_power", v.proper_power},
                                          {"prime", v.prime ? json(*v.prime) : json(nullptr)},
                                          {"prime_exponent", v.prime_exponent}}};
                        }));
  }
  return out;
}

}  // namespace acceptance

/// The seven acceptance criteria with their wall-clock limits.
inline std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "Gamma_5 structural suite", "families.gamma5.", 30, acceptance::gamma_five},
      {2, "criterion/oracle equivalence", "cosetgraph.equivalence.", 60, acceptance::equivalence},
      {3, "Gamma(S_3) explicit suite", "diagonal.s3.", 120, acceptance::gamma_s3},
      {4, "Gamma(A_5) element-level suite", "diagonal.a5.", 60, acceptance::gamma_a5},
      {5, "normal-descent suite", "cosetgraph.descent.", 30, acceptance::descent},
      {6, "product suite", "digraph.product.", 30, acceptance::products},
      {7, "arithmetic suite", "families.arithmetic.", 5, acceptance::arithmetic},
  };
}

struct CriterionResult {
  int number = 0;
  std::string title;
  double limit_seconds = 0;
  double seconds = 0;
  std::vector<Claim> claims;

  bool within_limit() const { return seconds <= limit_seconds; }
  bool passed() const {
    if (!within_limit() || claims.empty()) return false;
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == Status::Pass; });
  }
};

/// Runs one criterion; an escaping exception becomes a failed claim.
inline CriterionResult run_criterion(const Criterion& c, const Limits& limits) {
  CriterionResult r;
  r.number = c.number;
  r.title = c.title;
  r.limit_seconds = c.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.claims = c.run(limits);
  } catch (const std::exception& e) {
    Claim failed;
    failed.id = c.prefix + "error";
    failed.anchor = c.title;
    failed.reason = e.what();
    r.claims.push_back(std::move(failed));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Claims of every criterion that can contribute an id starting with `filter`.
inline Report selftest(const std::string& filter, const Limits& limits) {
  Report report(nlohmann::json{{"command", "selftest"}, {"filter", filter}, {"seed", limits.seed},
                               {"max_elements", limits.max_elements}, {"max_vertices", limits.max_vertices}});
  for (const Criterion& c : acceptance_criteria()) {
    if (!c.prefix.starts_with(filter) && !filter.starts_with(c.prefix)) continue;
    for (Claim& claim : run_criterion(c, limits).claims) {
      if (claim.id.starts_with(filter)) report.add(std::move(claim));
    }
  }
  return report;
}

}  // namespace arctest
