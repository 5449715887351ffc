#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arctest/coset.hpp"
#include "arctest/digraph.hpp"
#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/report.hpp"
#include "arctest/structure.hpp"
#include "arctest/subgroup.hpp"

namespace arctest {

/// `G = (Alt{1..n} x Alt{n+1..2n}) : <a>` with `H = <a, b>` and connector `g = ac`.
/// Points are 0-based here; the formulas below use the usual 1-based labels.
struct GammaNData {
  std::size_t n = 0;
  Perm a, b, c, g;
  PermGroup group;
  PermGroup socle;  ///< G_1 x G_2
  SubgroupSet h;
};

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline GammaNData build_gamma_n(std::size_t n) {
  if (n < 5 || n % 2 == 0) throw Error(ErrorKind::InvalidInput, "n must be odd and at least 5");
  const std::size_t deg = 2 * n;
  auto p = [](std::size_t i) { return static_cast<Point>(i - 1); };
  GammaNData d;
  d.n = n;
  std::vector<std::vector<Point>> swaps;
  for (std::size_t i = 1; i <= n; ++i) swaps.push_back({p(i), p(n + i)});
  d.a = Perm::from_cycles(deg, swaps);
  d.b = Perm::from_cycles(deg, {{p(1), p(2)}, {p(3), p(4)}, {p(n + 1), p(n + 2)}, {p(n + 3), p(n + 4)}});
  std::vector<Point> first{p(1), p(3)}, second;
  for (std::size_t i = 5; i <= n; ++i) first.push_back(p(i));
  for (std::size_t i = n + 1; i <= 2 * n; ++i) second.push_back(p(i));
  d.c = Perm::from_cycles(deg, std::vector<std::vector<Point>>{first, second});
  d.g = d.a * d.c;

  std::vector<Point> ncycle, ncycle2;
  for (std::size_t i = 1; i <= n; ++i) {
    ncycle.push_back(p(i));
    ncycle2.push_back(p(n + i));
  }
  const Perm t1 = Perm::from_cycles(deg, {{p(1), p(2), p(3)}});
  const Perm t2 = Perm::from_cycles(deg, {{p(n + 1), p(n + 2), p(n + 3)}});
  const Perm c1 = Perm::from_cycles(deg, std::vector<std::vector<Point>>{ncycle});
  const Perm c2 = Perm::from_cycles(deg, std::vector<std::vector<Point>>{ncycle2});
  d.socle = PermGroup(deg, {t1, c1, t2, c2});
  d.group = PermGroup(deg, {t1, c1, d.a});
  d.h = SubgroupSet::generated_by(deg, {d.a, d.b});
  if (!d.group.contains(d.g)) throw Error(ErrorKind::InvalidConstruction, "g = ac is not in G");
  return d;
}

/// `Cos(G, H, g)` for `Gamma_n`.
inline CosetDigraphSpec gamma_n_spec(const GammaNData& d, const Limits& limits = {}) {
  return CosetDigraphSpec(CosetSpace::build(d.group, d.h, limits.max_vertices), d.g, limits.max_elements);
}

/// The cycle of `g` as displayed in 1-based form:
/// `(1, n+2, 2, n+3, 5, n+6, ..., n-2, 2n-1, n, n+1, 3, n+4, 4, n+5, 6, n+7, ..., n-1, 2n)`.
inline Perm displayed_g(std::size_t n) {
  std::vector<std::size_t> cyc{1, n + 2, 2, n + 3};
  for (std::size_t i = 3; 2 * i - 1 <= n - 2; ++i) {
    cyc.push_back(2 * i - 1);
    cyc.push_back(n + 2 * i);
  }
  for (std::size_t x : {n, n + 1, std::size_t{3}, n + 4, std::size_t{4}, n + 5}) cyc.push_back(x);
  for (std::size_t j = 3; 2 * j <= n - 1; ++j) {
    cyc.push_back(2 * j);
    cyc.push_back(n + 2 * j + 1);
  }
  std::vector<Point> pts;
  for (std::size_t x : cyc) pts.push_back(static_cast<Point>(x - 1));
  return Perm::from_cycles(2 * n, std::vector<std::vector<Point>>{pts});
}

/// `(1, 2, 5, 7, ..., n, 3, 4, 6, ..., n-1)` on `{1..n}`.
inline Perm displayed_pi1_g2(std::size_t n) {
  std::vector<Point> pts{0, 1};
  for (std::size_t i = 5; i <= n; i += 2) pts.push_back(static_cast<Point>(i - 1));
  pts.push_back(2);
  pts.push_back(3);
  for (std::size_t j = 6; j <= n - 1; j += 2) pts.push_back(static_cast<Point>(j - 1));
  return Perm::from_cycles(n, std::vector<std::vector<Point>>{pts});
}

/// `(1, 3, 2, 4, 5, ..., n)` on `{1..n}`.
inline Perm displayed_pi1_gn1(std::size_t n) {
  std::vector<Point> pts{0, 2, 1, 3};
  for (std::size_t i = 5; i <= n; ++i) pts.push_back(static_cast<Point>(i - 1));
  return Perm::from_cycles(n, std::vector<std::vector<Point>>{pts});
}

/// Largest `r` with `r^k <= x`.
inline std::uint64_t integer_root(std::uint64_t x, unsigned k) {
  auto pow_le = [&](std::uint64_t r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc > x) return false;
    }
    return true;
  };
  std::uint64_t lo = 0, hi = 1;
  while (pow_le(hi)) hi *= 2;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (pow_le(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// `x = m^k` for some `m >= 2`, `k >= 2`.
inline bool is_proper_power(std::uint64_t x) {
  if (x < 4) return false;
  for (unsigned k = 2; (std::uint64_t{1} << k) <= x && k < 64; ++k) {
    const std::uint64_t r = integer_root(x, k);
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == x) return true;
  }
  return false;
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

struct VertexCountCheck {
  std::size_t n = 0;
  std::uint64_t count = 0;       ///< (n!)^2 / 8
  bool proper_power = true;
  std::optional<std::uint64_t> prime;  ///< least prime in (n/2, n)
  unsigned prime_exponent = 0;         ///< exponent of `prime` in `count`

  bool holds() const { return !proper_power && prime && prime_exponent == 2; }
};

/// `(n!)^2 / 8` is not a proper power; also exhibits the prime `p` in `(n/2, n)` with `p^2` exactly dividing it.
inline VertexCountCheck gamma_n_vertex_count_check(std::size_t n) {
  if (n < 5 || n % 2 == 0) throw Error(ErrorKind::InvalidInput, "n must be odd and at least 5");
  if (n > 11) throw Error(ErrorKind::BoundExceeded, "(n!)^2 exceeds 64 bits above n = 11");
  VertexCountCheck r;
  r.n = n;
  const std::uint64_t f = factorial(n);
  r.count = f * f / 8;
  r.proper_power = is_proper_power(r.count);
  for (std::uint64_t p = n / 2 + 1; p < n; ++p) {
    if (is_prime(p)) {
      r.prime = p;
      break;
    }
  }
  if (r.prime) {
    std::uint64_t x = r.count;
    while (x % *r.prime == 0) {
      x /= *r.prime;
      ++r.prime_exponent;
    }
  }
  return r;
}

struct GammaNOptions {
  bool explicit_build = false;
  std::size_t max_elements = Limits{}.max_elements;
  std::size_t max_vertices = Limits{}.max_vertices;
};

namespace detail {

inline nlohmann::json cycles_json(const Perm& p) { return p.cycle_string(); }

inline nlohmann::json elements_json(const SubgroupSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const Perm& x : s.elements()) j.push_back(x.cycle_string());
  return j;
}

}  // namespace detail

/// Claims for `Gamma_n`. Group-theoretic criteria always run; class-based checks run while
/// `|G|` fits the element bound; the explicit digraph runs on request within the vertex bound.
inline std::vector<Claim> verify_gamma_n(std::size_t n, const GammaNOptions& opt = {}) {
  using nlohmann::json;
  std::vector<Claim> out;
  const std::string pre = "gamma_n.";
  const GammaNData d = build_gamma_n(n);
  const std::uint64_t half = factorial(n) / 2;
  const std::uint64_t expected_order = 2 * half * half;
  const std::uint64_t index = expected_order / 4;

  out.push_back(check(pre + "orders", "Gamma_n vertex count |G|/|H| = (n!)^2/8", [&] {
    const std::uint64_t go = d.group.order();
    return Outcome{go == expected_order && d.h.size() == 4 && go / d.h.size() == index,
                   {{"G", go}, {"H", d.h.size()}, {"vertices", go / d.h.size()}}};
  }));

  out.push_back(check(pre + "connector", "Gamma_n connector g = ac lies in G", [&] {
    return Outcome{d.g == d.a * d.c && d.group.contains(d.g),
                   {{"g", detail::cycles_json(d.g)}, {"c", detail::cycles_json(d.c)}}};
  }));

  out.push_back(check(pre + "displayed_cycles", "Gamma_n displayed cycles of g, pi_1(g^2), pi_1(g^(n+1))", [&] {
    const Perm g2 = restrict_to(power(d.g, 2), 0, n);
    const Perm gn1 = restrict_to(power(d.g, static_cast<long long>(n + 1)), 0, n);
    const bool ok = d.g == displayed_g(n) && g2 == displayed_pi1_g2(n) && gn1 == displayed_pi1_gn1(n);
    return Outcome{ok, {{"pi1_g2", g2.cycle_string()}, {"pi1_g_n+1", gn1.cycle_string()}}};
  }));

  out.push_back(check(pre + "three_cycle", "Gamma_n pi_1(g^-(n+1) b g^(n+1) b) = (1,2,5)", [&] {
    const Perm gn1 = power(d.g, static_cast<long long>(n + 1));
    const Perm x = restrict_to(conjugate(d.b, gn1) * d.b, 0, n);
    return Outcome{x == Perm::from_cycles(n, {{0, 1, 4}}), {{"value", x.cycle_string()}}};
  }));

  const CosetSpace* space_ptr = nullptr;
  std::optional<CosetSpace> space;
  std::optional<CosetDigraphSpec> spec;
  if (index <= opt.max_vertices) {
    space.emplace(CosetSpace::build(d.group, d.h, opt.max_vertices));
    space_ptr = &*space;
  }

  out.push_back(check(pre + "generation", "Gamma_n connected: <H, g> = G", [&] {
    const Perm extra[] = {d.g};
    const std::uint64_t o = generated_with(d.h, extra).order();
    return Outcome{o == d.group.order(), {{"order_H_g", o}}};
  }));

  const SubgroupSet hg = conjugate_subgroup(d.h, d.g);
  const SubgroupSet hgi = conjugate_subgroup(d.h, d.g.inverse());
  const SubgroupSet a_grp = SubgroupSet::generated_by(2 * n, {d.a});
  const SubgroupSet ab_grp = SubgroupSet::generated_by(2 * n, {d.a * d.b});

  out.push_back(check(pre + "h_cap_hg", "Gamma_n H n H^g = <a>", [&] {
    const SubgroupSet x = intersect(d.h, hg);
    return Outcome{x == a_grp && !(hg == d.h), {{"elements", detail::elements_json(x)}}};
  }));

  out.push_back(check(pre + "h_cap_hginv", "Gamma_n H n H^(g^-1) = <ab>", [&] {
    const SubgroupSet x = intersect(d.h, hgi);
    return Outcome{x == ab_grp, {{"elements", detail::elements_json(x)}}};
  }));

  out.push_back(check(pre + "ab_conjugate", "Gamma_n (ab)^g = a", [&] {
    const Perm x = conjugate(d.a * d.b, d.g);
    return Outcome{x == d.a, {{"value", x.cycle_string()}}};
  }));

  out.push_back(check(pre + "two_arc_factorization", "Gamma_n H = <a><ab> = (gHg^-1 n H)(H n g^-1Hg)", [&] {
    const auto prod = product_set(a_grp.elements(), ab_grp.elements());
    const SubgroupSet left = intersect(conjugate_subgroup(d.h, d.g.inverse()), d.h);
    const SubgroupSet right = intersect(d.h, hg);
    const auto prod2 = product_set(left.elements(), right.elements());
    const bool by_order = is_factorization(d.h.size(), left, right);
    return Outcome{prod == d.h.elements() && prod2 == d.h.elements() && by_order,
                   {{"product_size", prod2.size()}, {"order_test", by_order}}};
  }));

  out.push_back(check(pre + "antisymmetry", "Gamma_n g^-1 not in HgH", [&] {
    const bool inside = in_double_coset(d.g.inverse(), d.h, d.g, d.h, opt.max_elements);
    return Outcome{!inside, {{"g_inverse_in_HgH", inside}}};
  }));

  out.push_back(check(pre + "socle_point_stabilizer", "Gamma_n (G_1 x G_2) n H = <b>, socle transitive", [&] {
    std::vector<Perm> meet;
    for (const Perm& x : d.h.elements()) {
      if (d.socle.contains(x)) meet.push_back(x);
    }
    const SubgroupSet m = SubgroupSet::unchecked(2 * n, meet);
    const SubgroupSet b_grp = SubgroupSet::generated_by(2 * n, {d.b});
    const std::uint64_t so = d.socle.order();
    const bool normal = is_normal(d.group, d.socle) && d.group.contains_group(d.socle);
    const bool transitive = so / m.size() == index;
    return Outcome{m == b_grp && normal && transitive && so == half * half,
                   {{"socle_order", so}, {"stabilizer", detail::elements_json(m)}, {"transitive", transitive}}};
  }));

  if (expected_order <= opt.max_elements) {
    out.push_back(check(pre + "quasiprimitive", "Gamma_n G quasiprimitive on vertices", [&] {
      const auto q = quasiprimitive_on_cosets(d.group, d.h, opt.max_elements);
      json w{{"classes", q.classes}};
      if (q.witness) w["intransitive_closure_of"] = q.witness->cycle_string();
      return Outcome{q.quasiprimitive, w};
    }));
    out.push_back(check(pre + "unique_minimal_normal", "Gamma_n unique minimal normal subgroup, PA-consistent", [&] {
      const auto mins = minimal_normal_subgroups(d.group, opt.max_elements);
      json orders = json::array();
      for (const PermGroup& m : mins) orders.push_back(m.order());
      bool ok = mins.size() == 1 && mins[0].order() == half * half;
      if (ok) {
        std::size_t meet = 0;
        for (const Perm& x : d.h.elements()) meet += mins[0].contains(x) ? 1 : 0;
        ok = meet == 2 && mins[0].contains(d.b);
        orders.push_back(json{{"stabilizer_order", meet}});
      }
      return Outcome{ok, {{"minimal_normal_orders", orders}}};
    }));
  } else {
    const std::string why = "|G| = " + std::to_string(expected_order) + " exceeds the element bound " +
                            std::to_string(opt.max_elements) + " needed for class enumeration";
    out.push_back(skipped(pre + "quasiprimitive", "Gamma_n G quasiprimitive on vertices", why));
    out.push_back(skipped(pre + "unique_minimal_normal", "Gamma_n unique minimal normal subgroup, PA-consistent", why));
  }

  if (space_ptr) {
    spec.emplace(std::move(*space), d.g, opt.max_elements);
    out.push_back(check(pre + "criteria", "Gamma_n coset criteria (regularity, connectivity, 2-arc chain)", [&] {
      const std::size_t k = regularity_formula(*spec);
      const bool conn = connected_via_generation(*spec);
      const bool s2 = s_arc_transitive_by_factorization(*spec, 2);
      const bool s3 = s_arc_transitive_by_factorization(*spec, 3);
      const bool two = two_arc_check(*spec);
      return Outcome{k == 2 && conn && s2 && two && !s3,
                     {{"regularity", k}, {"connected", conn}, {"s2", s2}, {"s3", s3}, {"two_arc", two}}};
    }));
  } else {
    out.push_back(skipped(pre + "criteria", "Gamma_n coset criteria (regularity, connectivity, 2-arc chain)",
                          "index " + std::to_string(index) + " exceeds the vertex bound"));
  }

  const std::string explicit_anchor = "Gamma_n explicit digraph confirmations";
  if (!opt.explicit_build) {
    out.push_back(skipped(pre + "explicit", explicit_anchor, "explicit build not requested"));
  } else if (!spec) {
    out.push_back(skipped(pre + "explicit", explicit_anchor,
                          "index " + std::to_string(index) + " exceeds the vertex bound"));
  } else {
    out.push_back(check(pre + "explicit", explicit_anchor, [&] {
      const CosetDigraph cd = build_coset_digraph(*spec);
      const Digraph& gamma = cd.digraph;
      const auto k = regularity(gamma);
      const bool conn = is_connected(gamma);
      const auto o2 = s_arc_orbit(gamma, cd.acting.generators(), 2);
      const auto o3 = s_arc_orbit(gamma, cd.acting.generators(), 3);
      const std::uint64_t go = cd.acting.order();
      const bool by_factor = s_arc_transitive_by_factorization(*spec, 2);
      const bool primitive = primitive_via_maximality(*spec);
      const std::string witness = "3-arc count " + std::to_string(o3.total) + " > |G| " + std::to_string(go);
      const bool ok = gamma.size() == index && k && *k == 2 && conn && o2.transitive() == by_factor &&
                      o2.transitive() && o2.total == go && !o3.transitive() && o3.total > go && !primitive;
      return Outcome{ok,
                     {{"vertices", gamma.size()},
                      {"regularity", k ? json(*k) : json(nullptr)},
                      {"connected", conn},
                      {"two_arcs", o2.total},
                      {"two_arc_orbit", o2.orbit_size},
                      {"oracle_s2", o2.transitive()},
                      {"factorization_s2", by_factor},
                      {"oracle_s3", o3.transitive()},
                      {"s3_witness", witness},
                      {"primitive", primitive}}};
    }));
  }

  if (n <= 11) {
    out.push_back(check(pre + "vertex_count_not_power", "Gamma_n vertex count is not a proper power", [&] {
      const auto v = gamma_n_vertex_count_check(n);
      return Outcome{v.holds(),
                     {{"count", v.count},
                      {"proper_power", v.proper_power},
                      {"prime", v.prime ? json(*v.prime) : json(nullptr)},
                      {"prime_exponent", v.prime_exponent}}};
    }));
  }
  return out;
}

}  // namespace arctest
