#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arctest/digraph.hpp"
#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/structure.hpp"
#include "arctest/subgroup.hpp"

namespace arctest {

/// Right cosets of `H` in `G`, numbered in breadth-first order from `H` itself.
class CosetSpace {
 public:
  static CosetSpace build(const PermGroup& g, SubgroupSet h, std::size_t max_index = Limits{}.max_vertices) {
    if (h.degree() != g.degree()) throw Error(ErrorKind::DegreeMismatch, "subgroup degree");
    for (const Perm& x : h.generators()) {
      if (!g.contains(x)) throw Error(ErrorKind::NotSubgroup, "subgroup generator outside the group");
    }
    const std::uint64_t order = g.order();
    if (order % h.size() != 0) throw Error(ErrorKind::NotSubgroup, "|H| does not divide |G|");
    check_bound(order / h.size(), max_index, "coset index");

    CosetSpace cs;
    cs.group_ = g;
    cs.subgroup_ = std::move(h);
    const std::size_t index = order / cs.subgroup_.size();
    cs.reps_.reserve(index);
    cs.index_.reserve(index);
    cs.add(canonical_coset_rep(cs.subgroup_, Perm::identity(g.degree())));
    std::vector<std::vector<Point>> images(g.generators().size());
    for (std::size_t i = 0; i < cs.reps_.size(); ++i) {
      for (std::size_t s = 0; s < g.generators().size(); ++s) {
        images[s].push_back(cs.add(canonical_coset_rep(cs.subgroup_, cs.reps_[i] * g.generators()[s])));
      }
    }
    if (cs.reps_.size() != index) throw Error(ErrorKind::NotSubgroup, "coset count disagrees with index");
    std::vector<Perm> acting;
    for (auto& img : images) acting.push_back(Perm(std::move(img)));
    cs.acting_ = PermGroup(index, std::move(acting));
    return cs;
  }

  std::size_t size() const noexcept { return reps_.size(); }
  const PermGroup& group() const noexcept { return group_; }
  const SubgroupSet& subgroup() const noexcept { return subgroup_; }
  const Perm& representative(Vertex id) const { return reps_.at(id); }

  /// Id of the coset `H x`.
  Vertex id_of(const Perm& x) const {
    auto it = index_.find(canonical_coset_rep(subgroup_, x));
    if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "element outside the group");
    return it->second;
  }

  /// Permutation of coset ids induced by right multiplication by `x`.
  Perm action_of(const Perm& x) const {
    std::vector<Point> img(size());
    for (Vertex v = 0; v < size(); ++v) img[v] = id_of(reps_[v] * x);
    return Perm(std::move(img));
  }

  /// `R_H(G)`: the group induced on coset ids by the generators of `G`.
  const PermGroup& acting_group() const noexcept { return acting_; }

  bool is_faithful() const { return acting_.order() == group_.order(); }

 private:
  Vertex add(Perm rep) {
    auto [it, inserted] = index_.try_emplace(rep, static_cast<Vertex>(reps_.size()));
    if (inserted) reps_.push_back(std::move(rep));
    return it->second;
  }

  PermGroup group_;
  SubgroupSet subgroup_;
  std::vector<Perm> reps_;
  std::unordered_map<Perm, Vertex, PermHash> index_;
  PermGroup acting_;
};

/// A coset space with a connector `g` satisfying `g in G \ H` and `g^-1 not in HgH`.
class CosetDigraphSpec {
 public:
  CosetDigraphSpec(CosetSpace space, Perm connector, std::size_t max_elements = Limits{}.max_elements)
      : space_(std::move(space)), g_(std::move(connector)) {
    const SubgroupSet& h = space_.subgroup();
    if (g_.degree() != space_.group().degree()) throw Error(ErrorKind::DegreeMismatch, "connector");
    if (!space_.group().contains(g_)) throw Error(ErrorKind::InvalidConnector, "connector not in G");
    if (h.contains(g_)) throw Error(ErrorKind::InvalidConnector, "connector lies in H");
    if (in_double_coset(g_.inverse(), h, g_, h, max_elements)) {
      throw Error(ErrorKind::InvalidConnector, "g^-1 lies in HgH, the relation is not antisymmetric");
    }
  }

  const CosetSpace& space() const noexcept { return space_; }
  const Perm& connector() const noexcept { return g_; }
  const SubgroupSet& subgroup() const noexcept { return space_.subgroup(); }
  const PermGroup& group() const noexcept { return space_.group(); }

 private:
  CosetSpace space_;
  Perm g_;
};

struct CosetDigraph {
  Digraph digraph;
  PermGroup acting;  ///< R_H(G) on coset ids
};

/// `Hx -> Hy` iff `y x^-1 in HgH`. Out-neighbours of `Hx` are the cosets `H g h x`.
inline CosetDigraph build_coset_digraph(const CosetDigraphSpec& spec) {
  const CosetSpace& cs = spec.space();
  std::vector<Vertex> base_out;
  for (const Perm& h : spec.subgroup().elements()) base_out.push_back(cs.id_of(spec.connector() * h));
  std::sort(base_out.begin(), base_out.end());
  base_out.erase(std::unique(base_out.begin(), base_out.end()), base_out.end());
  std::vector<std::vector<Vertex>> out(cs.size());
  for (Vertex v = 0; v < cs.size(); ++v) {
    for (Vertex w : base_out) out[v].push_back(cs.id_of(cs.representative(w) * cs.representative(v)));
  }
  CosetDigraph result{Digraph::from_out_lists(std::move(out)), cs.acting_group()};
  require_automorphisms(result.digraph, result.acting.generators());
  return result;
}

/// `|H : H n g^-1 H g|`.
inline std::size_t regularity_formula(const CosetDigraphSpec& spec) {
  const SubgroupSet& h = spec.subgroup();
  return h.size() / intersect(h, conjugate_subgroup(h, spec.connector())).size();
}

/// `<H, g> = G`.
inline bool connected_via_generation(const CosetDigraphSpec& spec) {
  const Perm extra[] = {spec.connector()};
  return generated_with(spec.subgroup(), extra).order() == spec.group().order();
}

/// Primitivity of `R_H(G)`, which holds exactly when `H` is maximal in `G`.
inline bool primitive_via_maximality(const CosetDigraphSpec& spec) {
  return is_primitive(spec.space().acting_group());
}

/// `H^{g^j}` for `j` in `[lo, hi]`, intersected.
inline SubgroupSet conjugate_intersection(const SubgroupSet& h, const Perm& g, int lo, int hi) {
  std::optional<SubgroupSet> acc;
  for (int j = lo; j <= hi; ++j) {
    SubgroupSet c = conjugate_subgroup(h, power(g, j));
    acc = acc ? intersect(*acc, c) : std::move(c);
  }
  return acc ? *acc : h;
}

/// One link of the stabilizer chain: `A_i = B_i C_i`.
struct ChainLink {
  int i = 0;
  std::size_t a = 0, b = 0, c = 0, b_and_c = 0;
  bool holds = false;
};

/// The chain `A_i = B_i C_i` for `i = 1, ..., s-1`, where
/// `A_i` intersects `H^{g^j}` over `0 <= j < i`, `B_i` over `-1 <= j < i`, `C_i` over `0 <= j <= i`.
/// Each link is decided by `|B n C| |A| = |B| |C|`.
inline std::vector<ChainLink> factorization_chain(const CosetDigraphSpec& spec, std::size_t s) {
  const SubgroupSet& h = spec.subgroup();
  const Perm& g = spec.connector();
  std::vector<ChainLink> links;
  for (int i = 1; i < static_cast<int>(s); ++i) {
    const SubgroupSet a = conjugate_intersection(h, g, 0, i - 1);
    const SubgroupSet b = conjugate_intersection(h, g, -1, i - 1);
    const SubgroupSet c = conjugate_intersection(h, g, 0, i);
    ChainLink link{i, a.size(), b.size(), c.size(), intersect(b, c).size(), false};
    link.holds = is_factorization(a.size(), b, c);
    links.push_back(link);
  }
  return links;
}

inline bool s_arc_transitive_by_factorization(const CosetDigraphSpec& spec, std::size_t s) {
  for (const ChainLink& l : factorization_chain(spec, s)) {
    if (!l.holds) return false;
  }
  return true;
}

/// `H = (g H g^-1 n H)(H n g^-1 H g)`, checked on the explicit product set.
inline bool two_arc_check(const CosetDigraphSpec& spec, std::size_t max_elements = Limits{}.max_elements) {
  const SubgroupSet& h = spec.subgroup();
  const Perm& g = spec.connector();
  const SubgroupSet left = intersect(conjugate_subgroup(h, g.inverse()), h);
  const SubgroupSet right = intersect(h, conjugate_subgroup(h, g));
  return product_set(left.elements(), right.elements(), max_elements) == h.elements();
}

struct DescentReport {
  bool precondition = false;            ///< oracle verdict: Gamma is (G, s)-arc-transitive
  std::vector<Vertex> arc;              ///< the (s-1)-arc v_1 .. v_s used
  std::vector<bool> factorizations;     ///< G = M G_{v_1..v_i}, i = 1..s
  bool m_arc_transitive = false;        ///< (M, s-1)-arc-transitive
  bool m_regular = false;
  std::optional<bool> directed_cycle;   ///< evaluated when M is regular and s >= 2

  bool holds() const {
    if (!precondition) return false;
    for (bool f : factorizations) {
      if (!f) return false;
    }
    return m_arc_transitive && directed_cycle.value_or(true);
  }
};

/// Consequences of a vertex-transitive normal subgroup `M` of a `(G, s)`-arc-transitive group.
/// Throws NotNormal or NotTransitive when `M` is unsuitable.
inline DescentReport normal_descent_checks(const Digraph& gamma, const PermGroup& g, const PermGroup& m,
                                           std::size_t s) {
  if (s < 2) throw Error(ErrorKind::InvalidInput, "descent checks need s >= 2");
  require_automorphisms(gamma, g.generators());
  if (!g.contains_group(m) || !is_normal(g, m)) throw Error(ErrorKind::NotNormal, "M is not normal in G");
  if (!is_transitive(m)) throw Error(ErrorKind::NotTransitive, "M is not vertex-transitive");
  DescentReport r;
  r.precondition = s_arc_orbit(gamma, g.generators(), s).transitive();
  detail::SArcIndex index(gamma, s - 1);
  if (auto first = index.first()) r.arc = *first;
  const std::uint64_t go = g.order(), mo = m.order();
  for (std::size_t i = 1; i <= r.arc.size(); ++i) {
    std::span<const Point> pts(r.arc.data(), i);
    const auto gs = static_cast<unsigned __int128>(sequence_stabilizer(g, pts).order());
    const auto ms = static_cast<unsigned __int128>(sequence_stabilizer(m, pts).order());
    r.factorizations.push_back(ms * go == gs * mo);
  }
  r.m_arc_transitive = s_arc_orbit(gamma, m.generators(), s - 1).transitive();
  r.m_regular = mo == gamma.size();
  if (r.m_regular) r.directed_cycle = is_directed_cycle(gamma);
  return r;
}

struct CosetQuasiprimitivity {
  bool quasiprimitive = false;
  std::size_t classes = 0;
  std::optional<Perm> witness;  ///< a class representative whose normal closure is intransitive
};

/// Quasiprimitivity of `G` on the right cosets of `H`: the normal closure `N` of each
/// non-identity class representative must satisfy `|N : N n H| = |G : H|` unless `N <= H`.
inline CosetQuasiprimitivity quasiprimitive_on_cosets(const PermGroup& g, const SubgroupSet& h,
                                                      std::size_t max_elements = Limits{}.max_elements) {
  CosetQuasiprimitivity r;
  const auto reps = conjugacy_class_reps(g, max_elements);
  r.classes = reps.size();
  const std::uint64_t index = g.order() / h.size();
  for (const Perm& x : reps) {
    if (x.is_identity()) continue;
    const PermGroup n = normal_closure(g, x);
    std::uint64_t meet = 0;
    for (const Perm& y : h.elements()) meet += n.contains(y) ? 1 : 0;
    if (meet == n.order()) continue;  // N lies in the core and acts trivially
    if (n.order() / meet != index) {
      r.witness = x;
      return r;
    }
  }
  r.quasiprimitive = true;
  return r;
}

}  // namespace arctest
