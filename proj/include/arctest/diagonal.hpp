#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arctest/cayley.hpp"
#include "arctest/coset.hpp"
#include "arctest/digraph.hpp"
#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/structure.hpp"
#include "arctest/subgroup.hpp"

namespace arctest {

/// An element of `T^k` as a vector of element indices.
using Tuple = std::vector<Elem>;

/// Right cosets of the full diagonal `D` in `T^k`, `k = |T|`, with the connector
/// `g = (t_1, ..., t_k)` given by an enumeration of `T`.
///
/// A coset `D(g_1, ..., g_k)` is stored in canonical form: left-multiplied by `g_1^-1`,
/// so its first coordinate is the identity.
class DiagonalSpace {
 public:
  explicit DiagonalSpace(const CayleyGroup& t) : DiagonalSpace(t, default_enumeration(t)) {}

  DiagonalSpace(const CayleyGroup& t, std::vector<Elem> enumeration) : t_(&t), e_(std::move(enumeration)) {
    if (t.size() < 2 || t.is_abelian()) throw Error(ErrorKind::InvalidConstruction, "T must be nonabelian");
    if (!t.has_trivial_center()) throw Error(ErrorKind::InvalidConstruction, "T must have trivial center");
    if (e_.size() != t.size()) throw Error(ErrorKind::InvalidConstruction, "enumeration has wrong length");
    pos_.assign(t.size(), static_cast<Elem>(t.size()));
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] >= t.size() || pos_[e_[i]] != t.size()) {
        throw Error(ErrorKind::InvalidConstruction, "enumeration does not list every element once");
      }
      pos_[e_[i]] = static_cast<Elem>(i);
    }
  }

  static std::vector<Elem> default_enumeration(const CayleyGroup& t) {
    std::vector<Elem> e(t.size());
    for (Elem i = 0; i < t.size(); ++i) e[i] = i;
    return e;
  }

  const CayleyGroup& group() const noexcept { return *t_; }
  std::size_t k() const noexcept { return e_.size(); }
  const Tuple& connector() const noexcept { return e_; }
  /// Position `i` with `t_i = t`.
  Elem position_of(Elem t) const { return pos_[t]; }

  Tuple canonical(Tuple c) const {
    const Elem l = t_->inv(c[0]);
    for (Elem& x : c) x = t_->mul(l, x);
    return c;
  }

  /// `(h_1, ..., h_k) in D(g_1, ..., g_k)`, i.e. `h_i g_i^-1` is constant.
  bool in_coset(const Tuple& h, const Tuple& g) const {
    const Elem c = t_->mul(h[0], t_->inv(g[0]));
    for (std::size_t i = 1; i < k(); ++i) {
      if (t_->mul(h[i], t_->inv(g[i])) != c) return false;
    }
    return true;
  }

  Tuple base() const { return Tuple(k(), t_->identity()); }

  Tuple constant(Elem t) const { return Tuple(k(), t); }

  Tuple impulse(std::size_t i, Elem u) const {
    Tuple c = base();
    c[i] = u;
    return c;
  }

  Tuple inverse(const Tuple& w) const {
    Tuple r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = t_->inv(w[i]);
    return r;
  }

  /// `D c w`.
  Tuple right_mult(const Tuple& c, const Tuple& w) const {
    Tuple r(k());
    for (std::size_t i = 0; i < k(); ++i) r[i] = t_->mul(c[i], w[i]);
    return canonical(std::move(r));
  }

  /// `t_{i^{x(t)}} = t t_i`.
  Perm index_perm_x(Elem t) const {
    std::vector<Point> img(k());
    for (std::size_t i = 0; i < k(); ++i) img[i] = pos_[t_->mul(t, e_[i])];
    return Perm(std::move(img));
  }

  /// `t_{i^{y(t)}} = t_i t^-1`.
  Perm index_perm_y(Elem t) const {
    std::vector<Point> img(k());
    for (std::size_t i = 0; i < k(); ++i) img[i] = pos_[t_->mul(e_[i], t_->inv(t))];
    return Perm(std::move(img));
  }

  /// `t_{i^{z(phi)}} = t_i^phi`.
  Perm index_perm_z(const Automorphism& phi) const {
    std::vector<Point> img(k());
    for (std::size_t i = 0; i < k(); ++i) img[i] = pos_[phi(e_[i])];
    return Perm(std::move(img));
  }

  /// `c_i -> c_{i^p}` for an index permutation `p`.
  Tuple permute_coordinates(const Tuple& c, const Perm& p) const {
    Tuple r(k());
    for (std::size_t i = 0; i < k(); ++i) r[i] = c[p[static_cast<Point>(i)]];
    return canonical(std::move(r));
  }

  Tuple lambda(Elem t, const Tuple& c) const { return permute_coordinates(c, index_perm_x(t)); }
  Tuple rho(Elem t, const Tuple& c) const { return permute_coordinates(c, index_perm_y(t)); }

  /// `D(g)^{delta(phi)} = D((g_{1^{z(phi^-1)}})^phi, ...)`.
  Tuple delta(const Automorphism& phi, const Tuple& c) const {
    const Perm z = index_perm_z(arctest::inverse(phi));
    Tuple r(k());
    for (std::size_t i = 0; i < k(); ++i) r[i] = phi(c[z[static_cast<Point>(i)]]);
    return canonical(std::move(r));
  }

  Tuple sigma(Elem t, const Tuple& c) const { return right_mult(c, constant(t)); }

  /// Out-neighbours `D g (t, ..., t) c = D(t_1 t c_1, ..., t_k t c_k)`, `t in T`, sorted.
  std::vector<Tuple> out_neighbours(const Tuple& c) const {
    std::vector<Tuple> out;
    out.reserve(k());
    for (Elem t = 0; t < k(); ++t) {
      Tuple r(k());
      for (std::size_t i = 0; i < k(); ++i) r[i] = t_->mul(t_->mul(e_[i], t), c[i]);
      out.push_back(canonical(std::move(r)));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// `k^(k-1)`, or nullopt when it exceeds `bound`.
  std::optional<std::uint64_t> vertex_count(std::uint64_t bound) const {
    unsigned __int128 n = 1;
    for (std::size_t i = 1; i < k(); ++i) {
      n *= k();
      if (n > bound) return std::nullopt;
    }
    return static_cast<std::uint64_t>(n);
  }

  /// Coordinates 2..k of a canonical tuple read as base-k digits.
  std::uint64_t vertex_id(const Tuple& c) const {
    std::uint64_t id = 0;
    for (std::size_t i = 1; i < k(); ++i) id = id * k() + c[i];
    return id;
  }

  Tuple vertex(std::uint64_t id) const {
    Tuple c(k(), t_->identity());
    for (std::size_t i = k(); i-- > 1;) {
      c[i] = static_cast<Elem>(id % k());
      id /= k();
    }
    return c;
  }

  Tuple random_coset(std::mt19937_64& rng) const {
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(k() - 1));
    Tuple c(k());
    for (Elem& x : c) x = pick(rng);
    return canonical(std::move(c));
  }

 private:
  const CayleyGroup* t_;
  Tuple e_;
  std::vector<Elem> pos_;
};

using CosetMap = std::function<Tuple(const Tuple&)>;

/// `D`, every impulse `D e_i(u)` with `u != 1`, then `random_count` seeded random cosets.
inline std::vector<Tuple> spanning_cosets(const DiagonalSpace& sp, std::uint64_t seed, std::size_t random_count = 1000) {
  std::vector<Tuple> out{sp.base()};
  for (std::size_t i = 0; i < sp.k(); ++i) {
    for (Elem u = 0; u + 1 < sp.k(); ++u) out.push_back(sp.canonical(sp.impulse(i, u)));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) out.push_back(sp.random_coset(rng));
  return out;
}

/// `D`, impulses by each generator of `T` at every coordinate, then seeded random cosets.
inline std::vector<Tuple> test_cosets(const DiagonalSpace& sp, std::uint64_t seed, std::size_t random_count = 100) {
  std::vector<Tuple> out{sp.base()};
  for (std::size_t i = 0; i < sp.k(); ++i) {
    for (Elem u : sp.group().generators()) out.push_back(sp.canonical(sp.impulse(i, u)));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) out.push_back(sp.random_coset(rng));
  return out;
}

/// Every vertex, in id order.
inline std::vector<Tuple> all_cosets(const DiagonalSpace& sp, std::uint64_t max_vertices = Limits{}.max_vertices) {
  const auto n = sp.vertex_count(max_vertices);
  if (!n) throw Error(ErrorKind::BoundExceeded, "vertex count above bound");
  std::vector<Tuple> out;
  out.reserve(*n);
  for (std::uint64_t id = 0; id < *n; ++id) out.push_back(sp.vertex(id));
  return out;
}

struct LocalChecks {
  std::size_t intersection_iterations = 0;  ///< elements t of T tried
  std::size_t intersection_hits = 0;        ///< t != 1 with (t_i^-1 t t_i) constant
  std::size_t double_coset_pairs = 0;       ///< (s, t) tried
  std::size_t double_coset_hits = 0;        ///< (s, t) with t_i^-1 = s t_i t for all i
  bool enumerates = false;                  ///< {t_1, ..., t_k} = T

  bool holds() const { return intersection_hits == 0 && double_coset_hits == 0 && enumerates; }
};

/// `D n g^-1 D g = 1`, `g^-1 not in DgD`, and `<t_1, ..., t_k> = T`, by brute force over `T` and `T^2`.
inline LocalChecks gamma_T_local_checks(const DiagonalSpace& sp) {
  const CayleyGroup& t = sp.group();
  const Tuple& e = sp.connector();
  LocalChecks r;
  for (Elem x = 0; x < t.size(); ++x) {
    ++r.intersection_iterations;
    if (x == t.identity()) continue;
    const Elem first = t.conj(x, e[0]);
    bool constant = true;
    for (std::size_t i = 1; i < sp.k() && constant; ++i) constant = t.conj(x, e[i]) == first;
    if (constant) ++r.intersection_hits;
  }
  for (Elem s = 0; s < t.size(); ++s) {
    for (Elem x = 0; x < t.size(); ++x) {
      ++r.double_coset_pairs;
      bool all = true;
      for (std::size_t i = 0; i < sp.k() && all; ++i) all = t.inv(e[i]) == t.mul(t.mul(s, e[i]), x);
      if (all) ++r.double_coset_hits;
    }
  }
  std::vector<char> seen(t.size(), 0);
  for (Elem x : e) seen[x] = 1;
  r.enumerates = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  return r;
}

struct TwoArcLocal {
  std::size_t cosets_tested = 0;
  std::size_t identity_failures = 0;  ///< t with g^-1 sigma(t) lambda(t) g != lambda(t) on the tested cosets
  std::size_t hv_elements = 0;        ///< distinct fingerprints of sigma(s) lambda(t)
  std::size_t product_elements = 0;   ///< distinct fingerprints of K (g^-1 K g)
  bool product_equals_hv = false;

  bool holds() const { return identity_failures == 0 && product_equals_hv; }
};

/// `g^-1 sigma(t) lambda(t) g = lambda(t)` on the spanning cosets, and `H_v = K (g^-1 K g)`
/// with `H_v = sigma(T) x lambda(T)` and `K = {sigma(t) lambda(t)}`.
///
/// Elements of `H_v` and of the product are compared through their images of a fingerprint
/// set: `D`, the impulses at coordinate 1 by the generators of `T`, and eight random cosets.
/// The `|T|^2` fingerprints of `H_v` are first checked to be distinct.
inline TwoArcLocal verify_two_arc_local(const DiagonalSpace& sp, std::uint64_t seed,
                                        std::size_t random_cosets = 1000) {
  const CayleyGroup& t = sp.group();
  const Tuple& g = sp.connector();
  const Tuple gi = sp.inverse(g);
  TwoArcLocal r;
  const auto cosets = spanning_cosets(sp, seed, random_cosets);
  r.cosets_tested = cosets.size();
  for (Elem x = 0; x < t.size(); ++x) {
    for (const Tuple& c : cosets) {
      const Tuple lhs = sp.right_mult(sp.lambda(x, sp.sigma(x, sp.right_mult(c, gi))), g);
      if (lhs != sp.lambda(x, c)) {
        ++r.identity_failures;
        break;
      }
    }
  }

  std::vector<Tuple> finger{sp.base()};
  for (Elem u : t.generators()) finger.push_back(sp.canonical(sp.impulse(1, u)));
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < 8; ++i) finger.push_back(sp.random_coset(rng));

  auto print = [&](const CosetMap& f) {
    std::vector<Elem> out;
    for (const Tuple& c : finger) {
      const Tuple img = f(c);
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  };
  std::set<std::vector<Elem>> hv, prod;
  for (Elem s = 0; s < t.size(); ++s) {
    for (Elem x = 0; x < t.size(); ++x) {
      hv.insert(print([&](const Tuple& c) { return sp.lambda(x, sp.sigma(s, c)); }));
      prod.insert(print([&](const Tuple& c) {
        const Tuple k1 = sp.lambda(s, sp.sigma(s, c));
        return sp.right_mult(sp.lambda(x, sp.sigma(x, sp.right_mult(k1, gi))), g);
      }));
    }
  }
  r.hv_elements = hv.size();
  r.product_elements = prod.size();
  r.product_equals_hv = hv.size() == t.size() * t.size() && hv == prod;
  return r;
}

struct MonomorphismReport {
  std::size_t cosets_tested = 0;
  std::size_t lambda_pairs = 0, lambda_failures = 0;
  std::size_t rho_pairs = 0, rho_failures = 0;
  std::size_t delta_pairs = 0, delta_failures = 0;
  bool lambda_injective = false, rho_injective = false, delta_injective = false;

  bool holds() const {
    return lambda_failures == 0 && rho_failures == 0 && delta_failures == 0 && lambda_injective &&
           rho_injective && delta_injective;
  }
};

/// Homomorphism identities `f(st) = f(s) f(t)` over all pairs of `T` for lambda and rho and
/// over pairs of automorphisms for delta (all pairs when `|Aut T| <= 60`, generator pairs
/// otherwise); injectivity by checking that every non-identity input moves some coset.
inline MonomorphismReport verify_monomorphisms(const DiagonalSpace& sp, const AutomorphismSet& aut,
                                               std::span<const Tuple> cosets) {
  const CayleyGroup& t = sp.group();
  MonomorphismReport r;
  r.cosets_tested = cosets.size();
  auto check_pairs = [&](auto act, std::size_t& pairs, std::size_t& failures) {
    for (Elem s = 0; s < t.size(); ++s) {
      for (Elem x = 0; x < t.size(); ++x) {
        ++pairs;
        const Elem sx = t.mul(s, x);
        for (const Tuple& c : cosets) {
          if (act(sx, c) != act(x, act(s, c))) {
            ++failures;
            break;
          }
        }
      }
    }
  };
  auto lam = [&](Elem x, const Tuple& c) { return sp.lambda(x, c); };
  auto rh = [&](Elem x, const Tuple& c) { return sp.rho(x, c); };
  check_pairs(lam, r.lambda_pairs, r.lambda_failures);
  check_pairs(rh, r.rho_pairs, r.rho_failures);
  auto moves_something = [&](auto act) {
    for (const Tuple& c : cosets) {
      if (act(c) != c) return true;
    }
    return false;
  };
  r.lambda_injective = r.rho_injective = true;
  for (Elem x = 0; x + 1 < t.size(); ++x) {
    r.lambda_injective = r.lambda_injective && moves_something([&](const Tuple& c) { return sp.lambda(x, c); });
    r.rho_injective = r.rho_injective && moves_something([&](const Tuple& c) { return sp.rho(x, c); });
  }
  const auto& pool = aut.size() <= 60 ? aut.members() : aut.generators();
  for (const Automorphism& phi : pool) {
    for (const Automorphism& psi : pool) {
      ++r.delta_pairs;
      const Automorphism both = compose(phi, psi);
      for (const Tuple& c : cosets) {
        if (sp.delta(both, c) != sp.delta(psi, sp.delta(phi, c))) {
          ++r.delta_failures;
          break;
        }
      }
    }
  }
  r.delta_injective = true;
  for (const Automorphism& phi : aut.members()) {
    bool identity = true;
    for (Elem a = 0; a < t.size() && identity; ++a) identity = phi(a) == a;
    if (!identity && !moves_something([&](const Tuple& c) { return sp.delta(phi, c); })) {
      r.delta_injective = false;
    }
  }
  return r;
}

struct ThreeArcCount {
  std::uint64_t m_v = 0;               ///< |M_v|: right multiplications fixing D
  std::uint64_t two_arcs_from_v = 0;   ///< 2-arcs starting at D

  /// `M_v` is too small to be transitive on the 2-arcs from `v`.
  bool impossible() const { return m_v < two_arcs_from_v; }
};

/// `|M_v| = |T|` against the `|T|^2` 2-arcs leaving `v = D`.
inline ThreeArcCount not_three_arc_count(const DiagonalSpace& sp) {
  ThreeArcCount r;
  const Tuple v = sp.base();
  for (Elem x = 0; x < sp.k(); ++x) {
    if (sp.sigma(x, v) == v) ++r.m_v;
  }
  std::set<std::pair<Tuple, Tuple>> arcs;
  for (const Tuple& w : sp.out_neighbours(v)) {
    for (Tuple& u : sp.out_neighbours(w)) arcs.emplace(w, std::move(u));
  }
  r.two_arcs_from_v = arcs.size();
  return r;
}

/// Vertex permutation induced by a coset map.
inline Perm vertex_perm(const DiagonalSpace& sp, std::uint64_t n, const CosetMap& f) {
  std::vector<Point> img(n);
  for (std::uint64_t id = 0; id < n; ++id) img[id] = static_cast<Point>(sp.vertex_id(f(sp.vertex(id))));
  return Perm(std::move(img));
}

/// The explicit digraph on all `k^(k-1)` cosets.
inline Digraph explicit_digraph(const DiagonalSpace& sp, std::uint64_t max_vertices = Limits{}.max_vertices) {
  const auto n = sp.vertex_count(max_vertices);
  if (!n) {
    throw Error(ErrorKind::BoundExceeded, "|T|^(|T|-1) vertices exceed the explicit bound; use element-level checks");
  }
  std::vector<std::vector<Vertex>> out(*n);
  for (std::uint64_t id = 0; id < *n; ++id) {
    for (const Tuple& w : sp.out_neighbours(sp.vertex(id))) out[id].push_back(static_cast<Vertex>(sp.vertex_id(w)));
  }
  return Digraph::from_out_lists(std::move(out));
}

struct ExplicitGammaT {
  Digraph digraph;
  std::vector<Perm> m_generators;      ///< impulses e_i(u), u a generator of T, every i
  std::vector<Perm> lambda_generators;
  std::vector<Perm> rho_generators;
  std::vector<Perm> delta_generators;

  /// Impulses at the first coordinate with lambda, rho and delta generators; generates X.
  std::vector<Perm> x_generators(std::size_t t_generator_count) const {
    std::vector<Perm> gens(m_generators.begin(), m_generators.begin() + static_cast<std::ptrdiff_t>(t_generator_count));
    for (const auto* list : {&lambda_generators, &rho_generators, &delta_generators}) {
      gens.insert(gens.end(), list->begin(), list->end());
    }
    return gens;
  }

  std::vector<Perm> m_and_lambda() const {
    std::vector<Perm> gens = m_generators;
    gens.insert(gens.end(), lambda_generators.begin(), lambda_generators.end());
    return gens;
  }
};

/// Builds the digraph and generators of `M`, `lambda(T)`, `rho(T)`, `delta(Aut T)` on vertex ids.
/// Every generator is checked to be an automorphism (NotAutomorphism otherwise).
inline ExplicitGammaT build_explicit_gamma_T(const DiagonalSpace& sp, const AutomorphismSet& aut,
                                             std::uint64_t max_vertices = Limits{}.max_vertices) {
  ExplicitGammaT r;
  r.digraph = explicit_digraph(sp, max_vertices);
  const std::uint64_t n = r.digraph.size();
  const auto gens = sp.group().generators();
  for (std::size_t i = 0; i < sp.k(); ++i) {
    for (Elem u : gens) {
      const Tuple w = sp.impulse(i, u);
      r.m_generators.push_back(vertex_perm(sp, n, [&](const Tuple& c) { return sp.right_mult(c, w); }));
    }
  }
  for (Elem u : gens) {
    r.lambda_generators.push_back(vertex_perm(sp, n, [&](const Tuple& c) { return sp.lambda(u, c); }));
    r.rho_generators.push_back(vertex_perm(sp, n, [&](const Tuple& c) { return sp.rho(u, c); }));
  }
  for (const Automorphism& phi : aut.generators()) {
    r.delta_generators.push_back(vertex_perm(sp, n, [&](const Tuple& c) { return sp.delta(phi, c); }));
  }
  for (const auto* list : {&r.m_generators, &r.lambda_generators, &r.rho_generators, &r.delta_generators}) {
    require_automorphisms(r.digraph, *list);
  }
  return r;
}

struct IsomorphismReport {
  std::size_t vertices = 0;
  std::size_t arcs_checked = 0;
  bool bijective = false;
  bool arcs_preserved = false;

  bool holds() const { return bijective && arcs_preserved; }
};

/// The coordinate permutation `x` with `t_{i^x} = t'_i` carries `Cos(T^k, D, g)` to
/// `Cos(T^k, D, g')` via `Dh -> D(h_{1^x}, ..., h_{k^x})`; checked arc by arc.
inline IsomorphismReport enumeration_independence(const CayleyGroup& t, std::vector<Elem> e,
                                                  std::vector<Elem> e_prime,
                                                  std::uint64_t max_vertices = Limits{}.max_vertices) {
  const DiagonalSpace a(t, std::move(e));
  const DiagonalSpace b(t, std::move(e_prime));
  std::vector<Point> x(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) x[i] = a.position_of(b.connector()[i]);
  const Perm px(std::move(x));
  const Digraph da = explicit_digraph(a, max_vertices);
  const Digraph db = explicit_digraph(b, max_vertices);
  IsomorphismReport r;
  r.vertices = da.size();
  std::vector<Vertex> map(da.size());
  std::vector<char> hit(db.size(), 0);
  r.bijective = da.size() == db.size();
  for (Vertex v = 0; v < da.size() && r.bijective; ++v) {
    map[v] = static_cast<Vertex>(b.vertex_id(a.permute_coordinates(a.vertex(v), px)));
    if (hit[map[v]]) r.bijective = false;
    hit[map[v]] = 1;
  }
  r.arcs_preserved = r.bijective && da.arc_count() == db.arc_count();
  for (Vertex v = 0; v < da.size() && r.arcs_preserved; ++v) {
    for (Vertex w : da.out(v)) {
      ++r.arcs_checked;
      if (!db.has_arc(map[v], map[w])) {
        r.arcs_preserved = false;
        break;
      }
    }
  }
  return r;
}

struct IndexActionReport {
  bool defining_identities = false;  ///< x, y, z satisfy their defining equations for all inputs
  std::uint64_t order = 0;           ///< |<x(T), z(Aut T)>|
  std::uint64_t expected_order = 0;  ///< |T| |Aut T|
  bool y_inside = false;             ///< y(T) lies in <x(T), z(Inn T)>
  bool transitive = false;
  bool primitive = false;
  std::optional<std::vector<Point>> block;  ///< a nontrivial block when imprimitive

  bool order_matches() const { return order == expected_order; }
};

inline IndexActionReport verify_index_action(const DiagonalSpace& sp, const AutomorphismSet& aut) {
  const CayleyGroup& t = sp.group();
  const Tuple& e = sp.connector();
  IndexActionReport r;
  r.defining_identities = true;
  std::vector<Perm> xs, ys, z_inn, gens;
  for (Elem x = 0; x < t.size(); ++x) {
    const Perm px = sp.index_perm_x(x), py = sp.index_perm_y(x);
    for (std::size_t i = 0; i < sp.k(); ++i) {
      r.defining_identities = r.defining_identities && e[px[static_cast<Point>(i)]] == t.mul(x, e[i]) &&
                              e[py[static_cast<Point>(i)]] == t.mul(e[i], t.inv(x));
    }
    xs.push_back(px);
    ys.push_back(py);
  }
  for (const Automorphism& phi : aut.members()) {
    const Perm pz = sp.index_perm_z(phi);
    for (std::size_t i = 0; i < sp.k(); ++i) {
      r.defining_identities = r.defining_identities && e[pz[static_cast<Point>(i)]] == phi(e[i]);
    }
    if (phi.inner) z_inn.push_back(pz);
  }
  gens = xs;
  for (const Automorphism& phi : aut.generators()) gens.push_back(sp.index_perm_z(phi));
  const PermGroup hol(sp.k(), gens);
  r.order = hol.order();
  r.expected_order = static_cast<std::uint64_t>(t.size()) * aut.size();
  std::vector<Perm> inn_gens = xs;
  inn_gens.insert(inn_gens.end(), z_inn.begin(), z_inn.end());
  const PermGroup inn(sp.k(), inn_gens);
  r.y_inside = std::all_of(ys.begin(), ys.end(), [&](const Perm& y) { return inn.contains(y); });
  r.transitive = is_transitive(hol);
  if (r.transitive) {
    r.block = nontrivial_block(hol);
    r.primitive = !r.block.has_value();
  }
  return r;
}

/// `w` in the product of right regular representations: point `i k + a` goes to `i k + a w_i`.
inline Perm regular_tuple_perm(const DiagonalSpace& sp, const Tuple& w) {
  const std::size_t k = sp.k();
  std::vector<Point> img(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (Elem a = 0; a < k; ++a) img[i * k + a] = static_cast<Point>(i * k + sp.group().mul(a, w[i]));
  }
  return Perm(std::move(img));
}

/// Block permutation whose conjugation action on `T^k` is `lambda(t)`.
inline Perm block_perm_lambda(const DiagonalSpace& sp, Elem t) {
  const std::size_t k = sp.k();
  const Perm xi = sp.index_perm_x(sp.group().inv(t));
  std::vector<Point> img(k * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t a = 0; a < k; ++a) img[j * k + a] = static_cast<Point>(xi[static_cast<Point>(j)] * k + a);
  }
  return Perm(std::move(img));
}

/// `Cos(G, H, g)` on `k^2` points for `G = T^k` (or `T^k : lambda(T)`), with the
/// coset maps that each generator of `G` induces on the canonical tuples.
struct GenericGammaT {
  CosetDigraphSpec spec;
  std::vector<CosetMap> counterparts;
};

inline GenericGammaT generic_gamma_T_spec(const DiagonalSpace& sp, bool with_lambda,
                                          std::size_t max_elements = Limits{}.max_elements) {
  const std::size_t deg = sp.k() * sp.k();
  const auto tg = sp.group().generators();
  std::vector<Perm> g_gens, h_gens;
  std::vector<CosetMap> maps;
  for (std::size_t i = 0; i < sp.k(); ++i) {
    for (Elem u : tg) {
      const Tuple w = sp.impulse(i, u);
      g_gens.push_back(regular_tuple_perm(sp, w));
      maps.push_back([&sp, w](const Tuple& c) { return sp.right_mult(c, w); });
    }
  }
  for (Elem u : tg) h_gens.push_back(regular_tuple_perm(sp, sp.constant(u)));
  if (with_lambda) {
    for (Elem u : tg) {
      const Perm p = block_perm_lambda(sp, u);
      g_gens.push_back(p);
      h_gens.push_back(p);
      maps.push_back([&sp, u](const Tuple& c) { return sp.lambda(u, c); });
    }
  }
  const PermGroup g(deg, std::move(g_gens));
  SubgroupSet h = SubgroupSet::generated_by(deg, std::move(h_gens), max_elements);
  CosetSpace cs = CosetSpace::build(g, std::move(h));
  return {CosetDigraphSpec(std::move(cs), regular_tuple_perm(sp, sp.connector()), max_elements), std::move(maps)};
}

/// Matches coset ids of a generic spec with explicit vertex ids by following paired generator
/// actions from `H <-> D`. Returns nullopt when the pairing is inconsistent or not bijective.
inline std::optional<std::vector<Vertex>> equivariant_bijection(const GenericGammaT& generic, const DiagonalSpace& sp,
                                                                std::uint64_t explicit_vertices) {
  const CosetSpace& cs = generic.spec.space();
  const auto& acting = cs.acting_group().generators();
  if (cs.size() != explicit_vertices) return std::nullopt;
  constexpr Vertex unset = ~Vertex{0};
  std::vector<Vertex> map(cs.size(), unset);
  std::vector<char> hit(explicit_vertices, 0);
  map[0] = static_cast<Vertex>(sp.vertex_id(sp.base()));
  hit[map[0]] = 1;
  std::vector<Vertex> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Vertex v = queue[q];
    const Tuple c = sp.vertex(map[v]);
    for (std::size_t s = 0; s < acting.size(); ++s) {
      const Vertex w = acting[s][v];
      const auto image = static_cast<Vertex>(sp.vertex_id(generic.counterparts[s](c)));
      if (map[w] == unset) {
        if (hit[image]) return std::nullopt;
        map[w] = image;
        hit[image] = 1;
        queue.push_back(w);
      } else if (map[w] != image) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != cs.size()) return std::nullopt;
  return map;
}

/// `phi` maps every arc of `a` onto an arc of `b`, with equal arc counts.
inline bool preserves_arcs(const Digraph& a, const Digraph& b, std::span<const Vertex> phi) {
  if (a.size() != b.size() || a.arc_count() != b.arc_count()) return false;
  for (Vertex v = 0; v < a.size(); ++v) {
    for (Vertex w : a.out(v)) {
      if (!b.has_arc(phi[v], phi[w])) return false;
    }
  }
  return true;
}

}  // namespace arctest
