#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"

namespace arctest {

using Elem = std::uint32_t;

/// A finite group given by its multiplication table. The identity is the last element.
class CayleyGroup {
 public:
  /// Elements of `<gens>` in image order, then the identity moved to the end.
  static CayleyGroup from_permutation_generators(std::string name, std::size_t degree,
                                                 std::vector<Perm> gens,
                                                 std::size_t max_elements = 1000) {
    auto elems = elements(PermGroup(degree, std::move(gens)), max_elements);
    std::rotate(elems.begin(), elems.begin() + 1, elems.end());
    const std::size_t k = elems.size();
    std::vector<std::vector<Elem>> table(k, std::vector<Elem>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const Perm ab = elems[a] * elems[b];
        table[a][b] = static_cast<Elem>(std::lower_bound(elems.begin(), elems.end() - 1, ab) - elems.begin());
        if (ab.is_identity()) table[a][b] = static_cast<Elem>(k - 1);
      }
    }
    CayleyGroup t = from_table(std::move(name), std::move(table));
    t.labels_ = std::move(elems);
    return t;
  }

  /// Validates a table: Latin square, last element is a two-sided identity, associative.
  /// Associativity is exhaustive up to 100 elements, otherwise checked on seeded random triples.
  static CayleyGroup from_table(std::string name, std::vector<std::vector<Elem>> table,
                                std::uint64_t seed = Limits{}.seed) {
    const std::size_t k = table.size();
    if (k == 0) throw Error(ErrorKind::InvalidConstruction, "empty table");
    std::vector<char> seen(k);
    for (std::size_t a = 0; a < k; ++a) {
      if (table[a].size() != k) throw Error(ErrorKind::InvalidConstruction, "table is not square");
      std::fill(seen.begin(), seen.end(), 0);
      for (Elem x : table[a]) {
        if (x >= k || seen[x]) throw Error(ErrorKind::InvalidConstruction, "row is not a permutation");
        seen[x] = 1;
      }
    }
    for (std::size_t b = 0; b < k; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t a = 0; a < k; ++a) {
        if (seen[table[a][b]]) throw Error(ErrorKind::InvalidConstruction, "column is not a permutation");
        seen[table[a][b]] = 1;
      }
    }
    const Elem e = static_cast<Elem>(k - 1);
    for (Elem a = 0; a < k; ++a) {
      if (table[e][a] != a || table[a][e] != a) {
        throw Error(ErrorKind::InvalidConstruction, "last element is not the identity");
      }
    }
    auto assoc = [&](Elem a, Elem b, Elem c) { return table[table[a][b]][c] == table[a][table[b][c]]; };
    if (k <= 100) {
      for (Elem a = 0; a < k; ++a) {
        for (Elem b = 0; b < k; ++b) {
          for (Elem c = 0; c < k; ++c) {
            if (!assoc(a, b, c)) throw Error(ErrorKind::InvalidConstruction, "table is not associative");
          }
        }
      }
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<Elem> pick(0, e);
      for (int i = 0; i < 100000; ++i) {
        if (!assoc(pick(rng), pick(rng), pick(rng))) {
          throw Error(ErrorKind::InvalidConstruction, "table is not associative");
        }
      }
    }
    CayleyGroup t;
    t.name_ = std::move(name);
    t.table_ = std::move(table);
    t.inv_.resize(k);
    for (Elem a = 0; a < k; ++a) {
      for (Elem b = 0; b < k; ++b) {
        if (t.table_[a][b] == e) t.inv_[a] = b;
      }
    }
    return t;
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return table_.size(); }
  Elem identity() const noexcept { return static_cast<Elem>(table_.size() - 1); }
  Elem mul(Elem a, Elem b) const { return table_[a][b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// `b^-1 a b`.
  Elem conj(Elem a, Elem b) const { return mul(mul(inv(b), a), b); }

  /// Permutation representation of each element, when built from one.
  const std::vector<Perm>& labels() const noexcept { return labels_; }

  /// Index of the element with the given permutation label.
  Elem index_of(const Perm& p) const {
    if (p.is_identity()) return identity();
    auto it = std::lower_bound(labels_.begin(), labels_.end() - 1, p);
    if (it == labels_.end() - 1 || *it != p) throw Error(ErrorKind::InvalidInput, "not an element");
    return static_cast<Elem>(it - labels_.begin());
  }

  bool is_abelian() const {
    for (Elem a = 0; a < size(); ++a) {
      for (Elem b = 0; b < a; ++b) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  bool has_trivial_center() const {
    for (Elem a = 0; a + 1 < size(); ++a) {
      bool central = true;
      for (Elem b = 0; b < size() && central; ++b) central = mul(a, b) == mul(b, a);
      if (central) return false;
    }
    return true;
  }

  /// Greedy generating set: repeatedly the least element not yet generated.
  std::vector<Elem> generators() const {
    std::vector<Elem> gens;
    std::vector<char> in(size(), 0);
    in[identity()] = 1;
    std::size_t count = 1;
    for (Elem cand = 0; cand < size() && count < size(); ++cand) {
      if (in[cand]) continue;
      gens.push_back(cand);
      std::vector<Elem> members;
      for (Elem x = 0; x < size(); ++x) {
        if (in[x]) members.push_back(x);
      }
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (Elem g : gens) {
          const Elem y = mul(members[i], g);
          if (!in[y]) {
            in[y] = 1;
            members.push_back(y);
          }
        }
      }
      count = members.size();
    }
    return gens;
  }

 private:
  std::string name_;
  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> inv_;
  std::vector<Perm> labels_;
};

/// Element maps `phi` with `phi(ab) = phi(a) phi(b)`.
struct Automorphism {
  std::vector<Elem> map;
  bool inner = false;

  Elem operator()(Elem a) const { return map[a]; }
  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.map == b.map; }
};

inline Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  Automorphism r;
  r.map.resize(phi.map.size());
  for (std::size_t a = 0; a < phi.map.size(); ++a) r.map[a] = psi.map[phi.map[a]];
  return r;
}

inline Automorphism inverse(const Automorphism& phi) {
  Automorphism r;
  r.map.resize(phi.map.size());
  for (std::size_t a = 0; a < phi.map.size(); ++a) r.map[phi.map[a]] = static_cast<Elem>(a);
  r.inner = phi.inner;
  return r;
}

/// Automorphisms induced by conjugation inside a permutation overgroup that normalizes `T`.
class AutomorphismSet {
 public:
  static AutomorphismSet from_overgroup(const CayleyGroup& t, std::span<const Perm> overgroup_gens) {
    if (t.labels().empty()) throw Error(ErrorKind::InvalidConstruction, "group has no permutation labels");
    const std::size_t degree = t.labels().front().degree();
    const PermGroup over(degree, std::vector<Perm>(overgroup_gens.begin(), overgroup_gens.end()));
    for (const Perm& x : t.labels()) {
      if (!over.contains(x)) throw Error(ErrorKind::InvalidConstruction, "overgroup does not contain T");
    }
    auto induced = [&](const Perm& o) {
      Automorphism phi;
      phi.map.resize(t.size());
      for (Elem a = 0; a < t.size(); ++a) phi.map[a] = t.index_of(conjugate(t.labels()[a], o));
      return phi;
    };
    AutomorphismSet s;
    std::vector<Automorphism> inner;
    for (Elem b = 0; b < t.size(); ++b) {
      Automorphism phi;
      phi.map.resize(t.size());
      for (Elem a = 0; a < t.size(); ++a) phi.map[a] = t.conj(a, b);
      inner.push_back(std::move(phi));
    }
    for (const Perm& o : elements(over, 100000)) {
      Automorphism phi = induced(o);
      if (std::find(s.members_.begin(), s.members_.end(), phi) != s.members_.end()) continue;
      phi.inner = std::find(inner.begin(), inner.end(), phi) != inner.end();
      s.members_.push_back(std::move(phi));
    }
    for (const Perm& o : over.generators()) {
      Automorphism phi = induced(o);
      phi.inner = std::find(inner.begin(), inner.end(), phi) != inner.end();
      s.gens_.push_back(std::move(phi));
    }
    std::sort(s.members_.begin(), s.members_.end(),
              [](const Automorphism& a, const Automorphism& b) { return a.map < b.map; });
    for (const Automorphism& phi : s.members_) {
      for (Elem a = 0; a < t.size(); ++a) {
        for (Elem b = 0; b < t.size(); ++b) {
          if (phi(t.mul(a, b)) != t.mul(phi(a), phi(b))) {
            throw Error(ErrorKind::InvalidConstruction, "conjugation is not multiplicative");
          }
        }
      }
    }
    return s;
  }

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Automorphism>& members() const noexcept { return members_; }
  const std::vector<Automorphism>& generators() const noexcept { return gens_; }

  std::size_t inner_count() const {
    return static_cast<std::size_t>(
        std::count_if(members_.begin(), members_.end(), [](const Automorphism& a) { return a.inner; }));
  }

 private:
  std::vector<Automorphism> members_;
  std::vector<Automorphism> gens_;
};

/// A catalog group together with the overgroup that induces its automorphisms.
struct CatalogGroup {
  CayleyGroup group;
  AutomorphismSet automorphisms;
};

/// `s3` (Aut = Inn) or `a5` (Aut induced by S5).
inline CatalogGroup catalog_group(const std::string& name) {
  if (name == "s3") {
    std::vector<Perm> gens{Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})};
    CayleyGroup t = CayleyGroup::from_permutation_generators("s3", 3, gens);
    AutomorphismSet aut = AutomorphismSet::from_overgroup(t, gens);
    return {std::move(t), std::move(aut)};
  }
  if (name == "a5") {
    std::vector<Perm> gens{Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{0, 1, 2}})};
    CayleyGroup t = CayleyGroup::from_permutation_generators("a5", 5, gens);
    const std::vector<Perm> s5{Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{0, 1}})};
    AutomorphismSet aut = AutomorphismSet::from_overgroup(t, s5);
    return {std::move(t), std::move(aut)};
  }
  throw Error(ErrorKind::InvalidInput, "unknown catalog group '" + name + "' (expected s3 or a5)");
}

}  // namespace arctest
