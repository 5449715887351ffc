#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"

namespace arctest {

/// A small subgroup carried as its explicit sorted element list.
class SubgroupSet {
 public:
  SubgroupSet() = default;

  static SubgroupSet trivial(std::size_t degree) {
    SubgroupSet s;
    s.degree_ = degree;
    s.elems_ = {Perm::identity(degree)};
    return s;
  }

  static SubgroupSet from_group(const PermGroup& g, std::size_t max_elements = Limits{}.max_elements) {
    SubgroupSet s;
    s.degree_ = g.degree();
    s.elems_ = arctest::elements(g, max_elements);
    s.gens_ = g.generators();
    return s;
  }

  static SubgroupSet generated_by(std::size_t degree, std::vector<Perm> gens,
                                  std::size_t max_elements = Limits{}.max_elements) {
    return from_group(PermGroup(degree, std::move(gens)), max_elements);
  }

  /// Takes an element list as given; throws NotSubgroup unless it is closed and contains 1.
  static SubgroupSet from_elements(std::size_t degree, std::vector<Perm> elems) {
    SubgroupSet s;
    s.degree_ = degree;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.elems_ = std::move(elems);
    for (const Perm& x : s.elems_) {
      if (x.degree() != degree) throw Error(ErrorKind::DegreeMismatch, "subgroup element");
    }
    if (!s.contains(Perm::identity(degree))) throw Error(ErrorKind::NotSubgroup, "identity missing");
    for (const Perm& x : s.elems_) {
      if (!s.contains(x.inverse())) throw Error(ErrorKind::NotSubgroup, "not closed under inverse");
      for (const Perm& y : s.elems_) {
        if (!s.contains(x * y)) throw Error(ErrorKind::NotSubgroup, "not closed under product");
      }
    }
    return s;
  }

  /// For sets that are subgroups by construction (intersections, conjugates).
  static SubgroupSet unchecked(std::size_t degree, std::vector<Perm> elems) {
    SubgroupSet s;
    s.degree_ = degree;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.elems_ = std::move(elems);
    return s;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const std::vector<Perm>& elements() const noexcept { return elems_; }

  /// Generators when known, otherwise the non-identity elements.
  std::vector<Perm> generators() const {
    if (!gens_.empty()) return gens_;
    std::vector<Perm> out;
    for (const Perm& x : elems_) {
      if (!x.is_identity()) out.push_back(x);
    }
    return out;
  }

  PermGroup as_group() const { return PermGroup(degree_, generators()); }

  bool contains(const Perm& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

  friend bool operator==(const SubgroupSet& a, const SubgroupSet& b) { return a.elems_ == b.elems_; }

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> elems_;
  std::vector<Perm> gens_;
};

inline SubgroupSet intersect(const SubgroupSet& a, const SubgroupSet& b) {
  if (a.degree() != b.degree()) throw Error(ErrorKind::DegreeMismatch, "intersect");
  std::vector<Perm> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
  return SubgroupSet::unchecked(a.degree(), std::move(out));
}

/// `g^-1 H g`.
inline SubgroupSet conjugate_subgroup(const SubgroupSet& h, const Perm& g) {
  const Perm gi = g.inverse();
  std::vector<Perm> out;
  out.reserve(h.size());
  for (const Perm& x : h.elements()) out.push_back(gi * x * g);
  return SubgroupSet::unchecked(h.degree(), std::move(out));
}

/// The set `{a b : a in A, b in B}`, sorted and deduplicated.
inline std::vector<Perm> product_set(std::span<const Perm> a, std::span<const Perm> b,
                                     std::size_t max_elements = Limits{}.max_elements) {
  check_bound(a.size() * b.size(), max_elements, "product set size");
  std::vector<Perm> out;
  out.reserve(a.size() * b.size());
  for (const Perm& x : a) {
    for (const Perm& y : b) out.push_back(x * y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// `G = HK`, decided by `|H n K| |G| = |H| |K|`.
inline bool is_factorization(std::uint64_t group_order, const SubgroupSet& h, const SubgroupSet& k) {
  const auto hk = static_cast<unsigned __int128>(h.size()) * k.size();
  const auto lhs = static_cast<unsigned __int128>(intersect(h, k).size()) * group_order;
  return lhs == hk;
}

inline bool is_factorization(const PermGroup& g, const SubgroupSet& h, const SubgroupSet& k) {
  return is_factorization(g.order(), h, k);
}

/// Lexicographically least element of the right coset `K x`.
inline Perm canonical_coset_rep(const SubgroupSet& k, const Perm& x) {
  const std::size_t n = x.degree();
  std::vector<Point> best;
  std::vector<Point> cur(n);
  for (const Perm& h : k.elements()) {
    for (std::size_t i = 0; i < n; ++i) cur[i] = x[h[static_cast<Point>(i)]];
    if (best.empty() || cur < best) best = cur;
  }
  return Perm::unchecked(std::move(best));
}

/// `G = HK`, decided by transitivity of `H` on the right cosets of `K` in `G`.
///
/// Counts the cosets `K h`, `h in H`, and compares with the index `|G : K|`;
/// independent of the intersection used by `is_factorization`.
inline bool is_factorization_by_transitivity(const PermGroup& g, const SubgroupSet& h,
                                             const SubgroupSet& k) {
  std::unordered_set<Perm, PermHash> cosets;
  for (const Perm& x : h.elements()) cosets.insert(canonical_coset_rep(k, x));
  return static_cast<std::uint64_t>(cosets.size()) * k.size() == g.order();
}

/// `x in H g K`, by membership in the explicit product set.
inline bool in_double_coset(const Perm& x, const SubgroupSet& h, const Perm& g, const SubgroupSet& k,
                            std::size_t max_elements = Limits{}.max_elements) {
  std::vector<Perm> hg;
  hg.reserve(h.size());
  for (const Perm& y : h.elements()) hg.push_back(y * g);
  const auto set = product_set(hg, k.elements(), max_elements);
  return std::binary_search(set.begin(), set.end(), x);
}

/// Subgroup generated by `H` together with extra elements.
inline PermGroup generated_with(const SubgroupSet& h, std::span<const Perm> extra) {
  std::vector<Perm> gens = h.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(h.degree(), std::move(gens));
}

}  // namespace arctest
