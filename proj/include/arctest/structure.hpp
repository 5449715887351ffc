#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"

namespace arctest {

/// One representative per conjugacy class: the lexicographically least member.
/// Listed in increasing order, so the identity comes first.
inline std::vector<Perm> conjugacy_class_reps(const PermGroup& g,
                                              std::size_t max_elements = Limits{}.max_elements) {
  const auto elems = elements(g, max_elements);
  std::vector<Perm> inv_gens;
  for (const Perm& s : g.generators()) inv_gens.push_back(s.inverse());
  auto index_of = [&](const Perm& x) {
    return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
  };
  std::vector<char> seen(elems.size(), 0);
  std::vector<Perm> reps;
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(elems[i]);
    seen[i] = 1;
    queue.assign(1, i);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Perm& x = elems[queue[q]];
      for (std::size_t s = 0; s < inv_gens.size(); ++s) {
        const std::size_t j = index_of(inv_gens[s] * x * g.generators()[s]);
        if (!seen[j]) {
          seen[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }
  return reps;
}

/// Smallest normal subgroup of `g` containing all of `xs`.
inline PermGroup normal_closure(const PermGroup& g, std::span<const Perm> xs) {
  std::vector<Perm> gens;
  StabChain chain(g.degree());
  for (const Perm& x : xs) {
    if (!chain.contains(x)) {
      chain.add_generator(x);
      gens.push_back(x);
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const Perm& s : g.generators()) {
      Perm c = conjugate(gens[i], s);
      if (!chain.contains(c)) {
        chain.add_generator(c);
        gens.push_back(std::move(c));
      }
    }
  }
  return PermGroup(g.degree(), std::move(gens), std::move(chain));
}

inline PermGroup normal_closure(const PermGroup& g, const Perm& x) {
  const Perm xs[] = {x};
  return normal_closure(g, xs);
}

/// `n` is normalized by every generator of `g`.
inline bool is_normal(const PermGroup& g, const PermGroup& n) {
  for (const Perm& x : n.generators()) {
    for (const Perm& s : g.generators()) {
      if (!n.contains(conjugate(x, s))) return false;
    }
  }
  return true;
}

/// Transitive, and every normal closure of a non-identity class representative is transitive.
inline bool is_quasiprimitive(const PermGroup& g, std::size_t max_elements = Limits{}.max_elements) {
  if (!is_transitive(g)) return false;
  for (const Perm& x : conjugacy_class_reps(g, max_elements)) {
    if (x.is_identity()) continue;
    if (!is_transitive(normal_closure(g, x))) return false;
  }
  return true;
}

/// Smallest block of imprimitivity containing `a` and `b` (Atkinson's union-find method).
/// Returns the block containing `a`, sorted.
inline std::vector<Point> minimal_block(const PermGroup& g, Point a, Point b) {
  const std::size_t n = g.degree();
  if (a >= n || b >= n) throw Error(ErrorKind::PointOutOfRange, "minimal_block");
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<Point, Point>> queue;
  auto unite = [&](Point x, Point y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[y] = x;
    queue.emplace_back(x, y);
  };
  unite(a, b);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [x, y] = queue[q];
    for (const Perm& s : g.generators()) unite(s[x], s[y]);
  }
  std::vector<Point> block;
  const Point ra = find(a);
  for (Point x = 0; x < n; ++x) {
    if (find(x) == ra) block.push_back(x);
  }
  return block;
}

/// A nontrivial block containing point 0, if one exists. Requires a transitive group.
inline std::optional<std::vector<Point>> nontrivial_block(const PermGroup& g) {
  if (!is_transitive(g)) throw Error(ErrorKind::NotTransitive, "block search needs a transitive group");
  for (Point d = 1; d < g.degree(); ++d) {
    auto block = minimal_block(g, 0, d);
    if (block.size() < g.degree()) return block;
  }
  return std::nullopt;
}

inline bool is_primitive(const PermGroup& g) {
  if (g.degree() <= 1) return true;
  return !nontrivial_block(g).has_value();
}

/// Inclusion-minimal nontrivial normal subgroups, found among the normal closures of
/// class representatives. Sorted by order, ties by representative.
inline std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g,
                                                       std::size_t max_elements = Limits{}.max_elements) {
  std::vector<PermGroup> closures;
  for (const Perm& x : conjugacy_class_reps(g, max_elements)) {
    if (x.is_identity()) continue;
    PermGroup n = normal_closure(g, x);
    bool duplicate = false;
    for (const PermGroup& m : closures) {
      if (m.order() == n.order() && m.contains_group(n)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) closures.push_back(std::move(n));
  }
  std::vector<PermGroup> minimal;
  for (const PermGroup& n : closures) {
    bool is_min = true;
    for (const PermGroup& m : closures) {
      if (m.order() < n.order() && n.contains_group(m)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(n);
  }
  std::stable_sort(minimal.begin(), minimal.end(),
                   [](const PermGroup& a, const PermGroup& b) { return a.order() < b.order(); });
  return minimal;
}

}  // namespace arctest
