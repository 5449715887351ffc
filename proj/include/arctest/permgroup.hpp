#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arctest/chain.hpp"
#include "arctest/error.hpp"
#include "arctest/perm.hpp"

namespace arctest {

/// A permutation group given by generators; the stabilizer chain is built on first use.
///
/// Copies share the lazily built chain. Once built, the group is immutable and
/// safe to query from several threads.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t degree, std::vector<Perm> generators, std::vector<Point> base_prefix = {})
      : degree_(degree), gens_(std::move(generators)), state_(std::make_shared<Lazy>()) {
    for (const Perm& g : gens_) {
      if (g.degree() != degree_) {
        throw Error(ErrorKind::DegreeMismatch, "generator of degree " + std::to_string(g.degree()) +
                                                   " in group of degree " + std::to_string(degree_));
      }
    }
    state_->base_prefix = std::move(base_prefix);
  }

  /// Wraps an already complete chain (used for stabilizers cut from a larger chain).
  PermGroup(std::size_t degree, std::vector<Perm> generators, StabChain chain)
      : PermGroup(degree, std::move(generators)) {
    std::call_once(state_->once, [&] { state_->chain = std::move(chain); });
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }

  const StabChain& chain() const {
    std::call_once(state_->once, [&] { state_->chain.emplace(degree_, gens_, state_->base_prefix); });
    return *state_->chain;
  }

  std::uint64_t order() const { return chain().order(); }
  bool contains(const Perm& g) const { return chain().contains(g); }
  bool is_trivial() const { return order() == 1; }

  /// True when every generator of `other` lies in this group.
  bool contains_group(const PermGroup& other) const {
    for (const Perm& g : other.generators()) {
      if (!contains(g)) return false;
    }
    return true;
  }

 private:
  struct Lazy {
    std::once_flag once;
    std::optional<StabChain> chain;
    std::vector<Point> base_prefix;
  };

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<Lazy> state_;
};

/// Orbit of `point` under the generators, sorted ascending.
inline std::vector<Point> orbit(std::span<const Perm> gens, std::size_t degree, Point point) {
  if (point >= degree) throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(point));
  std::vector<char> seen(degree, 0);
  std::vector<Point> orb{point};
  seen[point] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (const Perm& g : gens) {
      const Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  }
  std::sort(orb.begin(), orb.end());
  return orb;
}

inline std::vector<Point> orbit(const PermGroup& g, Point point) {
  return orbit(g.generators(), g.degree(), point);
}

/// All orbits, each sorted, listed by smallest point.
inline std::vector<std::vector<Point>> orbits(const PermGroup& g) {
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(g.degree(), 0);
  for (Point p = 0; p < g.degree(); ++p) {
    if (seen[p]) continue;
    auto orb = orbit(g, p);
    for (Point x : orb) seen[x] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

/// Transitivity on the full point set {0, ..., degree-1}.
inline bool is_transitive(const PermGroup& g) {
  if (g.degree() == 0) return true;
  return orbit(g, 0).size() == g.degree();
}

/// Pointwise stabilizer of `points`, in order.
inline PermGroup sequence_stabilizer(const PermGroup& g, std::span<const Point> points) {
  for (Point p : points) {
    if (p >= g.degree()) throw Error(ErrorKind::PointOutOfRange, "point " + std::to_string(p));
  }
  std::vector<Point> prefix(points.begin(), points.end());
  const StabChain* chain = &g.chain();
  std::optional<StabChain> rebuilt;
  const auto base = chain->base();
  if (base.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), base.begin())) {
    rebuilt.emplace(g.degree(), g.generators(), prefix);
    chain = &*rebuilt;
  }
  StabChain tail = chain->tail(prefix.size());
  std::vector<Perm> gens = tail.length() ? tail.strong_generators(0) : std::vector<Perm>{};
  return PermGroup(g.degree(), std::move(gens), std::move(tail));
}

inline PermGroup point_stabilizer(const PermGroup& g, Point point) {
  const Point pts[] = {point};
  return sequence_stabilizer(g, pts);
}

/// Sorted element list, refused when the group is larger than `max_elements`.
inline std::vector<Perm> elements(const PermGroup& g, std::size_t max_elements = Limits{}.max_elements) {
  check_bound(g.order(), max_elements, "group order");
  std::vector<Perm> out;
  out.reserve(g.order());
  g.chain().for_each_element([&](const Perm& x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Group generated by the union of two generator lists.
inline PermGroup join(const PermGroup& a, const PermGroup& b) {
  std::vector<Perm> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), std::move(gens));
}

}  // namespace arctest
