#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "arctest/error.hpp"
#include "arctest/perm.hpp"

namespace arctest {

/// Stabilizer chain (base and strong generating set) built by the deterministic
/// Schreier-Sims algorithm.
///
/// Level `l` stores the base point `b_l`, the strong generators fixing
/// `b_0 .. b_{l-1}`, the basic orbit of `b_l` under them and a Schreier tree for
/// that orbit. Transversal inverses are cached explicitly while
/// `orbit size * degree` stays below `kCacheLimit`; larger levels walk the tree.
///
/// The first base point is the smallest point of a largest orbit; points added
/// later are the smallest point of a longest cycle of the element that forced
/// them. Every choice is deterministic.
class StabChain {
 public:
  static constexpr std::size_t kCacheLimit = std::size_t{1} << 26;

  struct SiftResult {
    Perm residue;
    std::size_t level;  ///< first level the residue could not be sifted through; length() if none
  };

  StabChain() = default;

  explicit StabChain(std::size_t degree, std::span<const Perm> generators = {},
                     std::span<const Point> base_prefix = {})
      : degree_(degree) {
    for (Point b : base_prefix) {
      if (b >= degree) throw Error(ErrorKind::PointOutOfRange, "base point " + std::to_string(b));
      new_level(b);
    }
    std::vector<Perm> gens;
    for (const Perm& g : generators) {
      if (g.degree() != degree) {
        throw Error(ErrorKind::DegreeMismatch, "generator degree " + std::to_string(g.degree()) +
                                                   " vs group degree " + std::to_string(degree));
      }
      if (!g.is_identity()) gens.push_back(g);
    }
    if (levels_.empty() && !gens.empty()) new_level(first_base_point(gens));
    for (const Perm& g : gens) {
      while (fixes_base(g)) new_level(longest_cycle_point(g));
    }
    for (const Perm& g : gens) {
      for (std::size_t l = 0; l < levels_.size(); ++l) {
        add_to_level(l, g);
        if (!g.fixes(levels_[l].base)) break;
      }
    }
    schreier_sims(levels_.empty() ? 0 : levels_.size() - 1);
  }

  /// Enlarges the group by `g`; a no-op when `g` is already a member.
  void add_generator(const Perm& g) {
    if (g.degree() != degree_) throw Error(ErrorKind::DegreeMismatch, "generator degree");
    if (contains(g)) return;
    while (fixes_base(g)) new_level(longest_cycle_point(g));
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      add_to_level(l, g);
      if (!g.fixes(levels_[l].base)) break;
    }
    schreier_sims(levels_.size() - 1);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t length() const noexcept { return levels_.size(); }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& lv : levels_) b.push_back(lv.base);
    return b;
  }

  Point base_point(std::size_t level) const { return levels_.at(level).base; }
  const std::vector<Perm>& strong_generators(std::size_t level) const { return levels_.at(level).gens; }
  std::span<const Point> orbit(std::size_t level) const { return levels_.at(level).orbit; }

  std::uint64_t order() const {
    unsigned __int128 n = 1;
    for (const auto& lv : levels_) {
      n *= lv.orbit.size();
      if (n > std::numeric_limits<std::uint64_t>::max()) {
        throw Error(ErrorKind::BoundExceeded, "group order does not fit in 64 bits");
      }
    }
    return static_cast<std::uint64_t>(n);
  }

  SiftResult sift(Perm g, std::size_t from = 0) const {
    std::vector<Point> img(g.images().begin(), g.images().end());
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const Level& lv = levels_[l];
      const Point beta = img[lv.base];
      const std::int32_t pos = lv.pos[beta];
      if (pos < 0) return {Perm::unchecked(std::move(img)), l};
      apply_transversal_inverse(lv, static_cast<std::uint32_t>(pos), img);
    }
    return {Perm::unchecked(std::move(img)), levels_.size()};
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    auto r = sift(g);
    return r.level == levels_.size() && r.residue.is_identity();
  }

  /// The transversal element mapping `base_point(level)` to `p`.
  Perm transversal(std::size_t level, Point p) const {
    const Level& lv = levels_.at(level);
    const std::int32_t pos = lv.pos.at(p);
    if (pos < 0) throw Error(ErrorKind::PointOutOfRange, "point not in basic orbit");
    return transversal_at(lv, static_cast<std::uint32_t>(pos));
  }

  Perm transversal_inverse(std::size_t level, Point p) const {
    return transversal(level, p).inverse();
  }

  /// The chain of the stabilizer of the first `from` base points.
  StabChain tail(std::size_t from) const {
    StabChain c;
    c.degree_ = degree_;
    c.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(std::min(from, levels_.size())),
                     levels_.end());
    return c;
  }

  /// Calls `f(element)` for every group element, as products of transversal elements.
  template <class F>
  void for_each_element(F&& f) const {
    std::vector<std::vector<Perm>> reps(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      for (std::uint32_t i = 0; i < levels_[l].orbit.size(); ++i) {
        reps[l].push_back(transversal_at(levels_[l], i));
      }
    }
    enumerate(reps, static_cast<std::ptrdiff_t>(levels_.size()) - 1, Perm::identity(degree_), f);
  }

 private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<Perm> inv_gens;
    std::vector<Point> orbit;
    std::vector<std::int32_t> pos;      // point -> orbit index, -1 when absent
    std::vector<std::uint32_t> parent;  // orbit index -> orbit index of tree parent
    std::vector<std::uint32_t> label;   // orbit index -> generator index of tree edge
    std::vector<Perm> inv_cache;        // orbit index -> transversal inverse
    bool cached = true;
    std::vector<std::size_t> verified;  // per generator: orbit prefix whose Schreier generators sift
  };

  template <class F>
  void enumerate(const std::vector<std::vector<Perm>>& reps, std::ptrdiff_t l, const Perm& acc,
                 F& f) const {
    if (l < 0) {
      f(acc);
      return;
    }
    for (const Perm& u : reps[static_cast<std::size_t>(l)]) enumerate(reps, l - 1, acc * u, f);
  }

  void new_level(Point b) {
    Level lv;
    lv.base = b;
    lv.pos.assign(degree_, -1);
    lv.orbit.push_back(b);
    lv.pos[b] = 0;
    lv.parent.push_back(0);
    lv.label.push_back(0);
    lv.inv_cache.push_back(Perm::identity(degree_));
    levels_.push_back(std::move(lv));
  }

  bool fixes_base(const Perm& g) const {
    for (const auto& lv : levels_) {
      if (!g.fixes(lv.base)) return false;
    }
    return true;
  }

  Point first_base_point(const std::vector<Perm>& gens) const {
    std::vector<char> seen(degree_, 0);
    std::size_t best_size = 0;
    Point best = 0;
    for (Point start = 0; start < degree_; ++start) {
      if (seen[start]) continue;
      std::vector<Point> orb{start};
      seen[start] = 1;
      for (std::size_t i = 0; i < orb.size(); ++i) {
        for (const Perm& g : gens) {
          const Point y = g[orb[i]];
          if (!seen[y]) {
            seen[y] = 1;
            orb.push_back(y);
          }
        }
      }
      if (orb.size() > best_size) {
        best_size = orb.size();
        best = start;
      }
    }
    return best;
  }

  Point longest_cycle_point(const Perm& g) const {
    std::size_t best_len = 0;
    Point best = 0;
    for (const auto& c : g.cycles()) {
      if (c.size() > best_len) {
        best_len = c.size();
        best = c.front();
      }
    }
    return best;
  }

  void add_to_level(std::size_t l, const Perm& g) {
    Level& lv = levels_[l];
    lv.gens.push_back(g);
    lv.inv_gens.push_back(g.inverse());
    lv.verified.push_back(0);
    extend_orbit(lv, lv.gens.size() - 1);
  }

  static void extend_orbit(Level& lv, std::size_t first_new_gen) {
    const std::size_t old_size = lv.orbit.size();
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      const std::size_t g0 = i < old_size ? first_new_gen : 0;
      for (std::size_t s = g0; s < lv.gens.size(); ++s) {
        const Point y = lv.gens[s][lv.orbit[i]];
        if (lv.pos[y] >= 0) continue;
        lv.pos[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.parent.push_back(static_cast<std::uint32_t>(i));
        lv.label.push_back(static_cast<std::uint32_t>(s));
      }
    }
    const std::size_t degree = lv.pos.size();
    if (lv.cached && lv.orbit.size() * degree > kCacheLimit) {
      lv.cached = false;
      lv.inv_cache.clear();
      lv.inv_cache.shrink_to_fit();
    }
    if (lv.cached) {
      for (std::size_t i = lv.inv_cache.size(); i < lv.orbit.size(); ++i) {
        // u_i = u_parent * s, so u_i^-1 = s^-1 * u_parent^-1
        lv.inv_cache.push_back(lv.inv_gens[lv.label[i]] * lv.inv_cache[lv.parent[i]]);
      }
    }
  }

  static void apply_transversal_inverse(const Level& lv, std::uint32_t pos, std::vector<Point>& img) {
    if (lv.cached) {
      const Perm& u = lv.inv_cache[pos];
      for (Point& x : img) x = u[x];
      return;
    }
    while (pos != 0) {
      const Perm& s = lv.inv_gens[lv.label[pos]];
      for (Point& x : img) x = s[x];
      pos = lv.parent[pos];
    }
  }

  Perm transversal_at(const Level& lv, std::uint32_t pos) const {
    if (lv.cached) return lv.inv_cache[pos].inverse();
    std::vector<std::uint32_t> path;
    for (std::uint32_t p = pos; p != 0; p = lv.parent[p]) path.push_back(lv.label[p]);
    std::vector<Point> img(degree_);
    for (std::size_t x = 0; x < degree_; ++x) img[x] = static_cast<Point>(x);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Perm& s = lv.gens[*it];
      for (Point& x : img) x = s[x];
    }
    return Perm::unchecked(std::move(img));
  }

  // Processes levels bottom-up; every (orbit point, generator) pair is checked once.
  void schreier_sims(std::size_t start) {
    if (levels_.empty()) return;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start);
    std::vector<Point> r(degree_);
    while (i >= 0) {
      Level& lv = levels_[static_cast<std::size_t>(i)];
      bool restarted = false;
      std::size_t lo = lv.orbit.size();
      for (std::size_t v : lv.verified) lo = std::min(lo, v);
      for (std::size_t p = lo; !restarted && p < lv.orbit.size(); ++p) {
        Perm up;
        bool have_up = false;
        for (std::size_t s = 0; s < lv.gens.size(); ++s) {
          if (lv.verified[s] > p) continue;
          const Point q = lv.gens[s][lv.orbit[p]];
          const auto qpos = static_cast<std::uint32_t>(lv.pos[q]);
          if (lv.parent[qpos] == p && lv.label[qpos] == s && qpos != 0) {
            lv.verified[s] = p + 1;
            continue;
          }
          if (!have_up) {
            up = transversal_at(lv, static_cast<std::uint32_t>(p));
            have_up = true;
          }
          const Perm& gen = lv.gens[s];
          for (std::size_t x = 0; x < degree_; ++x) r[x] = gen[up[static_cast<Point>(x)]];
          apply_transversal_inverse(lv, qpos, r);
          auto res = sift(Perm::unchecked(r), static_cast<std::size_t>(i) + 1);
          lv.verified[s] = p + 1;
          if (res.level == levels_.size() && res.residue.is_identity()) continue;
          std::size_t j = res.level;
          if (j == levels_.size()) new_level(longest_cycle_point(res.residue));
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            add_to_level(l, res.residue);
          }
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

}  // namespace arctest
