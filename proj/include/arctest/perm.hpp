#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arctest/error.hpp"

namespace arctest {

using Point = std::uint32_t;

/// A permutation of {0, ..., n-1} stored as its image array.
///
/// Permutations act on the right: `p * q` first applies `p`, then `q`, so
/// `(p * q)[i] == q[p[i]]`. This is the convention used for every group in the
/// library, including the right-coset action `Hx -> Hxg`.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x]) {
        throw Error(ErrorKind::InvalidPermutation, "image array is not a bijection");
      }
      seen[x] = 1;
    }
  }

  static Perm identity(std::size_t n) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    return unchecked(std::move(img));
  }

  /// Builds from disjoint 0-based cycles, e.g. `from_cycles(5, {{0, 1, 2}, {3, 4}})`.
  static Perm from_cycles(std::size_t n, std::initializer_list<std::initializer_list<Point>> cycles) {
    std::vector<std::vector<Point>> cs;
    for (const auto& c : cycles) cs.emplace_back(c);
    return from_cycles(n, cs);
  }

  static Perm from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<char> used(n, 0);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= n) throw Error(ErrorKind::PointOutOfRange, "cycle point " + std::to_string(c[i]));
        if (used[c[i]]) throw Error(ErrorKind::InvalidPermutation, "cycles are not disjoint");
        used[c[i]] = 1;
        img[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return unchecked(std::move(img));
  }

  /// No bijection check; callers guarantee validity.
  static Perm unchecked(std::vector<Point> images) {
    Perm p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  bool fixes(Point x) const noexcept { return images_[x] == x; }

  Perm inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return unchecked(std::move(inv));
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    return a.images_ <=> b.images_;
  }

  /// Cycle notation without fixed points; `one_based` shifts every point by one.
  std::string cycle_string(bool one_based = true) const {
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    const Point shift = one_based ? 1 : 0;
    for (Point start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == start) continue;
      out += '(';
      Point x = start;
      bool first = true;
      while (!seen[x]) {
        seen[x] = 1;
        if (!first) out += ',';
        out += std::to_string(x + shift);
        first = false;
        x = images_[x];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(images_.size(), 0);
    for (Point start = 0; start < images_.size(); ++start) {
      if (seen[start]) continue;
      std::vector<Point> c;
      for (Point x = start; !seen[x]; x = images_[x]) {
        seen[x] = 1;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (const auto& c : cycles()) result = std::lcm(result, static_cast<std::uint64_t>(c.size()));
    return result;
  }

 private:
  std::vector<Point> images_;
};

/// `i -> q[p[i]]`.
inline Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) {
    throw Error(ErrorKind::DegreeMismatch,
                std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  }
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q[p[static_cast<Point>(i)]];
  return Perm::unchecked(std::move(img));
}

inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

/// `g^-1 x g`.
inline Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

inline Perm power(const Perm& p, long long e) {
  Perm base = e < 0 ? p.inverse() : p;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Perm result = Perm::identity(p.degree());
  while (k) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

/// Restriction of `p` to a block of points it maps into itself (e.g. the first factor of a product).
inline Perm restrict_to(const Perm& p, Point first, std::size_t count) {
  std::vector<Point> img(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Point y = p[first + static_cast<Point>(i)];
    if (y < first || y >= first + count) {
      throw Error(ErrorKind::InvalidInput, "permutation does not preserve the block");
    }
    img[i] = y - first;
  }
  return Perm::unchecked(std::move(img));
}

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace arctest
