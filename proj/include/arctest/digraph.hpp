#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"

namespace arctest {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

/// A finite digraph: irreflexive, antisymmetric, out-neighbour lists sorted.
class Digraph {
 public:
  Digraph() = default;

  /// Validates and normalizes an arc list. Duplicate arcs are merged.
  static Digraph from_arcs(std::size_t n, std::span<const Arc> arcs) {
    std::vector<std::vector<Vertex>> out(n);
    for (const auto& [u, v] : arcs) {
      if (u >= n || v >= n) {
        throw Error(ErrorKind::ArcOutOfRange, "(" + std::to_string(u) + "," + std::to_string(v) +
                                                  ") with n=" + std::to_string(n));
      }
      out[u].push_back(v);
    }
    return from_out_lists(std::move(out));
  }

  static Digraph from_out_lists(std::vector<std::vector<Vertex>> out) {
    Digraph d;
    d.n_ = out.size();
    for (auto& list : out) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      for (Vertex v : list) {
        if (v >= d.n_) throw Error(ErrorKind::ArcOutOfRange, "endpoint " + std::to_string(v));
      }
    }
    d.out_ = std::move(out);
    for (Vertex u = 0; u < d.n_; ++u) {
      if (std::binary_search(d.out_[u].begin(), d.out_[u].end(), u)) {
        throw Error(ErrorKind::ReflexiveArc, "loop at vertex " + std::to_string(u));
      }
    }
    for (Vertex u = 0; u < d.n_; ++u) {
      for (Vertex v : d.out_[u]) {
        if (std::binary_search(d.out_[v].begin(), d.out_[v].end(), u)) {
          throw Error(ErrorKind::SymmetricArc,
                      "both (" + std::to_string(u) + "," + std::to_string(v) + ") and its reverse");
        }
      }
    }
    d.in_.assign(d.n_, {});
    for (Vertex u = 0; u < d.n_; ++u) {
      for (Vertex v : d.out_[u]) d.in_[v].push_back(u);
    }
    return d;
  }

  std::size_t size() const noexcept { return n_; }
  std::span<const Vertex> out(Vertex v) const { return out_.at(v); }
  std::span<const Vertex> in(Vertex v) const { return in_.at(v); }

  std::size_t arc_count() const noexcept {
    std::size_t c = 0;
    for (const auto& l : out_) c += l.size();
    return c;
  }

  bool has_arc(Vertex u, Vertex v) const {
    return u < n_ && std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  /// All arcs in lexicographic order.
  std::vector<Arc> arcs() const {
    std::vector<Arc> a;
    a.reserve(arc_count());
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : out_[u]) a.emplace_back(u, v);
    }
    return a;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.out_ == b.out_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// A walk `v_0 -> v_1 -> ... -> v_s`.
struct SArc {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }

  bool valid_in(const Digraph& d) const {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      if (!d.has_arc(vertices[i], vertices[i + 1])) return false;
    }
    return !vertices.empty();
  }
};

/// Common in- and out-valency, or nullopt when some valency differs.
inline std::optional<std::size_t> regularity(const Digraph& d) {
  if (d.size() == 0) return 0;
  const std::size_t k = d.out(0).size();
  for (Vertex v = 0; v < d.size(); ++v) {
    if (d.out(v).size() != k || d.in(v).size() != k) return std::nullopt;
  }
  return k;
}

/// Connectivity of the underlying undirected graph.
inline bool is_connected(const Digraph& d) {
  if (d.size() == 0) return true;
  std::vector<char> seen(d.size(), 0);
  std::vector<Vertex> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex u = queue[i];
    for (auto nbrs : {d.out(u), d.in(u)}) {
      for (Vertex w : nbrs) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return queue.size() == d.size();
}

inline bool is_directed_cycle(const Digraph& d) {
  const auto k = regularity(d);
  return d.size() > 0 && k && *k == 1 && is_connected(d);
}

/// Vertex `(u, v)` is numbered `u * |b| + v`.
inline Digraph direct_product(const Digraph& a, const Digraph& b) {
  const std::size_t nb = b.size();
  std::vector<std::vector<Vertex>> out(a.size() * nb);
  for (Vertex u1 = 0; u1 < a.size(); ++u1) {
    for (Vertex v1 = 0; v1 < nb; ++v1) {
      auto& list = out[u1 * nb + v1];
      for (Vertex u2 : a.out(u1)) {
        for (Vertex v2 : b.out(v1)) list.push_back(static_cast<Vertex>(u2 * nb + v2));
      }
    }
  }
  return Digraph::from_out_lists(std::move(out));
}

/// `m`-fold direct power; the first coordinate is the most significant digit.
inline Digraph power(const Digraph& d, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidInput, "power needs m >= 1");
  Digraph result = d;
  for (std::size_t i = 1; i < m; ++i) result = direct_product(d, result);
  return result;
}

/// Image of `d` under the vertex relabeling `p`.
inline Digraph relabel(const Digraph& d, const Perm& p) {
  if (p.degree() != d.size()) throw Error(ErrorKind::DegreeMismatch, "relabel");
  std::vector<std::vector<Vertex>> out(d.size());
  for (Vertex u = 0; u < d.size(); ++u) {
    for (Vertex v : d.out(u)) out[p[u]].push_back(p[v]);
  }
  return Digraph::from_out_lists(std::move(out));
}

inline bool is_automorphism(const Digraph& d, const Perm& p) {
  if (p.degree() != d.size()) return false;
  for (Vertex u = 0; u < d.size(); ++u) {
    for (Vertex v : d.out(u)) {
      if (!d.has_arc(p[u], p[v])) return false;
    }
  }
  return true;
}

namespace detail {

/// Perfect ranking of the s-arcs of a digraph in lexicographic order.
class SArcIndex {
 public:
  SArcIndex(const Digraph& d, std::size_t s) : d_(d), s_(s) {
    const std::size_t n = d.size();
    offset_.assign(n + 1, 0);
    for (Vertex u = 0; u < n; ++u) offset_[u + 1] = offset_[u] + d.out(u).size();
    // walks[j][v]: number of j-arcs starting at v
    walks_.assign(s + 1, std::vector<std::uint64_t>(n, 1));
    for (std::size_t j = 1; j <= s; ++j) {
      for (Vertex v = 0; v < n; ++v) {
        unsigned __int128 c = 0;
        for (Vertex w : d.out(v)) c += walks_[j - 1][w];
        if (c > std::numeric_limits<std::uint64_t>::max() / 2) {
          throw Error(ErrorKind::BoundExceeded, "s-arc count overflow");
        }
        walks_[j][v] = static_cast<std::uint64_t>(c);
      }
    }
    // before_[j][arc]: j-arcs from the out-neighbours listed before this arc
    before_.assign(s, std::vector<std::uint64_t>(offset_[n], 0));
    for (std::size_t j = 0; j < s; ++j) {
      for (Vertex u = 0; u < n; ++u) {
        std::uint64_t acc = 0;
        auto nbrs = d.out(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          before_[j][offset_[u] + i] = acc;
          acc += walks_[j][nbrs[i]];
        }
      }
    }
    start_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) start_[v + 1] = start_[v] + walks_[s][v];
  }

  std::uint64_t total() const { return start_.back(); }
  std::uint64_t walks_from(std::size_t len, Vertex v) const { return walks_[len][v]; }

  /// Rank of a valid s-arc; nullopt when some step is not an arc.
  std::optional<std::uint64_t> rank(std::span<const Vertex> arc) const {
    std::uint64_t r = start_[arc[0]];
    for (std::size_t i = 1; i <= s_; ++i) {
      auto nbrs = d_.out(arc[i - 1]);
      auto it = std::lower_bound(nbrs.begin(), nbrs.end(), arc[i]);
      if (it == nbrs.end() || *it != arc[i]) return std::nullopt;
      r += before_[s_ - i][offset_[arc[i - 1]] + static_cast<std::size_t>(it - nbrs.begin())];
    }
    return r;
  }

  /// Lexicographically least s-arc.
  std::optional<std::vector<Vertex>> first() const {
    for (Vertex v = 0; v < d_.size(); ++v) {
      if (walks_[s_][v] == 0) continue;
      std::vector<Vertex> arc{v};
      for (std::size_t i = 1; i <= s_; ++i) {
        for (Vertex w : d_.out(arc.back())) {
          if (walks_[s_ - i][w] > 0) {
            arc.push_back(w);
            break;
          }
        }
      }
      return arc;
    }
    return std::nullopt;
  }

 private:
  const Digraph& d_;
  std::size_t s_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::uint64_t>> walks_;
  std::vector<std::vector<std::uint64_t>> before_;
  std::vector<std::uint64_t> start_;
};

}  // namespace detail

/// Number of s-arcs.
inline std::uint64_t count_s_arcs(const Digraph& d, std::size_t s) {
  return detail::SArcIndex(d, s).total();
}

/// Every s-arc, in lexicographic order. Refused above `max_count` arcs.
inline std::vector<SArc> enumerate_s_arcs(const Digraph& d, std::size_t s,
                                          std::size_t max_count = 10'000'000) {
  check_bound(count_s_arcs(d, s), max_count, "s-arc count");
  std::vector<SArc> out;
  std::vector<Vertex> path;
  auto extend = [&](auto& self, std::size_t depth) -> void {
    if (depth == s) {
      out.push_back(SArc{path});
      return;
    }
    for (Vertex w : d.out(path.back())) {
      path.push_back(w);
      self(self, depth + 1);
      path.pop_back();
    }
  };
  for (Vertex v = 0; v < d.size(); ++v) {
    path.assign(1, v);
    extend(extend, 0);
  }
  return out;
}

struct SArcOrbit {
  std::uint64_t orbit_size = 0;
  std::uint64_t total = 0;
  std::vector<Vertex> start;  ///< lexicographically least s-arc, the orbit's seed

  bool transitive() const { return orbit_size == total; }
};

/// Orbit of the least s-arc under the group generated by `gens`, by breadth-first search.
/// Generators must be automorphisms; this is not rechecked here.
inline SArcOrbit s_arc_orbit(const Digraph& d, std::span<const Perm> gens, std::size_t s) {
  detail::SArcIndex index(d, s);
  SArcOrbit result;
  result.total = index.total();
  auto first = index.first();
  if (!first) return result;
  result.start = *first;
  std::vector<char> seen(result.total, 0);
  std::vector<Vertex> queue(first->begin(), first->end());
  seen[*index.rank(*first)] = 1;
  result.orbit_size = 1;
  std::vector<Vertex> image(s + 1);
  for (std::size_t head = 0; head < queue.size() && result.orbit_size < result.total; head += s + 1) {
    for (const Perm& g : gens) {
      for (std::size_t i = 0; i <= s; ++i) image[i] = g[queue[head + i]];
      const auto r = index.rank(image);
      if (!r) throw Error(ErrorKind::NotAutomorphism, "generator maps an s-arc off the digraph");
      if (seen[*r]) continue;
      seen[*r] = 1;
      ++result.orbit_size;
      queue.insert(queue.end(), image.begin(), image.end());
    }
  }
  return result;
}

inline void require_automorphisms(const Digraph& d, std::span<const Perm> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!is_automorphism(d, gens[i])) {
      throw Error(ErrorKind::NotAutomorphism, "generator " + std::to_string(i));
    }
  }
}

/// `G` is transitive on s-arcs; every generator is first checked to be an automorphism.
inline bool is_G_s_arc_transitive(const Digraph& d, const PermGroup& g, std::size_t s) {
  require_automorphisms(d, g.generators());
  return s_arc_orbit(d, g.generators(), s).transitive();
}

/// Circulant digraph on `Z_n`: `i -> i + j` for each jump `j`.
inline Digraph circulant(std::size_t n, std::span<const std::size_t> jumps) {
  std::vector<std::vector<Vertex>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : jumps) out[i].push_back(static_cast<Vertex>((i + j) % n));
  }
  return Digraph::from_out_lists(std::move(out));
}

inline Digraph directed_cycle(std::size_t n) {
  const std::size_t one[] = {1};
  return circulant(n, one);
}

/// `i -> i + 1 mod n`.
inline Perm cyclic_shift(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return Perm::unchecked(std::move(img));
}

/// Generators of `A x B` in the product action on `|A| * |B|` points.
inline std::vector<Perm> product_action_generators(std::span<const Perm> a, std::size_t na,
                                                   std::span<const Perm> b, std::size_t nb) {
  std::vector<Perm> out;
  for (const Perm& x : a) {
    std::vector<Point> img(na * nb);
    for (Point u = 0; u < na; ++u) {
      for (Point v = 0; v < nb; ++v) img[u * nb + v] = static_cast<Point>(x[u] * nb + v);
    }
    out.push_back(Perm::unchecked(std::move(img)));
  }
  for (const Perm& y : b) {
    std::vector<Point> img(na * nb);
    for (Point u = 0; u < na; ++u) {
      for (Point v = 0; v < nb; ++v) img[u * nb + v] = static_cast<Point>(u * nb + y[v]);
    }
    out.push_back(Perm::unchecked(std::move(img)));
  }
  return out;
}

/// Coordinate tuple of a vertex of a direct power (first coordinate most significant).
inline std::vector<Point> power_coordinates(Vertex v, std::size_t delta, std::size_t m) {
  std::vector<Point> c(m);
  for (std::size_t i = m; i-- > 0;) {
    c[i] = static_cast<Point>(v % delta);
    v = static_cast<Vertex>(v / delta);
  }
  return c;
}

inline Vertex power_vertex(std::span<const Point> coords, std::size_t delta) {
  std::uint64_t v = 0;
  for (Point c : coords) v = v * delta + c;
  return static_cast<Vertex>(v);
}

/// Coordinate-wise relabeling `(x_1, ..., x_m) -> (x_1^{h_1}, ..., x_m^{h_m})` of `Delta^m`.
inline Perm coordinatewise(std::span<const Perm> h, std::size_t delta) {
  const std::size_t m = h.size();
  std::size_t n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= delta;
  std::vector<Point> img(n);
  for (Vertex v = 0; v < n; ++v) {
    auto c = power_coordinates(v, delta, m);
    for (std::size_t i = 0; i < m; ++i) c[i] = h[i][c[i]];
    img[v] = power_vertex(c, delta);
  }
  return Perm::unchecked(std::move(img));
}

struct ProductFactor {
  Digraph factor;               ///< digraph on Delta with arcs {alpha^n -> beta_1^n : n in N}
  std::vector<Perm> relabeling; ///< h_i in H_alpha with beta_i^{h_i} = beta_1
  Digraph relabeled;            ///< the input relabeled by h; equals power(factor, m)
};

/// Recovers `Sigma` with `Gamma^h = Sigma^m` for a digraph on `Delta^m`.
///
/// `u = (alpha, ..., alpha)` and `head` is an out-neighbour of `u` (the least one when
/// omitted). For each coordinate an element `h_i` of the stabilizer `H_alpha` moving
/// `beta_i` to `beta_1` is chosen (least in image order); `Sigma` is the `N`-orbit of the
/// arc `alpha -> beta_1`. Throws NotProductForm when no such `h` exists or the relabeled
/// input is not the m-th power of `Sigma`.
inline ProductFactor extract_product_factor(const Digraph& gamma, std::size_t delta, std::size_t m,
                                            const PermGroup& n, const PermGroup& component,
                                            Point alpha, std::optional<Vertex> head = std::nullopt) {
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < m; ++i) expected *= delta;
  if (m == 0 || gamma.size() != expected) {
    throw Error(ErrorKind::InvalidInput, "digraph does not have |Delta|^m vertices");
  }
  if (n.degree() != delta || component.degree() != delta || alpha >= delta) {
    throw Error(ErrorKind::InvalidInput, "groups must act on Delta");
  }
  const std::vector<Point> alpha_tuple(m, alpha);
  const Vertex u = power_vertex(alpha_tuple, delta);
  if (gamma.out(u).empty()) throw Error(ErrorKind::NotProductForm, "u has no out-neighbour");
  const Vertex v = head.value_or(gamma.out(u).front());
  if (!gamma.has_arc(u, v)) throw Error(ErrorKind::InvalidInput, "head is not an out-neighbour of u");
  const auto beta = power_coordinates(v, delta, m);

  const auto stab = elements(point_stabilizer(component, alpha));
  ProductFactor result;
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::find_if(stab.begin(), stab.end(), [&](const Perm& h) { return h[beta[i]] == beta[0]; });
    if (it == stab.end()) {
      throw Error(ErrorKind::NotProductForm,
                  "no element of H_alpha maps beta_" + std::to_string(i + 1) + " to beta_1");
    }
    result.relabeling.push_back(*it);
  }

  std::vector<Arc> arcs{{alpha, beta[0]}};
  std::vector<std::vector<char>> seen(delta, std::vector<char>(delta, 0));
  seen[alpha][beta[0]] = 1;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (const Perm& g : n.generators()) {
      const Point x = g[arcs[i].first], y = g[arcs[i].second];
      if (!seen[x][y]) {
        seen[x][y] = 1;
        arcs.emplace_back(x, y);
      }
    }
  }
  try {
    result.factor = Digraph::from_arcs(delta, arcs);
  } catch (const Error& e) {
    throw Error(ErrorKind::NotProductForm, std::string("factor is not a digraph: ") + e.what());
  }
  result.relabeled = relabel(gamma, coordinatewise(result.relabeling, delta));
  if (!(result.relabeled == power(result.factor, m))) {
    throw Error(ErrorKind::NotProductForm, "relabeled digraph is not the m-th power of the factor");
  }
  return result;
}

}  // namespace arctest
