#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"

namespace arctest {

inline void PrintTo(const Perm& p, std::ostream* os) { *os << p.cycle_string(false); }

}  // namespace arctest

namespace testing_support {

using arctest::Perm;
using arctest::Point;

// Closure by repeated right multiplication; shares no code with the stabilizer chain.
inline std::vector<Perm> closure(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> seen{Perm::identity(degree)};
  std::vector<Perm> queue{Perm::identity(degree)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Perm& g : gens) {
      std::vector<Point> img(degree);
      for (Point x = 0; x < degree; ++x) img[x] = g[queue[i][x]];
      Perm y = Perm::unchecked(std::move(img));
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return {seen.begin(), seen.end()};
}

inline Perm random_perm(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Point> img(degree);
  for (Point i = 0; i < degree; ++i) img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Perm(std::move(img));
}

inline Perm random_element(const std::vector<Perm>& elems, std::mt19937_64& rng) {
  return elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
}

// Subgroup of `elems` generated by one or two random members.
inline std::vector<Perm> random_subgroup_gens(const std::vector<Perm>& elems, std::mt19937_64& rng) {
  std::vector<Perm> gens{random_element(elems, rng)};
  if (rng() % 2) gens.push_back(random_element(elems, rng));
  return gens;
}

inline arctest::PermGroup symmetric(std::size_t n) {
  std::vector<std::vector<Point>> cyc(1);
  for (Point i = 0; i < n; ++i) cyc[0].push_back(i);
  return arctest::PermGroup(n, {Perm::from_cycles(n, cyc), Perm::from_cycles(n, {{0, 1}})});
}

inline arctest::PermGroup alternating5() {
  return arctest::PermGroup(5, {Perm::from_cycles(5, {{0, 1, 2, 3, 4}}), Perm::from_cycles(5, {{0, 1, 2}})});
}

}  // namespace testing_support
