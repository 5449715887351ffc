#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "arctest/diagonal.hpp"
#include "support.hpp"

using namespace arctest;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<std::vector<Elem>> table_of(const CayleyGroup& t) {
  std::vector<std::vector<Elem>> table(t.size(), std::vector<Elem>(t.size()));
  for (Elem a = 0; a < t.size(); ++a) {
    for (Elem b = 0; b < t.size(); ++b) table[a][b] = t.mul(a, b);
  }
  return table;
}

// Table of Z_n with the identity listed last.
std::vector<std::vector<Elem>> cyclic_table(std::size_t n) {
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<Elem>((a + 1 + b + 1) % n + n - 1) % n;
  }
  return table;
}

std::size_t components(const Digraph& d) {
  std::vector<Vertex> parent(d.size());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : d.arcs()) parent[find(u)] = find(v);
  std::size_t c = 0;
  for (Vertex v = 0; v < d.size(); ++v) c += find(v) == v;
  return c;
}

}  // namespace

TEST(CayleyGroup, S3TableMatchesPermutationProducts) {
  const CatalogGroup s3 = catalog_group("s3");
  const CayleyGroup& t = s3.group;
  ASSERT_EQ(t.size(), 6u);
  EXPECT_TRUE(t.labels()[t.identity()].is_identity());
  for (Elem a = 0; a < 6; ++a) {
    for (Elem b = 0; b < 6; ++b) {
      std::vector<Point> img(3);
      for (Point i = 0; i < 3; ++i) img[i] = t.labels()[b][t.labels()[a][i]];
      EXPECT_EQ(t.labels()[t.mul(a, b)], Perm(img));
    }
    EXPECT_EQ(t.mul(a, t.inv(a)), t.identity());
  }
  EXPECT_FALSE(t.is_abelian());
  EXPECT_TRUE(t.has_trivial_center());
  EXPECT_EQ(s3.automorphisms.size(), 6u);
  EXPECT_EQ(s3.automorphisms.inner_count(), 6u);
}

TEST(CayleyGroup, A5Catalog) {
  const CatalogGroup a5 = catalog_group("a5");
  EXPECT_EQ(a5.group.size(), 60u);
  EXPECT_EQ(a5.automorphisms.size(), 120u);
  EXPECT_EQ(a5.automorphisms.inner_count(), 60u);
  EXPECT_EQ(kind_of([] { catalog_group("a6"); }), ErrorKind::InvalidInput);
}

TEST(CayleyGroup, RejectsCorruptedTables) {
  const auto good = table_of(catalog_group("s3").group);
  EXPECT_NO_THROW(CayleyGroup::from_table("s3", good));

  // Swapping an intercalate keeps the square Latin but breaks associativity.
  auto swapped = good;
  bool found = false;
  for (Elem r1 = 0; r1 < 5 && !found; ++r1) {
    for (Elem r2 = r1 + 1; r2 < 5 && !found; ++r2) {
      for (Elem c1 = 0; c1 < 5 && !found; ++c1) {
        for (Elem c2 = c1 + 1; c2 < 5 && !found; ++c2) {
          if (good[r1][c1] == good[r2][c2] && good[r1][c2] == good[r2][c1]) {
            std::swap(swapped[r1][c1], swapped[r1][c2]);
            std::swap(swapped[r2][c1], swapped[r2][c2]);
            found = true;
          }
        }
      }
    }
  }
  ASSERT_TRUE(found);
  EXPECT_EQ(message_of([&] { CayleyGroup::from_table("bad", swapped); }), "invalid construction: table is not associative");

  auto repeated = good;
  repeated[0][1] = repeated[0][2];
  EXPECT_EQ(kind_of([&] { CayleyGroup::from_table("bad", repeated); }), ErrorKind::InvalidConstruction);

  auto moved_identity = good;
  std::swap(moved_identity[0], moved_identity[5]);
  EXPECT_EQ(kind_of([&] { CayleyGroup::from_table("bad", moved_identity); }), ErrorKind::InvalidConstruction);

  EXPECT_EQ(kind_of([] { CayleyGroup::from_table("bad", {{0, 1}, {1}}); }), ErrorKind::InvalidConstruction);
}

TEST(DiagonalSpace, RejectsAbelianAndCenteredGroups) {
  const CayleyGroup c5 = CayleyGroup::from_table("c5", cyclic_table(5));
  EXPECT_TRUE(c5.is_abelian());
  EXPECT_EQ(kind_of([&] { DiagonalSpace sp(c5); }), ErrorKind::InvalidConstruction);

  const std::vector<Perm> d4{Perm::from_cycles(4, {{0, 1, 2, 3}}), Perm::from_cycles(4, {{0, 2}})};
  const CayleyGroup dihedral = CayleyGroup::from_permutation_generators("d4", 4, d4);
  EXPECT_FALSE(dihedral.has_trivial_center());
  EXPECT_EQ(kind_of([&] { DiagonalSpace sp(dihedral); }), ErrorKind::InvalidConstruction);

  const CayleyGroup& s3 = catalog_group("s3").group;
  EXPECT_EQ(kind_of([&] { DiagonalSpace sp(s3, {0, 1, 2, 3, 4, 4}); }), ErrorKind::InvalidConstruction);
}

TEST(DiagonalSpace, CanonicalFormAndNeighbours) {
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Tuple c = sp.random_coset(rng);
    EXPECT_EQ(c[0], s3.group.identity());
    EXPECT_EQ(sp.vertex(sp.vertex_id(c)), c);
    const auto out = sp.out_neighbours(c);
    EXPECT_EQ(std::set<Tuple>(out.begin(), out.end()).size(), 6u);
    for (const Tuple& w : out) EXPECT_EQ(w, sp.canonical(w));
  }
}

TEST(DiagonalSpace, LambdaAndRhoCommute) {
  for (const char* name : {"s3", "a5"}) {
    const CatalogGroup cg = catalog_group(name);
    const DiagonalSpace sp(cg.group);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i) {
      const Tuple c = sp.random_coset(rng);
      const Elem s = static_cast<Elem>(rng() % cg.group.size());
      const Elem t = static_cast<Elem>(rng() % cg.group.size());
      EXPECT_EQ(sp.lambda(s, sp.rho(t, c)), sp.rho(t, sp.lambda(s, c))) << name;
    }
  }
}

TEST(DiagonalSpace, LocalChecks) {
  const LocalChecks s3 = gamma_T_local_checks(DiagonalSpace(catalog_group("s3").group));
  EXPECT_EQ(s3.intersection_iterations, 6u);
  EXPECT_EQ(s3.double_coset_pairs, 36u);
  EXPECT_TRUE(s3.holds());
  const LocalChecks a5 = gamma_T_local_checks(DiagonalSpace(catalog_group("a5").group));
  EXPECT_EQ(a5.intersection_iterations, 60u);
  EXPECT_EQ(a5.double_coset_pairs, 3600u);
  EXPECT_TRUE(a5.holds());
}

TEST(DiagonalSpace, Monomorphisms) {
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  const auto cosets = all_cosets(sp);
  EXPECT_EQ(cosets.size(), 7776u);
  const MonomorphismReport r = verify_monomorphisms(sp, s3.automorphisms, cosets);
  EXPECT_EQ(r.lambda_pairs, 36u);
  EXPECT_EQ(r.lambda_failures, 0u);
  EXPECT_TRUE(r.holds());

  const CatalogGroup a5 = catalog_group("a5");
  const DiagonalSpace sa(a5.group);
  const auto some = test_cosets(sa, 3, 20);
  EXPECT_TRUE(verify_monomorphisms(sa, a5.automorphisms, some).holds());
}

TEST(DiagonalSpace, TwoArcLocal) {
  EXPECT_TRUE(verify_two_arc_local(DiagonalSpace(catalog_group("s3").group), 4, 100).holds());
  EXPECT_TRUE(verify_two_arc_local(DiagonalSpace(catalog_group("a5").group), 4, 50).holds());
}

TEST(DiagonalSpace, RightMultiplicationsCannotBeThreeArcTransitive) {
  for (const char* name : {"s3", "a5"}) {
    const CatalogGroup cg = catalog_group(name);
    const ThreeArcCount c = not_three_arc_count(DiagonalSpace(cg.group));
    EXPECT_EQ(c.m_v, cg.group.size());
    EXPECT_EQ(c.two_arcs_from_v, cg.group.size() * cg.group.size());
    EXPECT_TRUE(c.impossible());
  }
}

TEST(IndexAction, HolomorphOrdersAndPrimitivity) {
  const CatalogGroup s3 = catalog_group("s3");
  const IndexActionReport r3 = verify_index_action(DiagonalSpace(s3.group), s3.automorphisms);
  EXPECT_TRUE(r3.defining_identities);
  EXPECT_EQ(r3.order, 36u);
  EXPECT_TRUE(r3.order_matches());
  EXPECT_TRUE(r3.transitive);
  EXPECT_FALSE(r3.primitive);
  ASSERT_TRUE(r3.block.has_value());
  EXPECT_GT(r3.block->size(), 1u);
  EXPECT_LT(r3.block->size(), 6u);

  const CatalogGroup a5 = catalog_group("a5");
  const IndexActionReport r5 = verify_index_action(DiagonalSpace(a5.group), a5.automorphisms);
  EXPECT_EQ(r5.order, 7200u);
  EXPECT_TRUE(r5.y_inside);
  EXPECT_TRUE(r5.primitive);
}

TEST(ExplicitGamma, S3IsSixRegularButDisconnected) {
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  const ExplicitGammaT e = build_explicit_gamma_T(sp, s3.automorphisms);
  EXPECT_EQ(e.digraph.size(), 7776u);
  EXPECT_EQ(regularity(e.digraph), 6u);
  EXPECT_EQ(count_s_arcs(e.digraph, 2), 279936u);
  // T = S_3 is solvable: the sign map sends <D, g> onto a subgroup of order 4 in C_2^6.
  EXPECT_EQ(components(e.digraph), 144u);
  EXPECT_FALSE(is_connected(e.digraph));
  const GenericGammaT generic = generic_gamma_T_spec(sp, false);
  EXPECT_FALSE(connected_via_generation(generic.spec));
  EXPECT_TRUE(s_arc_orbit(e.digraph, e.m_and_lambda(), 2).transitive());
  EXPECT_FALSE(s_arc_orbit(e.digraph, e.m_generators, 2).transitive());
}

TEST(ExplicitGamma, GenericSpecMatchesExplicitDigraph) {
  const CatalogGroup s3 = catalog_group("s3");
  const DiagonalSpace sp(s3.group);
  const Digraph d = explicit_digraph(sp);
  for (bool with_lambda : {false, true}) {
    const GenericGammaT generic = generic_gamma_T_spec(sp, with_lambda);
    const CosetDigraph cd = build_coset_digraph(generic.spec);
    const auto phi = equivariant_bijection(generic, sp, d.size());
    ASSERT_TRUE(phi.has_value());
    EXPECT_TRUE(preserves_arcs(cd.digraph, d, *phi));
    EXPECT_EQ(two_arc_check(generic.spec), with_lambda);
  }
}

TEST(ExplicitGamma, EnumerationIndependence) {
  const CayleyGroup& t = catalog_group("s3").group;
  std::vector<Elem> e = DiagonalSpace::default_enumeration(t);
  std::vector<Elem> shuffled = e;
  std::mt19937_64 rng(8);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const IsomorphismReport r = enumeration_independence(t, e, shuffled);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.arcs_checked, 7776u * 6u);
}

TEST(ExplicitGamma, A5ExceedsExplicitBound) {
  const CatalogGroup a5 = catalog_group("a5");
  const DiagonalSpace sp(a5.group);
  EXPECT_FALSE(sp.vertex_count(Limits{}.max_vertices).has_value());
  EXPECT_EQ(kind_of([&] { explicit_digraph(sp); }), ErrorKind::BoundExceeded);
  EXPECT_EQ(kind_of([&] { build_explicit_gamma_T(sp, a5.automorphisms); }), ErrorKind::BoundExceeded);
}
