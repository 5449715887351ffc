#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "arctest/families.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/structure.hpp"
#include "arctest/subgroup.hpp"
#include "support.hpp"

using namespace arctest;
using testing_support::closure;

namespace {

Perm P(std::size_t n, std::initializer_list<std::initializer_list<Point>> c) { return Perm::from_cycles(n, c); }

}  // namespace

TEST(Perm, RejectsNonBijections) {
  EXPECT_THROW(Perm(std::vector<Point>{0, 0, 1}), Error);
  EXPECT_THROW(Perm(std::vector<Point>{0, 3, 1}), Error);
  EXPECT_THROW(P(3, {{0, 1}, {1, 2}}), Error);
  try {
    P(3, {{0, 5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PointOutOfRange);
  }
}

TEST(Perm, CompositionExamples) {
  const Perm t = P(3, {{0, 1}});
  EXPECT_TRUE((t * t).is_identity());
  const Perm p = P(3, {{0, 1, 2}});
  EXPECT_EQ(p * Perm::identity(3), p);
  EXPECT_EQ(p * t, P(3, {{1, 2}}));
  EXPECT_EQ(t * p, P(3, {{0, 2}}));
  EXPECT_THROW(p * Perm::identity(4), Error);
}

TEST(Perm, MatchesBruteForceS3Table) {
  // Table entries computed straight from the image arrays: (pq)(i) = q(p(i)).
  const auto s3 = closure(3, {P(3, {{0, 1}}), P(3, {{0, 1, 2}})});
  ASSERT_EQ(s3.size(), 6u);
  for (const Perm& p : s3) {
    for (const Perm& q : s3) {
      std::vector<Point> img(3);
      for (Point i = 0; i < 3; ++i) img[i] = q.images()[p.images()[i]];
      EXPECT_EQ(p * q, Perm(img));
    }
  }
}

TEST(Perm, GroupAxiomsOnRandomPermutations) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Perm a = testing_support::random_perm(9, rng);
    const Perm b = testing_support::random_perm(9, rng);
    const Perm c = testing_support::random_perm(9, rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ(power(a, -3), power(a.inverse(), 3));
    EXPECT_TRUE(power(a, static_cast<long long>(a.order())).is_identity());
  }
}

TEST(Perm, CycleStringIsOneBased) {
  EXPECT_EQ(P(5, {{0, 1, 2}}).cycle_string(), "(1,2,3)");
  EXPECT_EQ(Perm::identity(4).cycle_string(), "()");
}

TEST(PermGroup, OrderExamples) {
  EXPECT_EQ(testing_support::alternating5().order(), 60u);
  EXPECT_EQ(PermGroup(4, {Perm::identity(4)}).order(), 1u);
  EXPECT_EQ(PermGroup::trivial(3).order(), 1u);
  EXPECT_EQ(build_gamma_n(5).group.order(), 7200u);
  EXPECT_THROW(PermGroup(3, {Perm::identity(4)}), Error);
}

TEST(PermGroup, ChainAgreesWithClosure) {
  std::mt19937_64 rng(11);
  const auto s6 = elements(testing_support::symmetric(6));
  std::vector<std::vector<Perm>> cases{{P(5, {{0, 1, 2, 3, 4}}), P(5, {{0, 1, 2}})},
                                       {P(4, {{0, 1, 2, 3}}), P(4, {{0, 2}})},
                                       {P(7, {{0, 1, 2, 3, 4, 5, 6}}), P(7, {{1, 2, 4}, {3, 6, 5}})}};
  for (int i = 0; i < 30; ++i) cases.push_back(testing_support::random_subgroup_gens(s6, rng));
  for (const auto& gens : cases) {
    const std::size_t n = gens[0].degree();
    const PermGroup g(n, gens);
    const auto brute = closure(n, gens);
    EXPECT_EQ(g.order(), brute.size());
    EXPECT_EQ(elements(g), brute);
    // Membership against the closure set, using members and non-members of S_n.
    const auto all = elements(testing_support::symmetric(n), 6000);
    const std::set<Perm> in(brute.begin(), brute.end());
    for (std::size_t k = 0; k < all.size(); k += 7) EXPECT_EQ(g.contains(all[k]), in.count(all[k]) == 1);
  }
}

TEST(PermGroup, OrbitExamples) {
  const PermGroup c3(4, {P(4, {{0, 1, 2}})});
  EXPECT_EQ(orbit(c3, 3), std::vector<Point>{3});
  EXPECT_EQ(orbit(testing_support::alternating5(), 0), (std::vector<Point>{0, 1, 2, 3, 4}));
  EXPECT_THROW(orbit(c3, 4), Error);
  EXPECT_FALSE(is_transitive(c3));
}

TEST(PermGroup, SocleOfGammaFiveIsTransitiveOnCosets) {
  const GammaNData d = build_gamma_n(5);
  const CosetDigraphSpec spec = gamma_n_spec(d);
  std::vector<Perm> gens;
  for (const Perm& x : d.socle.generators()) gens.push_back(spec.space().action_of(x));
  EXPECT_TRUE(is_transitive(PermGroup(spec.space().size(), gens)));
}

TEST(PermGroup, StabilizerExamples) {
  EXPECT_EQ(point_stabilizer(testing_support::alternating5(), 0).order(), 12u);
  const Point pts[] = {0, 1};
  EXPECT_EQ(sequence_stabilizer(testing_support::symmetric(4), pts).order(), 2u);
  const GammaNData d = build_gamma_n(5);
  const CosetDigraphSpec spec = gamma_n_spec(d);
  EXPECT_EQ(point_stabilizer(spec.space().acting_group(), 0).order(), 4u);
}

TEST(PermGroup, OrbitStabilizerProperty) {
  std::mt19937_64 rng(3);
  const auto s6 = elements(testing_support::symmetric(6));
  for (int trial = 0; trial < 40; ++trial) {
    const PermGroup g(6, testing_support::random_subgroup_gens(s6, rng));
    for (Point p = 0; p < 6; ++p) {
      const PermGroup st = point_stabilizer(g, p);
      EXPECT_EQ(orbit(g, p).size() * st.order(), g.order());
      for (const Perm& x : elements(st)) EXPECT_EQ(x[p], p);
    }
  }
}

TEST(PermGroup, StabilizerAgreesWithFilteredClosure) {
  const auto brute = closure(6, {P(6, {{0, 1, 2, 3, 4, 5}}), P(6, {{0, 1}})});
  const Point pts[] = {2, 5};
  std::vector<Perm> fixing;
  for (const Perm& x : brute) {
    if (x[2] == 2 && x[5] == 5) fixing.push_back(x);
  }
  EXPECT_EQ(elements(sequence_stabilizer(testing_support::symmetric(6), pts)), fixing);
}

TEST(Elements, Examples) {
  const auto e = elements(PermGroup(3, {P(3, {{0, 1}})}));
  EXPECT_EQ(e, (std::vector<Perm>{Perm::identity(3), P(3, {{0, 1}})}));
  const GammaNData d = build_gamma_n(5);
  EXPECT_EQ(d.h.elements(), (SubgroupSet::unchecked(10, {Perm::identity(10), d.a, d.b, d.a * d.b}).elements()));
  EXPECT_THROW(elements(testing_support::symmetric(6), 100), Error);
}

TEST(Elements, DiagonalOfS3SquaredHasSixElements) {
  const Perm t = P(6, {{0, 1}, {3, 4}});
  const Perm r = P(6, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(elements(PermGroup(6, {t, r})).size(), 6u);
}

TEST(SubgroupSet, FromElementsValidates) {
  EXPECT_THROW(SubgroupSet::from_elements(3, {P(3, {{0, 1}})}), Error);
  EXPECT_THROW(SubgroupSet::from_elements(3, {Perm::identity(3), P(3, {{0, 1, 2}})}), Error);
  EXPECT_EQ(SubgroupSet::from_elements(3, {Perm::identity(3), P(3, {{0, 1}})}).size(), 2u);
}

TEST(Intersect, Examples) {
  const GammaNData d = build_gamma_n(5);
  const SubgroupSet a = intersect(d.h, conjugate_subgroup(d.h, d.g));
  EXPECT_EQ(a, SubgroupSet::generated_by(10, {d.a}));
  const SubgroupSet ab = intersect(d.h, conjugate_subgroup(d.h, d.g.inverse()));
  EXPECT_EQ(ab, SubgroupSet::generated_by(10, {d.a * d.b}));
  EXPECT_EQ(intersect(d.h, d.h), d.h);
}

TEST(Factorization, Examples) {
  const PermGroup s3 = testing_support::symmetric(3);
  const SubgroupSet t = SubgroupSet::generated_by(3, {P(3, {{0, 1}})});
  const SubgroupSet c = SubgroupSet::generated_by(3, {P(3, {{0, 1, 2}})});
  EXPECT_TRUE(is_factorization(s3, t, c));
  EXPECT_FALSE(is_factorization(s3, t, t));
  const GammaNData d = build_gamma_n(5);
  const PermGroup h = d.h.as_group();
  EXPECT_TRUE(is_factorization(h, SubgroupSet::generated_by(10, {d.a}), SubgroupSet::generated_by(10, {d.a * d.b})));
}

TEST(Factorization, PropertiesOnRandomSubgroups) {
  // Symmetry, conjugation invariance, and order test against coset transitivity,
  // with the explicit product set as a third opinion.
  std::mt19937_64 rng(20170301);
  const PermGroup s5 = testing_support::symmetric(5);
  const auto elems = elements(s5);
  int true_count = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const SubgroupSet h = SubgroupSet::generated_by(5, testing_support::random_subgroup_gens(elems, rng));
    const SubgroupSet k = SubgroupSet::generated_by(5, testing_support::random_subgroup_gens(elems, rng));
    const bool f = is_factorization(s5, h, k);
    true_count += f;
    EXPECT_EQ(f, is_factorization(s5, k, h));
    EXPECT_EQ(f, is_factorization_by_transitivity(s5, h, k));
    EXPECT_EQ(f, product_set(h.elements(), k.elements()).size() == elems.size());
    const Perm x = testing_support::random_element(elems, rng);
    const Perm y = testing_support::random_element(elems, rng);
    EXPECT_EQ(f, is_factorization(s5, conjugate_subgroup(h, x), conjugate_subgroup(k, y)));
  }
  EXPECT_GT(true_count, 0);
}

TEST(ConjugateSubgroup, Examples) {
  const SubgroupSet t = SubgroupSet::generated_by(3, {P(3, {{0, 1}})});
  EXPECT_EQ(conjugate_subgroup(t, P(3, {{1, 2}})), SubgroupSet::generated_by(3, {P(3, {{0, 2}})}));
  EXPECT_EQ(conjugate_subgroup(t, Perm::identity(3)), t);
  const GammaNData d = build_gamma_n(5);
  const SubgroupSet hg = conjugate_subgroup(d.h, d.g);
  EXPECT_FALSE(hg == d.h);
  EXPECT_EQ(hg.size(), d.h.size());
}

TEST(DoubleCoset, Examples) {
  const GammaNData d = build_gamma_n(5);
  EXPECT_TRUE(in_double_coset(d.g, d.h, d.g, d.h));
  EXPECT_FALSE(in_double_coset(d.g.inverse(), d.h, d.g, d.h));
  const SubgroupSet big = SubgroupSet::from_group(testing_support::symmetric(5));
  EXPECT_THROW(in_double_coset(P(5, {{0, 1}}), big, P(5, {{0, 1}}), big, 1000), Error);
}

TEST(Classes, Examples) {
  const PermGroup a5 = testing_support::alternating5();
  EXPECT_EQ(normal_closure(a5, P(5, {{0, 1, 2}})).order(), 60u);
  EXPECT_EQ(normal_closure(testing_support::symmetric(3), P(3, {{0, 1}})).order(), 6u);
  EXPECT_EQ(conjugacy_class_reps(a5).size(), 5u);
}

TEST(Classes, S4ClassCountMatchesBruteForce) {
  const auto s4 = closure(4, {P(4, {{0, 1, 2, 3}}), P(4, {{0, 1}})});
  std::set<std::set<Perm>> classes;
  for (const Perm& x : s4) {
    std::set<Perm> cls;
    for (const Perm& g : s4) cls.insert(g.inverse() * x * g);
    classes.insert(cls);
  }
  EXPECT_EQ(classes.size(), 5u);
  EXPECT_EQ(conjugacy_class_reps(testing_support::symmetric(4)).size(), classes.size());
}

TEST(Classes, NormalClosureIsSmallestNormalSubgroup) {
  const PermGroup s4 = testing_support::symmetric(4);
  const PermGroup n = normal_closure(s4, P(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(n.order(), 4u);
  EXPECT_TRUE(is_normal(s4, n));
}

TEST(Quasiprimitive, Examples) {
  EXPECT_TRUE(is_quasiprimitive(testing_support::alternating5()));
  EXPECT_FALSE(is_quasiprimitive(PermGroup(6, {P(6, {{0, 1, 2, 3, 4, 5}})})));
  const GammaNData d = build_gamma_n(5);
  EXPECT_TRUE(quasiprimitive_on_cosets(d.group, d.h).quasiprimitive);
  const CosetDigraphSpec spec = gamma_n_spec(d);
  EXPECT_TRUE(is_quasiprimitive(spec.space().acting_group()));
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(testing_support::symmetric(4)));
  EXPECT_FALSE(is_primitive(PermGroup(4, {P(4, {{0, 1, 2, 3}}), P(4, {{0, 2}})})));
  EXPECT_FALSE(is_primitive(PermGroup(6, {P(6, {{0, 1, 2, 3, 4, 5}})})));
  EXPECT_TRUE(is_primitive(PermGroup(5, {P(5, {{0, 1, 2, 3, 4}})})));
}

TEST(MinimalNormal, Examples) {
  const auto s3 = minimal_normal_subgroups(testing_support::symmetric(3));
  ASSERT_EQ(s3.size(), 1u);
  EXPECT_EQ(s3[0].order(), 3u);
  const auto k4 = minimal_normal_subgroups(PermGroup(4, {P(4, {{0, 1}, {2, 3}}), P(4, {{0, 2}, {1, 3}})}));
  EXPECT_EQ(k4.size(), 3u);
  for (const PermGroup& m : k4) EXPECT_EQ(m.order(), 2u);
  const auto g5 = minimal_normal_subgroups(build_gamma_n(5).group);
  ASSERT_EQ(g5.size(), 1u);
  EXPECT_EQ(g5[0].order(), 3600u);
}
