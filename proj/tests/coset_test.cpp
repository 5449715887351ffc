#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "arctest/coset.hpp"
#include "arctest/families.hpp"
#include "support.hpp"

using namespace arctest;
using testing_support::closure;

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

Perm mul(const Perm& p, const Perm& q) {
  std::vector<Point> img(p.degree());
  for (Point i = 0; i < p.degree(); ++i) img[i] = q[p[i]];
  return Perm::unchecked(std::move(img));
}

Perm pow_brute(const Perm& g, int j) {
  Perm r = Perm::identity(g.degree());
  const Perm step = j < 0 ? g.inverse() : g;
  for (int k = 0; k < (j < 0 ? -j : j); ++k) r = mul(r, step);
  return r;
}

// Elements x of H with g^j x g^-j in H for every j in [lo, hi].
std::vector<Perm> brute_intersection(const std::vector<Perm>& h, const Perm& g, int lo, int hi) {
  const std::set<Perm> hs(h.begin(), h.end());
  std::vector<Perm> out;
  for (const Perm& x : h) {
    bool in = true;
    for (int j = lo; j <= hi && in; ++j) in = hs.count(mul(mul(pow_brute(g, j), x), pow_brute(g, -j))) == 1;
    if (in) out.push_back(x);
  }
  return out;
}

struct RandomSpec {
  std::vector<Perm> group_gens;
  std::vector<Perm> subgroup_gens;
  Perm g;
};

// Random valid (G, H, g) inside S_5 or S_6.
std::vector<RandomSpec> random_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RandomSpec> out;
  const std::vector<Perm> s5 = elements(testing_support::symmetric(5));
  const std::vector<Perm> s6 = elements(testing_support::symmetric(6));
  while (out.size() < count) {
    const auto& pool = rng() % 3 == 0 ? s6 : s5;
    RandomSpec r;
    r.group_gens = {testing_support::random_element(pool, rng), testing_support::random_element(pool, rng)};
    const std::size_t n = pool[0].degree();
    const auto g_elems = closure(n, r.group_gens);
    if (g_elems.size() < 6) continue;
    r.subgroup_gens = testing_support::random_subgroup_gens(g_elems, rng);
    const SubgroupSet h = SubgroupSet::generated_by(n, r.subgroup_gens);
    if (h.size() > 120) continue;
    r.g = testing_support::random_element(g_elems, rng);
    if (h.contains(r.g) || in_double_coset(r.g.inverse(), h, r.g, h)) continue;
    out.push_back(std::move(r));
  }
  return out;
}

CosetDigraphSpec make(const RandomSpec& r) {
  const std::size_t n = r.g.degree();
  return CosetDigraphSpec(CosetSpace::build(PermGroup(n, r.group_gens), SubgroupSet::generated_by(n, r.subgroup_gens)),
                          r.g);
}

CosetDigraphSpec cyclic_spec(std::size_t n, long long j) {
  const Perm x = cyclic_shift(n);
  return CosetDigraphSpec(CosetSpace::build(PermGroup(n, {x}), SubgroupSet::trivial(n)), power(x, j));
}

}  // namespace

TEST(CosetSpace, IndexAndRepresentatives) {
  const PermGroup s4 = testing_support::symmetric(4);
  const CosetSpace cs = CosetSpace::build(s4, SubgroupSet::generated_by(4, {Perm::from_cycles(4, {{0, 1}})}));
  EXPECT_EQ(cs.size(), 12u);
  EXPECT_EQ(cs.id_of(Perm::identity(4)), 0u);
  EXPECT_EQ(cs.id_of(Perm::from_cycles(4, {{0, 1}})), 0u);
  for (Vertex v = 0; v < cs.size(); ++v) EXPECT_EQ(cs.id_of(cs.representative(v)), v);
  EXPECT_TRUE(cs.is_faithful());
  EXPECT_THROW(CosetSpace::build(s4, SubgroupSet::trivial(4), 10), Error);
}

TEST(CosetDigraph, CyclicExamples) {
  const CosetDigraph c5 = build_coset_digraph(cyclic_spec(5, 1));
  EXPECT_TRUE(is_directed_cycle(c5.digraph));
  const CosetDigraph c6 = build_coset_digraph(cyclic_spec(6, 2));
  EXPECT_EQ(c6.digraph.size(), 6u);
  EXPECT_FALSE(is_connected(c6.digraph));
  EXPECT_FALSE(connected_via_generation(cyclic_spec(6, 2)));
  EXPECT_EQ(regularity_formula(cyclic_spec(7, 3)), 1u);
}

TEST(CosetDigraph, InvalidConnectors) {
  EXPECT_EQ(kind_of([] { cyclic_spec(6, 3); }), ErrorKind::InvalidConnector);
  EXPECT_EQ(kind_of([] { cyclic_spec(5, 0); }), ErrorKind::InvalidConnector);
  const CosetSpace cs = CosetSpace::build(PermGroup(5, {cyclic_shift(5)}), SubgroupSet::trivial(5));
  EXPECT_EQ(kind_of([&] { CosetDigraphSpec(cs, Perm::from_cycles(5, {{0, 1}})); }), ErrorKind::InvalidConnector);
  EXPECT_EQ(kind_of([&] { CosetDigraphSpec(cs, Perm::identity(4)); }), ErrorKind::DegreeMismatch);
  const PermGroup s3 = testing_support::symmetric(3);
  const SubgroupSet h = SubgroupSet::generated_by(3, {Perm::from_cycles(3, {{0, 1}})});
  EXPECT_EQ(kind_of([&] { CosetDigraphSpec(CosetSpace::build(s3, h), Perm::from_cycles(3, {{0, 2}})); }),
            ErrorKind::InvalidConnector);
}

TEST(CosetDigraph, GammaFive) {
  const CosetDigraphSpec spec = gamma_n_spec(build_gamma_n(5));
  const CosetDigraph cd = build_coset_digraph(spec);
  EXPECT_EQ(cd.digraph.size(), 1800u);
  EXPECT_EQ(regularity(cd.digraph), 2u);
  EXPECT_EQ(regularity_formula(spec), 2u);
  EXPECT_TRUE(is_connected(cd.digraph));
  EXPECT_TRUE(connected_via_generation(spec));
  EXPECT_TRUE(two_arc_check(spec));
  EXPECT_TRUE(s_arc_transitive_by_factorization(spec, 2));
  EXPECT_FALSE(s_arc_transitive_by_factorization(spec, 3));
  EXPECT_EQ(cd.acting.order(), 7200u);
}

TEST(CosetDigraph, CriteriaAgreeWithOracles) {
  int two_arc = 0, disconnected = 0;
  for (const RandomSpec& r : random_corpus(60, 20170301)) {
    const CosetDigraphSpec spec = make(r);
    const CosetDigraph cd = build_coset_digraph(spec);
    EXPECT_EQ(regularity(cd.digraph), regularity_formula(spec));
    EXPECT_EQ(is_connected(cd.digraph), connected_via_generation(spec));
    EXPECT_TRUE(is_G_s_arc_transitive(cd.digraph, cd.acting, 1));
    for (std::size_t s = 2; s <= 3; ++s) {
      EXPECT_EQ(s_arc_transitive_by_factorization(spec, s), is_G_s_arc_transitive(cd.digraph, cd.acting, s))
          << "s=" << s << " g=" << spec.connector().cycle_string();
    }
    const bool oracle2 = is_G_s_arc_transitive(cd.digraph, cd.acting, 2);
    EXPECT_EQ(two_arc_check(spec), oracle2);
    two_arc += oracle2;
    disconnected += !is_connected(cd.digraph);
  }
  EXPECT_GT(two_arc, 0);
  EXPECT_GT(disconnected, 0);
}

TEST(FactorizationChain, MatchesBruteForceIntersections) {
  for (const RandomSpec& r : random_corpus(25, 99)) {
    const CosetDigraphSpec spec = make(r);
    const std::vector<Perm> h = closure(r.g.degree(), r.subgroup_gens);
    const auto links = factorization_chain(spec, 4);
    ASSERT_EQ(links.size(), 3u);
    for (const ChainLink& l : links) {
      const auto a = brute_intersection(h, r.g, 0, l.i - 1);
      const auto b = brute_intersection(h, r.g, -1, l.i - 1);
      const auto c = brute_intersection(h, r.g, 0, l.i);
      EXPECT_EQ(l.a, a.size());
      EXPECT_EQ(l.b, b.size());
      EXPECT_EQ(l.c, c.size());
      std::set<Perm> bc;
      for (const Perm& x : b) {
        for (const Perm& y : c) bc.insert(mul(x, y));
      }
      EXPECT_EQ(l.holds, bc == std::set<Perm>(a.begin(), a.end()));
    }
  }
}

TEST(FactorizationChain, IntersectionsAreConjugationInvariant) {
  const GammaNData d = build_gamma_n(5);
  const SubgroupSet a1 = conjugate_intersection(d.h, d.g, 0, 1);
  EXPECT_EQ(a1, SubgroupSet::generated_by(10, {d.a}));
  EXPECT_EQ(conjugate_intersection(d.h, d.g, 0, 0), d.h);
  EXPECT_EQ(conjugate_intersection(d.h, d.g, -1, 0), SubgroupSet::generated_by(10, {d.a * d.b}));
}

TEST(Descent, CycleAndErrors) {
  const Digraph c7 = directed_cycle(7);
  const PermGroup z7(7, {cyclic_shift(7)});
  const DescentReport r = normal_descent_checks(c7, z7, z7, 3);
  EXPECT_TRUE(r.precondition);
  EXPECT_TRUE(r.m_regular);
  EXPECT_EQ(r.directed_cycle, true);
  EXPECT_TRUE(r.holds());

  const std::size_t qr[] = {1, 2, 4};
  const Digraph paley = circulant(7, qr);
  const Perm doubling(std::vector<Point>{0, 2, 4, 6, 1, 3, 5});
  const PermGroup f21(7, {cyclic_shift(7), doubling});
  EXPECT_EQ(kind_of([&] { normal_descent_checks(paley, f21, PermGroup(7, {doubling}), 2); }), ErrorKind::NotNormal);
  EXPECT_EQ(kind_of([&] { normal_descent_checks(paley, f21, f21, 1); }), ErrorKind::InvalidInput);

  const Digraph c6 = directed_cycle(6);
  const PermGroup z6(6, {cyclic_shift(6)});
  EXPECT_EQ(kind_of([&] { normal_descent_checks(c6, z6, PermGroup(6, {power(cyclic_shift(6), 2)}), 2); }),
            ErrorKind::NotTransitive);
}

TEST(Descent, PreconditionFailureIsReported) {
  const std::size_t qr[] = {1, 2, 4};
  const Digraph paley = circulant(7, qr);
  const PermGroup z7(7, {cyclic_shift(7)});
  const PermGroup f21(7, {cyclic_shift(7), Perm(std::vector<Point>{0, 2, 4, 6, 1, 3, 5})});
  const DescentReport r = normal_descent_checks(paley, f21, z7, 2);
  EXPECT_FALSE(r.precondition);
  EXPECT_FALSE(r.holds());
}

TEST(Descent, GammaFiveSocle) {
  const GammaNData d = build_gamma_n(5);
  const CosetDigraphSpec spec = gamma_n_spec(d);
  const CosetDigraph cd = build_coset_digraph(spec);
  std::vector<Perm> m;
  for (const Perm& x : d.socle.generators()) m.push_back(spec.space().action_of(x));
  const DescentReport r = normal_descent_checks(cd.digraph, cd.acting, PermGroup(cd.digraph.size(), m), 2);
  EXPECT_TRUE(r.holds());
  EXPECT_FALSE(r.m_regular);
  ASSERT_EQ(r.factorizations.size(), 2u);
}

TEST(Quasiprimitive, OnCosets) {
  const GammaNData d = build_gamma_n(5);
  const CosetQuasiprimitivity q = quasiprimitive_on_cosets(d.group, d.h);
  EXPECT_TRUE(q.quasiprimitive);
  EXPECT_FALSE(q.witness.has_value());
  const CosetQuasiprimitivity c6 = quasiprimitive_on_cosets(PermGroup(6, {cyclic_shift(6)}), SubgroupSet::trivial(6));
  EXPECT_FALSE(c6.quasiprimitive);
  ASSERT_TRUE(c6.witness.has_value());
  EXPECT_FALSE(c6.witness->is_identity());
}

TEST(Quasiprimitive, CosetCriterionMatchesActionOnRandomCorpus) {
  for (const RandomSpec& r : random_corpus(30, 7)) {
    const CosetDigraphSpec spec = make(r);
    EXPECT_EQ(quasiprimitive_on_cosets(spec.group(), spec.subgroup()).quasiprimitive,
              is_quasiprimitive(spec.space().acting_group()));
  }
}
