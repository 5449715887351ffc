#include <gtest/gtest.h>

#include <set>
#include <string>

#include "arctest/families.hpp"
#include "support.hpp"

using namespace arctest;

namespace {

const Claim& find(const std::vector<Claim>& claims, const std::string& id) {
  for (const Claim& c : claims) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("missing claim " + id);
}

}  // namespace

TEST(GammaN, RejectsInvalidN) {
  for (std::size_t n : {0, 3, 4, 6, 8}) EXPECT_THROW(build_gamma_n(n), Error) << n;
  EXPECT_THROW(gamma_n_vertex_count_check(6), Error);
  EXPECT_THROW(gamma_n_vertex_count_check(13), Error);
}

TEST(GammaN, GeneratorsForFive) {
  const GammaNData d = build_gamma_n(5);
  EXPECT_EQ(d.a.cycle_string(), "(1,6)(2,7)(3,8)(4,9)(5,10)");
  EXPECT_EQ(d.b.cycle_string(), "(1,2)(3,4)(6,7)(8,9)");
  EXPECT_EQ(d.group.order(), 7200u);
  EXPECT_EQ(d.socle.order(), 3600u);
  EXPECT_EQ(d.h.size(), 4u);
  EXPECT_TRUE(d.group.contains(d.g));
}

TEST(GammaN, DisplayedCyclesForFive) {
  const GammaNData d = build_gamma_n(5);
  EXPECT_EQ(d.g, Perm::from_cycles(10, {{0, 6, 1, 7, 4, 5, 2, 8, 3, 9}}));
  EXPECT_EQ(restrict_to(power(d.g, 2), 0, 5), Perm::from_cycles(5, {{0, 1, 4, 2, 3}}));
  EXPECT_EQ(restrict_to(power(d.g, 6), 0, 5), Perm::from_cycles(5, {{0, 2, 1, 3, 4}}));
}

TEST(GammaN, DisplayedCyclesMatchConstruction) {
  for (std::size_t n : {5, 7, 9, 11, 13}) {
    const GammaNData d = build_gamma_n(n);
    EXPECT_EQ(d.g, displayed_g(n)) << n;
    EXPECT_EQ(d.g.order(), 2 * n) << n;
    EXPECT_EQ(restrict_to(power(d.g, 2), 0, n), displayed_pi1_g2(n)) << n;
    EXPECT_EQ(restrict_to(power(d.g, static_cast<long long>(n + 1)), 0, n), displayed_pi1_gn1(n)) << n;
  }
}

TEST(GammaN, VerifyFiveAllPass) {
  GammaNOptions opt;
  opt.explicit_build = true;
  const auto claims = verify_gamma_n(5, opt);
  EXPECT_GE(claims.size(), 15u);
  for (const Claim& c : claims) EXPECT_EQ(c.status, Status::Pass) << c.id << ": " << c.reason;
  std::set<std::string> ids;
  for (const Claim& c : claims) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
}

TEST(GammaN, SevenRunsCriteriaOnlyAtElementLevel) {
  const auto claims = verify_gamma_n(7);
  EXPECT_EQ(find(claims, "gamma_n.orders").witness["vertices"], 3175200u);
  EXPECT_EQ(find(claims, "gamma_n.orders").status, Status::Pass);
  EXPECT_EQ(find(claims, "gamma_n.criteria").status, Status::Skipped);
  EXPECT_EQ(find(claims, "gamma_n.explicit").status, Status::Skipped);
  for (const char* id : {"gamma_n.connector", "gamma_n.displayed_cycles", "gamma_n.three_cycle", "gamma_n.h_cap_hg",
                         "gamma_n.h_cap_hginv", "gamma_n.ab_conjugate", "gamma_n.two_arc_factorization",
                         "gamma_n.antisymmetry"}) {
    EXPECT_EQ(find(claims, id).status, Status::Pass) << id;
  }
  for (const Claim& c : claims) EXPECT_NE(c.status, Status::Fail) << c.id;
}

TEST(GammaN, ExplicitBuildRefusedAboveBound) {
  GammaNOptions opt;
  opt.explicit_build = true;
  opt.max_vertices = 1000;
  const auto claims = verify_gamma_n(5, opt);
  EXPECT_EQ(find(claims, "gamma_n.explicit").status, Status::Skipped);
  EXPECT_FALSE(find(claims, "gamma_n.explicit").reason.empty());
}

TEST(Arithmetic, ProperPowersAgreeWithEnumeration) {
  constexpr std::uint64_t limit = 200000;
  std::set<std::uint64_t> powers;
  for (std::uint64_t m = 2; m * m <= limit; ++m) {
    for (std::uint64_t x = m * m; x <= limit; x *= m) powers.insert(x);
  }
  for (std::uint64_t x = 0; x <= limit; ++x) EXPECT_EQ(is_proper_power(x), powers.count(x) == 1) << x;
  EXPECT_TRUE(is_proper_power(std::uint64_t{1} << 62));
  EXPECT_TRUE(is_proper_power(3486784401ull));  // 3^20
  EXPECT_FALSE(is_proper_power(3486784401ull + 1));
  EXPECT_TRUE(is_proper_power(38654705664ull));  // (3 * 2^16)^2
}

TEST(Arithmetic, VertexCounts) {
  struct Expect {
    std::size_t n;
    std::uint64_t count, prime;
  };
  for (const Expect& e : {Expect{5, 1800, 3}, Expect{7, 3175200, 5}, Expect{9, 16460236800ull, 5},
                          Expect{11, 199168865280000ull, 7}}) {
    const VertexCountCheck v = gamma_n_vertex_count_check(e.n);
    EXPECT_EQ(v.count, e.count);
    EXPECT_FALSE(v.proper_power);
    ASSERT_TRUE(v.prime.has_value());
    EXPECT_EQ(*v.prime, e.prime);
    EXPECT_EQ(v.prime_exponent, 2u);
    EXPECT_TRUE(v.holds());
  }
}
