#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "realstack/galois.hpp"
#include "realstack/search.hpp"

using namespace realstack;

namespace {

GGroup gg(FiniteGroup g, std::vector<int> sigma) {
  return GGroup::make(std::move(g), Automorphism::unchecked(std::move(sigma)));
}

GGroup trivial_sigma(FiniteGroup g) {
  const int n = g.order();
  return GGroup::make(std::move(g), Automorphism::identity(n));
}

GGroup mu_n(int n) {
  FiniteGroup g = cyclic(n);
  std::vector<int> inversion(n);
  for (int i = 0; i < n; ++i) inversion[i] = g.inv(i);
  return gg(std::move(g), std::move(inversion));
}

} // namespace

TEST_CASE("z1 on the small examples") {
  CHECK(z1(trivial_sigma(cyclic(2))) == std::vector<int>{0, 1});
  // coordinate swap on (Z/2)^2 in bitmask indexing: (1,0) <-> (0,1)
  CHECK(z1(gg(elementary_abelian_2(2), {0, 2, 1, 3})) == std::vector<int>{0, 3});
  CHECK(z1(trivial_sigma(cyclic(1))) == std::vector<int>{0});
}

TEST_CASE("h1 class counts on the golden instances") {
  CHECK(h1(trivial_sigma(cyclic(2))).count() == 2);
  CHECK(h1(gg(elementary_abelian_2(2), {0, 2, 1, 3})).count() == 1);
  CHECK(h1(mu_n(3)).count() == 1);
  CHECK(h1(mu_n(4)).count() == 2);
  for (int n = 1; n <= 12; ++n) CHECK(h1(mu_n(n)).count() == (n % 2 == 0 ? 2 : 1));
}

TEST_CASE("h1 representatives are least in class with e first") {
  const H1Classes classes = h1(mu_n(4));
  CHECK(classes.representatives == std::vector<int>{0, 1});
  CHECK(classes.class_of(0) == 0);
  CHECK(classes.class_of(2) == 0);
  CHECK(classes.class_of(1) == 1);
  CHECK_THROWS_AS(h1(gg(elementary_abelian_2(2), {0, 2, 1, 3})).class_of(1), Error);
}

TEST_CASE("h1_abelian agrees with enumeration") {
  CHECK(h1_abelian(gg(cyclic(4), {0, 3, 2, 1})) == 2);
  CHECK(h1_abelian(trivial_sigma(elementary_abelian_2(2))) == 4);
  CHECK(h1_abelian(trivial_sigma(cyclic(3))) == 1);
  CHECK_THROWS_AS(h1_abelian(trivial_sigma(symmetric(3))), Error);
}

TEST_CASE("abelian route equals twisted conjugation over the catalog") {
  for (const auto& entry : group_catalog(12)) {
    if (!entry.group.is_abelian()) continue;
    for (const auto& sigma : involutions(entry.group)) {
      GGroup g = GGroup::make(entry.group, sigma);
      CHECK(h1(g).count() == h1_abelian(g));
    }
  }
}

TEST_CASE("h1 count never exceeds the conjugacy class count") {
  for (const auto& entry : group_catalog(12)) {
    const int conj = entry.group.conjugacy_class_count();
    for (const auto& sigma : involutions(entry.group))
      CHECK(h1(GGroup::make(entry.group, sigma)).count() <= conj);
  }
}

TEST_CASE("odd order groups have trivial h1") {
  for (int n = 1; n <= 11; n += 2) {
    const FiniteGroup g = cyclic(n);
    for (const auto& sigma : involutions(g)) CHECK(h1(GGroup::make(g, sigma)).count() == 1);
  }
}

TEST_CASE("twisting by a cocycle") {
  // any abelian group: twisting never changes sigma
  GGroup c4 = gg(cyclic(4), {0, 3, 2, 1});
  for (int gamma : z1(c4)) CHECK(twist_ggroup(c4, gamma).twisted_sigma == c4.sigma);

  // identity twist is a no-op
  GGroup s3 = trivial_sigma(symmetric(3));
  CHECK(twist_ggroup(s3, 0).twisted_sigma == s3.sigma);

  // twisting S3 (trivial sigma) by a transposition: conjugation, whose fixed
  // subgroup is the centralizer of the transposition, of order 2
  const int transposition = 1;
  REQUIRE(is_cocycle(s3, transposition));
  const TwistedGGroup tw = twist_ggroup(s3, transposition);
  CHECK(tw.twisted_sigma.is_involutive());
  CHECK(tw.real_points.size() == 2);

  CHECK_THROWS_AS(twist_ggroup(s3, 3), Error); // a 3-cycle is not a cocycle
}

TEST_CASE("torsor involution examples") {
  GGroup c1 = trivial_sigma(cyclic(1));
  CHECK(torsor_involution(c1, 0) == std::vector<int>{0});

  GGroup c2 = trivial_sigma(cyclic(2));
  CHECK(torsor_involution(c2, 0) == std::vector<int>{0, 1});
  const auto swap = torsor_involution(c2, 1); // g -> g + 1, no fixed points
  CHECK(swap == std::vector<int>{1, 0});

  // (Z/2)^2 with swap sigma, gamma = (1,1): (a,b) -> (b+1, a+1). The two
  // mixed-coordinate elements are fixed, consistent with gamma lying in the
  // class of e (the torsor is trivial, so it has real points).
  GGroup v4 = gg(elementary_abelian_2(2), {0, 2, 1, 3});
  const auto phi = torsor_involution(v4, 3);
  CHECK(phi == std::vector<int>{3, 1, 2, 0});
  CHECK(h1(v4).class_of(3) == h1(v4).class_of(0));
}

TEST_CASE("h1_action permutes classes") {
  GGroup v4_trivial = trivial_sigma(elementary_abelian_2(2));
  CHECK(h1_action(v4_trivial, Automorphism::identity(4)) == std::vector<int>{0, 1, 2, 3});

  // coordinate swap fixes classes of (0,0),(1,1) and exchanges (1,0),(0,1)
  const auto action = h1_action(v4_trivial, Automorphism::unchecked({0, 2, 1, 3}));
  CHECK(action == std::vector<int>{0, 2, 1, 3});

  GGroup v4_swap = gg(elementary_abelian_2(2), {0, 2, 1, 3});
  CHECK(h1_action(v4_swap, Automorphism::unchecked({0, 2, 1, 3})) == std::vector<int>{0});

  // alpha mapping (1,0)->(1,0), (0,1)->(1,1) does not commute with the swap
  CHECK_THROWS_AS(h1_action(v4_swap, Automorphism::unchecked({0, 1, 3, 2})), Error);
}

TEST_CASE("h1_action is functorial in the automorphism") {
  GGroup g = trivial_sigma(elementary_abelian_2(3));
  const auto auts = automorphisms(elementary_abelian_2(3));
  int pairs = 0;
  for (size_t i = 0; i < auts.size() && pairs < 40; i += 17)
    for (size_t j = 0; j < auts.size() && pairs < 40; j += 13, ++pairs) {
      const auto composed = h1_action(g, auts[i].compose(auts[j]));
      const auto a = h1_action(g, auts[i]);
      const auto b = h1_action(g, auts[j]);
      std::vector<int> chained(b.size());
      for (size_t c = 0; c < b.size(); ++c) chained[c] = a[b[c]];
      CHECK(composed == chained);
    }
}

TEST_CASE("orbit sizes of h1_action add up") {
  GGroup v4_trivial = trivial_sigma(elementary_abelian_2(2));
  const auto action = h1_action(v4_trivial, Automorphism::unchecked({0, 2, 1, 3}));
  std::set<int> moved;
  int fixed = 0;
  for (size_t c = 0; c < action.size(); ++c) {
    if (action[c] == static_cast<int>(c))
      ++fixed;
    else
      moved.insert(static_cast<int>(c));
  }
  CHECK(fixed == 2);
  CHECK(moved.size() == 2);
}
