#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "realstack/gerbe.hpp"
#include "realstack/search.hpp"

using namespace realstack;

namespace {

GGroup fiber(FiniteGroup g, std::vector<int> sigma) {
  return GGroup::make(std::move(g), Automorphism::unchecked(std::move(sigma)));
}

GGroup trivial_fiber(FiniteGroup g) {
  const int n = g.order();
  return GGroup::make(std::move(g), Automorphism::identity(n));
}

const std::vector<int> kSwap{0, 2, 1, 3}; // coordinate swap on (Z/2)^2

MonodromyGerbe enriques_config_1() {
  MonodromyGerbe gerbe{trivial_fiber(elementary_abelian_2(2)),
                       {Automorphism::unchecked(kSwap)},
                       GerbeBase{GerbeBase::Kind::TableDriven, 0, CoverTable{{{1, 16}, {2, 24}}}},
                       {},
                       false};
  for (int i = 0; i < 4; ++i) {
    RealComponentGerbe comp;
    comp.shape = RealComponentGerbe::Shape::Table;
    comp.table = CoverTable{{{1, 3}, {2, 2}}};
    comp.loops.push_back(Automorphism::unchecked(kSwap));
    gerbe.components.push_back(std::move(comp));
  }
  for (int i = 0; i < 2; ++i) {
    RealComponentGerbe comp;
    comp.shape = RealComponentGerbe::Shape::Table;
    comp.table = CoverTable{{{1, 2}}};
    gerbe.components.push_back(std::move(comp));
  }
  return gerbe;
}

// proper-curve gerbe with explicit data, genus g, m circle components with
// identity loops and empty omegas
MonodromyGerbe plain_proper_gerbe(GGroup f, std::vector<Automorphism> gens, int genus, int circles) {
  MonodromyGerbe gerbe{std::move(f), std::move(gens),
                       GerbeBase{GerbeBase::Kind::ProperCurve, genus, {}}, {}, false};
  for (int i = 0; i < circles; ++i) {
    RealComponentGerbe comp;
    comp.shape = RealComponentGerbe::Shape::Circle;
    gerbe.components.push_back(std::move(comp));
  }
  return gerbe;
}

// (Z/2)^3 realized as the even-weight vectors of F_2^4, so that coordinate
// permutations of F_2^4 act on it; gives an automorphism of order 4 whose
// conjugate by an involution is its inverse
struct EvenWeightModel {
  std::vector<int> masks; // even-weight 4-bit masks in increasing order
  FiniteGroup group;
  Automorphism from_s4(const std::vector<int>& perm) const {
    std::vector<int> p(8);
    for (int i = 0; i < 8; ++i) {
      int image = 0;
      for (int bit = 0; bit < 4; ++bit)
        if (masks[i] & (1 << bit)) image |= 1 << perm[bit];
      p[i] = static_cast<int>(std::find(masks.begin(), masks.end(), image) - masks.begin());
    }
    return Automorphism::checked(group, p);
  }
};

EvenWeightModel even_weight_model() {
  std::vector<int> masks;
  for (int m = 0; m < 16; ++m)
    if (__builtin_popcount(m) % 2 == 0) masks.push_back(m);
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const int x = masks[i] ^ masks[j];
      table[i][j] = static_cast<int>(std::find(masks.begin(), masks.end(), x) - masks.begin());
    }
  return EvenWeightModel{masks, FiniteGroup::from_table(table)};
}

} // namespace

TEST_CASE("validation catches the named failure modes") {
  CHECK_NOTHROW(validate(enriques_config_1()));

  // trivial sigma commutes with every loop
  MonodromyGerbe ok = plain_proper_gerbe(trivial_fiber(elementary_abelian_2(2)),
                                         {Automorphism::unchecked(kSwap)}, 1, 1);
  ok.components[0].loops.push_back(Automorphism::unchecked(kSwap));
  CHECK_NOTHROW(validate(ok));

  // loop that does not commute with the effective involution
  MonodromyGerbe bad_loop = plain_proper_gerbe(fiber(elementary_abelian_2(2), kSwap),
                                               {Automorphism::unchecked({0, 1, 3, 2})}, 1, 1);
  bad_loop.components[0].loops.push_back(Automorphism::unchecked({0, 1, 3, 2}));
  CHECK_THROWS_WITH_AS(validate(bad_loop), doctest::Contains("LoopNotEquivariant"), Error);

  // omega whose twisted involution has order 4: multiplication by 2 on Z/5
  MonodromyGerbe bad_omega = plain_proper_gerbe(trivial_fiber(cyclic(5)),
                                                {Automorphism::unchecked({0, 2, 4, 1, 3})}, 1, 1);
  bad_omega.components[0].omega_word = {1};
  CHECK_THROWS_WITH_AS(validate(bad_omega), doctest::Contains("OmegaNotCocycle"), Error);

  // declared surface generators must satisfy the commutator relation
  const auto gl3 = automorphisms(elementary_abelian_2(3));
  Automorphism a = Automorphism::unchecked(gl3[5].perm());
  Automorphism b = Automorphism::unchecked(gl3[20].perm());
  REQUIRE_FALSE(a.compose(b) == b.compose(a));
  MonodromyGerbe surf = plain_proper_gerbe(trivial_fiber(elementary_abelian_2(3)), {a, b}, 1, 1);
  surf.declared_surface_generators = true;
  CHECK_THROWS_WITH_AS(validate(surf), doctest::Contains("SurfaceRelationBroken"), Error);
  MonodromyGerbe surf_ok =
      plain_proper_gerbe(trivial_fiber(elementary_abelian_2(3)), {a, a}, 1, 1);
  surf_ok.declared_surface_generators = true;
  CHECK_NOTHROW(validate(surf_ok));

  // intervals cannot carry loops
  MonodromyGerbe iv = plain_proper_gerbe(trivial_fiber(cyclic(2)), {}, 0, 0);
  iv.base.kind = GerbeBase::Kind::OpenCurve;
  RealComponentGerbe comp;
  comp.shape = RealComponentGerbe::Shape::Interval;
  comp.loops.push_back(Automorphism::identity(2));
  iv.components.push_back(comp);
  CHECK_THROWS_AS(validate(iv), Error);
}

TEST_CASE("base change of the involution") {
  GGroup f = trivial_fiber(elementary_abelian_2(2));
  CHECK(base_change_sigma(f, Automorphism::identity(4)) == f.sigma);

  // swap against trivial sigma: the new involution is the swap itself, and
  // its cohomology is trivial
  const Automorphism swapped = base_change_sigma(f, Automorphism::unchecked(kSwap));
  CHECK(swapped.perm() == kSwap);
  CHECK(h1(GGroup::make(f.group, swapped)).count() == 1);

  CHECK_THROWS_AS(base_change_sigma(trivial_fiber(cyclic(5)),
                                    Automorphism::unchecked({0, 2, 4, 1, 3})),
                  Error);
}

TEST_CASE("base change round trip over random valid pairs") {
  std::mt19937_64 rng(5);
  const auto& catalog = group_catalog(8);
  int done = 0;
  while (done < 100) {
    const auto& entry = catalog[rng() % catalog.size()];
    const auto invols = involutions(entry.group);
    const auto auts = automorphisms(entry.group);
    GGroup f = GGroup::make(entry.group, invols[rng() % invols.size()]);
    const Automorphism& omega = auts[rng() % auts.size()];
    if (!omega.compose(f.sigma).is_involutive()) continue;
    const Automorphism sigma_q = base_change_sigma(f, omega);
    GGroup at_q = GGroup::make(entry.group, sigma_q);
    const Automorphism back = base_change_sigma(at_q, omega.inverse());
    CHECK(back == f.sigma);
    ++done;
  }
}

TEST_CASE("real cover orbit structures") {
  // interval component over (Z/2)^2 with trivial involution: four singletons
  MonodromyGerbe iv{trivial_fiber(elementary_abelian_2(2)), {}, GerbeBase{GerbeBase::Kind::OpenCurve, 0, {}},
                    {}, false};
  RealComponentGerbe comp;
  comp.shape = RealComponentGerbe::Shape::Interval;
  iv.components.push_back(comp);
  const CoverOrbits iv_cover = real_cover(iv, 0);
  CHECK(iv_cover.classes.count() == 4);
  CHECK(iv_cover.sizes_desc == std::vector<int>{1, 1, 1, 1});

  // component in the image for the first surface configuration
  const CoverOrbits rp2 = real_cover(enriques_config_1(), 0);
  CHECK(rp2.classes.count() == 4);
  CHECK(rp2.sizes_desc == std::vector<int>{2, 1, 1});

  // identity loops keep every class separate
  MonodromyGerbe idloops = plain_proper_gerbe(trivial_fiber(elementary_abelian_2(2)),
                                              {Automorphism::identity(4)}, 1, 1);
  idloops.components[0].loops.push_back(Automorphism::identity(4));
  const CoverOrbits id_cover = real_cover(idloops, 0);
  CHECK(static_cast<int>(id_cover.orbits.size()) == id_cover.classes.count());
}

TEST_CASE("orbit sizes always sum to the h1 cardinality") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const MonodromyGerbe gerbe = random_two_torsion_gerbe(99, i, 3, 4);
    for (size_t c = 0; c < gerbe.components.size(); ++c) {
      const CoverOrbits cover = real_cover(gerbe, static_cast<int>(c));
      CHECK(std::accumulate(cover.sizes_desc.begin(), cover.sizes_desc.end(), 0) ==
            cover.classes.count());
    }
  }
}

TEST_CASE("real h star of the golden configurations") {
  CHECK(real_h_star(enriques_config_1()) == 48); // 4*(2+3+3) + 2*8

  // trivial fiber: the map is a homeomorphism, 2 per circle
  CHECK(real_h_star(plain_proper_gerbe(trivial_fiber(cyclic(1)), {}, 2, 3)) == 6);

  // single circle, rank-2 trivial fiber, trivial monodromy: 2*4
  CHECK(real_h_star(plain_proper_gerbe(trivial_fiber(elementary_abelian_2(2)), {}, 1, 1)) == 8);

  // missing table entry
  MonodromyGerbe missing = enriques_config_1();
  missing.components[0].table = CoverTable{{{1, 3}}};
  CHECK_THROWS_WITH_AS(real_h_star(missing), doctest::Contains("MissingTableEntry"), Error);
}

TEST_CASE("inertia cover orbits") {
  // trivial monodromy on an abelian fiber: one singleton per element
  const auto plain = inertia_cover(plain_proper_gerbe(trivial_fiber(elementary_abelian_2(2)), {}, 1, 1));
  CHECK(plain.orbits.size() == 4);

  const auto enriques = inertia_cover(enriques_config_1());
  CHECK(enriques.orbits.size() == 3);
  CHECK(enriques.sizes_desc == std::vector<int>{2, 1, 1});

  // inner automorphisms fix conjugacy classes
  FiniteGroup s3 = symmetric(3);
  std::vector<int> conj_by_1(6);
  for (int x = 0; x < 6; ++x) conj_by_1[x] = s3.conjugate(1, x);
  const auto inner = inertia_cover(plain_proper_gerbe(
      trivial_fiber(symmetric(3)), {Automorphism::checked(s3, conj_by_1)}, 1, 1));
  CHECK(inner.orbits.size() == 3);
}

TEST_CASE("inertia h star on proper curves and tables") {
  // genus 0, trivial monodromy: one sphere per fiber element
  for (int rank = 0; rank <= 2; ++rank) {
    const int k = 1 << rank;
    CHECK(inertia_h_star(plain_proper_gerbe(trivial_fiber(elementary_abelian_2(rank)), {}, 0, 1)) ==
          2 * k);
  }
  // genus 1: unramified covers of a torus are tori
  for (int rank = 0; rank <= 2; ++rank) {
    const int k = 1 << rank;
    CHECK(inertia_h_star(plain_proper_gerbe(trivial_fiber(elementary_abelian_2(rank)), {}, 1, 1)) ==
          4 * k);
  }
  CHECK(inertia_h_star(enriques_config_1()) == 56); // 16*2 + 24

  // nonabelian fiber: the cover has one sheet per conjugacy class, so an S3
  // fiber with trivial monodromy gives three tori over a genus-1 base and
  // three spheres over a genus-0 base
  CHECK(inertia_h_star(plain_proper_gerbe(trivial_fiber(symmetric(3)), {}, 1, 1)) == 12);
  CHECK(inertia_h_star(plain_proper_gerbe(trivial_fiber(symmetric(3)), {}, 0, 1)) == 6);

  MonodromyGerbe open_base = plain_proper_gerbe(trivial_fiber(cyclic(2)), {}, 0, 0);
  open_base.base.kind = GerbeBase::Kind::OpenCurve;
  CHECK_THROWS_WITH_AS(inertia_h_star(open_base), doctest::Contains("OpenCurveUnsupported"), Error);
}

TEST_CASE("smith_thom_gerbe on the golden and trivial cases") {
  const GerbeReport enriques = smith_thom_gerbe(enriques_config_1());
  CHECK(enriques.real == 48);
  CHECK(enriques.inertia == 56);
  CHECK(*enriques.holds);
  CHECK_FALSE(enriques.cor_lhs.has_value()); // table base has no orbit form

  // trivial fiber, genus g, m <= g+1 circles
  for (int g = 0; g <= 3; ++g)
    for (int m = 1; m <= g + 1; ++m) {
      const GerbeReport rep = smith_thom_gerbe(plain_proper_gerbe(trivial_fiber(cyclic(1)), {}, g, m));
      CHECK(*rep.holds);
      CHECK(*rep.cor_lhs == m);
      CHECK(*rep.cor_rhs == 2 + (g - 1));
    }
}

TEST_CASE("orbit-count form is equivalent to the h-star comparison") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const MonodromyGerbe gerbe = random_two_torsion_gerbe(31, i, 3, 4);
    const GerbeReport rep = smith_thom_gerbe(gerbe);
    REQUIRE(rep.cor_lhs.has_value());
    CHECK(*rep.holds == *rep.cor_holds);
    // the two sides are literally double the orbit counts
    CHECK(rep.real == 2 * *rep.cor_lhs);
    CHECK(*rep.inertia == 2 * *rep.cor_rhs);
  }
}

TEST_CASE("two-torsion fibers never violate the inequality") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const MonodromyGerbe gerbe = random_two_torsion_gerbe(77, i, 3, 4);
    CHECK(*smith_thom_gerbe(gerbe).holds);
  }
}

TEST_CASE("section classes in a cyclic order-4 image inverted by sigma") {
  const EvenWeightModel model = even_weight_model();
  // 4-cycle (0 1 2 3) and the transposition (0 2): conjugation inverts the cycle
  const Automorphism rot = model.from_s4({1, 2, 3, 0});
  const Automorphism flip = model.from_s4({2, 1, 0, 3});
  REQUIRE(rot.compose(rot).compose(rot).compose(rot).is_identity());
  REQUIRE_FALSE(rot.compose(rot).is_identity());
  REQUIRE(flip.compose(rot).compose(flip) == rot.inverse());

  MonodromyGerbe gerbe{GGroup::make(model.group, flip), {rot},
                       GerbeBase{GerbeBase::Kind::ProperCurve, 1, {}}, {}, false};

  // twisted conjugation moves omega by even powers of the rotation
  CHECK(section_class(gerbe, {}) == section_class(gerbe, {1, 1}));
  CHECK(section_class(gerbe, {1}) == section_class(gerbe, {1, 1, 1}));
  CHECK(section_class(gerbe, {}) != section_class(gerbe, {1}));

  // identity omega gives the class of the identity
  CHECK(section_class(gerbe, {}) == Automorphism::identity(8).perm());
}

TEST_CASE("section classes with trivial sigma on an abelian image are rigid") {
  MonodromyGerbe gerbe{trivial_fiber(elementary_abelian_2(2)), {Automorphism::unchecked(kSwap)},
                       GerbeBase{GerbeBase::Kind::TableDriven, 0, CoverTable{{{1, 16}, {2, 24}}}},
                       {}, false};
  CHECK(section_class(gerbe, {}) != section_class(gerbe, {1}));
  CHECK(section_class(gerbe, {1}) == kSwap);
}
