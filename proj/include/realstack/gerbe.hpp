#ifndef REALSTACK_GERBE_HPP
#define REALSTACK_GERBE_HPP

#include <map>
#include <optional>
#include <vector>

#include "realstack/galois.hpp"
#include "realstack/group.hpp"

namespace realstack {

// Monodromy model of a split gerbe over a real base: a fiber G-group A, the
// images of the global fundamental-group generators as automorphisms of A,
// and one record per real component of the base. The real locus above a
// component is the covering with fiber H^1(G, A) computed for the component's
// effective involution, which is the base-point involution twisted by the
// component's base-change word omega.

struct CoverTable {
  // h* of one cover component, keyed by orbit size
  std::map<int, int> h_star_by_orbit_size;
};

struct GerbeBase {
  enum class Kind { ProperCurve, OpenCurve, TableDriven };
  Kind kind = Kind::ProperCurve;
  int genus = 0;    // ProperCurve
  CoverTable table; // TableDriven
};

struct RealComponentGerbe {
  enum class Shape { Circle, Interval, Table };
  Shape shape = Shape::Circle;
  CoverTable table; // Table shape
  std::vector<Automorphism> loops;
  // word in the global generators: entry k > 0 means generator k-1,
  // k < 0 means the inverse of generator -k-1
  std::vector<int> omega_word;
};

struct MonodromyGerbe {
  GGroup fiber;
  std::vector<Automorphism> global_generators;
  GerbeBase base;
  std::vector<RealComponentGerbe> components;
  // When set, global_generators are read as a_1, b_1, ..., a_g, b_g and the
  // product of commutators must act as the identity.
  bool declared_surface_generators = false;
};

// Automorphism of the fiber named by a word in the global generators.
Automorphism word_action(const MonodromyGerbe& gerbe, const std::vector<int>& word);

// Involution at the new base point: h -> omega(sigma(h)). The composite must
// square to the identity (the cocycle condition at the automorphism level).
Automorphism base_change_sigma(const GGroup& fiber, const Automorphism& omega_action);

// Effective involution of one component.
Automorphism effective_sigma(const MonodromyGerbe& gerbe, int component);

// Full invariant check; throws LoopNotEquivariant / OmegaNotCocycle /
// SurfaceRelationBroken on the first violation.
void validate(const MonodromyGerbe& gerbe);

struct CoverOrbits {
  H1Classes classes;                   // H^1 for the effective involution
  std::vector<std::vector<int>> orbits; // class ids, by least member
  std::vector<int> sizes_desc;
};

// Orbit structure of the component's loop generators on H^1(G, A).
CoverOrbits real_cover(const MonodromyGerbe& gerbe, int component);

// h* of the real locus: 2 per orbit over a circle, the H^1 cardinality over an
// interval, table lookups keyed by orbit size otherwise.
int real_h_star(const MonodromyGerbe& gerbe);

struct InertiaCoverOrbits {
  std::vector<std::vector<int>> conjugacy_classes; // of the fiber group
  std::vector<std::vector<int>> orbits;            // class ids under global generators
  std::vector<int> sizes_desc;
};

InertiaCoverOrbits inertia_cover(const MonodromyGerbe& gerbe);

// h* of the complex inertia. Proper genus-g base: 2 per orbit plus the
// Riemann-Hurwitz term 2(#D(g-1)+1) per orbit D. Table-driven: lookups by
// orbit size. Open bases are refused.
int inertia_h_star(const MonodromyGerbe& gerbe);

struct GerbeReport {
  int real = 0;
  std::optional<int> inertia;
  std::optional<bool> holds;
  // equivalent orbit-count form for proper curve bases
  std::optional<long long> cor_lhs;
  std::optional<long long> cor_rhs;
  std::optional<bool> cor_holds;
};

GerbeReport smith_thom_gerbe(const MonodromyGerbe& gerbe);

// Canonical representative of the section class of omega: the least element
// of the orbit of word_action(omega) under w -> a . w . (sigma a sigma)^-1
// over the finite monodromy image. Classes are image-level; distinct upstream
// classes can merge here.
std::vector<int> section_class(const MonodromyGerbe& gerbe, const std::vector<int>& omega_word);

// Subgroup of Aut(A) generated by the global generators, as sorted perms.
std::vector<Automorphism> monodromy_image(const MonodromyGerbe& gerbe);

} // namespace realstack

#endif
