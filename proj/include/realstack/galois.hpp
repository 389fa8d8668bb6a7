#ifndef REALSTACK_GALOIS_HPP
#define REALSTACK_GALOIS_HPP

#include <vector>

#include "realstack/group.hpp"

namespace realstack {

// Nonabelian H^1(G, Gamma) for G = Gal(C/R), computed on a GGroup. Cocycles
// are element indices gamma with gamma * sigma(gamma) = e; two cocycles are
// identified when related by twisted conjugation gamma ~ beta gamma sigma(beta)^-1.

bool is_cocycle(const GGroup& gg, int gamma);

// All cocycles, in increasing index order.
std::vector<int> z1(const GGroup& gg);

// Partition of Z^1 into twisted-conjugacy classes. Class ids are assigned by
// least member, so the class of e is always class 0 and representatives are
// the least index in each class (e represents class 0).
struct H1Classes {
  std::vector<int> z1;             // cocycles in index order
  std::vector<int> class_of_z1;    // class id per entry of z1
  std::vector<int> representatives; // one cocycle per class

  int count() const { return static_cast<int>(representatives.size()); }
  int class_of(int cocycle) const; // throws NotACocycle on bad input
};

H1Classes h1(const GGroup& gg);

// |ker N / im(1 - sigma)| with N(a) = a * sigma(a), by direct enumeration of
// both subsets. Requires the underlying group to be abelian.
int h1_abelian(const GGroup& gg);

// The same G-group with Galois action twisted by a cocycle:
// twisted sigma(g) = gamma * sigma(g) * gamma^-1.
struct TwistedGGroup {
  GGroup base;
  int gamma;
  Automorphism twisted_sigma;
  std::vector<int> real_points; // Fix(twisted sigma), the twisted real subgroup
};

TwistedGGroup twist_ggroup(const GGroup& gg, int gamma);

// The involution g -> sigma(g) * gamma^-1 on the carrier: the G-set structure
// of the torsor attached to gamma.
std::vector<int> torsor_involution(const GGroup& gg, int gamma);

// Permutation of H^1 class ids induced by gamma -> alpha(gamma). Requires
// alpha to commute with sigma; violating inputs raise NotEquivariant.
std::vector<int> h1_action(const GGroup& gg, const Automorphism& alpha);

} // namespace realstack

#endif
