#ifndef REALSTACK_GROUP_HPP
#define REALSTACK_GROUP_HPP

#include <optional>
#include <string>
#include <vector>

#include "realstack/error.hpp"

namespace realstack {

// Finite groups given by a Cayley table on indices 0..n-1, identity pinned at
// index 0. All tables are validated exhaustively at construction (closure,
// identity, inverses, associativity), so a FiniteGroup value is always a group.
//
// Element indexing of the catalog constructors:
//   cyclic(n)               index i is g^i for a fixed generator g.
//   dihedral(n)             order 2n; index i < n is the rotation r^i, index
//                           n+i is the reflection s*r^i, with s*r*s = r^-1.
//   elementary_abelian_2(k) order 2^k; index is the bitmask of coordinates,
//                           product is XOR.
//   symmetric(n)            permutations of {0..n-1} in lexicographic order of
//                           one-line notation (identity first); product p*q is
//                           the composite x -> p(q(x)).
//   direct_product(a, b)    index i*|b| + j encodes the pair (i, j).
class FiniteGroup {
public:
  // Maximum order accepted by from_table and the catalog constructors. The
  // O(n^3) associativity sweep stays cheap below this bound.
  static constexpr int kMaxOrder = 128;

  static FiniteGroup from_table(const std::vector<std::vector<int>>& table);

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }

  int element_order(int a) const;
  bool is_abelian() const;
  bool is_cyclic() const;

  std::vector<std::vector<int>> conjugacy_classes() const;
  int conjugacy_class_count() const;

  // A small generating set found greedily (empty for the trivial group).
  std::vector<int> generating_set() const;

  // Subgroup generated by the given elements, as a sorted list of indices.
  std::vector<int> subgroup_closure(const std::vector<int>& gens) const;

  // All subgroups, each a sorted element list; order <= 16 supported.
  std::vector<std::vector<int>> subgroups() const;

  const std::vector<int>& flat_table() const { return table_; }
  bool same_table(const FiniteGroup& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

private:
  FiniteGroup(int n, std::vector<int> flat);

  int n_;
  std::vector<int> table_; // row-major n x n
  std::vector<int> inv_;
};

FiniteGroup cyclic(int n);
FiniteGroup dihedral(int n);
FiniteGroup elementary_abelian_2(int k);
FiniteGroup symmetric(int n); // n <= 4
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// A group automorphism stored as a permutation of element indices. Only the
// permutation is kept; validation happens against the group it is built for.
class Automorphism {
public:
  static Automorphism checked(const FiniteGroup& g, std::vector<int> perm);
  static Automorphism identity(int n);

  int operator()(int x) const { return perm_[x]; }
  int degree() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }

  bool is_identity() const;
  bool is_involutive() const; // self-composition is the identity

  // (this . other)(x) = this(other(x))
  Automorphism compose(const Automorphism& other) const;
  Automorphism inverse() const;

  bool operator==(const Automorphism& o) const { return perm_ == o.perm_; }
  bool operator<(const Automorphism& o) const { return perm_ < o.perm_; }

  // Internal: trusted construction, no validation.
  static Automorphism unchecked(std::vector<int> perm) { return Automorphism(std::move(perm)); }

private:
  explicit Automorphism(std::vector<int> perm) : perm_(std::move(perm)) {}
  std::vector<int> perm_;
};

// Complete automorphism list via generator-image backtracking with pruning
// (element orders and partial-subgroup consistency); identity is first.
// Raw permutation enumeration is never used above order 8.
std::vector<Automorphism> automorphisms(const FiniteGroup& g, int max_order = 64);

// All sigma with sigma^2 = id, identity included (and first).
std::vector<Automorphism> involutions(const FiniteGroup& g, int max_order = 64);

// Relabeling carrying the table of `a` onto the table of `b`, if one exists.
// By-product of the automorphism search machinery: groups themselves are
// compared by table equality everywhere else.
std::optional<std::vector<int>> table_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                  int max_order = 64);

// A finite group with an involutive automorphism (the Galois action of
// Gal(C/R) on the complex points).
struct GGroup {
  FiniteGroup group;
  Automorphism sigma;

  static GGroup make(FiniteGroup g, Automorphism sigma);
  int order() const { return group.order(); }
};

} // namespace realstack

#endif
