#ifndef REALSTACK_GSPACE_HPP
#define REALSTACK_GSPACE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "realstack/galois.hpp"
#include "realstack/group.hpp"

namespace realstack {

// A finite model of a complex G-space with compatible group action: carrier
// set 0..m-1, an involution sigma_x standing in for complex conjugation, and a
// Gamma-action satisfying sigma_x(g.x) = sigma(g).sigma_x(x). Everything is
// validated at construction.
class FiniteGSpace {
public:
  static FiniteGSpace make(GGroup gg, int carrier, std::vector<int> sigma_x,
                           std::vector<std::vector<int>> action);

  const GGroup& ggroup() const { return gg_; }
  int carrier() const { return m_; }
  int act(int g, int x) const { return action_[g * m_ + x]; }
  int sigma_x(int x) const { return sigma_x_[x]; }
  const std::vector<int>& sigma_x_perm() const { return sigma_x_; }

  // Full Gamma-orbit of a carrier point, sorted.
  std::vector<int> orbit(int x) const;
  std::vector<int> stabilizer(int x) const; // sorted element indices

private:
  FiniteGSpace(GGroup gg, int m, std::vector<int> sigma_x, std::vector<int> action)
      : gg_(std::move(gg)), m_(m), sigma_x_(std::move(sigma_x)), action_(std::move(action)) {}

  GGroup gg_;
  int m_;
  std::vector<int> sigma_x_;
  std::vector<int> action_; // n x m, row g
};

// Real locus decomposed over H^1 class representatives: for each gamma the
// fixed set of x -> gamma.sigma_x(x) partitioned into orbits of the twisted
// real subgroup. Orbits are ordered by least element.
struct RealLocusDecomposition {
  struct Twist {
    int gamma;
    std::vector<int> fixed;
    std::vector<std::vector<int>> orbits;
  };
  std::vector<Twist> twists;
  int total = 0;
};

RealLocusDecomposition real_locus(const FiniteGSpace& space);

// Independent oracle for real_locus: for each gamma it enumerates equivariant
// maps f_y: Gamma -> X, keeps the ones that intertwine the torsor involution
// with sigma_x (checked pointwise over the whole group), and quotients by the
// right translations that commute with the torsor involution.
struct TorsorOracleResult {
  struct Twist {
    int gamma;
    std::vector<int> witnesses; // base points y of surviving maps
    std::vector<std::vector<int>> classes;
  };
  std::vector<Twist> twists;
  int total = 0;
};

TorsorOracleResult torsor_oracle(const FiniteGSpace& space);

// Stabilizer pairs (x, g) with g.x = x, modulo (x,g) ~ (hx, h g h^-1).
struct InertiaSet {
  std::vector<std::vector<std::pair<int, int>>> classes;
  int count() const { return static_cast<int>(classes.size()); }
};

InertiaSet inertia_complex(const FiniteGSpace& space);

struct SmithThomFiniteReport {
  int real = 0;
  int inertia = 0;
  bool holds = false;
};

SmithThomFiniteReport smith_thom_finite(const FiniteGSpace& space);

// Fibers of the coarse map: for each sigma_x-stable Gamma-orbit meeting the
// fixed locus, the number of real-locus classes lying over it, together with
// #H^1 of the stabilizer GGroup when sigma preserves the stabilizer. When it
// does not, the h1 slot is empty (such instances are unsupported, not guessed).
struct CoarseFiber {
  int orbit_least = 0;
  int fiber_count = 0;
  std::optional<int> h1_stabilizer;
};

std::vector<CoarseFiber> coarse_fibers(const FiniteGSpace& space);

} // namespace realstack

#endif
