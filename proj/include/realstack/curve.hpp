#ifndef REALSTACK_CURVE_HPP
#define REALSTACK_CURVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "realstack/group.hpp"

namespace realstack {

// Closed-form Betti calculators for stacky quotient curves. The curve itself
// is never modeled: a spec carries the known topological inputs (h* of the
// complex coarse space, the branch data, the shapes of real components) and
// the module evaluates the counting formulas on them.

// 1 for n odd, 2 for n even: the cohomology count of n-th roots of unity with
// conjugation acting by inversion. Cross-checked in tests against the generic
// enumeration on cyclic groups.
int h1_of_mu_n(int n);

struct BranchPoint {
  FiniteGroup stabilizer;
  bool is_real = false;
  int conjugacy_count = 0;     // derived from the stabilizer table
  std::optional<int> h1_value; // set for real cyclic stabilizers (parity rule)

  static BranchPoint make(FiniteGroup stabilizer, bool is_real);
};

enum class ComponentShape { Circle, OpenInterval, HalfOpenInterval, ClosedInterval };

const char* shape_name(ComponentShape s);
ComponentShape shape_from_name(const std::string& name);

struct RealComponentSpec {
  ComponentShape shape = ComponentShape::Circle;
  int special_points = 0; // points of the component with two classes above them
};

struct StackyCurveSpec {
  int h_star_m_complex = 0;
  int kernel_order = 1;
  bool kernel_central = true; // caller-asserted
  bool faithful = false;
  bool proper = false;
  bool abelian = false; // caller-asserted hypothesis for the bound route
  std::vector<BranchPoint> branch_points;
  std::vector<RealComponentSpec> real_components;
  // Shapes of the real locus of the faithful quotient, used by the bound
  // route when the spec itself is not faithful.
  std::vector<ComponentShape> faithful_quotient_real_components;

  static StackyCurveSpec validated(StackyCurveSpec spec);
};

// h* of the complex inertia: #K * h*(M(C)) + sum of branch conjugacy counts
// minus #Delta * #K. Assumes the kernel is central in every stabilizer.
int inertia_h_star(const StackyCurveSpec& spec);

// Checks the factorization through the faithful quotient: inertia of the spec
// equals #K times the inertia of the quotient data (stabilizers divided by K).
// Requires all stabilizers abelian.
bool inertia_factorization_check(const StackyCurveSpec& spec);

// Exact h* of the real locus for a faithful spec: each component is cut at its
// special points (circle with s>=1 points becomes s arcs, an interval gains
// one piece per point, an untouched circle keeps h* = 2).
int real_h_star_faithful(const StackyCurveSpec& spec);

// Upper bound for the non-faithful abelian route: 2#K per circle and #K per
// interval of the faithful quotient's real locus.
int real_h_star_abelian_bound(int kernel_order, const std::vector<ComponentShape>& faithful_components);

struct CurveReport {
  int inertia = 0;
  int real = 0;
  bool real_is_bound = false;
  bool holds = false;
};

// Smith-Thom verdict: exact comparison for faithful specs, bound comparison
// for abelian ones; anything else is Unsupported.
CurveReport smith_thom_curve(const StackyCurveSpec& spec);

// Number of pieces produced by the cut rule on one component; independent
// check lives in tests via a direct arc-list simulation.
int component_piece_count(const RealComponentSpec& c);

} // namespace realstack

#endif
