#include "realstack/curve.hpp"

namespace realstack {

int h1_of_mu_n(int n) {
  if (n < 1) fail(Errc::Malformed, "mu_n needs n >= 1");
  return n % 2 == 0 ? 2 : 1;
}

BranchPoint BranchPoint::make(FiniteGroup stabilizer, bool is_real) {
  const int cc = stabilizer.conjugacy_class_count();
  std::optional<int> h1v;
  if (is_real && stabilizer.is_cyclic()) h1v = h1_of_mu_n(stabilizer.order());
  return BranchPoint{std::move(stabilizer), is_real, cc, h1v};
}

const char* shape_name(ComponentShape s) {
  switch (s) {
    case ComponentShape::Circle: return "circle";
    case ComponentShape::OpenInterval: return "open_interval";
    case ComponentShape::HalfOpenInterval: return "half_open_interval";
    case ComponentShape::ClosedInterval: return "closed_interval";
  }
  return "?";
}

ComponentShape shape_from_name(const std::string& name) {
  if (name == "circle") return ComponentShape::Circle;
  if (name == "open_interval" || name == "interval") return ComponentShape::OpenInterval;
  if (name == "half_open_interval") return ComponentShape::HalfOpenInterval;
  if (name == "closed_interval") return ComponentShape::ClosedInterval;
  fail(Errc::Malformed, "unknown component shape '" + name + "'");
}

StackyCurveSpec StackyCurveSpec::validated(StackyCurveSpec spec) {
  if (spec.h_star_m_complex < 0) fail(Errc::InvariantViolated, "h_star_m_complex negative");
  if (spec.kernel_order < 1) fail(Errc::InvariantViolated, "kernel_order must be positive");
  if (spec.faithful && spec.kernel_order != 1)
    fail(Errc::InvariantViolated, "faithful spec with nontrivial kernel");
  for (const auto& bp : spec.branch_points) {
    if (spec.kernel_central && bp.stabilizer.order() % spec.kernel_order != 0)
      fail(Errc::InvariantViolated, "kernel order does not divide a stabilizer order");
    if (bp.h1_value && bp.stabilizer.is_cyclic() &&
        *bp.h1_value != h1_of_mu_n(bp.stabilizer.order()))
      fail(Errc::InvariantViolated, "h1 value does not match stabilizer order parity");
  }
  for (const auto& c : spec.real_components) {
    if (c.special_points < 0) fail(Errc::InvariantViolated, "negative special point count");
    if (spec.proper && c.shape != ComponentShape::Circle && c.shape != ComponentShape::ClosedInterval)
      fail(Errc::InvariantViolated, "proper spec allows only circle or closed interval components");
  }
  return spec;
}

int inertia_h_star(const StackyCurveSpec& spec) {
  if (!spec.kernel_central) fail(Errc::Unsupported, "kernel must be asserted central");
  long long total = static_cast<long long>(spec.kernel_order) * spec.h_star_m_complex;
  for (const auto& bp : spec.branch_points) total += bp.conjugacy_count;
  total -= static_cast<long long>(spec.branch_points.size()) * spec.kernel_order;
  if (total < 0) fail(Errc::NegativeResult, "inconsistent curve data");
  return static_cast<int>(total);
}

bool inertia_factorization_check(const StackyCurveSpec& spec) {
  for (const auto& bp : spec.branch_points)
    if (!bp.stabilizer.is_abelian())
      fail(Errc::NotAbelianStabilizer, "factorization needs abelian stabilizers");
  // quotient data: same coarse space, stabilizers of order #Gamma_x / #K
  // (abelian, so conjugacy count equals order)
  long long quotient = spec.h_star_m_complex;
  for (const auto& bp : spec.branch_points) {
    if (bp.stabilizer.order() % spec.kernel_order != 0)
      fail(Errc::InvariantViolated, "kernel order does not divide a stabilizer order");
    quotient += bp.stabilizer.order() / spec.kernel_order;
  }
  quotient -= static_cast<long long>(spec.branch_points.size());
  return inertia_h_star(spec) == spec.kernel_order * quotient;
}

int component_piece_count(const RealComponentSpec& c) {
  if (c.shape == ComponentShape::Circle) return c.special_points == 0 ? 0 : c.special_points;
  return c.special_points + 1;
}

int real_h_star_faithful(const StackyCurveSpec& spec) {
  if (!spec.faithful) fail(Errc::NotFaithful, "exact real count needs a faithful spec");
  int total = 0;
  for (const auto& c : spec.real_components) {
    if (c.shape == ComponentShape::Circle && c.special_points == 0)
      total += 2; // untouched circle
    else
      total += component_piece_count(c); // contractible pieces, one each
  }
  return total;
}

int real_h_star_abelian_bound(int kernel_order, const std::vector<ComponentShape>& comps) {
  int total = 0;
  for (ComponentShape s : comps)
    total += (s == ComponentShape::Circle ? 2 : 1) * kernel_order;
  return total;
}

CurveReport smith_thom_curve(const StackyCurveSpec& spec) {
  CurveReport rep;
  rep.inertia = inertia_h_star(spec);
  if (spec.faithful) {
    rep.real = real_h_star_faithful(spec);
    rep.real_is_bound = false;
  } else if (spec.abelian) {
    rep.real = real_h_star_abelian_bound(spec.kernel_order, spec.faithful_quotient_real_components);
    rep.real_is_bound = true;
  } else {
    fail(Errc::Unsupported, "spec is neither faithful nor abelian");
  }
  rep.holds = rep.real <= rep.inertia;
  return rep;
}

} // namespace realstack
