#include "realstack/gspace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace realstack {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Orbits of a set of points under a list of permutations-as-maps, each given
// by a callable index -> index. Deterministic ordering by least member.
template <typename Apply>
std::vector<std::vector<int>> orbits_of(const std::vector<int>& points, int universe,
                                        const std::vector<Apply>& maps) {
  UnionFind uf(universe);
  for (int x : points)
    for (const auto& f : maps) uf.unite(x, f(x));
  std::map<int, std::vector<int>> buckets;
  for (int x : points) buckets[uf.find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : buckets) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

FiniteGSpace FiniteGSpace::make(GGroup gg, int carrier, std::vector<int> sigma_x,
                                std::vector<std::vector<int>> action) {
  const int n = gg.order();
  const int m = carrier;
  if (m < 0) fail(Errc::Malformed, "negative carrier");
  if (static_cast<int>(sigma_x.size()) != m) fail(Errc::Malformed, "sigma_x length");
  if (static_cast<int>(action.size()) != n) fail(Errc::Malformed, "action row count");

  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * m);
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(action[g].size()) != m) fail(Errc::Malformed, "action row length");
    for (int x = 0; x < m; ++x) {
      if (action[g][x] < 0 || action[g][x] >= m)
        fail(Errc::Malformed, "action value out of range");
      flat.push_back(action[g][x]);
    }
  }
  for (int x = 0; x < m; ++x) {
    if (sigma_x[x] < 0 || sigma_x[x] >= m) fail(Errc::Malformed, "sigma_x out of range");
  }
  for (int x = 0; x < m; ++x)
    if (sigma_x[sigma_x[x]] != x)
      fail(Errc::InvariantViolated, "sigma_x not involutive at " + std::to_string(x));

  auto at = [&](int g, int x) { return flat[g * m + x]; };
  for (int x = 0; x < m; ++x)
    if (at(0, x) != x) fail(Errc::InvariantViolated, "identity acts nontrivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < m; ++x)
        if (at(gg.group.mul(g, h), x) != at(g, at(h, x)))
          fail(Errc::InvariantViolated, "action not associative at (" + std::to_string(g) + "," +
                                            std::to_string(h) + "," + std::to_string(x) + ")");
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x)
      if (sigma_x[at(g, x)] != at(gg.sigma(g), sigma_x[x]))
        fail(Errc::InvariantViolated, "action not compatible with the involutions at (" +
                                          std::to_string(g) + "," + std::to_string(x) + ")");
  return FiniteGSpace(std::move(gg), m, std::move(sigma_x), std::move(flat));
}

std::vector<int> FiniteGSpace::orbit(int x) const {
  std::set<int> out;
  for (int g = 0; g < gg_.order(); ++g) out.insert(act(g, x));
  return {out.begin(), out.end()};
}

std::vector<int> FiniteGSpace::stabilizer(int x) const {
  std::vector<int> out;
  for (int g = 0; g < gg_.order(); ++g)
    if (act(g, x) == x) out.push_back(g);
  return out;
}

RealLocusDecomposition real_locus(const FiniteGSpace& space) {
  const GGroup& gg = space.ggroup();
  RealLocusDecomposition out;
  for (int gamma : h1(gg).representatives) {
    RealLocusDecomposition::Twist tw;
    tw.gamma = gamma;
    for (int x = 0; x < space.carrier(); ++x)
      if (space.act(gamma, space.sigma_x(x)) == x) tw.fixed.push_back(x);
    const TwistedGGroup twisted = twist_ggroup(gg, gamma);
    std::vector<std::function<int(int)>> maps;
    for (int g : twisted.real_points)
      maps.emplace_back([&space, g](int x) { return space.act(g, x); });
    tw.orbits = orbits_of(tw.fixed, space.carrier(), maps);
    out.total += static_cast<int>(tw.orbits.size());
    out.twists.push_back(std::move(tw));
  }
  return out;
}

TorsorOracleResult torsor_oracle(const FiniteGSpace& space) {
  const GGroup& gg = space.ggroup();
  const int n = gg.order();
  TorsorOracleResult out;
  for (int gamma : h1(gg).representatives) {
    TorsorOracleResult::Twist tw;
    tw.gamma = gamma;
    const std::vector<int> phi = torsor_involution(gg, gamma);

    // equivariant maps f_y(g) = g.y that intertwine phi with sigma_x,
    // verified pointwise over the whole group
    for (int y = 0; y < space.carrier(); ++y) {
      bool ok = true;
      for (int g = 0; g < n && ok; ++g)
        if (space.act(phi[g], y) != space.sigma_x(space.act(g, y))) ok = false;
      if (ok) tw.witnesses.push_back(y);
    }

    // torsor automorphisms: right translations commuting with phi
    std::vector<int> auto_group;
    for (int h = 0; h < n; ++h) {
      bool ok = true;
      for (int g = 0; g < n && ok; ++g)
        if (phi[gg.group.mul(g, h)] != gg.group.mul(phi[g], h)) ok = false;
      if (ok) auto_group.push_back(h);
    }

    // f_y composed with right translation by h equals f_{h.y}
    std::vector<std::function<int(int)>> maps;
    for (int h : auto_group)
      maps.emplace_back([&space, h](int x) { return space.act(h, x); });
    tw.classes = orbits_of(tw.witnesses, space.carrier(), maps);
    out.total += static_cast<int>(tw.classes.size());
    out.twists.push_back(std::move(tw));
  }
  return out;
}

InertiaSet inertia_complex(const FiniteGSpace& space) {
  const GGroup& gg = space.ggroup();
  const int n = gg.order();
  const int m = space.carrier();
  std::vector<int> pair_index(static_cast<size_t>(n) * std::max(m, 1), -1);
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < m; ++x)
    for (int g = 0; g < n; ++g)
      if (space.act(g, x) == x) {
        pair_index[static_cast<size_t>(g) * m + x] = static_cast<int>(pairs.size());
        pairs.emplace_back(x, g);
      }

  UnionFind uf(static_cast<int>(pairs.size()));
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, g] = pairs[i];
    for (int h = 0; h < n; ++h) {
      const int hx = space.act(h, x);
      const int hgh = gg.group.conjugate(h, g);
      const int j = pair_index[static_cast<size_t>(hgh) * m + hx];
      uf.unite(static_cast<int>(i), j);
    }
  }
  std::map<int, std::vector<std::pair<int, int>>> buckets;
  for (size_t i = 0; i < pairs.size(); ++i) buckets[uf.find(static_cast<int>(i))].push_back(pairs[i]);
  InertiaSet out;
  for (auto& [root, members] : buckets) {
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

SmithThomFiniteReport smith_thom_finite(const FiniteGSpace& space) {
  SmithThomFiniteReport rep;
  rep.real = real_locus(space).total;
  rep.inertia = inertia_complex(space).count();
  rep.holds = rep.real <= rep.inertia;
  return rep;
}

std::vector<CoarseFiber> coarse_fibers(const FiniteGSpace& space) {
  const GGroup& gg = space.ggroup();
  const RealLocusDecomposition dec = real_locus(space);

  // sigma_x-stable orbits that meet Fix(sigma_x)
  std::set<int> seen;
  std::vector<CoarseFiber> out;
  for (int x = 0; x < space.carrier(); ++x) {
    if (space.sigma_x(x) != x) continue;
    const std::vector<int> orb = space.orbit(x);
    if (seen.count(orb.front())) continue;
    seen.insert(orb.front());

    CoarseFiber fiber;
    fiber.orbit_least = orb.front();
    for (const auto& tw : dec.twists)
      for (const auto& cls : tw.orbits) {
        const std::vector<int> cls_orbit = space.orbit(cls.front());
        if (cls_orbit == orb) ++fiber.fiber_count;
      }

    // pick the sigma_x-fixed point with least index in the orbit
    int base = x;
    for (int y : orb)
      if (space.sigma_x(y) == y) { base = y; break; }
    const std::vector<int> stab = space.stabilizer(base);
    bool preserved = true;
    std::set<int> stab_set(stab.begin(), stab.end());
    for (int s : stab)
      if (!stab_set.count(gg.sigma(s))) { preserved = false; break; }
    if (preserved) {
      // h1 of the stabilizer with restricted sigma, via an index relabeling
      const int k = static_cast<int>(stab.size());
      std::vector<int> pos(gg.order(), -1);
      for (int i = 0; i < k; ++i) pos[stab[i]] = i;
      std::vector<std::vector<int>> table(k, std::vector<int>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) table[i][j] = pos[gg.group.mul(stab[i], stab[j])];
      std::vector<int> sig(k);
      for (int i = 0; i < k; ++i) sig[i] = pos[gg.sigma(stab[i])];
      FiniteGroup sub = FiniteGroup::from_table(table);
      GGroup sub_gg = GGroup::make(std::move(sub), Automorphism::unchecked(std::move(sig)));
      fiber.h1_stabilizer = h1(sub_gg).count();
    }
    out.push_back(fiber);
  }
  return out;
}

} // namespace realstack
