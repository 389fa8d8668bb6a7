#include "realstack/galois.hpp"

#include <algorithm>
#include <set>

namespace realstack {

bool is_cocycle(const GGroup& gg, int gamma) {
  if (gamma < 0 || gamma >= gg.order()) return false;
  return gg.group.mul(gamma, gg.sigma(gamma)) == 0;
}

std::vector<int> z1(const GGroup& gg) {
  std::vector<int> out;
  for (int g = 0; g < gg.order(); ++g)
    if (is_cocycle(gg, g)) out.push_back(g);
  return out;
}

int H1Classes::class_of(int cocycle) const {
  auto it = std::lower_bound(z1.begin(), z1.end(), cocycle);
  if (it == z1.end() || *it != cocycle) fail(Errc::NotACocycle, std::to_string(cocycle));
  return class_of_z1[it - z1.begin()];
}

H1Classes h1(const GGroup& gg) {
  const auto& g = gg.group;
  H1Classes out;
  out.z1 = z1(gg);
  std::vector<int> pos(gg.order(), -1);
  for (size_t i = 0; i < out.z1.size(); ++i) pos[out.z1[i]] = static_cast<int>(i);

  out.class_of_z1.assign(out.z1.size(), -1);
  int next_class = 0;
  for (size_t i = 0; i < out.z1.size(); ++i) {
    if (out.class_of_z1[i] >= 0) continue;
    const int id = next_class++;
    out.representatives.push_back(out.z1[i]);
    // orbit of z1[i] under gamma -> beta gamma sigma(beta)^-1, all beta
    std::vector<size_t> queue{i};
    out.class_of_z1[i] = id;
    while (!queue.empty()) {
      const int gamma = out.z1[queue.back()];
      queue.pop_back();
      for (int beta = 0; beta < g.order(); ++beta) {
        const int other = g.mul(g.mul(beta, gamma), g.inv(gg.sigma(beta)));
        const size_t j = static_cast<size_t>(pos[other]);
        if (out.class_of_z1[j] < 0) {
          out.class_of_z1[j] = id;
          queue.push_back(j);
        }
      }
    }
  }
  return out;
}

int h1_abelian(const GGroup& gg) {
  const auto& g = gg.group;
  if (!g.is_abelian()) fail(Errc::NotAbelian, "h1_abelian needs an abelian group");
  std::set<int> ker_n, image;
  for (int a = 0; a < g.order(); ++a) {
    if (g.mul(a, gg.sigma(a)) == 0) ker_n.insert(a);
    image.insert(g.mul(a, g.inv(gg.sigma(a))));
  }
  return static_cast<int>(ker_n.size() / image.size());
}

TwistedGGroup twist_ggroup(const GGroup& gg, int gamma) {
  if (!is_cocycle(gg, gamma)) fail(Errc::NotACocycle, std::to_string(gamma));
  const auto& g = gg.group;
  std::vector<int> perm(gg.order());
  for (int x = 0; x < gg.order(); ++x)
    perm[x] = g.mul(g.mul(gamma, gg.sigma(x)), g.inv(gamma));
  Automorphism ts = Automorphism::checked(g, std::move(perm));
  if (!ts.is_involutive()) fail(Errc::InvariantViolated, "twisted sigma not involutive");
  std::vector<int> fixed;
  for (int x = 0; x < gg.order(); ++x)
    if (ts(x) == x) fixed.push_back(x);
  return TwistedGGroup{gg, gamma, std::move(ts), std::move(fixed)};
}

std::vector<int> torsor_involution(const GGroup& gg, int gamma) {
  if (!is_cocycle(gg, gamma)) fail(Errc::NotACocycle, std::to_string(gamma));
  const auto& g = gg.group;
  std::vector<int> perm(gg.order());
  for (int x = 0; x < gg.order(); ++x) perm[x] = g.mul(gg.sigma(x), g.inv(gamma));
  for (int x = 0; x < gg.order(); ++x)
    if (perm[perm[x]] != x) fail(Errc::InvariantViolated, "torsor involution not involutive");
  return perm;
}

std::vector<int> h1_action(const GGroup& gg, const Automorphism& alpha) {
  for (int x = 0; x < gg.order(); ++x)
    if (alpha(gg.sigma(x)) != gg.sigma(alpha(x)))
      fail(Errc::NotEquivariant, "alpha does not commute with sigma at " + std::to_string(x));
  const H1Classes classes = h1(gg);
  std::vector<int> perm(classes.count(), -1);
  for (size_t i = 0; i < classes.z1.size(); ++i) {
    const int from = classes.class_of_z1[i];
    const int to = classes.class_of(alpha(classes.z1[i]));
    if (perm[from] >= 0 && perm[from] != to)
      fail(Errc::InvariantViolated, "action does not descend to classes");
    perm[from] = to;
  }
  return perm;
}

} // namespace realstack
