#include "realstack/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace realstack {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotClosed: return "NotClosed";
    case Errc::NoIdentityAtZero: return "NoIdentityAtZero";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoInverse: return "NoInverse";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::NegativeResult: return "NegativeResult";
    case Errc::NotAbelianStabilizer: return "NotAbelianStabilizer";
    case Errc::NotFaithful: return "NotFaithful";
    case Errc::Unsupported: return "Unsupported";
    case Errc::LoopNotEquivariant: return "LoopNotEquivariant";
    case Errc::OmegaNotCocycle: return "OmegaNotCocycle";
    case Errc::SurfaceRelationBroken: return "SurfaceRelationBroken";
    case Errc::MissingTableEntry: return "MissingTableEntry";
    case Errc::OpenCurveUnsupported: return "OpenCurveUnsupported";
    case Errc::Malformed: return "Malformed";
    case Errc::InvariantViolated: return "InvariantViolated";
  }
  return "UnknownError";
}

FiniteGroup::FiniteGroup(int n, std::vector<int> flat) : n_(n), table_(std::move(flat)) {
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(Errc::NotClosed, "empty table");
  if (n > kMaxOrder) fail(Errc::SizeLimitExceeded, "order " + std::to_string(n));
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      fail(Errc::NotClosed, "row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b) {
      const int v = table[a][b];
      if (v < 0 || v >= n)
        fail(Errc::NotClosed, "entry (" + std::to_string(a) + "," + std::to_string(b) + ") = " +
                                  std::to_string(v));
      flat.push_back(v);
    }
  }
  auto at = [&](int a, int b) { return flat[a * n + b]; };
  for (int a = 0; a < n; ++a) {
    if (at(0, a) != a || at(a, 0) != a)
      fail(Errc::NoIdentityAtZero, "index 0 fails on element " + std::to_string(a));
  }
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n; ++b)
      if (at(a, b) == 0 && at(b, a) == 0) { found = true; break; }
    if (!found) fail(Errc::NoInverse, "element " + std::to_string(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          fail(Errc::NotAssociative, "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")");
  return FiniteGroup(n, std::move(flat));
}

int FiniteGroup::element_order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  for (int a = 0; a < n_; ++a)
    if (element_order(a) == n_) return true;
  return n_ == 1;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<int>> classes;
  std::vector<bool> seen(n_, false);
  for (int x = 0; x < n_; ++x) {
    if (seen[x]) continue;
    std::set<int> cls;
    for (int g = 0; g < n_; ++g) cls.insert(conjugate(g, x));
    std::vector<int> v(cls.begin(), cls.end());
    for (int y : v) seen[y] = true;
    classes.push_back(std::move(v));
  }
  return classes;
}

int FiniteGroup::conjugacy_class_count() const {
  return static_cast<int>(conjugacy_classes().size());
}

std::vector<int> FiniteGroup::subgroup_closure(const std::vector<int>& gens) const {
  std::vector<bool> in(n_, false);
  std::vector<int> queue{0};
  in[0] = true;
  for (int g : gens)
    if (!in[g]) { in[g] = true; queue.push_back(g); }
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int g : gens) {
      const int y = mul(queue[i], g);
      if (!in[y]) { in[y] = true; queue.push_back(y); }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < n_; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

std::vector<int> FiniteGroup::generating_set() const {
  std::vector<int> gens;
  std::vector<int> closure = subgroup_closure({});
  while (static_cast<int>(closure.size()) < n_) {
    // smallest element outside the current subgroup
    std::vector<bool> in(n_, false);
    for (int x : closure) in[x] = true;
    int next = -1;
    for (int x = 0; x < n_; ++x)
      if (!in[x]) { next = x; break; }
    gens.push_back(next);
    closure = subgroup_closure(gens);
  }
  return gens;
}

std::vector<std::vector<int>> FiniteGroup::subgroups() const {
  if (n_ > 16) fail(Errc::SizeLimitExceeded, "subgroup enumeration beyond order 16");
  std::set<std::vector<int>> found;
  found.insert(subgroup_closure({}));
  // every subgroup of order <= 16 is generated by at most 4 elements
  for (int a = 1; a < n_; ++a) {
    found.insert(subgroup_closure({a}));
    for (int b = a + 1; b < n_; ++b) {
      found.insert(subgroup_closure({a, b}));
      for (int c = b + 1; c < n_; ++c) {
        found.insert(subgroup_closure({a, b, c}));
        for (int d = c + 1; d < n_; ++d) found.insert(subgroup_closure({a, b, c, d}));
      }
    }
  }
  return {found.begin(), found.end()};
}

namespace {

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

} // namespace

FiniteGroup cyclic(int n) {
  if (n < 1) fail(Errc::SizeLimitExceeded, "cyclic(" + std::to_string(n) + ")");
  if (n > FiniteGroup::kMaxOrder) fail(Errc::SizeLimitExceeded, "cyclic(" + std::to_string(n) + ")");
  return FiniteGroup::from_table(cyclic_table(n));
}

FiniteGroup dihedral(int n) {
  if (n < 1 || 2 * n > FiniteGroup::kMaxOrder)
    fail(Errc::SizeLimitExceeded, "dihedral(" + std::to_string(n) + ")");
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  auto idx = [&](int rot, int ref) { return ((rot % n + n) % n) + (ref ? n : 0); };
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < 2; ++l) {
          // (r^i s^k)(r^j s^l) = r^(i + j or i - j) s^(k+l)
          const int rot = k == 0 ? i + j : i - j;
          t[idx(i, k)][idx(j, l)] = idx(rot, (k + l) % 2);
        }
  return FiniteGroup::from_table(t);
}

FiniteGroup elementary_abelian_2(int k) {
  if (k < 0 || k > 7) fail(Errc::SizeLimitExceeded, "elementary_abelian_2(" + std::to_string(k) + ")");
  const int n = 1 << k;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = i ^ j;
  return FiniteGroup::from_table(t);
}

FiniteGroup symmetric(int n) {
  if (n < 1 || n > 4) fail(Errc::SizeLimitExceeded, "symmetric(" + std::to_string(n) + ")");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index[c];
    }
  return FiniteGroup::from_table(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  if (na * nb > FiniteGroup::kMaxOrder) fail(Errc::SizeLimitExceeded, "direct product order");
  const int n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2)
          t[i1 * nb + j1][i2 * nb + j2] = a.mul(i1, i2) * nb + b.mul(j1, j2);
  return FiniteGroup::from_table(t);
}

Automorphism Automorphism::checked(const FiniteGroup& g, std::vector<int> perm) {
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) fail(Errc::Malformed, "permutation length");
  std::vector<bool> hit(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || hit[v]) fail(Errc::Malformed, "not a permutation");
    hit[v] = true;
  }
  if (perm[0] != 0) fail(Errc::Malformed, "automorphism must fix the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (perm[g.mul(a, b)] != g.mul(perm[a], perm[b]))
        fail(Errc::Malformed, "not multiplicative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
  return Automorphism(std::move(perm));
}

Automorphism Automorphism::identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return Automorphism(std::move(p));
}

bool Automorphism::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

bool Automorphism::is_involutive() const {
  for (int i = 0; i < degree(); ++i)
    if (perm_[perm_[i]] != i) return false;
  return true;
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  std::vector<int> p(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) p[i] = perm_[other.perm_[i]];
  return Automorphism(std::move(p));
}

Automorphism Automorphism::inverse() const {
  std::vector<int> p(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) p[perm_[i]] = static_cast<int>(i);
  return Automorphism(std::move(p));
}

namespace {

// Backtracking over generator images. `source` provides the generating set and
// BFS words; images are extended one generator at a time and each partial
// assignment is checked on the subgroup generated so far before recursing.
struct HomSearch {
  const FiniteGroup& source;
  const FiniteGroup& target;
  std::vector<int> gens;
  // level l: elements of <gens[0..l]> with BFS parent data (parent, gen-index)
  struct Level {
    std::vector<int> members; // BFS discovery order, members[0] == 0
    std::vector<int> parent;  // index into members
    std::vector<int> via;     // index into gens
  };
  std::vector<Level> levels;
  bool stop_after_first = false;
  std::vector<std::vector<int>> results; // full image maps source index -> target index

  HomSearch(const FiniteGroup& s, const FiniteGroup& t) : source(s), target(t) {
    gens = s.generating_set();
    levels.resize(gens.size());
    for (size_t l = 0; l < gens.size(); ++l) build_level(l);
  }

  void build_level(size_t l) {
    Level& lv = levels[l];
    std::vector<int> pos(source.order(), -1);
    lv.members = {0};
    lv.parent = {-1};
    lv.via = {-1};
    pos[0] = 0;
    for (size_t i = 0; i < lv.members.size(); ++i) {
      for (size_t gi = 0; gi <= l; ++gi) {
        const int y = source.mul(lv.members[i], gens[gi]);
        if (pos[y] < 0) {
          pos[y] = static_cast<int>(lv.members.size());
          lv.members.push_back(y);
          lv.parent.push_back(static_cast<int>(i));
          lv.via.push_back(static_cast<int>(gi));
        }
      }
    }
  }

  // Builds the candidate image map on <gens[0..l]> and verifies it is an
  // injective homomorphism there. Returns empty on failure.
  std::vector<int> partial_map(size_t l, const std::vector<int>& gen_images) const {
    const Level& lv = levels[l];
    std::vector<int> img(source.order(), -1);
    std::vector<bool> used(target.order(), false);
    img[0] = 0;
    used[0] = true;
    for (size_t i = 1; i < lv.members.size(); ++i) {
      const int from = lv.members[lv.parent[i]];
      const int via = gen_images[lv.via[i]];
      const int value = target.mul(img[from], via);
      const int who = lv.members[i];
      if (img[who] >= 0) {
        if (img[who] != value) return {};
      } else {
        if (used[value]) return {};
        img[who] = value;
        used[value] = true;
      }
    }
    for (int a : lv.members)
      for (int b : lv.members) {
        const int ab = source.mul(a, b);
        if (img[ab] < 0) return {}; // not closed under the image data; reject
        if (img[ab] != target.mul(img[a], img[b])) return {};
      }
    return img;
  }

  void run() {
    if (gens.empty()) {
      if (source.order() == 1 && target.order() == 1) results.push_back({0});
      return;
    }
    std::vector<int> gen_images(gens.size(), -1);
    recurse(0, gen_images);
  }

  void recurse(size_t l, std::vector<int>& gen_images) {
    if (stop_after_first && !results.empty()) return;
    const int want_order = source.element_order(gens[l]);
    for (int cand = 0; cand < target.order(); ++cand) {
      if (target.element_order(cand) != want_order) continue;
      gen_images[l] = cand;
      auto img = partial_map(l, gen_images);
      if (img.empty()) continue;
      if (l + 1 == gens.size()) {
        if (static_cast<int>(levels[l].members.size()) == source.order() &&
            source.order() == target.order()) {
          results.push_back(std::move(img));
          if (stop_after_first) return;
        }
      } else {
        recurse(l + 1, gen_images);
        if (stop_after_first && !results.empty()) return;
      }
    }
    gen_images[l] = -1;
  }
};

} // namespace

std::vector<Automorphism> automorphisms(const FiniteGroup& g, int max_order) {
  if (g.order() > max_order)
    fail(Errc::SizeLimitExceeded, "automorphism search beyond order " + std::to_string(max_order));
  HomSearch search(g, g);
  search.run();
  std::vector<Automorphism> out;
  out.reserve(search.results.size());
  for (auto& perm : search.results) out.push_back(Automorphism::unchecked(std::move(perm)));
  std::sort(out.begin(), out.end());
  // identity first: it is the lexicographically least automorphism already,
  // since any non-identity map moves some index upward somewhere; keep sort.
  return out;
}

std::vector<Automorphism> involutions(const FiniteGroup& g, int max_order) {
  auto all = automorphisms(g, max_order);
  std::vector<Automorphism> out;
  for (auto& a : all)
    if (a.is_involutive()) out.push_back(a);
  return out;
}

std::optional<std::vector<int>> table_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                  int max_order) {
  if (a.order() != b.order()) return std::nullopt;
  if (a.order() > max_order)
    fail(Errc::SizeLimitExceeded, "isomorphism search beyond order " + std::to_string(max_order));
  HomSearch search(a, b);
  search.stop_after_first = true;
  search.run();
  if (search.results.empty()) return std::nullopt;
  return search.results.front();
}

GGroup GGroup::make(FiniteGroup g, Automorphism sigma) {
  Automorphism checked = Automorphism::checked(g, sigma.perm());
  if (!checked.is_involutive()) fail(Errc::InvariantViolated, "sigma is not involutive");
  return GGroup{std::move(g), std::move(checked)};
}

} // namespace realstack
