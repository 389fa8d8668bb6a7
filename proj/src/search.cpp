#include "realstack/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <shared_mutex>
#include <thread>

#include "realstack/json_io.hpp"

namespace realstack {

using nlohmann::json;

const char* campaign_kind_name(CampaignKind k) {
  switch (k) {
    case CampaignKind::BGamma: return "bgamma";
    case CampaignKind::Quotient: return "quotient";
    case CampaignKind::Gerbe2Torsion: return "gerbe2torsion";
  }
  return "?";
}

CampaignKind campaign_kind_from_name(const std::string& name) {
  if (name == "bgamma") return CampaignKind::BGamma;
  if (name == "quotient") return CampaignKind::Quotient;
  if (name == "gerbe2torsion") return CampaignKind::Gerbe2Torsion;
  fail(Errc::Malformed, "unknown campaign kind '" + name + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701)));
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  return pool[rng() % pool.size()];
}

} // namespace

const std::vector<CatalogEntry>& group_catalog(int max_order) {
  static std::shared_mutex mutex;
  static std::map<int, std::vector<CatalogEntry>> cache;
  {
    std::shared_lock<std::shared_mutex> read(mutex);
    auto it = cache.find(max_order);
    if (it != cache.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mutex);
  auto it = cache.find(max_order);
  if (it != cache.end()) return it->second;

  std::vector<CatalogEntry> all;
  auto add = [&](const std::string& name, FiniteGroup g) {
    if (g.order() > max_order) return;
    for (const auto& e : all)
      if (e.group.same_table(g)) return;
    all.push_back(CatalogEntry{name, std::move(g)});
  };
  for (int n = 1; n <= std::min(max_order, 24); ++n) add("C" + std::to_string(n), cyclic(n));
  for (int n = 1; 2 * n <= std::min(max_order, 24); ++n)
    add("D" + std::to_string(n), dihedral(n));
  for (int k = 2; (1 << k) <= std::min(max_order, 16); ++k)
    add("C2^" + std::to_string(k), elementary_abelian_2(k));
  for (int n = 3; n <= 4; ++n)
    if (n <= 24) add("S" + std::to_string(n), symmetric(n));
  add("C2xC4", direct_product(cyclic(2), cyclic(4)));
  add("C2xC6", direct_product(cyclic(2), cyclic(6)));
  add("C2xC8", direct_product(cyclic(2), cyclic(8)));
  add("C2xC10", direct_product(cyclic(2), cyclic(10)));
  add("C2xC12", direct_product(cyclic(2), cyclic(12)));
  add("C3xC3", direct_product(cyclic(3), cyclic(3)));
  add("C4xC4", direct_product(cyclic(4), cyclic(4)));
  add("C2xD3", direct_product(cyclic(2), dihedral(3)));
  add("C3xS3", direct_product(cyclic(3), symmetric(3)));
  add("C2xD4", direct_product(cyclic(2), dihedral(4)));
  add("C2xD5", direct_product(cyclic(2), dihedral(5)));
  add("C2xC2xC3", direct_product(elementary_abelian_2(2), cyclic(3)));
  add("C3xC4", direct_product(cyclic(3), cyclic(4)));
  auto [pos, inserted] = cache.emplace(max_order, std::move(all));
  return pos->second;
}

namespace {

// (group, involution) pairs for a given order bound, cached. Instance streams
// sweep this list cyclically so every involution gets exercised.
struct PairPool {
  std::vector<std::pair<int, int>> pairs; // (catalog idx, involution idx)
  std::vector<std::vector<Automorphism>> involutions_by_group;
};

const PairPool& pair_pool(int max_order) {
  static std::shared_mutex mutex;
  static std::map<int, PairPool> cache;
  {
    std::shared_lock<std::shared_mutex> read(mutex);
    auto it = cache.find(max_order);
    if (it != cache.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mutex);
  auto it = cache.find(max_order);
  if (it != cache.end()) return it->second;
  PairPool pool;
  const auto& catalog = group_catalog(max_order);
  pool.involutions_by_group.resize(catalog.size());
  for (size_t gi = 0; gi < catalog.size(); ++gi) {
    pool.involutions_by_group[gi] = involutions(catalog[gi].group);
    for (size_t si = 0; si < pool.involutions_by_group[gi].size(); ++si)
      pool.pairs.emplace_back(static_cast<int>(gi), static_cast<int>(si));
  }
  auto [pos, inserted] = cache.emplace(max_order, std::move(pool));
  return pos->second;
}

std::vector<std::vector<int>> cosets_of(const FiniteGroup& g, const std::vector<int>& subgroup) {
  std::vector<std::vector<int>> cosets;
  std::vector<int> coset_of(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    std::set<int> members;
    for (int h : subgroup) members.insert(g.mul(x, h));
    std::vector<int> coset(members.begin(), members.end());
    for (int y : coset) coset_of[y] = static_cast<int>(cosets.size());
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

std::vector<int> sigma_image(const GGroup& gg, const std::vector<int>& subset) {
  std::set<int> img;
  for (int x : subset) img.insert(gg.sigma(x));
  return {img.begin(), img.end()};
}

} // namespace

FiniteGSpace random_gspace(std::uint64_t seed, std::uint64_t index, int max_order, int max_carrier) {
  auto rng = instance_rng(seed, index);
  const auto& pool = pair_pool(max_order);
  const auto& [gi, si] = pool.pairs[index % pool.pairs.size()];
  const FiniteGroup& g = group_catalog(max_order)[gi].group;
  GGroup gg = GGroup::make(g, pool.involutions_by_group[gi][si]);

  static std::shared_mutex mutex;
  static std::map<std::vector<int>, std::vector<std::vector<int>>> subgroup_cache;
  std::vector<std::vector<int>> subs;
  {
    std::shared_lock<std::shared_mutex> read(mutex);
    auto it = subgroup_cache.find(g.flat_table());
    if (it != subgroup_cache.end()) subs = it->second;
  }
  if (subs.empty()) {
    std::unique_lock<std::shared_mutex> lock(mutex);
    auto it = subgroup_cache.find(g.flat_table());
    if (it == subgroup_cache.end())
      it = subgroup_cache.emplace(g.flat_table(), g.subgroups()).first;
    subs = it->second;
  }

  const int target = static_cast<int>(rng() % (max_carrier + 1));
  // assemble sigma-consistent orbit blocks: a coset space Gamma/H when
  // sigma(H) = H, otherwise the pair Gamma/H + Gamma/sigma(H)
  struct Block {
    std::vector<std::vector<int>> cosets;        // primary block
    std::vector<std::vector<int>> mirror_cosets; // empty for self-paired blocks
  };
  std::vector<Block> blocks;
  int used = 0;
  while (used < target) {
    std::vector<std::pair<std::vector<int>, bool>> eligible; // (subgroup, self_paired)
    for (const auto& h : subs) {
      const int idx = g.order() / static_cast<int>(h.size());
      const bool self = sigma_image(gg, h) == h;
      if (self && used + idx <= target) eligible.emplace_back(h, true);
      if (!self && used + 2 * idx <= target) eligible.emplace_back(h, false);
    }
    if (eligible.empty()) break; // cannot fill exactly; leave the carrier smaller
    const auto& [h, self] = pick(rng, eligible);
    Block block;
    block.cosets = cosets_of(g, h);
    if (!self) block.mirror_cosets = cosets_of(g, sigma_image(gg, h));
    used += static_cast<int>(block.cosets.size() + block.mirror_cosets.size());
    blocks.push_back(std::move(block));
  }

  const int m = used;
  std::vector<int> sigma_x(m);
  std::vector<std::vector<int>> action(g.order(), std::vector<int>(m));

  int base = 0;
  for (const auto& block : blocks) {
    auto locate = [](const std::vector<std::vector<int>>& cosets, int element) {
      for (size_t c = 0; c < cosets.size(); ++c)
        if (std::binary_search(cosets[c].begin(), cosets[c].end(), element))
          return static_cast<int>(c);
      return -1;
    };
    const int k = static_cast<int>(block.cosets.size());
    for (int c = 0; c < k; ++c) {
      const int rep = block.cosets[c].front();
      for (int a = 0; a < g.order(); ++a)
        action[a][base + c] = base + locate(block.cosets, g.mul(a, rep));
      if (block.mirror_cosets.empty()) {
        sigma_x[base + c] = base + locate(block.cosets, gg.sigma(rep));
      } else {
        sigma_x[base + c] = base + k + locate(block.mirror_cosets, gg.sigma(rep));
      }
    }
    if (!block.mirror_cosets.empty()) {
      for (int c = 0; c < k; ++c) {
        const int rep = block.mirror_cosets[c].front();
        for (int a = 0; a < g.order(); ++a)
          action[a][base + k + c] = base + k + locate(block.mirror_cosets, g.mul(a, rep));
        sigma_x[base + k + c] = base + locate(block.cosets, gg.sigma(rep));
      }
      base += 2 * k;
    } else {
      base += k;
    }
  }
  return FiniteGSpace::make(std::move(gg), m, std::move(sigma_x), std::move(action));
}

namespace {

const std::vector<Automorphism>& two_torsion_auts(int rank) {
  static std::shared_mutex mutex;
  static std::map<int, std::vector<Automorphism>> cache;
  {
    std::shared_lock<std::shared_mutex> read(mutex);
    auto it = cache.find(rank);
    if (it != cache.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mutex);
  auto it = cache.find(rank);
  if (it == cache.end())
    it = cache.emplace(rank, automorphisms(elementary_abelian_2(rank))).first;
  return it->second;
}

} // namespace

// Instances come from a surface-with-mirror-boundary presentation: generators
// e_1..e_k (boundary), a_j, b_j (handles), reflections c_1..c_k, subject to
// c_i^2 = 1, [e_i, c_i] = 1 and e_1...e_k [a_1,b_1]...[a_h,b_h] = 1. The
// orientation double cover is a genus 2h+k-1 real curve with k ovals; reading
// the component data off that cover keeps the generated gerbes geometrically
// consistent, which is what the fuzz target's zero-violation expectation needs
// (unconstrained automorphism tuples admit counterexamples).
MonodromyGerbe random_two_torsion_gerbe(std::uint64_t seed, std::uint64_t index, int max_rank,
                                        int max_genus) {
  auto rng = instance_rng(seed, index);
  const int rank = static_cast<int>(rng() % (max_rank + 1));
  const FiniteGroup fiber_group = elementary_abelian_2(rank);
  const auto& auts = two_torsion_auts(rank);

  std::vector<std::pair<int, int>> shapes; // (handles h, ovals k)
  for (int h = 0; h <= 2; ++h)
    for (int k = 1; 2 * h + k - 1 <= max_genus; ++k) shapes.emplace_back(h, k);
  const auto& [handles, ovals] = pick(rng, shapes);
  const int genus = 2 * handles + ovals - 1;

  std::vector<Automorphism> handle_a, handle_b;
  for (int j = 0; j < handles; ++j) {
    handle_a.push_back(pick(rng, auts));
    handle_b.push_back(pick(rng, auts));
  }
  std::vector<Automorphism> boundary;
  for (int i = 0; i + 1 < ovals; ++i) boundary.push_back(pick(rng, auts));
  // last boundary image from the long relation e_1...e_k [a_1,b_1]... = 1
  Automorphism prefix = Automorphism::identity(fiber_group.order());
  for (const auto& e : boundary) prefix = prefix.compose(e);
  Automorphism commutators = Automorphism::identity(fiber_group.order());
  for (int j = 0; j < handles; ++j)
    commutators = commutators.compose(handle_a[j])
                      .compose(handle_b[j])
                      .compose(handle_a[j].inverse())
                      .compose(handle_b[j].inverse());
  boundary.push_back(prefix.inverse().compose(commutators.inverse()));

  std::vector<Automorphism> reflections;
  for (int i = 0; i < ovals; ++i) {
    std::vector<Automorphism> commuting;
    for (const auto& a : auts)
      if (a.is_involutive() && a.compose(boundary[i]) == boundary[i].compose(a))
        commuting.push_back(a);
    reflections.push_back(pick(rng, commuting));
  }
  const Automorphism sigma_p = reflections.back();

  std::vector<Automorphism> gens;
  for (const auto& e : boundary) gens.push_back(e);
  for (int j = 0; j < handles; ++j) {
    gens.push_back(handle_a[j]);
    gens.push_back(handle_b[j]);
  }
  std::vector<int> omega_letter(ovals, 0); // 1-based letter for each oval's base change
  for (int i = 0; i + 1 < ovals; ++i) {
    gens.push_back(sigma_p.compose(reflections[i])); // the loop through mirrors k and i
    omega_letter[i] = static_cast<int>(gens.size());
  }
  const size_t core = gens.size();
  for (size_t i = 0; i < core; ++i) gens.push_back(sigma_p.compose(gens[i]).compose(sigma_p));

  std::vector<RealComponentGerbe> comps;
  for (int i = 0; i < ovals; ++i) {
    RealComponentGerbe c;
    c.shape = RealComponentGerbe::Shape::Circle;
    if (i + 1 < ovals) {
      c.loops.push_back(sigma_p.compose(boundary[i]).compose(sigma_p));
      c.omega_word = {omega_letter[i]};
    } else {
      c.loops.push_back(boundary[i]);
    }
    comps.push_back(std::move(c));
  }

  GerbeBase base;
  base.kind = GerbeBase::Kind::ProperCurve;
  base.genus = genus;
  return MonodromyGerbe{GGroup::make(fiber_group, sigma_p), std::move(gens), base,
                        std::move(comps), false};
}

std::string space_dedup_key(const FiniteGSpace& space) {
  // canonical form over a bounded relabeling search: permute equal-size orbit
  // blocks and take the least byte string; within-block relabeling is skipped
  const GGroup& gg = space.ggroup();
  std::vector<std::vector<int>> orbit_list;
  std::vector<bool> seen(space.carrier(), false);
  for (int x = 0; x < space.carrier(); ++x) {
    if (seen[x]) continue;
    std::vector<int> orb = space.orbit(x);
    for (int y : orb) seen[y] = true;
    orbit_list.push_back(std::move(orb));
  }

  auto render = [&](const std::vector<int>& relabel) {
    std::string s;
    s.reserve(static_cast<size_t>(gg.order()) * space.carrier() + 64);
    for (int v : gg.group.flat_table()) s.push_back(static_cast<char>(v));
    for (int x = 0; x < gg.order(); ++x) s.push_back(static_cast<char>(gg.sigma(x)));
    s.push_back('|');
    std::vector<int> inverse(space.carrier());
    for (int i = 0; i < space.carrier(); ++i) inverse[relabel[i]] = i;
    for (int g = 0; g < gg.order(); ++g)
      for (int x = 0; x < space.carrier(); ++x)
        s.push_back(static_cast<char>(relabel[space.act(g, inverse[x])]));
    for (int x = 0; x < space.carrier(); ++x)
      s.push_back(static_cast<char>(relabel[space.sigma_x(inverse[x])]));
    return s;
  };

  std::vector<int> order(orbit_list.size());
  std::iota(order.begin(), order.end(), 0);
  std::string best;
  int tried = 0;
  std::sort(order.begin(), order.end());
  do {
    if (++tried > 720) break;
    bool size_sorted = true;
    for (size_t i = 1; i < order.size(); ++i)
      if (orbit_list[order[i - 1]].size() > orbit_list[order[i]].size()) size_sorted = false;
    if (!size_sorted) continue; // only permute blocks of equal size
    std::vector<int> relabel(space.carrier());
    int next = 0;
    for (int oi : order)
      for (int x : orbit_list[oi]) relabel[x] = next++;
    std::string s = render(relabel);
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(order.begin(), order.end()));
  if (best.empty()) best = render([&] {
    std::vector<int> id(space.carrier());
    std::iota(id.begin(), id.end(), 0);
    return id;
  }());
  return best;
}

namespace {

struct CheckOutcome {
  bool ok = true;
  long long lhs = 0, rhs = 0;
  json instance;
};

CheckOutcome check_quotient_instance(const FiniteGSpace& space) {
  CheckOutcome out;
  const RealLocusDecomposition dec = real_locus(space);
  const TorsorOracleResult oracle = torsor_oracle(space);
  const SmithThomFiniteReport st = smith_thom_finite(space);
  bool classwise = dec.twists.size() == oracle.twists.size();
  if (classwise)
    for (size_t t = 0; t < dec.twists.size(); ++t)
      if (dec.twists[t].orbits != oracle.twists[t].classes) classwise = false;
  if (!st.holds) {
    out.ok = false;
    out.lhs = st.real;
    out.rhs = st.inertia;
  } else if (dec.total != oracle.total || !classwise) {
    out.ok = false;
    out.lhs = dec.total;
    out.rhs = oracle.total;
  }
  if (!out.ok) out.instance = io::space_to_json(space);
  return out;
}

CheckOutcome check_gerbe_instance(const MonodromyGerbe& gerbe) {
  CheckOutcome out;
  const GerbeReport rep = smith_thom_gerbe(gerbe);
  if (!*rep.holds) {
    out.ok = false;
    out.lhs = rep.real;
    out.rhs = *rep.inertia;
    out.instance = io::gerbe_to_json(gerbe);
  }
  return out;
}

CampaignSummary run_bgamma(const Campaign& campaign) {
  CampaignSummary summary;
  const auto& pool = pair_pool(campaign.max_order);
  const auto& catalog = group_catalog(campaign.max_order);
  std::mutex sink;
  const int workers = std::max(1, campaign.workers);
  std::vector<std::thread> threads;
  std::vector<long long> checked(workers, 0);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (size_t i = w; i < pool.pairs.size(); i += workers) {
        const auto& [gi, si] = pool.pairs[i];
        const FiniteGroup& g = catalog[gi].group;
        GGroup gg = GGroup::make(g, pool.involutions_by_group[gi][si]);
        const int h1_count = h1(gg).count();
        const int conj = g.conjugacy_class_count();
        ++checked[w];
        if (h1_count > conj) {
          Violation v;
          v.kind = "bgamma";
          v.index = i;
          v.lhs = h1_count;
          v.rhs = conj;
          v.instance = json{{"group", io::group_to_json(g)},
                            {"name", catalog[gi].name},
                            {"sigma", gg.sigma.perm()}};
          std::lock_guard<std::mutex> lock(sink);
          summary.violations.push_back(std::move(v));
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  summary.checked = std::accumulate(checked.begin(), checked.end(), 0LL);
  std::sort(summary.violations.begin(), summary.violations.end(),
            [](const Violation& a, const Violation& b) { return a.index < b.index; });
  return summary;
}

template <typename MakeInstance, typename Check>
CampaignSummary run_randomized(const Campaign& campaign, MakeInstance make, Check check) {
  CampaignSummary summary;
  std::mutex sink;
  const int workers = std::max(1, campaign.workers);
  std::vector<std::thread> threads;
  std::vector<long long> checked(workers, 0);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      // per-worker duplicate suppression; keys are recorded only for passing
      // instances, so repeated violations are always rechecked and reported
      // regardless of how the index range is partitioned
      std::set<std::string> seen;
      for (int i = w; i < campaign.count; i += workers) {
        auto instance = make(static_cast<std::uint64_t>(i));
        ++checked[w];
        const std::string key = instance.second;
        if (!key.empty() && seen.count(key)) continue;
        CheckOutcome outcome = check(instance.first);
        if (outcome.ok && !key.empty()) seen.insert(key);
        if (!outcome.ok) {
          Violation v;
          v.kind = campaign_kind_name(campaign.kind);
          v.index = static_cast<std::uint64_t>(i);
          v.lhs = outcome.lhs;
          v.rhs = outcome.rhs;
          v.instance = std::move(outcome.instance);
          std::lock_guard<std::mutex> lock(sink);
          summary.violations.push_back(std::move(v));
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  summary.checked = std::accumulate(checked.begin(), checked.end(), 0LL);
  std::sort(summary.violations.begin(), summary.violations.end(),
            [](const Violation& a, const Violation& b) { return a.index < b.index; });
  return summary;
}

} // namespace

CampaignSummary run_campaign(const Campaign& campaign) {
  const auto start = std::chrono::steady_clock::now();
  CampaignSummary summary;
  switch (campaign.kind) {
    case CampaignKind::BGamma:
      summary = run_bgamma(campaign);
      break;
    case CampaignKind::Quotient:
      summary = run_randomized(
          campaign,
          [&](std::uint64_t i) {
            FiniteGSpace space =
                random_gspace(campaign.seed, i, campaign.max_order, campaign.max_carrier);
            std::string key = space_dedup_key(space);
            return std::make_pair(std::move(space), std::move(key));
          },
          check_quotient_instance);
      break;
    case CampaignKind::Gerbe2Torsion:
      summary = run_randomized(
          campaign,
          [&](std::uint64_t i) {
            MonodromyGerbe gerbe =
                random_two_torsion_gerbe(campaign.seed, i, campaign.max_rank, campaign.max_genus);
            return std::make_pair(std::move(gerbe), std::string());
          },
          check_gerbe_instance);
      break;
  }
  summary.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return summary;
}

bool replay_violation(const Violation& violation) {
  if (violation.kind == "bgamma") {
    FiniteGroup g = io::group_from_json(violation.instance.at("group"), "instance.group");
    std::vector<int> sig =
        io::perm_from_json(violation.instance.at("sigma"), g.order(), "instance.sigma");
    GGroup gg = GGroup::make(g, Automorphism::unchecked(std::move(sig)));
    return h1(gg).count() > g.conjugacy_class_count();
  }
  if (violation.kind == "quotient") {
    FiniteGSpace space = io::space_from_json(violation.instance, "instance");
    return !check_quotient_instance(space).ok;
  }
  if (violation.kind == "gerbe2torsion") {
    MonodromyGerbe gerbe = io::gerbe_from_json(violation.instance, "instance");
    return !check_gerbe_instance(gerbe).ok;
  }
  fail(Errc::Malformed, "unknown violation kind '" + violation.kind + "'");
}

} // namespace realstack
