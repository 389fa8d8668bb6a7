#ifndef REALSTACK_SEARCH_HPP
#define REALSTACK_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "realstack/gerbe.hpp"
#include "realstack/gspace.hpp"
#include "realstack/group.hpp"

#include "json.hpp"

namespace realstack {

// Verification campaigns over generated instances. Instance i of a campaign is
// a pure function of (seed, i), so partitioning the index range over workers
// never changes what gets checked.

enum class CampaignKind { BGamma, Quotient, Gerbe2Torsion };

const char* campaign_kind_name(CampaignKind k);
CampaignKind campaign_kind_from_name(const std::string& name);

struct Campaign {
  CampaignKind kind = CampaignKind::BGamma;
  std::uint64_t seed = 0;
  int count = 1000;     // instance budget (ignored by the exhaustive bgamma sweep)
  int max_order = 8;    // group order cap
  int max_carrier = 6;  // quotient campaign
  int max_rank = 3;     // gerbe fiber rank n
  int max_genus = 4;    // gerbe base genus
  int workers = 1;
};

struct Violation {
  std::string kind;
  std::uint64_t index = 0;
  nlohmann::json instance;
  long long lhs = 0;
  long long rhs = 0;
};

struct CampaignSummary {
  long long checked = 0;
  std::vector<Violation> violations;
  long long wall_time_ms = 0;
};

CampaignSummary run_campaign(const Campaign& campaign);

// Re-runs the single-instance checker on a persisted violation; true means the
// violation reproduces.
bool replay_violation(const Violation& violation);

// Named small-group catalog up to the given order (deduplicated by table).
struct CatalogEntry {
  std::string name;
  FiniteGroup group;
};
const std::vector<CatalogEntry>& group_catalog(int max_order);

// Deterministic instance generators, exposed for tests.
FiniteGSpace random_gspace(std::uint64_t seed, std::uint64_t index, int max_order, int max_carrier);
MonodromyGerbe random_two_torsion_gerbe(std::uint64_t seed, std::uint64_t index, int max_rank,
                                        int max_genus);

// Bounded canonical key used for duplicate suppression (imperfect by design).
std::string space_dedup_key(const FiniteGSpace& space);

} // namespace realstack

#endif
