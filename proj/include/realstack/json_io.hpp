#ifndef REALSTACK_JSON_IO_HPP
#define REALSTACK_JSON_IO_HPP

#include <string>

#include "realstack/curve.hpp"
#include "realstack/gerbe.hpp"
#include "realstack/gspace.hpp"
#include "realstack/group.hpp"

#include "json.hpp"

namespace realstack::io {

inline constexpr const char* kSchema = "realstack/v1";

// Canonical serialization: objects with sorted keys, two-space indent, one
// trailing newline. Golden comparisons are byte-exact against this form.
std::string canonical_dump(const nlohmann::json& j);

// Groups serialize as {"order": n, "table": [[...], ...]}. Parsing also
// accepts catalog names: "C<n>", "D<n>", "S<n>", "V4", "C2^<k>", and
// 'x'-separated products such as "C2xC4".
nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_name(const std::string& name);
FiniteGroup group_from_json(const nlohmann::json& j, const std::string& path);

std::vector<int> perm_from_json(const nlohmann::json& j, int degree, const std::string& path);

nlohmann::json ggroup_to_json(const GGroup& gg);
GGroup ggroup_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json space_to_json(const FiniteGSpace& space);
FiniteGSpace space_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json curve_spec_to_json(const StackyCurveSpec& spec);
StackyCurveSpec curve_spec_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json gerbe_to_json(const MonodromyGerbe& gerbe);
MonodromyGerbe gerbe_from_json(const nlohmann::json& j, const std::string& path);

// Reports emitted by the CLI subcommands.
nlohmann::json h1_report(const GGroup& gg);
nlohmann::json quotient_report(const FiniteGSpace& space, bool with_oracle);
nlohmann::json curve_report(const StackyCurveSpec& spec);
nlohmann::json gerbe_report(const MonodromyGerbe& gerbe);

// Typed spec loaded from a file: dispatches on the "kind" field.
struct ParsedSpec {
  std::string kind; // "group" | "space" | "curve" | "gerbe" | "report"
  nlohmann::json raw;
};
ParsedSpec parse_spec_file(const std::string& filename);

} // namespace realstack::io

#endif
