// Command-line surface: every subcommand reads finite combinatorial data,
// runs the corresponding computation and emits canonical JSON (the contract)
// or an aligned text rendering. Exit codes: 0 success, 1 when a verified
// inequality fails to hold (or a golden comparison mismatches), 2 on input
// errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "realstack/json_io.hpp"
#include "realstack/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace realstack;

namespace {

#ifndef REALSTACK_DATA_DEFAULT
#define REALSTACK_DATA_DEFAULT ""
#endif

std::string resolve_data_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("REALSTACK_DATA")) return env;
  return REALSTACK_DATA_DEFAULT;
}

FiniteGroup load_group(const std::string& arg) {
  if (fs::exists(arg)) {
    const io::ParsedSpec spec = io::parse_spec_file(arg);
    return io::group_from_json(spec.raw, arg);
  }
  return io::group_from_name(arg);
}

std::vector<int> parse_sigma(const FiniteGroup& g, const std::string& arg) {
  if (arg == "id" || arg == "identity") return Automorphism::identity(g.order()).perm();
  if (arg.find(',') != std::string::npos) {
    std::vector<int> perm;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok));
    return perm;
  }
  const int index = std::stoi(arg);
  const auto invols = involutions(g);
  if (index < 0 || index >= static_cast<int>(invols.size()))
    fail(Errc::Malformed, "involution index " + arg + " out of range (group has " +
                              std::to_string(invols.size()) + ")");
  return invols[index].perm();
}

void emit(const json& report, const std::string& format) {
  if (format == "json") {
    std::cout << io::canonical_dump(report);
    return;
  }
  // aligned text: one "key: value" line per top-level scalar, nested objects
  // summarized by their totals
  std::function<void(const json&, const std::string&)> walk = [&](const json& j,
                                                                  const std::string& prefix) {
    for (const auto& [key, value] : j.items()) {
      if (key == "schema" || key == "kind") continue;
      if (value.is_object()) {
        walk(value, prefix + key + ".");
      } else if (value.is_array()) {
        std::cout << prefix << key << ": " << value.dump() << "\n";
      } else {
        std::cout << prefix << key << ": " << value.dump() << "\n";
      }
    }
  };
  walk(report, "");
}

int verdict_exit(const json& report) {
  if (report.contains("holds") && report.at("holds").is_boolean() && !report.at("holds").get<bool>())
    return 1;
  if (report.contains("oracle") && !report.at("oracle").at("matches_real_locus").get<bool>())
    return 1;
  return 0;
}

json run_example_input(const io::ParsedSpec& spec, const std::string& name) {
  if (spec.kind == "space")
    return io::quotient_report(io::space_from_json(spec.raw, name), /*with_oracle=*/true);
  if (spec.kind == "curve") return io::curve_report(io::curve_spec_from_json(spec.raw, name));
  if (spec.kind == "gerbe") return io::gerbe_report(io::gerbe_from_json(spec.raw, name));
  if (spec.kind == "report") {
    // externally supplied totals (never recomputed); only the verdict is derived
    json out{{"schema", io::kSchema},
             {"kind", "constant_report"},
             {"real", spec.raw.at("real")},
             {"inertia", spec.raw.at("inertia")},
             {"external", spec.raw.value("external", true)},
             {"holds", spec.raw.at("real").get<long long>() <=
                           spec.raw.at("inertia").get<long long>()}};
    if (spec.raw.contains("note")) out["note"] = spec.raw.at("note");
    return out;
  }
  fail(Errc::Malformed, name + ": unknown spec kind '" + spec.kind + "'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"topology of real loci and complex inertia for finite stack models"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* h1_cmd = app.add_subcommand("h1", "cohomology classes of a group with involution");
  std::string h1_group, h1_sigma = "id";
  h1_cmd->add_option("--group", h1_group, "catalog name or JSON file")->required();
  h1_cmd->add_option("--sigma", h1_sigma, "permutation (comma list), involution index, or 'id'");

  auto* quotient_cmd = app.add_subcommand("quotient", "real locus and inertia of a finite G-space");
  std::string space_file;
  bool with_oracle = false;
  quotient_cmd->add_option("--space", space_file, "space JSON file")->required();
  quotient_cmd->add_flag("--oracle", with_oracle, "also run the torsor-pair oracle");

  auto* curve_cmd = app.add_subcommand("curve", "Betti counts of a stacky curve spec");
  std::string curve_file;
  curve_cmd->add_option("--spec", curve_file, "curve spec JSON file")->required();

  auto* gerbe_cmd = app.add_subcommand("gerbe", "covering data of a split gerbe");
  std::string gerbe_file;
  int component = -1;
  gerbe_cmd->add_option("--spec", gerbe_file, "gerbe JSON file")->required();
  gerbe_cmd->add_option("--component", component, "restrict the report to one component");

  auto* search_cmd = app.add_subcommand("search", "verification campaigns");
  std::string kind_name = "bgamma", out_file;
  Campaign campaign;
  search_cmd->add_option("--kind", kind_name, "bgamma | quotient | gerbe2torsion")->required();
  search_cmd->add_option("--seed", campaign.seed, "stream seed");
  search_cmd->add_option("--count", campaign.count, "instance budget");
  search_cmd->add_option("--max-order", campaign.max_order, "group order cap");
  search_cmd->add_option("--max-carrier", campaign.max_carrier, "carrier size cap");
  search_cmd->add_option("--max-rank", campaign.max_rank, "fiber rank cap");
  search_cmd->add_option("--max-genus", campaign.max_genus, "base genus cap");
  search_cmd->add_option("--workers", campaign.workers, "worker thread count");
  search_cmd->add_option("--out", out_file, "write the report to this file");

  auto* example_cmd = app.add_subcommand("example", "run a bundled golden example");
  std::string example_name, data_dir_flag;
  bool bless = false;
  example_cmd->add_option("name", example_name, "golden example name")->required();
  example_cmd->add_flag("--bless", bless, "rewrite the expected output");
  example_cmd->add_option("--data", data_dir_flag, "data directory override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*h1_cmd) {
      FiniteGroup g = load_group(h1_group);
      GGroup gg = GGroup::make(g, Automorphism::unchecked(parse_sigma(g, h1_sigma)));
      emit(io::h1_report(gg), format);
      return 0;
    }
    if (*quotient_cmd) {
      const io::ParsedSpec spec = io::parse_spec_file(space_file);
      if (spec.kind != "space") fail(Errc::Malformed, space_file + ": expected kind 'space'");
      const json report = io::quotient_report(io::space_from_json(spec.raw, space_file), with_oracle);
      emit(report, format);
      return verdict_exit(report);
    }
    if (*curve_cmd) {
      const io::ParsedSpec spec = io::parse_spec_file(curve_file);
      if (spec.kind != "curve") fail(Errc::Malformed, curve_file + ": expected kind 'curve'");
      const json report = io::curve_report(io::curve_spec_from_json(spec.raw, curve_file));
      emit(report, format);
      return verdict_exit(report);
    }
    if (*gerbe_cmd) {
      const io::ParsedSpec spec = io::parse_spec_file(gerbe_file);
      if (spec.kind != "gerbe") fail(Errc::Malformed, gerbe_file + ": expected kind 'gerbe'");
      MonodromyGerbe gerbe = io::gerbe_from_json(spec.raw, gerbe_file);
      json report = io::gerbe_report(gerbe);
      if (component >= 0) {
        if (component >= static_cast<int>(gerbe.components.size()))
          fail(Errc::Malformed, "component index out of range");
        report = json{{"schema", io::kSchema},
                      {"kind", "gerbe_component_report"},
                      {"component", component},
                      {"detail", report.at("components").at(component)}};
      }
      emit(report, format);
      return verdict_exit(report);
    }
    if (*search_cmd) {
      campaign.kind = campaign_kind_from_name(kind_name);
      const CampaignSummary summary = run_campaign(campaign);
      json violations = json::array();
      for (const auto& v : summary.violations)
        violations.push_back(json{{"kind", v.kind},
                                  {"index", v.index},
                                  {"instance", v.instance},
                                  {"lhs", v.lhs},
                                  {"rhs", v.rhs}});
      const json report{{"schema", io::kSchema},
                        {"kind", "search_report"},
                        {"campaign", kind_name},
                        {"checked", summary.checked},
                        {"violations", std::move(violations)},
                        {"wall_time_ms", summary.wall_time_ms}};
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        if (!out) fail(Errc::Malformed, "cannot write '" + out_file + "'");
        out << io::canonical_dump(report);
        // standalone replay files, one per violation
        for (size_t k = 0; k < summary.violations.size(); ++k) {
          std::ofstream vout(out_file + ".violation" + std::to_string(k) + ".json");
          vout << io::canonical_dump(report.at("violations").at(k));
        }
      }
      emit(report, format);
      return summary.violations.empty() ? 0 : 1;
    }
    if (*example_cmd) {
      const std::string data_dir = resolve_data_dir(data_dir_flag);
      if (data_dir.empty()) fail(Errc::Malformed, "no data directory (use --data or REALSTACK_DATA)");
      const fs::path input = fs::path(data_dir) / (example_name + ".json");
      const fs::path expected = fs::path(data_dir) / "expected" / (example_name + ".json");
      if (!fs::exists(input)) fail(Errc::Malformed, "no such example '" + example_name + "'");
      const io::ParsedSpec spec = io::parse_spec_file(input.string());
      const json report = run_example_input(spec, example_name);
      const std::string produced = io::canonical_dump(report);
      if (bless) {
        fs::create_directories(expected.parent_path());
        std::ofstream out(expected);
        out << produced;
        std::cout << produced;
        return 0;
      }
      std::ifstream in(expected);
      if (!in) fail(Errc::Malformed, "missing expected output for '" + example_name + "'");
      std::stringstream want;
      want << in.rdbuf();
      std::cout << produced;
      if (want.str() != produced) {
        std::cerr << "golden mismatch for '" << example_name << "'\n";
        return 1;
      }
      return verdict_exit(report);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
