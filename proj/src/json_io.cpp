#include "realstack/json_io.hpp"

#include <fstream>

namespace realstack::io {

using nlohmann::json;

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& reason) {
  fail(Errc::Malformed, path + ": " + reason);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) bad(path, "missing field '" + key + "'");
  return j.at(key);
}

int int_field(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool bool_field(const json& j, const std::string& key, const std::string& path, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) bad(path + "." + key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad(path, "expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

} // namespace

json group_to_json(const FiniteGroup& g) {
  json table = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  return json{{"order", g.order()}, {"table", std::move(table)}};
}

FiniteGroup group_from_name(const std::string& name) {
  const auto split = name.find('x');
  if (split != std::string::npos)
    return direct_product(group_from_name(name.substr(0, split)),
                          group_from_name(name.substr(split + 1)));
  try {
    if (name == "V4") return elementary_abelian_2(2);
    if (name.rfind("C2^", 0) == 0) return elementary_abelian_2(std::stoi(name.substr(3)));
    if (name.size() >= 2 && name[0] == 'C') return cyclic(std::stoi(name.substr(1)));
    if (name.size() >= 2 && name[0] == 'D') return dihedral(std::stoi(name.substr(1)));
    if (name.size() >= 2 && name[0] == 'S') return symmetric(std::stoi(name.substr(1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::Malformed, "unknown group name '" + name + "'");
  }
  fail(Errc::Malformed, "unknown group name '" + name + "'");
}

FiniteGroup group_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return group_from_name(j.get<std::string>());
    } catch (const Error&) {
      bad(path, "unknown group name '" + j.get<std::string>() + "'");
    }
  }
  const int order = int_field(j, "order", path);
  const json& table = field(j, "table", path);
  if (!table.is_array() || static_cast<int>(table.size()) != order)
    bad(path + ".table", "expected " + std::to_string(order) + " rows");
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < table.size(); ++i)
    rows.push_back(int_list(table[i], path + ".table[" + std::to_string(i) + "]"));
  try {
    return FiniteGroup::from_table(rows);
  } catch (const Error& e) {
    fail(Errc::InvariantViolated, path + ".table: " + e.what());
  }
}

std::vector<int> perm_from_json(const json& j, int degree, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "id" || s == "identity") {
      std::vector<int> p(degree);
      for (int i = 0; i < degree; ++i) p[i] = i;
      return p;
    }
    bad(path, "unknown permutation name '" + s + "'");
  }
  std::vector<int> p = int_list(j, path);
  if (static_cast<int>(p.size()) != degree)
    bad(path, "expected a permutation of length " + std::to_string(degree));
  return p;
}

json ggroup_to_json(const GGroup& gg) {
  return json{{"group", group_to_json(gg.group)}, {"sigma", gg.sigma.perm()}};
}

GGroup ggroup_from_json(const json& j, const std::string& path) {
  FiniteGroup g = group_from_json(field(j, "group", path), path + ".group");
  std::vector<int> sig = perm_from_json(field(j, "sigma", path), g.order(), path + ".sigma");
  try {
    return GGroup::make(std::move(g), Automorphism::unchecked(std::move(sig)));
  } catch (const Error& e) {
    fail(Errc::InvariantViolated, path + ".sigma: " + e.what());
  }
}

json space_to_json(const FiniteGSpace& space) {
  const GGroup& gg = space.ggroup();
  json action = json::array();
  for (int g = 0; g < gg.order(); ++g) {
    json row = json::array();
    for (int x = 0; x < space.carrier(); ++x) row.push_back(space.act(g, x));
    action.push_back(std::move(row));
  }
  return json{{"schema", kSchema},
              {"kind", "space"},
              {"group", group_to_json(gg.group)},
              {"sigma_group", gg.sigma.perm()},
              {"carrier", space.carrier()},
              {"sigma_x", space.sigma_x_perm()},
              {"action", std::move(action)}};
}

FiniteGSpace space_from_json(const json& j, const std::string& path) {
  FiniteGroup g = group_from_json(field(j, "group", path), path + ".group");
  std::vector<int> sig = perm_from_json(field(j, "sigma_group", path), g.order(), path + ".sigma_group");
  const int carrier = int_field(j, "carrier", path);
  std::vector<int> sigma_x =
      perm_from_json(field(j, "sigma_x", path), carrier, path + ".sigma_x");
  const json& action = field(j, "action", path);
  if (!action.is_array() || static_cast<int>(action.size()) != g.order())
    bad(path + ".action", "expected one row per group element");
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < action.size(); ++i)
    rows.push_back(int_list(action[i], path + ".action[" + std::to_string(i) + "]"));
  try {
    GGroup gg = GGroup::make(std::move(g), Automorphism::unchecked(std::move(sig)));
    return FiniteGSpace::make(std::move(gg), carrier, std::move(sigma_x), std::move(rows));
  } catch (const Error& e) {
    fail(Errc::InvariantViolated, path + ": " + e.what());
  }
}

json curve_spec_to_json(const StackyCurveSpec& spec) {
  json branch = json::array();
  for (const auto& bp : spec.branch_points)
    branch.push_back(json{{"stabilizer", group_to_json(bp.stabilizer)}, {"is_real", bp.is_real}});
  json comps = json::array();
  for (const auto& c : spec.real_components)
    comps.push_back(json{{"shape", shape_name(c.shape)}, {"special_points", c.special_points}});
  json quotient_comps = json::array();
  for (ComponentShape s : spec.faithful_quotient_real_components)
    quotient_comps.push_back(shape_name(s));
  return json{{"schema", kSchema},
              {"kind", "curve"},
              {"h_star_m_complex", spec.h_star_m_complex},
              {"kernel_order", spec.kernel_order},
              {"kernel_central", spec.kernel_central},
              {"faithful", spec.faithful},
              {"proper", spec.proper},
              {"abelian", spec.abelian},
              {"branch_points", std::move(branch)},
              {"real_components", std::move(comps)},
              {"faithful_quotient_real_components", std::move(quotient_comps)}};
}

StackyCurveSpec curve_spec_from_json(const json& j, const std::string& path) {
  StackyCurveSpec spec;
  if (j.contains("genus")) {
    const int genus = int_field(j, "genus", path);
    if (genus < 0) bad(path + ".genus", "negative genus");
    spec.h_star_m_complex = 2 + 2 * genus;
  } else {
    spec.h_star_m_complex = int_field(j, "h_star_m_complex", path);
  }
  spec.kernel_order = j.contains("kernel_order") ? int_field(j, "kernel_order", path) : 1;
  spec.kernel_central = bool_field(j, "kernel_central", path, true);
  spec.faithful = bool_field(j, "faithful", path, false);
  spec.proper = bool_field(j, "proper", path, false);
  spec.abelian = bool_field(j, "abelian", path, false);
  if (j.contains("branch_points")) {
    const json& branch = j.at("branch_points");
    if (!branch.is_array()) bad(path + ".branch_points", "expected an array");
    for (size_t i = 0; i < branch.size(); ++i) {
      const std::string bpath = path + ".branch_points[" + std::to_string(i) + "]";
      FiniteGroup stab = group_from_json(field(branch[i], "stabilizer", bpath), bpath + ".stabilizer");
      spec.branch_points.push_back(
          BranchPoint::make(std::move(stab), bool_field(branch[i], "is_real", bpath, false)));
    }
  }
  if (j.contains("real_components")) {
    const json& comps = j.at("real_components");
    if (!comps.is_array()) bad(path + ".real_components", "expected an array");
    for (size_t i = 0; i < comps.size(); ++i) {
      const std::string cpath = path + ".real_components[" + std::to_string(i) + "]";
      RealComponentSpec c;
      const json& sh = field(comps[i], "shape", cpath);
      if (!sh.is_string()) bad(cpath + ".shape", "expected a string");
      try {
        c.shape = shape_from_name(sh.get<std::string>());
      } catch (const Error& e) {
        bad(cpath + ".shape", e.what());
      }
      c.special_points = int_field(comps[i], "special_points", cpath);
      spec.real_components.push_back(c);
    }
  }
  if (j.contains("faithful_quotient_real_components")) {
    const json& comps = j.at("faithful_quotient_real_components");
    if (!comps.is_array()) bad(path + ".faithful_quotient_real_components", "expected an array");
    for (size_t i = 0; i < comps.size(); ++i) {
      if (!comps[i].is_string())
        bad(path + ".faithful_quotient_real_components", "expected shape names");
      spec.faithful_quotient_real_components.push_back(shape_from_name(comps[i].get<std::string>()));
    }
  }
  try {
    return StackyCurveSpec::validated(std::move(spec));
  } catch (const Error& e) {
    fail(Errc::InvariantViolated, path + ": " + e.what());
  }
}

json gerbe_to_json(const MonodromyGerbe& gerbe) {
  json gens = json::array();
  for (const auto& g : gerbe.global_generators) gens.push_back(g.perm());
  json base;
  switch (gerbe.base.kind) {
    case GerbeBase::Kind::ProperCurve:
      base = json{{"type", "proper_curve"}, {"genus", gerbe.base.genus}};
      break;
    case GerbeBase::Kind::OpenCurve:
      base = json{{"type", "open_curve"}};
      break;
    case GerbeBase::Kind::TableDriven: {
      json table = json::object();
      for (const auto& [size, h] : gerbe.base.table.h_star_by_orbit_size)
        table[std::to_string(size)] = h;
      base = json{{"type", "table_driven"}, {"cover_h_star", std::move(table)}};
      break;
    }
  }
  json comps = json::array();
  for (const auto& c : gerbe.components) {
    json loops = json::array();
    for (const auto& l : c.loops) loops.push_back(l.perm());
    json comp{{"loops", std::move(loops)}, {"omega", c.omega_word}};
    switch (c.shape) {
      case RealComponentGerbe::Shape::Circle: comp["shape"] = "circle"; break;
      case RealComponentGerbe::Shape::Interval: comp["shape"] = "interval"; break;
      case RealComponentGerbe::Shape::Table: {
        comp["shape"] = "table";
        json table = json::object();
        for (const auto& [size, h] : c.table.h_star_by_orbit_size)
          table[std::to_string(size)] = h;
        comp["real_cover_h_star"] = std::move(table);
        break;
      }
    }
    comps.push_back(std::move(comp));
  }
  return json{{"schema", kSchema},
              {"kind", "gerbe"},
              {"fiber", ggroup_to_json(gerbe.fiber)},
              {"global_generators", std::move(gens)},
              {"base", std::move(base)},
              {"components", std::move(comps)},
              {"surface_generators", gerbe.declared_surface_generators}};
}

namespace {

CoverTable table_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object keyed by orbit size");
  CoverTable out;
  for (const auto& [key, value] : j.items()) {
    int size = 0;
    try {
      size = std::stoi(key);
    } catch (...) {
      bad(path, "orbit size key '" + key + "' is not an integer");
    }
    if (!value.is_number_integer()) bad(path + "." + key, "expected an integer");
    out.h_star_by_orbit_size[size] = value.get<int>();
  }
  return out;
}

} // namespace

MonodromyGerbe gerbe_from_json(const json& j, const std::string& path) {
  GGroup fiber = ggroup_from_json(field(j, "fiber", path), path + ".fiber");
  const int n = fiber.order();

  std::vector<Automorphism> gens;
  const json& jgens = field(j, "global_generators", path);
  if (!jgens.is_array()) bad(path + ".global_generators", "expected an array");
  for (size_t i = 0; i < jgens.size(); ++i) {
    const std::string gpath = path + ".global_generators[" + std::to_string(i) + "]";
    std::vector<int> p = perm_from_json(jgens[i], n, gpath);
    try {
      gens.push_back(Automorphism::checked(fiber.group, std::move(p)));
    } catch (const Error& e) {
      fail(Errc::InvariantViolated, gpath + ": " + e.what());
    }
  }

  GerbeBase base;
  const json& jbase = field(j, "base", path);
  const json& btype = field(jbase, "type", path + ".base");
  if (btype == "proper_curve") {
    base.kind = GerbeBase::Kind::ProperCurve;
    base.genus = int_field(jbase, "genus", path + ".base");
    if (base.genus < 0) bad(path + ".base.genus", "negative genus");
  } else if (btype == "open_curve") {
    base.kind = GerbeBase::Kind::OpenCurve;
  } else if (btype == "table_driven") {
    base.kind = GerbeBase::Kind::TableDriven;
    base.table = table_from_json(field(jbase, "cover_h_star", path + ".base"),
                                 path + ".base.cover_h_star");
  } else {
    bad(path + ".base.type", "expected proper_curve, open_curve or table_driven");
  }

  std::vector<RealComponentGerbe> comps;
  const json& jcomps = field(j, "components", path);
  if (!jcomps.is_array()) bad(path + ".components", "expected an array");
  for (size_t i = 0; i < jcomps.size(); ++i) {
    const std::string cpath = path + ".components[" + std::to_string(i) + "]";
    RealComponentGerbe c;
    const json& sh = field(jcomps[i], "shape", cpath);
    if (sh == "circle") {
      c.shape = RealComponentGerbe::Shape::Circle;
    } else if (sh == "interval") {
      c.shape = RealComponentGerbe::Shape::Interval;
    } else if (sh == "table") {
      c.shape = RealComponentGerbe::Shape::Table;
      c.table = table_from_json(field(jcomps[i], "real_cover_h_star", cpath),
                                cpath + ".real_cover_h_star");
    } else {
      bad(cpath + ".shape", "expected circle, interval or table");
    }
    if (jcomps[i].contains("loops")) {
      const json& jloops = jcomps[i].at("loops");
      if (!jloops.is_array()) bad(cpath + ".loops", "expected an array");
      for (size_t l = 0; l < jloops.size(); ++l) {
        const std::string lpath = cpath + ".loops[" + std::to_string(l) + "]";
        std::vector<int> p = perm_from_json(jloops[l], n, lpath);
        try {
          c.loops.push_back(Automorphism::checked(fiber.group, std::move(p)));
        } catch (const Error& e) {
          fail(Errc::InvariantViolated, lpath + ": " + e.what());
        }
      }
    }
    if (jcomps[i].contains("omega"))
      c.omega_word = int_list(jcomps[i].at("omega"), cpath + ".omega");
    comps.push_back(std::move(c));
  }

  MonodromyGerbe gerbe{std::move(fiber), std::move(gens), base, std::move(comps),
                       bool_field(j, "surface_generators", path, false)};
  try {
    validate(gerbe);
  } catch (const Error& e) {
    fail(Errc::InvariantViolated, path + ": " + e.what());
  }
  return gerbe;
}

json h1_report(const GGroup& gg) {
  const H1Classes classes = h1(gg);
  json class_table = json::array();
  for (int c = 0; c < classes.count(); ++c) {
    json members = json::array();
    for (size_t i = 0; i < classes.z1.size(); ++i)
      if (classes.class_of_z1[i] == c) members.push_back(classes.z1[i]);
    class_table.push_back(std::move(members));
  }
  return json{{"schema", kSchema},
              {"kind", "h1_report"},
              {"class_count", classes.count()},
              {"classes", std::move(class_table)},
              {"representatives", classes.representatives},
              {"z1", classes.z1}};
}

json quotient_report(const FiniteGSpace& space, bool with_oracle) {
  const RealLocusDecomposition dec = real_locus(space);
  const InertiaSet inertia = inertia_complex(space);
  json twists = json::array();
  for (const auto& tw : dec.twists) {
    twists.push_back(json{{"cocycle", tw.gamma},
                          {"fixed_points", tw.fixed},
                          {"orbits", tw.orbits}});
  }
  json inertia_classes = json::array();
  for (const auto& cls : inertia.classes) {
    json members = json::array();
    for (const auto& [x, g] : cls) members.push_back(json::array({x, g}));
    inertia_classes.push_back(std::move(members));
  }
  json fibers = json::array();
  for (const auto& f : coarse_fibers(space)) {
    json entry{{"orbit", f.orbit_least}, {"fiber", f.fiber_count}};
    entry["h1_stabilizer"] = f.h1_stabilizer ? json(*f.h1_stabilizer) : json(nullptr);
    fibers.push_back(std::move(entry));
  }
  json out{{"schema", kSchema},
           {"kind", "quotient_report"},
           {"real", json{{"total", dec.total}, {"twists", std::move(twists)}}},
           {"inertia", json{{"total", inertia.count()}, {"classes", std::move(inertia_classes)}}},
           {"coarse_fibers", std::move(fibers)},
           {"holds", dec.total <= inertia.count()}};
  if (with_oracle) {
    const TorsorOracleResult oracle = torsor_oracle(space);
    json oracle_twists = json::array();
    for (const auto& tw : oracle.twists)
      oracle_twists.push_back(
          json{{"cocycle", tw.gamma}, {"witnesses", tw.witnesses}, {"classes", tw.classes}});
    out["oracle"] = json{{"total", oracle.total},
                         {"twists", std::move(oracle_twists)},
                         {"matches_real_locus", oracle.total == dec.total}};
  }
  return out;
}

json curve_report(const StackyCurveSpec& spec) {
  const CurveReport rep = smith_thom_curve(spec);
  json out{{"schema", kSchema},
           {"kind", "curve_report"},
           {"inertia", rep.inertia},
           {"real", rep.real},
           {"real_is_bound", rep.real_is_bound},
           {"holds", rep.holds}};
  bool all_abelian = true;
  for (const auto& bp : spec.branch_points)
    if (!bp.stabilizer.is_abelian()) all_abelian = false;
  if (all_abelian && !spec.branch_points.empty())
    out["factorization_holds"] = inertia_factorization_check(spec);
  return out;
}

json gerbe_report(const MonodromyGerbe& gerbe) {
  validate(gerbe);
  json comps = json::array();
  for (size_t i = 0; i < gerbe.components.size(); ++i) {
    const CoverOrbits cover = real_cover(gerbe, static_cast<int>(i));
    const Automorphism sig = effective_sigma(gerbe, static_cast<int>(i));
    comps.push_back(json{{"effective_sigma", sig.perm()},
                         {"h1_count", cover.classes.count()},
                         {"orbit_sizes", cover.sizes_desc}});
  }
  json out{{"schema", kSchema},
           {"kind", "gerbe_report"},
           {"components", std::move(comps)},
           {"real", real_h_star(gerbe)}};
  if (gerbe.base.kind != GerbeBase::Kind::OpenCurve) {
    const GerbeReport rep = smith_thom_gerbe(gerbe);
    out["inertia"] = *rep.inertia;
    out["holds"] = *rep.holds;
    if (rep.cor_lhs) {
      out["orbit_form"] = json{{"lhs", *rep.cor_lhs},
                               {"rhs", *rep.cor_rhs},
                               {"holds", *rep.cor_holds}};
    }
  }
  return out;
}

ParsedSpec parse_spec_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) fail(Errc::Malformed, "cannot open '" + filename + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::Malformed, filename + ": " + e.what());
  }
  if (!j.is_object()) fail(Errc::Malformed, filename + ": expected a JSON object");
  std::string kind = j.value("kind", "");
  if (kind.empty()) fail(Errc::Malformed, filename + ": missing 'kind'");
  return ParsedSpec{std::move(kind), std::move(j)};
}

} // namespace realstack::io
