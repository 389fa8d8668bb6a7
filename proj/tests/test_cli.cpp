#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(REALSTACK_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof buffer, pipe)) result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string data_path(const std::string& name) {
  return std::string(REALSTACK_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

} // namespace

TEST_CASE("h1 subcommand") {
  const RunResult r = run_cli("h1 --group C2 --sigma id");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"class_count\": 2") != std::string::npos);

  // involution index 1 of C4 is the inversion
  const RunResult inv = run_cli("--format text h1 --group C4 --sigma 1");
  CHECK(inv.exit_code == 0);
  CHECK(inv.output.find("class_count: 2") != std::string::npos);

  const RunResult swap = run_cli("h1 --group V4 --sigma 0,2,1,3");
  CHECK(swap.exit_code == 0);
  CHECK(swap.output.find("\"class_count\": 1") != std::string::npos);

  CHECK(run_cli("h1 --group NoSuchGroup --sigma id").exit_code == 2);
  CHECK(run_cli("h1 --group C4 --sigma 99").exit_code == 2);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("h1").exit_code == 2);
  CHECK(run_cli("frobnicate --x 1").exit_code == 2);
}

TEST_CASE("quotient subcommand with oracle") {
  const RunResult r = run_cli("quotient --space " + data_path("a1_mod_z2.json") + " --oracle");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"matches_real_locus\": true") != std::string::npos);
  CHECK(r.output.find("\"holds\": true") != std::string::npos);
}

TEST_CASE("curve subcommand") {
  const RunResult r = run_cli("curve --spec " + data_path("moduli_a1.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"inertia\": 8") != std::string::npos);
}

TEST_CASE("gerbe subcommand with component selector") {
  const RunResult r = run_cli("gerbe --spec " + data_path("enriques_1.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"real\": 48") != std::string::npos);
  CHECK(r.output.find("\"inertia\": 56") != std::string::npos);

  const RunResult comp = run_cli("gerbe --spec " + data_path("enriques_2.json") + " --component 4");
  CHECK(comp.exit_code == 0);
  CHECK(comp.output.find("\"h1_count\": 1") != std::string::npos);
}

TEST_CASE("examples reproduce goldens byte for byte") {
  for (const std::string name :
       {"a1_mod_z2", "a1_mod_z2xz2", "symmetric_square", "moduli_a1", "elliptic_kummer_max",
        "scheme_circle", "kummer_g2", "enriques_1", "enriques_2", "elliptic_family_1",
        "elliptic_family_2"}) {
    const RunResult r = run_cli("example " + name);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("golden mismatch") == std::string::npos);
    // canonical output is stable across runs
    const RunResult again = run_cli("example " + name);
    CHECK(r.output == again.output);
  }
  CHECK(run_cli("example no_such_example").exit_code == 2);
}

TEST_CASE("a failing verdict exits with 1") {
  // bound route with a large kernel and a small inertia side
  const std::string spec = write_temp("realstack_failing_curve.json", R"({
    "schema": "realstack/v1",
    "kind": "curve",
    "h_star_m_complex": 1,
    "kernel_order": 4,
    "abelian": true,
    "faithful": false,
    "branch_points": [],
    "real_components": [],
    "faithful_quotient_real_components": ["circle", "circle"]
  })");
  const RunResult r = run_cli("curve --spec " + spec);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("\"holds\": false") != std::string::npos);
}

TEST_CASE("invariant violations are located") {
  const std::string bad_table = write_temp("realstack_bad_group.json", R"({
    "kind": "group",
    "order": 3,
    "table": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]
  })");
  const RunResult r = run_cli("h1 --group " + bad_table + " --sigma id");
  CHECK(r.exit_code == 2);
  const bool located = r.output.find("NoInverse") != std::string::npos ||
                       r.output.find("NotAssociative") != std::string::npos;
  CHECK(located);

  const std::string bad_gerbe = write_temp("realstack_bad_gerbe.json", R"({
    "schema": "realstack/v1",
    "kind": "gerbe",
    "fiber": {"group": "C2^2", "sigma": [0, 2, 1, 3]},
    "global_generators": [[0, 1, 3, 2]],
    "base": {"type": "proper_curve", "genus": 1},
    "components": [
      {"shape": "circle", "loops": [[0, 1, 3, 2]], "omega": []}
    ]
  })");
  const RunResult g = run_cli("gerbe --spec " + bad_gerbe);
  CHECK(g.exit_code == 2);
  CHECK(g.output.find("LoopNotEquivariant") != std::string::npos);

  const std::string garbage = write_temp("realstack_garbage.json", "{not json");
  CHECK(run_cli("quotient --space " + garbage).exit_code == 2);
}

TEST_CASE("search subcommand writes a report") {
  const auto out = std::filesystem::temp_directory_path() / "realstack_report.json";
  const RunResult r = run_cli("search --kind bgamma --max-order 8 --workers 2 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"violations\": []") != std::string::npos);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(body.find("\"checked\"") != std::string::npos);
  CHECK(body.find("\"wall_time_ms\"") != std::string::npos);

  const RunResult q = run_cli("search --kind quotient --seed 9 --count 120 --max-order 8 --workers 3");
  CHECK(q.exit_code == 0);
  CHECK(q.output.find("\"checked\": 120") != std::string::npos);
}
