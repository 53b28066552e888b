#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <symproj/scenario.hpp>

using namespace symproj;
using nlohmann::json;

namespace {

json theorem_config(int n, int seeds) {
  return {{"kind", "theorem-check"},
          {"name", "test"},
          {"seed", 7},
          {"system", {{"type", "spins"}, {"n", n}}},
          {"projector", {{"kind", "parity-x"}, {"sector", "even"}}},
          {"generator", {{"axis", "y"}}},
          {"preparation", {{"kind", "random-sector"}, {"rank", 0}}},
          {"sweep", {{"parameter", "seed-index"}, {"count", seeds}}}};
}

/// CSV body with the wall-time column stripped (it is excluded from the
/// reproducibility guarantee).
std::string strip_walltime(const std::string& csv) {
  std::string out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string::npos) end = csv.size();
    const std::string line = csv.substr(start, end - start);
    const std::size_t cut = line.rfind(',');
    out += line.substr(0, cut);
    out += '\n';
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("scenario parsing: defaults, sweep forms, validation errors") {
  const Scenario s = Scenario::parse(theorem_config(3, 5));
  CHECK(s.kind == "theorem-check");
  CHECK(s.seed == 7);
  CHECK(s.sweep_values.size() == 5);
  CHECK(s.tol.chain == 1e-8);

  json from_to = theorem_config(3, 5);
  from_to["sweep"] = {{"parameter", "t"}, {"from", 0.0}, {"to", 1.0},
                      {"points", 5}};
  CHECK(Scenario::parse(from_to).sweep_values.back() == 1.0);

  json missing = theorem_config(3, 5);
  missing.erase("kind");
  CHECK_THROWS(Scenario::parse(missing));
  json empty_sweep = theorem_config(3, 5);
  empty_sweep["sweep"] = {{"parameter", "x"}, {"values", json::array()}};
  CHECK_THROWS_AS(Scenario::parse(empty_sweep), std::invalid_argument);
}

TEST_CASE("theorem-check scenario: all rows pass, ranks cycle") {
  const Scenario s = Scenario::parse(theorem_config(3, 8));
  const RunResult result = run_scenario(s);
  CHECK(result.rows.size() == 8);
  CHECK(result.all_pass);
  // rank column cycles 1..4 at N=3
  CHECK(result.rows[0].columns[0] == 1.0);
  CHECK(result.rows[3].columns[0] == 4.0);
  CHECK(result.rows[4].columns[0] == 1.0);
  // per-point seed is the base seed XOR the grid index
  CHECK(result.rows[5].seed == (7ull ^ 5ull));
}

TEST_CASE("same config and seed give a byte-identical CSV modulo wall time") {
  const Scenario s = Scenario::parse(theorem_config(3, 6));
  const std::string a = strip_walltime(to_csv(s, run_scenario(s)));
  const std::string b = strip_walltime(to_csv(s, run_scenario(s)));
  CHECK(a == b);
  CHECK(a.find("nan") == std::string::npos);
  CHECK(a.find("inf") == std::string::npos);
}

TEST_CASE("run_config: exit codes and output files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "symproj_cli_test";
  fs::create_directories(dir);
  const fs::path csv = dir / "rows.csv";
  const fs::path summary = dir / "summary.json";
  fs::remove(csv);
  fs::remove(summary);

  json config = theorem_config(2, 3);
  config["output"] = {{"csv", csv.string()}, {"summary", summary.string()}};
  CHECK(run_config(config, false, 1) == 0);
  CHECK(fs::exists(csv));
  CHECK(fs::exists(summary));

  json loaded;
  std::ifstream(summary) >> loaded;
  CHECK(loaded.at("all_pass").get<bool>());
  CHECK(loaded.at("rows").get<int>() == 3);
  CHECK(loaded.at("generator") == "mt19937_64");

  // validate-only: no computation, exit 0
  CHECK(run_config(config, true, 1) == 0);

  // a witness scenario with a wrong expectation exits 2
  json witness = {{"kind", "witness"},
                  {"name", "w"},
                  {"system", {{"type", "spins"}, {"n", 3}}},
                  {"preparation", {{"kind", "css-x"}}},
                  {"generator", {{"axis", "z"}}},
                  {"expect", "entangled"}};
  CHECK(run_config(witness, false, 1) == 2);

  // malformed file: exit 1, no partial outputs
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  const fs::path bad_csv = dir / "bad.csv";
  CHECK(run_config_file(bad.string(), false, 1) == 1);
  CHECK_FALSE(fs::exists(bad_csv));

  // config errors (unknown kind, bad schema) also exit 1
  json unknown = theorem_config(2, 1);
  unknown["kind"] = "nonsense";
  CHECK(run_config(unknown, false, 1) == 1);
}

TEST_CASE("bec scenario: frozen paper arithmetic in the rows") {
  const json config = {{"kind", "bec"},
                       {"name", "bec"},
                       {"system", {{"type", "bosons"}, {"n", 2}, {"n_a", 1},
                                   {"n_b", 1}}},
                       {"preparation", {{"kind", "ideal"}}}};
  const Scenario s = Scenario::parse(config);
  const RunResult result = run_scenario(s);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.all_pass);
  const auto& columns = result.rows[0].columns;
  // universe_dim, qfi_closed, qfi_brute, f_sep, statistic, flags
  CHECK(columns[1] == doctest::Approx(4.0));
  CHECK(columns[2] == doctest::Approx(4.0));
  CHECK(columns[3] == doctest::Approx(3.0));
  CHECK(columns[5] == 1.0);  // entangled vs separable bound
}

TEST_CASE("circuit scenario: css input gives half/half cats with QFI N^2") {
  const json config = {{"kind", "circuit"},
                       {"name", "circuit"},
                       {"system", {{"type", "spins"}, {"n", 4}}},
                       {"input", {{"kind", "css-x"}}}};
  const RunResult result = run_scenario(Scenario::parse(config));
  REQUIRE(result.rows.size() == 1);
  const auto& columns = result.rows[0].columns;
  CHECK(columns[0] == doctest::Approx(0.5));
  CHECK(columns[1] == doctest::Approx(0.5));
  CHECK(columns[2] == doctest::Approx(16.0).epsilon(1e-8));
  CHECK(columns[3] == doctest::Approx(16.0).epsilon(1e-8));
  CHECK(result.all_pass);
}

TEST_CASE("worker pool matches single-threaded rows exactly") {
  const Scenario s = Scenario::parse(theorem_config(3, 6));
  const RunResult serial = run_scenario(s, 1);
  const RunResult parallel = run_scenario(s, 3);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t k = 0; k < serial.rows.size(); ++k) {
    CHECK(serial.rows[k].seed == parallel.rows[k].seed);
    for (std::size_t c = 0; c < serial.rows[k].columns.size(); ++c)
      CHECK(serial.rows[k].columns[c] == parallel.rows[k].columns[c]);
  }
}
