// symproj command-line runner: every experiment is a subcommand (or a JSON
// scenario file via `run`); outputs are a CSV of per-grid-point rows and a
// JSON summary. Exit codes: 0 all checks pass, 2 a theorem/witness check
// failed, 1 configuration or runtime error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symproj/scenario.hpp"

using nlohmann::json;

namespace {

struct CommonFlags {
  std::string csv;
  std::string summary;
  std::uint64_t seed = 0;
  bool validate_only = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--csv", csv, "CSV output path");
    cmd->add_option("--summary", summary, "JSON summary output path");
    cmd->add_option("--seed", seed, "base RNG seed (per-point seed is "
                                    "seed XOR grid index)");
    cmd->add_flag("--validate-only", validate_only,
                  "validate the configuration and exit");
  }

  void fill(json& config) const {
    config["seed"] = seed;
    json output = json::object();
    if (!csv.empty()) output["csv"] = csv;
    if (!summary.empty()) output["summary"] = summary;
    if (!output.empty()) config["output"] = output;
  }
};

int dispatch(const json& config, const CommonFlags& flags) {
  return symproj::run_config(config, flags.validate_only,
                             symproj::workers_from_env());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry-projection metrology scenario runner"};
  app.require_subcommand(1);

  int exit_code = 0;

  // run <config.json>
  {
    auto* cmd = app.add_subcommand("run", "run a JSON scenario file");
    auto path = std::make_shared<std::string>();
    auto validate = std::make_shared<bool>(false);
    cmd->add_option("config", *path, "scenario JSON file")->required();
    cmd->add_flag("--validate-only", *validate,
                  "validate the configuration and exit");
    cmd->callback([&exit_code, path, validate] {
      exit_code = symproj::run_config_file(*path, *validate,
                                           symproj::workers_from_env());
    });
  }

  // theorem-check
  {
    auto* cmd = app.add_subcommand(
        "theorem-check", "equality chain on random sector states");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(4);
    auto seeds = std::make_shared<int>(50);
    auto rank = std::make_shared<int>(0);
    auto axis = std::make_shared<std::string>("y");
    auto proj_axis = std::make_shared<std::string>("x");
    auto sector = std::make_shared<std::string>("even");
    cmd->add_option("--N", *n, "number of spins")->check(CLI::Range(1, 12));
    cmd->add_option("--seeds", *seeds, "number of random states");
    cmd->add_option("--rank", *rank,
                    "fixed state rank (0: cycle 1..2^{N-1} with the index)");
    cmd->add_option("--generator-axis", *axis, "collective-spin axis (y|z)");
    cmd->add_option("--projector-axis", *proj_axis, "parity axis (x|z)");
    cmd->add_option("--sector", *sector, "even|odd");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, seeds, rank, axis, proj_axis,
                   sector] {
      json config = {
          {"kind", "theorem-check"},
          {"name", "theorem-check"},
          {"system", {{"type", "spins"}, {"n", *n}}},
          {"projector",
           {{"kind", "parity-" + *proj_axis}, {"sector", *sector}}},
          {"generator", {{"axis", *axis}}},
          {"preparation", {{"kind", "random-sector"}, {"rank", *rank}}},
          {"sweep", {{"parameter", "seed-index"}, {"count", *seeds}}}};
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  // oat-sweep
  {
    auto* cmd = app.add_subcommand(
        "oat-sweep", "one-axis-twisting sweep in the symmetric sector");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(8);
    auto chi = std::make_shared<double>(1.0);
    auto t_to = std::make_shared<double>(-1.0);
    auto points = std::make_shared<int>(41);
    auto axis = std::make_shared<std::string>("y");
    cmd->add_option("--N", *n, "number of spins");
    cmd->add_option("--chi", *chi, "twisting strength");
    cmd->add_option("--t-max", *t_to,
                    "sweep end time (default pi N / (2 chi), the cat time)");
    cmd->add_option("--points", *points, "grid points");
    cmd->add_option("--generator-axis", *axis, "QFI generator axis");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, chi, t_to, points, axis] {
      const double t_end =
          *t_to > 0 ? *t_to : 3.14159265358979323846 * *n / (2.0 * *chi);
      json config = {{"kind", "oat-sweep"},
                     {"name", "oat-sweep"},
                     {"system", {{"type", "dicke"}, {"n", *n}}},
                     {"chi", *chi},
                     {"generator", {{"axis", *axis}}},
                     {"sweep",
                      {{"parameter", "t"},
                       {"from", 0.0},
                       {"to", t_end},
                       {"points", *points}}}};
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  // ramp
  {
    auto* cmd = app.add_subcommand(
        "ramp", "quasi-adiabatic field ramp with diagnostics");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(6);
    auto model = std::make_shared<std::string>("ising");
    auto j = std::make_shared<double>(1.0);
    auto alpha = std::make_shared<double>(0.0);
    auto omega_from = std::make_shared<double>(5.0);
    auto omega_to = std::make_shared<double>(0.1);
    auto duration = std::make_shared<double>(50.0);
    auto steps = std::make_shared<int>(100);
    cmd->add_option("--N", *n, "number of spins")->check(CLI::Range(1, 12));
    cmd->add_option("--model", *model, "ising|xy|xxz");
    cmd->add_option("--J", *j, "coupling strength");
    cmd->add_option("--alpha", *alpha,
                    "power-law exponent (0: nearest-neighbor chain)");
    cmd->add_option("--omega-from", *omega_from, "initial field");
    cmd->add_option("--omega-to", *omega_to, "final field");
    cmd->add_option("--T", *duration, "ramp duration");
    cmd->add_option("--steps", *steps, "integration steps");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, model, j, alpha, omega_from, omega_to,
                   duration, steps] {
      json couplings = *alpha > 0
                           ? json{{"kind", "power-law"},
                                  {"j", *j},
                                  {"alpha", *alpha}}
                           : json{{"kind", "chain"}, {"j", *j}};
      json config = {{"kind", "ramp"},
                     {"name", "ramp"},
                     {"system", {{"type", "spins"}, {"n", *n}}},
                     {"model", {{"family", *model}, {"couplings", couplings}}},
                     {"omega_from", *omega_from},
                     {"omega_to", *omega_to},
                     {"duration", *duration},
                     {"steps", *steps}};
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  // bec
  {
    auto* cmd = app.add_subcommand(
        "bec", "tunneling-rate sensitivity of fixed-number mode pairs");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(2);
    auto n_a = std::make_shared<int>(1);
    auto n_b = std::make_shared<int>(1);
    auto ideal = std::make_shared<bool>(false);
    auto localized = std::make_shared<bool>(false);
    cmd->add_option("--N", *n, "mode pairs");
    cmd->add_option("--NA", *n_a, "bosons in A");
    cmd->add_option("--NB", *n_b, "bosons in B");
    cmd->add_flag("--ideal", *ideal, "delocalized condensate input (default)");
    cmd->add_flag("--localized", *localized, "independent localized bosons");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, n_a, n_b, ideal, localized] {
      (void)ideal;
      json config = {
          {"kind", "bec"},
          {"name", "bec"},
          {"system", {{"type", "bosons"}, {"n", *n}, {"n_a", *n_a},
                      {"n_b", *n_b}}},
          {"preparation", {{"kind", *localized ? "localized" : "ideal"}}}};
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  // circuit
  {
    auto* cmd = app.add_subcommand(
        "circuit", "ancilla parity extraction with post-selection");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(4);
    auto input = std::make_shared<std::string>("css-x");
    auto seeds = std::make_shared<int>(1);
    auto rank = std::make_shared<int>(2);
    cmd->add_option("--N", *n, "number of data qubits")
        ->check(CLI::Range(1, 11));
    cmd->add_option("--input", *input,
                    "css-x | cat | classical-corr | random");
    cmd->add_option("--seeds", *seeds, "points for random inputs");
    cmd->add_option("--rank", *rank, "rank of random inputs");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, input, seeds, rank] {
      json config = {{"kind", "circuit"},
                     {"name", "circuit"},
                     {"system", {{"type", "spins"}, {"n", *n}}},
                     {"input", {{"kind", *input}, {"rank", *rank}}},
                     {"sweep",
                      {{"parameter", "seed-index"}, {"count", *seeds}}}};
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  // witness
  {
    auto* cmd = app.add_subcommand(
        "witness", "QFI separability witness for local generator sums");
    auto flags = std::make_shared<CommonFlags>();
    auto n = std::make_shared<int>(4);
    auto input = std::make_shared<std::string>("css-x");
    auto axis = std::make_shared<std::string>("z");
    auto expect = std::make_shared<std::string>("");
    auto chi = std::make_shared<double>(1.0);
    auto t = std::make_shared<double>(0.0);
    cmd->add_option("--N", *n, "number of spins")->check(CLI::Range(1, 12));
    cmd->add_option("--input", *input, "css-x | cat | oat | random-sector");
    cmd->add_option("--generator-axis", *axis, "local generator axis");
    cmd->add_option("--expect", *expect, "entangled|separable (sets pass)");
    cmd->add_option("--chi", *chi, "oat twisting strength");
    cmd->add_option("--t", *t, "oat evolution time");
    flags->attach(cmd);
    cmd->callback([&exit_code, flags, n, input, axis, expect, chi, t] {
      json prep = {{"kind", *input}};
      if (*input == "oat") {
        prep["chi"] = *chi;
        prep["t"] = *t;
      }
      json config = {{"kind", "witness"},
                     {"name", "witness"},
                     {"system", {{"type", "spins"}, {"n", *n}}},
                     {"preparation", prep},
                     {"generator", {{"axis", *axis}}}};
      if (!expect->empty()) config["expect"] = *expect;
      flags->fill(config);
      exit_code = dispatch(config, *flags);
    });
  }

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
