#include "symproj/scenario.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "symproj/bosons.hpp"
#include "symproj/circuit.hpp"
#include "symproj/metrology.hpp"
#include "symproj/spins.hpp"

namespace symproj {

namespace {

using nlohmann::json;

std::string format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", v);
  return buffer;
}

std::vector<double> parse_sweep_values(const json& sweep) {
  if (sweep.contains("values"))
    return sweep.at("values").get<std::vector<double>>();
  if (sweep.contains("count")) {
    const int count = sweep.at("count").get<int>();
    if (count < 1) throw std::invalid_argument("sweep count must be >= 1");
    std::vector<double> values(count);
    for (int k = 0; k < count; ++k) values[k] = k;
    return values;
  }
  if (sweep.contains("from")) {
    const double from = sweep.at("from").get<double>();
    const double to = sweep.at("to").get<double>();
    const int points = sweep.at("points").get<int>();
    if (points < 1) throw std::invalid_argument("sweep needs >= 1 point");
    std::vector<double> values(points);
    for (int k = 0; k < points; ++k)
      values[k] = points == 1
                      ? from
                      : from + (to - from) * static_cast<double>(k) /
                                   static_cast<double>(points - 1);
    return values;
  }
  throw std::invalid_argument("sweep needs values, count, or from/to/points");
}

int system_int(const json& config, const char* field) {
  return config.at("system").at(field).get<int>();
}

void require_system_type(const json& config, const std::string& expected) {
  const std::string type =
      config.at("system").at("type").get<std::string>();
  if (type != expected)
    throw std::invalid_argument("this scenario kind needs system type '" +
                                expected + "', got '" + type + "'");
}

Eigen::MatrixXd couplings_from_json(const json& j, int n) {
  const std::string kind = j.value("kind", "chain");
  if (kind == "chain") return chain_couplings(n, j.value("j", 1.0));
  if (kind == "power-law")
    return power_law_couplings(n, j.value("j", 1.0), j.at("alpha").get<double>());
  if (kind == "matrix") {
    const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(n, n);
    if (static_cast<int>(rows.size()) != n)
      throw std::invalid_argument("coupling matrix must be N x N");
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows[r].size()) != n)
        throw std::invalid_argument("coupling matrix must be N x N");
      for (int c = 0; c < n; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }
  throw std::invalid_argument("unknown couplings kind '" + kind + "'");
}

HamiltonianSpec interaction_from_json(const json& model, int n) {
  const std::string family = model.at("family").get<std::string>();
  const Eigen::MatrixXd j =
      couplings_from_json(model.value("couplings", json{{"kind", "chain"}}), n);
  if (family == "ising") return HamiltonianSpec::ising(n, j, 0.0);
  if (family == "xy") return HamiltonianSpec::xy(n, j);
  if (family == "xxz") return HamiltonianSpec::xxz(n, j);
  throw std::invalid_argument("ramp model family must be ising, xy, or xxz");
}

struct PointOutcome {
  std::vector<double> columns;
  bool pass = true;
};

using PointFunction =
    std::function<PointOutcome(std::size_t index, double value,
                               std::uint64_t point_seed)>;

struct KindPlan {
  std::vector<std::string> columns;
  PointFunction evaluate;        // null for trajectory kinds
  bool sequential = false;       // ramp: one trajectory, rows precomputed
  std::vector<PointOutcome> precomputed;
  std::vector<double> values_override;  // sequential kinds define the grid
  json summary_extra;
  bool extra_pass = true;  // summary-level checks fold into all_pass
};

// ---------------------------------------------------------------------------
// theorem-check

KindPlan plan_theorem_check(const Scenario& s) {
  require_system_type(s.config, "spins");
  const int n = system_int(s.config, "n");
  const json projector = s.config.value("projector", json::object());
  const std::string pkind = projector.value("kind", "parity-x");
  const std::string sector = projector.value("sector", "even");
  const int sign = sector == "even" ? +1 : -1;
  SectorProjector p = pkind == "parity-z"
                          ? parity_projector(Axis::Z, sign, n)
                          : parity_projector(Axis::X, sign, n);
  const Axis axis = axis_from_string(
      s.config.value("generator", json::object()).value("axis", "y"));
  Operator g = collective_spin(axis, n);
  const std::int64_t rank_request =
      s.config.value("preparation", json::object()).value("rank", 0);
  const std::int64_t sector_rank = p.rank();
  const Scenario::Tolerances tol = s.tol;

  KindPlan plan;
  plan.columns = {"rank",       "qfi",
                  "four_g2",    "four_var",
                  "xi_p_inv2",  "sector_residual",
                  "offdiag_residual"};
  plan.evaluate = [p = std::move(p), g = std::move(g), rank_request,
                   sector_rank, tol](std::size_t index, double,
                                     std::uint64_t point_seed) {
    const std::int64_t rank =
        rank_request > 0
            ? rank_request
            : 1 + static_cast<std::int64_t>(index) % sector_rank;
    const DensityOperator rho = random_density_in_sector(p, rank, point_seed);
    const TheoremReport report = check_theorem(rho, p, g, tol.chain, tol.xi);
    const double chain_gap =
        std::abs(report.qfi - report.four_g2) / std::max(1.0, report.four_g2);
    const double xi_gap =
        std::abs(report.xi_p_inv2 - report.qfi) / std::max(1.0, report.qfi);
    PointOutcome out;
    out.columns = {static_cast<double>(rank), report.qfi,
                   report.four_g2,            report.four_var,
                   report.xi_p_inv2,          report.sector_residual,
                   report.offdiag_residual};
    out.pass = report.hypotheses_hold && chain_gap <= tol.chain &&
               xi_gap <= tol.xi;
    return out;
  };
  return plan;
}

// ---------------------------------------------------------------------------
// oat-sweep

KindPlan plan_oat_sweep(const Scenario& s) {
  require_system_type(s.config, "dicke");
  const int n = system_int(s.config, "n");
  const double chi = s.config.value("chi", 1.0);
  const Axis axis = axis_from_string(
      s.config.value("generator", json::object()).value("axis", "y"));
  const DickeOperators ops = dicke_operators(n);
  const Operator h = Operator::hermitian(
      ops.jz.space(), (chi / n) * (ops.jz.matrix() * ops.jz.matrix()));
  auto evolver = std::make_shared<Evolver>(h);
  auto parity = std::make_shared<Operator>(dicke_parity_x(n));
  auto gen = std::make_shared<Operator>(axis == Axis::Y   ? ops.jy
                                        : axis == Axis::X ? ops.jx
                                                          : ops.jz);
  auto jx = std::make_shared<Operator>(ops.jx);
  auto jy = std::make_shared<Operator>(ops.jy);
  auto jz = std::make_shared<Operator>(ops.jz);
  const DensityOperator initial =
      coherent_spin_state(Axis::X, n, Representation::Dicke);
  const Scenario::Tolerances tol = s.tol;

  KindPlan plan;
  plan.columns = {"parity_deviation", "fq", "four_g2", "fq_x", "xi2"};
  plan.evaluate = [=](std::size_t, double t, std::uint64_t) {
    const DensityOperator rho = evolver->state(initial, t);
    const double parity_dev =
        std::abs(expectation(rho, *parity).real() - 1.0);
    const double fq = qfi(rho, *gen);
    const double four_g2 =
        4.0 * (rho.matrix() * gen->matrix() * gen->matrix()).trace().real();
    const double fq_x = qfi(rho, *jx);
    const double xi2 = squeezing_parameter(rho, *jy, *jz, n);
    PointOutcome out;
    out.columns = {parity_dev, fq, four_g2, fq_x, xi2};
    out.pass = parity_dev <= tol.parity &&
               std::abs(fq - four_g2) / std::max(1.0, four_g2) <= tol.chain;
    return out;
  };
  return plan;
}

// ---------------------------------------------------------------------------
// ramp (sequential trajectory, rows precomputed)

KindPlan plan_ramp(const Scenario& s) {
  require_system_type(s.config, "spins");
  const int n = system_int(s.config, "n");
  const HamiltonianSpec interaction =
      interaction_from_json(s.config.at("model"), n);
  const double omega_from = s.config.at("omega_from").get<double>();
  const double omega_to = s.config.at("omega_to").get<double>();
  const double duration = s.config.at("duration").get<double>();
  const int steps = s.config.value("steps", 100);
  const RampSchedule schedule = RampSchedule::linear(
      interaction, omega_from, omega_to, duration, steps);

  const DensityOperator initial = coherent_spin_state(Axis::X, n);
  const RampResult result = quasi_adiabatic_ramp(schedule, initial);
  const Scenario::Tolerances tol = s.tol;

  KindPlan plan;
  plan.sequential = true;
  plan.columns = {"omega",         "parity", "four_jz2",
                  "energy",        "ground_energy", "energy_density"};
  const auto& d = result.diagnostics;
  for (std::size_t k = 0; k < d.times.size(); ++k) {
    PointOutcome out;
    out.columns = {d.omegas[k],
                   d.parity[k],
                   d.four_jz2[k],
                   d.energy[k],
                   d.ground_energy[k],
                   (d.energy[k] - d.ground_energy[k]) / n};
    out.pass = std::abs(d.parity[k] - 1.0) <= tol.parity;
    plan.precomputed.push_back(std::move(out));
    plan.values_override.push_back(d.times[k]);
  }

  // The headline mixed-state check: dephase the final state in the final
  // Hamiltonian's eigenbasis and verify the equality chain there.
  const double omega_final = schedule.omega_at(duration);
  const Operator h_final =
      build_hamiltonian(interaction) +
      build_hamiltonian(HamiltonianSpec::field(
          n, Eigen::VectorXd::Constant(n, omega_final)));
  const Axis gen_axis = axis_from_string(
      s.config.value("generator", json::object()).value("axis", "z"));
  const SectorProjector p_even = parity_projector(Axis::X, +1, n);
  const DensityOperator de =
      diagonal_ensemble(result.final_state, h_final, p_even);
  const TheoremReport de_report = check_theorem(
      de, p_even, collective_spin(gen_axis, n), tol.chain, tol.xi);

  plan.summary_extra = {
      {"final_gs_fidelity", result.diagnostics.final_gs_fidelity},
      {"final_purity", result.final_state.purity()},
      {"diagonal_ensemble",
       {{"purity", de.purity()},
        {"qfi", de_report.qfi},
        {"four_g2", de_report.four_g2},
        {"xi_p_inv2", de_report.xi_p_inv2},
        {"sector_residual", de_report.sector_residual},
        {"offdiag_residual", de_report.offdiag_residual},
        {"pass", de_report.pass}}}};
  plan.extra_pass = de_report.pass;
  return plan;
}

// ---------------------------------------------------------------------------
// bec

KindPlan plan_bec(const Scenario& s) {
  require_system_type(s.config, "bosons");
  const int base_n = system_int(s.config, "n");
  const int n_a = system_int(s.config, "n_a");
  const int n_b = system_int(s.config, "n_b");
  const std::string prep =
      s.config.value("preparation", json::object()).value("kind", "ideal");
  if (prep != "ideal" && prep != "localized")
    throw std::invalid_argument("bec preparation must be ideal or localized");
  const Scenario::Tolerances tol = s.tol;
  const std::string parameter = s.sweep_parameter;
  if (parameter != "index" && parameter != "n")
    throw std::invalid_argument("bec sweeps over 'index' or 'n'");

  KindPlan plan;
  plan.columns = {"universe_dim",        "qfi_closed",
                  "qfi_brute",           "f_sep",
                  "coherence_statistic", "entangled_vs_fsep",
                  "coherence_entangled"};
  plan.evaluate = [=](std::size_t, double value, std::uint64_t) {
    const int n = parameter == "n" ? static_cast<int>(value) : base_n;
    const FockUniverse u(n, n_a, n_b);
    const Operator g = tunneling_generator(u);
    Vector psi;
    if (prep == "ideal") {
      psi = ideal_bec_vector(u);
    } else {
      std::vector<int> occ_a(n, 0), occ_b(n, 0);
      for (int k = 0; k < n_a; ++k) occ_a[k % n] += 1;
      for (int k = 0; k < n_b; ++k) occ_b[k % n] += 1;
      psi = fock_product_vector(u, occ_a, occ_b);
    }
    const Spdm a = spdm_a(u, psi);
    const Spdm b = spdm_b(u, psi);
    const double closed = qfi_closed_form(a, b);
    const double brute = brute_force_qfi(u, psi, g);
    const double f_sep = separable_bound(
        n, static_cast<double>(n_a) / n, static_cast<double>(n_b) / n);
    const CoherenceWitness witness = coherence_witness(a, n_b, n);
    PointOutcome out;
    out.columns = {static_cast<double>(u.dimension()),
                   closed,
                   brute,
                   f_sep,
                   witness.statistic,
                   closed > f_sep + 1e-8 ? 1.0 : 0.0,
                   witness.entangled ? 1.0 : 0.0};
    out.pass = std::abs(closed - brute) / std::max(1.0, closed) <= tol.chain;
    return out;
  };
  return plan;
}

// ---------------------------------------------------------------------------
// circuit

KindPlan plan_circuit(const Scenario& s) {
  require_system_type(s.config, "spins");
  const int n = system_int(s.config, "n");
  const json input = s.config.value("input", json{{"kind", "css-x"}});
  const std::string input_kind = input.value("kind", "css-x");
  const std::int64_t rank = input.value("rank", 2);
  const Scenario::Tolerances tol = s.tol;

  const Operator jx = collective_spin(Axis::X, n);
  const SectorProjector p_even = parity_projector(Axis::Z, +1, n);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  KindPlan plan;
  plan.columns = {"p_even",  "p_odd",   "qfi_even_jx",
                  "qfi_odd_jx", "fid_even", "fid_odd",
                  "max_corr_residual"};
  plan.evaluate = [=](std::size_t, double, std::uint64_t point_seed) {
    DensityOperator rho = [&] {
      if (input_kind == "css-x") return coherent_spin_state(Axis::X, n);
      if (input_kind == "cat") return cat_state(n, +1);
      if (input_kind == "classical-corr") {
        // Equal mixture of all-right and all-left product states along x.
        const Matrix mix =
            0.5 * coherent_spin_state(Axis::X, n).matrix() +
            0.5 * [&] {
              Vector left(1 << n);
              const double amp = std::pow(2.0, -0.5 * n);
              for (std::int64_t b = 0; b < (std::int64_t{1} << n); ++b) {
                const int ones =
                    std::popcount(static_cast<std::uint64_t>(b));
                left[b] = amp * ((ones % 2 == 0) ? 1.0 : -1.0);
              }
              return Matrix(left * left.adjoint());
            }();
        return DensityOperator::from_psd(
            Operator(HilbertSpace::spin_register(n), mix));
      }
      if (input_kind == "random") {
        // Full-rank random state: project with the identity "sector".
        const HilbertSpace space = HilbertSpace::spin_register(n);
        SectorProjector full(
            Operator::identity(space),
            {SectorKind::Magnetization, 0.0});
        return random_density_in_sector(full, rank, point_seed);
      }
      throw std::invalid_argument("unknown circuit input '" + input_kind + "'");
    }();

    const ParityExtraction extraction = parity_extraction(rho);
    const SectorSplit split = sector_split(rho, p_even);
    double fid_even = 1.0, fid_odd = 1.0;
    double qfi_even = 0.0, qfi_odd = 0.0;
    if (extraction.even.post_state && split.in_sector) {
      fid_even = fidelity(*extraction.even.post_state, *split.in_sector);
      qfi_even = qfi(*extraction.even.post_state, jx);
    }
    if (extraction.odd.post_state && split.complement) {
      fid_odd = fidelity(*extraction.odd.post_state, *split.complement);
      qfi_odd = qfi(*extraction.odd.post_state, jx);
    }
    double max_residual = 0.0;
    for (const auto& row : correlation_preservation_report(rho, pairs))
      max_residual = std::max(max_residual, row.residual);

    PointOutcome out;
    out.columns = {extraction.even.probability,
                   extraction.odd.probability,
                   qfi_even,
                   qfi_odd,
                   fid_even,
                   fid_odd,
                   max_residual};
    out.pass = fid_even >= 1.0 - tol.hypothesis &&
               fid_odd >= 1.0 - tol.hypothesis &&
               max_residual <= tol.hypothesis;
    return out;
  };
  return plan;
}

// ---------------------------------------------------------------------------
// witness

KindPlan plan_witness(const Scenario& s) {
  require_system_type(s.config, "spins");
  const int n = system_int(s.config, "n");
  const json prep = s.config.value("preparation", json{{"kind", "css-x"}});
  const std::string prep_kind = prep.value("kind", "css-x");
  const Axis axis = axis_from_string(
      s.config.value("generator", json::object()).value("axis", "z"));
  const std::string expect = s.config.value("expect", "");

  Eigen::Matrix2cd half_pauli;
  {
    const Complex i(0.0, 1.0);
    switch (axis) {
      case Axis::X: half_pauli << 0, 0.5, 0.5, 0; break;
      case Axis::Y: half_pauli << 0, -0.5 * i, 0.5 * i, 0; break;
      case Axis::Z: half_pauli << 0.5, 0, 0, -0.5; break;
    }
  }
  std::vector<LocalGenerator> locals;
  for (int site = 0; site < n; ++site) locals.push_back({site, half_pauli});

  KindPlan plan;
  plan.columns = {"qfi", "bound", "ratio", "g2", "sum_local_g2", "entangled"};
  plan.evaluate = [=](std::size_t, double, std::uint64_t point_seed) {
    DensityOperator rho = [&] {
      if (prep_kind == "css-x") return coherent_spin_state(Axis::X, n);
      if (prep_kind == "cat") return cat_state(n, +1);
      if (prep_kind == "oat") {
        const double chi = prep.value("chi", 1.0);
        const double t = prep.at("t").get<double>();
        const Operator h = build_hamiltonian(HamiltonianSpec::oat(n, chi));
        return evolve(coherent_spin_state(Axis::X, n), h, t);
      }
      if (prep_kind == "random-sector") {
        const SectorProjector p = parity_projector(Axis::X, +1, n);
        const std::int64_t rank = prep.value("rank", 2);
        return random_density_in_sector(p, rank, point_seed);
      }
      throw std::invalid_argument("unknown witness preparation '" + prep_kind +
                                  "'");
    }();
    const WitnessReport report = separability_witness(rho, locals);
    PointOutcome out;
    out.columns = {report.qfi,
                   report.bound,
                   report.bound > 0 ? report.qfi / report.bound : 0.0,
                   report.g2,
                   report.sum_local_g2,
                   report.entangled ? 1.0 : 0.0};
    out.pass = expect.empty() ||
               (expect == "entangled" && report.entangled) ||
               (expect == "separable" && !report.entangled);
    return out;
  };
  return plan;
}

KindPlan make_plan(const Scenario& s) {
  if (s.kind == "theorem-check") return plan_theorem_check(s);
  if (s.kind == "oat-sweep") return plan_oat_sweep(s);
  if (s.kind == "ramp") return plan_ramp(s);
  if (s.kind == "bec") return plan_bec(s);
  if (s.kind == "circuit") return plan_circuit(s);
  if (s.kind == "witness") return plan_witness(s);
  throw std::invalid_argument("unknown scenario kind '" + s.kind + "'");
}

}  // namespace

Scenario Scenario::parse(const json& config) {
  Scenario s;
  s.config = config;
  s.kind = config.at("kind").get<std::string>();
  s.name = config.value("name", s.kind);
  s.seed = config.value("seed", std::uint64_t{0});
  const json tol = config.value("tolerances", json::object());
  s.tol.chain = tol.value("chain", 1e-8);
  s.tol.xi = tol.value("xi", 1e-6);
  s.tol.hypothesis = tol.value("hypothesis", 1e-10);
  s.tol.parity = tol.value("parity", 1e-9);
  const json output = config.value("output", json::object());
  s.csv_path = output.value("csv", "");
  s.summary_path = output.value("summary", "");
  if (config.contains("sweep")) {
    s.sweep_parameter = config.at("sweep").value("parameter", "index");
    s.sweep_values = parse_sweep_values(config.at("sweep"));
  } else {
    s.sweep_parameter = "index";
    s.sweep_values = {0.0};
  }
  if (s.sweep_values.empty())
    throw std::invalid_argument("sweep grid is empty");
  if (!config.contains("system"))
    throw std::invalid_argument("scenario needs a system block");
  return s;
}

Scenario Scenario::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json config;
  in >> config;
  return parse(config);
}

RunResult run_scenario(const Scenario& scenario, int workers) {
  KindPlan plan = make_plan(scenario);
  RunResult result;
  result.column_names = plan.columns;
  result.summary_extra = plan.summary_extra;

  const std::vector<double>& values =
      plan.sequential ? plan.values_override : scenario.sweep_values;
  result.rows.resize(values.size());

  auto fill_row = [&](std::size_t index, const PointOutcome& outcome,
                      double walltime) {
    ResultRow& row = result.rows[index];
    row.index = index;
    row.value = values[index];
    row.columns = outcome.columns;
    row.pass = outcome.pass;
    row.seed = scenario.seed ^ static_cast<std::uint64_t>(index);
    row.walltime_s = walltime;
  };

  if (plan.sequential) {
    for (std::size_t k = 0; k < plan.precomputed.size(); ++k)
      fill_row(k, plan.precomputed[k], 0.0);
  } else {
    const int pool = std::max(1, workers);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    auto work = [&] {
      while (true) {
        const std::size_t index = next.fetch_add(1);
        if (index >= values.size() || failed.load()) break;
        const auto start = std::chrono::steady_clock::now();
        try {
          const PointOutcome outcome = plan.evaluate(
              index, values[index],
              scenario.seed ^ static_cast<std::uint64_t>(index));
          const std::chrono::duration<double> elapsed =
              std::chrono::steady_clock::now() - start;
          fill_row(index, outcome, elapsed.count());
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          failed.store(true);
          try {
            throw;
          } catch (const std::exception& e) {
            error_message = e.what();
          } catch (...) {
            error_message = "unknown error";
          }
          break;
        }
      }
    };
    if (pool == 1) {
      work();
    } else {
      std::vector<std::thread> threads;
      for (int k = 0; k < pool; ++k) threads.emplace_back(work);
      for (auto& t : threads) t.join();
    }
    if (failed.load())
      throw std::runtime_error("scenario point failed: " + error_message);
  }

  result.all_pass = plan.extra_pass;
  for (const ResultRow& row : result.rows)
    result.all_pass = result.all_pass && row.pass;
  return result;
}

std::string to_csv(const Scenario& scenario, const RunResult& result) {
  std::string out = "name,parameter,value";
  for (const auto& column : result.column_names) out += "," + column;
  out += ",pass,seed,tol_chain,tol_xi,tol_hypothesis,tol_parity,walltime_s\n";
  for (const ResultRow& row : result.rows) {
    out += scenario.name + "," + scenario.sweep_parameter + "," +
           format_value(row.value);
    for (const double v : row.columns) out += "," + format_value(v);
    out += row.pass ? ",1" : ",0";
    out += "," + std::to_string(row.seed);
    out += "," + format_value(scenario.tol.chain);
    out += "," + format_value(scenario.tol.xi);
    out += "," + format_value(scenario.tol.hypothesis);
    out += "," + format_value(scenario.tol.parity);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), ",%.6e", row.walltime_s);
    out += buffer;
    out += "\n";
  }
  return out;
}

json summary_json(const Scenario& scenario, const RunResult& result) {
  std::size_t failed = 0;
  for (const auto& row : result.rows)
    if (!row.pass) ++failed;
  json j;
  j["name"] = scenario.name;
  j["kind"] = scenario.kind;
  j["seed"] = scenario.seed;
  j["generator"] = "mt19937_64";
  j["tolerances"] = {{"chain", scenario.tol.chain},
                     {"xi", scenario.tol.xi},
                     {"hypothesis", scenario.tol.hypothesis},
                     {"parity", scenario.tol.parity}};
  j["rows"] = result.rows.size();
  j["failed"] = failed;
  j["all_pass"] = result.all_pass;
  j["columns"] = result.column_names;
  if (!result.summary_extra.is_null()) j["extra"] = result.summary_extra;
  j["config"] = scenario.config;
  return j;
}

int run_config(const json& config, bool validate_only, int workers) {
  Scenario scenario;
  try {
    scenario = Scenario::parse(config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (validate_only) {
    std::cout << "config ok: kind=" << scenario.kind
              << " points=" << scenario.sweep_values.size() << "\n";
    return 0;
  }
  RunResult result;
  try {
    result = run_scenario(scenario, workers);
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
  try {
    if (!scenario.csv_path.empty()) {
      std::ofstream out(scenario.csv_path);
      if (!out) throw std::runtime_error("cannot write " + scenario.csv_path);
      out << to_csv(scenario, result);
    }
    if (!scenario.summary_path.empty()) {
      std::ofstream out(scenario.summary_path);
      if (!out)
        throw std::runtime_error("cannot write " + scenario.summary_path);
      out << summary_json(scenario, result).dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 1;
  }
  std::cout << scenario.name << ": " << result.rows.size() << " rows, "
            << (result.all_pass ? "all pass" : "FAILURES") << "\n";
  return result.all_pass ? 0 : 2;
}

int run_config_file(const std::string& path, bool validate_only, int workers) {
  json config;
  try {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    in >> config;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  return run_config(config, validate_only, workers);
}

int workers_from_env() {
  const char* env = std::getenv("SYMPROJ_WORKERS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

}  // namespace symproj
