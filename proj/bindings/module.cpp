// Python bindings for the main operations. Matrices cross the boundary as
// numpy arrays; the labeled-space bookkeeping stays on the C++ side, with
// the space inferred from the matrix dimension (2^k: spin register,
// otherwise the (dim-1)-spin symmetric sector).

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <symproj/bosons.hpp>
#include <symproj/circuit.hpp>
#include <symproj/metrology.hpp>
#include <symproj/scenario.hpp>
#include <symproj/spins.hpp>

namespace py = pybind11;
using namespace symproj;

namespace {

HilbertSpace space_for_dimension(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("empty matrix");
  if ((dim & (dim - 1)) == 0) {
    int bits = 0;
    for (Eigen::Index d = dim; d > 1; d >>= 1) ++bits;
    if (bits <= HilbertSpace::kMaxRegisterSites)
      return HilbertSpace::spin_register(bits == 0 ? 1 : bits);
  }
  return HilbertSpace::dicke_sector(static_cast<int>(dim) - 1);
}

DensityOperator density_from(const Matrix& rho) {
  return DensityOperator(Operator(space_for_dimension(rho.rows()), rho));
}

Operator hermitian_from(const Matrix& m) {
  return Operator::hermitian(space_for_dimension(m.rows()), m);
}

SectorProjector projector_from(const Matrix& p, const std::string& kind,
                               double value) {
  SectorKind sector_kind = SectorKind::ParityX;
  if (kind == "parity-x") sector_kind = SectorKind::ParityX;
  else if (kind == "parity-z") sector_kind = SectorKind::ParityZ;
  else if (kind == "magnetization") sector_kind = SectorKind::Magnetization;
  else if (kind == "boson-number") sector_kind = SectorKind::BosonNumber;
  else throw std::invalid_argument("unknown sector kind '" + kind + "'");
  return SectorProjector(
      Operator::hermitian(space_for_dimension(p.rows()), p),
      {sector_kind, value});
}

py::dict report_to_dict(const TheoremReport& report) {
  py::dict out;
  out["qfi"] = report.qfi;
  out["four_g2"] = report.four_g2;
  out["four_var"] = report.four_var;
  out["xi_p_inv2"] = report.xi_p_inv2;
  out["sector_residual"] = report.sector_residual;
  out["offdiag_residual"] = report.offdiag_residual;
  out["hypotheses_hold"] = report.hypotheses_hold;
  out["pass"] = report.pass;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symmetry-projection metrology: dense exact-diagonalization core";

  // operators
  m.def(
      "pauli",
      [](const std::string& axis, int site, int n) {
        return pauli_on_site(axis_from_string(axis), site, n).matrix();
      },
      py::arg("axis"), py::arg("site"), py::arg("n"),
      "Pauli matrix on one site of an N-spin register.");
  m.def(
      "collective_spin",
      [](const std::string& axis, int n) {
        return symproj::collective_spin(axis_from_string(axis), n).matrix();
      },
      py::arg("axis"), py::arg("n"),
      "Collective spin J^a = sum_i sigma_i^a / 2.");
  m.def(
      "coherent_spin_state",
      [](const std::string& axis, int n, const std::string& representation) {
        const Representation rep = representation == "dicke"
                                       ? Representation::Dicke
                                       : Representation::Full;
        return symproj::coherent_spin_state(axis_from_string(axis), n, rep)
            .matrix();
      },
      py::arg("axis"), py::arg("n"), py::arg("representation") = "full",
      "Density matrix of the polarized product state.");

  // symmetry
  m.def(
      "parity_projector",
      [](const std::string& axis, int sector, int n) {
        return symproj::parity_projector(axis_from_string(axis), sector, n)
            .matrix();
      },
      py::arg("axis"), py::arg("sector"), py::arg("n"));
  m.def(
      "magnetization_projector",
      [](double mval, int n) {
        return symproj::magnetization_projector(mval, n).matrix();
      },
      py::arg("m"), py::arg("n"));
  m.def(
      "random_density_in_sector",
      [](const Matrix& p, const std::string& kind, double value,
         std::int64_t rank, std::uint64_t seed) {
        return symproj::random_density_in_sector(
                   projector_from(p, kind, value), rank, seed)
            .matrix();
      },
      py::arg("projector"), py::arg("kind"), py::arg("value"), py::arg("rank"),
      py::arg("seed"),
      "Seeded mixed state supported in the sector of the projector.");
  m.def(
      "is_supported_in_sector",
      [](const Matrix& rho, const Matrix& p, double tol) {
        const SupportCheck check = symproj::is_supported_in_sector(
            density_from(rho), projector_from(p, "parity-x", 0.0), tol);
        return py::make_tuple(check.supported, check.residual);
      },
      py::arg("rho"), py::arg("projector"), py::arg("tol") = 1e-10);
  m.def(
      "is_off_diagonal",
      [](const Matrix& g, const Matrix& p, double tol) {
        const OffDiagonalCheck check = symproj::is_off_diagonal(
            hermitian_from(g), projector_from(p, "parity-x", 0.0), tol);
        return py::make_tuple(check.off_diagonal, check.diagonal_residual,
                              check.completeness_residual);
      },
      py::arg("g"), py::arg("projector"), py::arg("tol") = 1e-10);

  // metrology
  m.def(
      "qfi",
      [](const Matrix& rho, const Matrix& g, double eig_cutoff) {
        return symproj::qfi(density_from(rho), hermitian_from(g), eig_cutoff);
      },
      py::arg("rho"), py::arg("g"), py::arg("eig_cutoff") = 1e-12,
      "Quantum Fisher information from the spectral formula.");
  m.def(
      "signal_to_noise",
      [](const Matrix& rho, const Matrix& o, const Matrix& g, double theta) {
        return symproj::signal_to_noise(density_from(rho), hermitian_from(o),
                                        hermitian_from(g), theta);
      },
      py::arg("rho"), py::arg("o"), py::arg("g"), py::arg("theta") = 0.0);
  m.def(
      "check_theorem",
      [](const Matrix& rho, const Matrix& p, const Matrix& g, double tol,
         double xi_tol) {
        return report_to_dict(symproj::check_theorem(
            density_from(rho), projector_from(p, "parity-x", 0.0),
            hermitian_from(g), tol, xi_tol));
      },
      py::arg("rho"), py::arg("projector"), py::arg("g"),
      py::arg("tol") = 1e-8, py::arg("xi_tol") = 1e-6,
      "Full equality-chain verification; returns a dict report.");
  m.def(
      "evolve",
      [](const Matrix& rho, const Matrix& h, double t) {
        return symproj::evolve(density_from(rho), hermitian_from(h), t)
            .matrix();
      },
      py::arg("rho"), py::arg("h"), py::arg("t"));

  // spins
  m.def(
      "dicke_operators",
      [](int n) {
        const DickeOperators ops = symproj::dicke_operators(n);
        return py::make_tuple(ops.jx.matrix(), ops.jy.matrix(),
                              ops.jz.matrix());
      },
      py::arg("n"), "(J^x, J^y, J^z) on the symmetric sector, j = N/2.");
  m.def(
      "oat_evolve",
      [](int n, double chi, double t) {
        return symproj::oat_evolve(n, chi, t).matrix();
      },
      py::arg("n"), py::arg("chi"), py::arg("t"),
      "One-axis-twisting state in the Dicke representation.");
  m.def(
      "ising_hamiltonian",
      [](int n, double j, double omega) {
        return build_hamiltonian(
                   HamiltonianSpec::ising(n, chain_couplings(n, j), omega))
            .matrix();
      },
      py::arg("n"), py::arg("j") = 1.0, py::arg("omega") = 0.0,
      "Nearest-neighbor transverse-field Ising chain.");

  // circuit
  m.def(
      "cat_state",
      [](int n, int sign) { return symproj::cat_state(n, sign).matrix(); },
      py::arg("n"), py::arg("sign") = 1);
  m.def(
      "parity_extraction",
      [](const Matrix& rho) {
        const ParityExtraction result =
            symproj::parity_extraction(density_from(rho));
        py::dict out;
        out["p_even"] = result.even.probability;
        out["p_odd"] = result.odd.probability;
        if (result.even.post_state)
          out["even"] = result.even.post_state->matrix();
        if (result.odd.post_state)
          out["odd"] = result.odd.post_state->matrix();
        return out;
      },
      py::arg("rho"),
      "Ancilla parity circuit: probabilities and post-selected states.");

  // bosons
  m.def(
      "separable_bound",
      [](int n, double n_a, double n_b) {
        return symproj::separable_bound(n, n_a, n_b);
      },
      py::arg("n"), py::arg("n_a"), py::arg("n_b"));
  m.def(
      "qfi_closed_form",
      [](const Matrix& spdm_a, const Matrix& spdm_b) {
        return symproj::qfi_closed_form(Spdm(spdm_a), Spdm(spdm_b));
      },
      py::arg("spdm_a"), py::arg("spdm_b"));
  m.def(
      "bec_case",
      [](int n, int n_a, int n_b, bool ideal) {
        const FockUniverse u(n, n_a, n_b);
        const Operator g = tunneling_generator(u);
        Vector psi;
        if (ideal) {
          psi = ideal_bec_vector(u);
        } else {
          std::vector<int> occ_a(n, 0), occ_b(n, 0);
          for (int k = 0; k < n_a; ++k) occ_a[k % n] += 1;
          for (int k = 0; k < n_b; ++k) occ_b[k % n] += 1;
          psi = fock_product_vector(u, occ_a, occ_b);
        }
        const Spdm a = spdm_a(u, psi);
        const Spdm b = spdm_b(u, psi);
        const CoherenceWitness witness = coherence_witness(a, n_b, n);
        py::dict out;
        out["universe_dim"] = u.dimension();
        out["qfi_closed"] = qfi_closed_form(a, b);
        out["qfi_brute"] = brute_force_qfi(u, psi, g);
        out["f_sep"] = separable_bound(n, static_cast<double>(n_a) / n,
                                       static_cast<double>(n_b) / n);
        out["coherence_statistic"] = witness.statistic;
        return out;
      },
      py::arg("n"), py::arg("n_a"), py::arg("n_b"), py::arg("ideal") = true,
      "Closed form vs brute-force QFI for one (N, N_A, N_B) configuration.");

  // scenario runner
  m.def(
      "run_scenario_json",
      [](const std::string& config_text) {
        const auto config = nlohmann::json::parse(config_text);
        const Scenario scenario = Scenario::parse(config);
        const RunResult result = run_scenario(scenario, workers_from_env());
        return summary_json(scenario, result).dump();
      },
      py::arg("config_json"),
      "Run a scenario from a JSON string; returns the summary as JSON.");

  m.attr("__version__") = "0.1.0";
}
