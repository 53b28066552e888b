#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "symproj/metrology.hpp"

namespace symproj {

enum class ModelFamily { Ising, XY, XXZ, Field, OAT, CustomXYZ };

ModelFamily family_from_string(const std::string& s);
std::string to_string(ModelFamily f);

/// Symbolic spin-model description compiled to a dense operator by
/// build_hamiltonian. Couplings are explicit symmetric zero-diagonal
/// matrices, one per axis; the family constrains which may be nonzero:
///   ising: J^z only, plus a transverse field
///   xy:    J^x = J^y, no J^z
///   xxz:   J^x = J^y, J^z = -J^x
///   field: fields only
///   oat:   chi J_z^2 / N
struct HamiltonianSpec {
  ModelFamily family = ModelFamily::CustomXYZ;
  int n_sites = 0;
  Eigen::MatrixXd jx, jy, jz;   // symmetric, zero diagonal
  Eigen::VectorXd omega;        // per-site transverse field
  double chi = 0.0;             // OAT strength

  static HamiltonianSpec ising(int n, Eigen::MatrixXd jz, double omega);
  static HamiltonianSpec xy(int n, Eigen::MatrixXd j);
  static HamiltonianSpec xxz(int n, Eigen::MatrixXd j);
  static HamiltonianSpec field(int n, Eigen::VectorXd omega);
  static HamiltonianSpec oat(int n, double chi);
  static HamiltonianSpec custom_xyz(int n, Eigen::MatrixXd jx,
                                    Eigen::MatrixXd jy, Eigen::MatrixXd jz,
                                    Eigen::VectorXd omega);

  void validate() const;
};

/// Nearest-neighbor open chain, J on each bond.
Eigen::MatrixXd chain_couplings(int n, double j);
/// Power-law couplings J / |i-j|^alpha on an open chain.
Eigen::MatrixXd power_law_couplings(int n, double j, double alpha);

/// Compiles a spec to the dense Hamiltonian
///   H = -sum_{i<j} sum_a J_ij^a sigma_i^a sigma_j^a - sum_i Omega_i sigma_i^x
/// (OAT: chi J_z^2 / N). Hermitian on the 2^N register.
Operator build_hamiltonian(const HamiltonianSpec& spec);

enum class Representation { Full, Dicke };

/// Pure product state of N spins polarized along the axis, either on the
/// full register or as its image in the (N+1)-dim symmetric sector.
DensityOperator coherent_spin_state(Axis axis, int n_sites,
                                    Representation rep = Representation::Full);

struct DickeOperators {
  Operator jx, jy, jz;
};

/// Angular-momentum matrices for j = N/2 on the (N+1)-dim symmetric sector,
/// basis ordered m = +j ... -j.
DickeOperators dicke_operators(int n_sites);

/// prod_i sigma_i^x restricted to the symmetric sector, computed as the
/// rotation e^{i pi (j - J^x)}.
Operator dicke_parity_x(int n_sites);

/// Even/odd x-parity projector on the Dicke sector.
SectorProjector dicke_parity_projector(int n_sites, int sector);

/// One-axis twisting e^{-i t chi J_z^2 / N} applied to the coherent state
/// along initial_axis, in the Dicke representation.
DensityOperator oat_evolve(int n_sites, double chi, double t,
                           Axis initial_axis = Axis::X);

/// Piecewise-linear field profile over a fixed interaction Hamiltonian.
/// Omega(t) is evaluated at step midpoints.
struct RampSchedule {
  double duration = 0.0;
  int steps = 1;
  std::vector<std::pair<double, double>> omega_profile;  // (time, Omega) knots
  HamiltonianSpec interaction;

  static RampSchedule linear(HamiltonianSpec interaction, double omega_from,
                             double omega_to, double duration, int steps);

  double omega_at(double t) const;
  void validate() const;
};

struct RampDiagnostics {
  std::vector<double> times;
  std::vector<double> omegas;
  std::vector<double> parity;             // <P_x>(t)
  std::vector<double> four_jz2;           // 4 <(J^z)^2>(t)
  std::vector<double> energy;             // <H(t)> at step end
  std::vector<double> ground_energy;      // instantaneous ground energy
  double final_gs_fidelity = 0.0;         // overlap with the final even-sector
                                          // ground state
};

struct RampResult {
  DensityOperator final_state;
  RampDiagnostics diagnostics;
};

/// Quasi-adiabatic sweep: per step, exact evolution under
/// H_int + H_field(Omega(t_mid)) for dt = T/steps. Unconditionally unitary
/// and parity-preserving; no adaptive stepping.
RampResult quasi_adiabatic_ramp(const RampSchedule& schedule,
                                const DensityOperator& initial);

/// Dephasing in the eigenbasis of H: rho -> sum_n Pi_n rho Pi_n with
/// eigenprojectors Pi_n; adjacent eigenvalues within gap_tol share a
/// projector so exact degeneracies stay well-defined.
DensityOperator diagonal_ensemble(const DensityOperator& rho,
                                  const Operator& h_final,
                                  double gap_tol = 1e-10);

/// Same dephasing for a state supported in the sector of P when H conserves
/// that sector: every eigenprojector then commutes with P, so the whole
/// operation restricts to the sector block of H. Working in the restricted
/// block keeps the output sector-exact even when quasi-degenerate partner
/// levels across sectors would contaminate the dense eigenvectors.
DensityOperator diagonal_ensemble(const DensityOperator& rho,
                                  const Operator& h_final,
                                  const SectorProjector& p,
                                  double gap_tol = 1e-10);

/// Ground state of H restricted to the range of P.
Vector sector_ground_state(const Operator& h, const SectorProjector& p);

/// Minimum of Var(cos(phi) A + sin(phi) B) over phi, with the minimizing
/// angle.
std::pair<double, double> minimal_quadrature_variance(const DensityOperator& rho,
                                                      const Operator& a,
                                                      const Operator& b);

/// Squeezing of the optimal quadrature in the plane orthogonal to the mean
/// spin, normalized to the coherent-state value:
/// xi^2 = min_phi Var(J_phi) / (N/4). Below 1 means squeezed.
double squeezing_parameter(const DensityOperator& rho, const Operator& jy,
                           const Operator& jz, int n_sites);

}  // namespace symproj
