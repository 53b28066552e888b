#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "symproj/symmetry.hpp"

namespace symproj {

/// Thrown by signal_to_noise when Var(O)_theta vanishes: the ratio is
/// undefined there, which is distinct from being zero.
class ZeroVarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quantum Fisher information
///   F_Q(G) = 2 sum_{nm} (p_n - p_m)^2 / (p_n + p_m) |<n|G|m>|^2
/// over the eigensystem {p_n, |n>} of rho. Pairs with p_n + p_m <= eig_cutoff
/// are dropped (both populations numerically zero: 0/0 noise).
double qfi(const DensityOperator& rho, const Operator& g,
           double eig_cutoff = 1e-12);

/// Squared signal-to-noise ratio of observable O at phase theta,
///   xi_O^{-2} = |<[O,G]>_theta|^2 / Var(O)_theta
/// on rho_theta = e^{-i theta G} rho e^{+i theta G}. The derivative identity
/// i d<O>/dtheta = <[O,G]> is used directly; no numerical differentiation.
/// Throws ZeroVarianceError when the variance vanishes.
double signal_to_noise(const DensityOperator& rho, const Operator& o,
                       const Operator& g, double theta);

struct SensitivityCurve {
  std::vector<double> thetas;
  std::vector<double> p_values;   // <P>_theta per grid point
  double curvature_estimate;      // (1 - <P>_theta)/theta^2 at smallest theta>0
};

/// Exact <P>_theta over a theta grid, plus the small-angle curvature that
/// estimates <G^2>. Requires the theorem hypotheses at 1e-10 and throws
/// std::invalid_argument with the residuals otherwise.
SensitivityCurve projector_sensitivity_curve(const DensityOperator& rho,
                                             const SectorProjector& p,
                                             const Operator& g,
                                             const std::vector<double>& thetas);

struct TheoremReport {
  double qfi = 0.0;          // Eq.-1 spectral value
  double four_g2 = 0.0;      // 4 <G^2>
  double four_var = 0.0;     // 4 Var(G)
  double xi_p_inv2 = 0.0;    // finite-theta estimate, Richardson extrapolated
  double sector_residual = 0.0;
  double offdiag_residual = 0.0;
  double tol = 0.0;
  double xi_tol = 0.0;
  bool hypotheses_hold = false;
  bool pass = false;
};

/// Verifies the equality chain xi_P^{-2} = 4<G^2> = F_Q(G) for a state in
/// the sector of P and a generator off-diagonal with respect to it. All four
/// quantities are computed independently: F_Q from the spectral formula,
/// xi_P^{-2} from a small-theta evaluation of the signal-to-noise ratio at
/// theta* = 1e-4 (Richardson extrapolated from theta*, theta*/2), 4<G^2> and
/// 4 Var(G) directly. Hypothesis failures land in the report, never throw.
/// The xi leg carries its own tolerance: the finite-theta estimator bottoms
/// out near 1e-8 relative (Var(P) ~ theta^2 against double rounding), so it
/// cannot be held to the 1e-8 chain tolerance.
TheoremReport check_theorem(const DensityOperator& rho,
                            const SectorProjector& p, const Operator& g,
                            double tol = 1e-8, double xi_tol = 1e-6);

/// One term G_i of a local generator sum G = sum_i G_i, acting on a single
/// spin-1/2 site.
struct LocalGenerator {
  int site;
  Eigen::Matrix2cd m;
};

struct WitnessReport {
  double qfi = 0.0;
  double bound = 0.0;          // 4 sum_i Var(G_i)
  bool entangled = false;      // qfi > bound + 1e-8
  double g2 = 0.0;             // <G^2>
  double sum_local_g2 = 0.0;   // sum_i <G_i^2>: the reduced sector form
};

/// Entanglement witness from the QFI: separable states obey
/// F_Q(G) <= 4 sum_i Var(G_i). Each G_i must be Hermitian and single-site.
WitnessReport separability_witness(const DensityOperator& rho,
                                   const std::vector<LocalGenerator>& locals);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace symproj
