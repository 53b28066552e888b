#include "symproj/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace symproj {

double qfi(const DensityOperator& rho, const Operator& g, double eig_cutoff) {
  require_same_space(rho.op(), g, "qfi");
  if (g.hermiticity_residual() > 1e-12)
    throw std::invalid_argument("qfi needs a Hermitian generator");
  const SpectralDecomposition eig = spectral_decompose(rho.op());
  const Matrix g_eig =
      eig.eigenvectors.adjoint() * (g.matrix() * eig.eigenvectors);
  const std::int64_t dim = g_eig.rows();
  double total = 0.0;
  for (std::int64_t n = 0; n < dim; ++n) {
    for (std::int64_t m = 0; m < dim; ++m) {
      const double sum = eig.eigenvalues[n] + eig.eigenvalues[m];
      if (sum <= eig_cutoff) continue;
      const double diff = eig.eigenvalues[n] - eig.eigenvalues[m];
      total += (diff * diff / sum) * std::norm(g_eig(n, m));
    }
  }
  return std::max(0.0, 2.0 * total);
}

namespace {

Complex commutator_expectation(const Matrix& rho, const Matrix& o,
                               const Matrix& g) {
  return (rho * (o * g - g * o)).trace();
}

/// Finite-theta signal-to-noise ratio of the projector itself, with the
/// variance written as <P>(1 - <P>) and the small factor 1 - <P> evaluated
/// as Tr(Q rho_theta) so no catastrophic cancellation enters at theta ~ 1e-4.
double projector_snr_at(const DensityOperator& rho_theta, const Matrix& pm,
                        const Matrix& qm, const Matrix& gm) {
  const Matrix& rt = rho_theta.matrix();
  const double p_mean = (rt * pm).trace().real();
  const double q_mean = (rt * qm).trace().real();
  const double var = p_mean * q_mean;
  const double num = std::norm(commutator_expectation(rt, pm, gm));
  if (var < 1e-30 * std::max(1.0, num)) {
    // 0/0: the state is insensitive to the transformation along P; the
    // theta -> 0 ratio degenerates to no signal.
    if (num < 1e-30) return 0.0;
    throw ZeroVarianceError("projector variance vanished at finite theta");
  }
  return num / var;
}

}  // namespace

double signal_to_noise(const DensityOperator& rho, const Operator& o,
                       const Operator& g, double theta) {
  require_same_space(rho.op(), o, "signal_to_noise");
  require_same_space(rho.op(), g, "signal_to_noise");
  if (o.hermiticity_residual() > 1e-12 || g.hermiticity_residual() > 1e-12)
    throw std::invalid_argument("signal_to_noise needs Hermitian O and G");
  const DensityOperator rho_theta =
      theta == 0.0 ? rho : evolve(rho, g, theta);
  const double var = variance(rho_theta, o);
  const double o_scale =
      std::max(1.0, (rho_theta.matrix() * o.matrix() * o.matrix()).trace().real());
  if (var <= 1e-14 * o_scale)
    throw ZeroVarianceError(
        "Var(O)_theta vanishes; the signal-to-noise ratio is undefined");
  const Complex comm =
      commutator_expectation(rho_theta.matrix(), o.matrix(), g.matrix());
  return std::norm(comm) / var;
}

SensitivityCurve projector_sensitivity_curve(
    const DensityOperator& rho, const SectorProjector& p, const Operator& g,
    const std::vector<double>& thetas) {
  const SupportCheck support = is_supported_in_sector(rho, p, 1e-10);
  const OffDiagonalCheck offdiag = is_off_diagonal(g, p, 1e-10);
  if (!support.supported || !offdiag.off_diagonal)
    throw std::invalid_argument(
        "theorem hypotheses violated: sector residual " +
        std::to_string(support.residual) + ", off-diagonal residuals " +
        std::to_string(offdiag.diagonal_residual) + " / " +
        std::to_string(offdiag.completeness_residual));
  if (thetas.empty())
    throw std::invalid_argument("sensitivity curve needs a theta grid");

  const Evolver evolver(g);
  const Matrix q = p.complement_matrix();
  SensitivityCurve curve;
  curve.thetas = thetas;
  curve.p_values.reserve(thetas.size());
  double smallest = 0.0;
  double smallest_deficit = 0.0;
  for (const double theta : thetas) {
    const DensityOperator rho_theta = evolver.state(rho, theta);
    const double deficit = (rho_theta.matrix() * q).trace().real();
    curve.p_values.push_back(1.0 - deficit);
    if (theta != 0.0 && (smallest == 0.0 || std::abs(theta) < smallest)) {
      smallest = std::abs(theta);
      smallest_deficit = deficit;
    }
  }
  if (smallest == 0.0)
    throw std::invalid_argument("curvature needs a nonzero theta in the grid");
  curve.curvature_estimate = smallest_deficit / (smallest * smallest);
  return curve;
}

TheoremReport check_theorem(const DensityOperator& rho,
                            const SectorProjector& p, const Operator& g,
                            double tol, double xi_tol) {
  require_same_space(rho.op(), p.op(), "check_theorem");
  require_same_space(rho.op(), g, "check_theorem");

  TheoremReport report;
  report.tol = tol;
  report.xi_tol = xi_tol;
  report.sector_residual = is_supported_in_sector(rho, p, tol).residual;
  const OffDiagonalCheck offdiag = is_off_diagonal(g, p, tol);
  report.offdiag_residual =
      std::max(offdiag.diagonal_residual, offdiag.completeness_residual);
  report.hypotheses_hold =
      report.sector_residual <= tol && report.offdiag_residual <= tol;

  const Complex g_mean = expectation(rho, g);
  const double g2 =
      (rho.matrix() * g.matrix() * g.matrix()).trace().real();
  report.four_g2 = 4.0 * g2;
  report.four_var = 4.0 * (g2 - std::norm(g_mean));
  report.qfi = qfi(rho, g);

  // xi_P^{-2} in the theta -> 0 limit: evaluate the finite-theta ratio at
  // theta* and theta*/2 and extrapolate with quadratic Richardson weights.
  // Under the hypotheses every odd order of <P>_theta vanishes, so the
  // finite-theta error is O(theta^2) and (4 r(t/2) - r(t))/3 removes it.
  constexpr double kThetaStar = 1e-4;
  const Evolver evolver(g);
  const Matrix q = p.complement_matrix();
  const double r_full = projector_snr_at(evolver.state(rho, kThetaStar),
                                         p.matrix(), q, g.matrix());
  const double r_half = projector_snr_at(evolver.state(rho, kThetaStar / 2.0),
                                         p.matrix(), q, g.matrix());
  report.xi_p_inv2 = (4.0 * r_half - r_full) / 3.0;

  const double chain =
      std::abs(report.qfi - report.four_g2) / std::max(1.0, report.four_g2);
  const double xi_gap =
      std::abs(report.xi_p_inv2 - report.qfi) / std::max(1.0, report.qfi);
  report.pass = report.hypotheses_hold && chain <= tol && xi_gap <= xi_tol;
  return report;
}

WitnessReport separability_witness(const DensityOperator& rho,
                                   const std::vector<LocalGenerator>& locals) {
  if (rho.space().kind() != SpaceKind::SpinRegister)
    throw std::invalid_argument("separability_witness runs on spin registers");
  const int n = rho.space().n_sites();
  if (locals.empty()) throw std::invalid_argument("no local generators given");

  Matrix g_total = Matrix::Zero(rho.dimension(), rho.dimension());
  WitnessReport report;
  for (const auto& local : locals) {
    if (local.site < 0 || local.site >= n)
      throw std::invalid_argument("local generator site out of range");
    if ((local.m - local.m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("local generator must be Hermitian");
    // Embed the 2x2 block; a 2x2 input is single-site by construction.
    const std::int64_t left = std::int64_t{1} << local.site;
    const std::int64_t right = std::int64_t{1} << (n - local.site - 1);
    const Matrix embedded = Eigen::kroneckerProduct(
        Matrix::Identity(left, left),
        Eigen::kroneckerProduct(local.m, Matrix::Identity(right, right))
            .eval());
    const Operator g_i = Operator::hermitian(rho.space(), embedded);
    report.bound += 4.0 * variance(rho, g_i);
    report.sum_local_g2 +=
        (rho.matrix() * g_i.matrix() * g_i.matrix()).trace().real();
    g_total += g_i.matrix();
  }
  const Operator g = Operator::hermitian(rho.space(), std::move(g_total));
  report.qfi = qfi(rho, g);
  report.g2 = (rho.matrix() * g.matrix() * g.matrix()).trace().real();
  report.entangled = report.qfi > report.bound + 1e-8;
  return report;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_space(rho.op(), sigma.op(), "fidelity");
  const SpectralDecomposition eig = spectral_decompose(rho.op());
  const RealVector clamped = eig.eigenvalues.cwiseMax(0.0);
  const Matrix sqrt_rho = eig.eigenvectors *
                          clamped.cwiseSqrt().asDiagonal() *
                          eig.eigenvectors.adjoint();
  Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(inner, Eigen::EigenvaluesOnly);
  const double root_sum =
      solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_sum * root_sum;
}

}  // namespace symproj
