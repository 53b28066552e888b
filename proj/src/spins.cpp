#include "symproj/spins.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace symproj {

ModelFamily family_from_string(const std::string& s) {
  if (s == "ising") return ModelFamily::Ising;
  if (s == "xy") return ModelFamily::XY;
  if (s == "xxz") return ModelFamily::XXZ;
  if (s == "field") return ModelFamily::Field;
  if (s == "oat") return ModelFamily::OAT;
  if (s == "custom-xyz") return ModelFamily::CustomXYZ;
  throw std::invalid_argument("unknown model family '" + s + "'");
}

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::Ising: return "ising";
    case ModelFamily::XY: return "xy";
    case ModelFamily::XXZ: return "xxz";
    case ModelFamily::Field: return "field";
    case ModelFamily::OAT: return "oat";
    case ModelFamily::CustomXYZ: return "custom-xyz";
  }
  return "?";
}

namespace {

void check_coupling_matrix(const Eigen::MatrixXd& j, int n, const char* name) {
  if (j.rows() != n || j.cols() != n)
    throw std::invalid_argument(std::string(name) + " must be N x N");
  if ((j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string(name) + " must be symmetric");
  if (j.diagonal().cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument(std::string(name) + " must have zero diagonal");
}

bool is_zero(const Eigen::MatrixXd& j) {
  return j.size() == 0 || j.cwiseAbs().maxCoeff() <= 1e-15;
}

}  // namespace

HamiltonianSpec HamiltonianSpec::ising(int n, Eigen::MatrixXd jz,
                                       double omega) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::Ising;
  spec.n_sites = n;
  spec.jx = Eigen::MatrixXd::Zero(n, n);
  spec.jy = Eigen::MatrixXd::Zero(n, n);
  spec.jz = std::move(jz);
  spec.omega = Eigen::VectorXd::Constant(n, omega);
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::xy(int n, Eigen::MatrixXd j) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::XY;
  spec.n_sites = n;
  spec.jx = j;
  spec.jy = std::move(j);
  spec.jz = Eigen::MatrixXd::Zero(n, n);
  spec.omega = Eigen::VectorXd::Zero(n);
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::xxz(int n, Eigen::MatrixXd j) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::XXZ;
  spec.n_sites = n;
  spec.jx = j;
  spec.jy = j;
  spec.jz = -std::move(j);
  spec.omega = Eigen::VectorXd::Zero(n);
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::field(int n, Eigen::VectorXd omega) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::Field;
  spec.n_sites = n;
  spec.jx = Eigen::MatrixXd::Zero(n, n);
  spec.jy = Eigen::MatrixXd::Zero(n, n);
  spec.jz = Eigen::MatrixXd::Zero(n, n);
  spec.omega = std::move(omega);
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::oat(int n, double chi) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::OAT;
  spec.n_sites = n;
  spec.jx = Eigen::MatrixXd::Zero(n, n);
  spec.jy = Eigen::MatrixXd::Zero(n, n);
  spec.jz = Eigen::MatrixXd::Zero(n, n);
  spec.omega = Eigen::VectorXd::Zero(n);
  spec.chi = chi;
  spec.validate();
  return spec;
}

HamiltonianSpec HamiltonianSpec::custom_xyz(int n, Eigen::MatrixXd jx,
                                            Eigen::MatrixXd jy,
                                            Eigen::MatrixXd jz,
                                            Eigen::VectorXd omega) {
  HamiltonianSpec spec;
  spec.family = ModelFamily::CustomXYZ;
  spec.n_sites = n;
  spec.jx = std::move(jx);
  spec.jy = std::move(jy);
  spec.jz = std::move(jz);
  spec.omega = std::move(omega);
  spec.validate();
  return spec;
}

void HamiltonianSpec::validate() const {
  if (n_sites < 1) throw std::invalid_argument("spec needs >= 1 site");
  check_coupling_matrix(jx, n_sites, "J^x");
  check_coupling_matrix(jy, n_sites, "J^y");
  check_coupling_matrix(jz, n_sites, "J^z");
  if (omega.size() != n_sites)
    throw std::invalid_argument("field vector must have N entries");
  switch (family) {
    case ModelFamily::Ising:
      if (!is_zero(jx) || !is_zero(jy))
        throw std::invalid_argument("ising family allows J^z couplings only");
      break;
    case ModelFamily::XY:
      if (!is_zero(jz) || (jx - jy).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("xy family needs J^x = J^y and J^z = 0");
      break;
    case ModelFamily::XXZ:
      if ((jx - jy).cwiseAbs().maxCoeff() > 1e-12 ||
          (jz + jx).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("xxz family needs J^x = J^y = -J^z");
      break;
    case ModelFamily::Field:
      if (!is_zero(jx) || !is_zero(jy) || !is_zero(jz))
        throw std::invalid_argument("field family has no couplings");
      break;
    case ModelFamily::OAT:
      if (!is_zero(jx) || !is_zero(jy) || !is_zero(jz) ||
          omega.cwiseAbs().maxCoeff() > 1e-15)
        throw std::invalid_argument("oat family has chi only");
      break;
    case ModelFamily::CustomXYZ:
      break;
  }
}

Eigen::MatrixXd chain_couplings(int n, double j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = j;
  return m;
}

Eigen::MatrixXd power_law_couplings(int n, double j, double alpha) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      m(a, b) = m(b, a) = j / std::pow(static_cast<double>(b - a), alpha);
  return m;
}

Operator build_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const HilbertSpace space = HilbertSpace::spin_register(spec.n_sites);
  const std::int64_t dim = space.dimension();
  Matrix h = Matrix::Zero(dim, dim);

  if (spec.family == ModelFamily::OAT) {
    const Matrix jz = collective_spin(Axis::Z, spec.n_sites).matrix();
    h = (spec.chi / spec.n_sites) * (jz * jz);
    return Operator::hermitian(space, std::move(h));
  }

  const std::array<const Eigen::MatrixXd*, 3> couplings{&spec.jx, &spec.jy,
                                                        &spec.jz};
  const std::array<Axis, 3> axes{Axis::X, Axis::Y, Axis::Z};
  for (int a = 0; a < 3; ++a) {
    if (is_zero(*couplings[a])) continue;
    std::vector<Matrix> site_ops(spec.n_sites);
    for (int i = 0; i < spec.n_sites; ++i)
      site_ops[i] = pauli_on_site(axes[a], i, spec.n_sites).matrix();
    for (int i = 0; i < spec.n_sites; ++i)
      for (int j = i + 1; j < spec.n_sites; ++j) {
        const double coupling = (*couplings[a])(i, j);
        if (coupling == 0.0) continue;
        h -= coupling * (site_ops[i] * site_ops[j]);
      }
  }
  for (int i = 0; i < spec.n_sites; ++i) {
    if (spec.omega[i] == 0.0) continue;
    h -= spec.omega[i] * pauli_on_site(Axis::X, i, spec.n_sites).matrix();
  }
  return Operator::hermitian(space, std::move(h));
}

namespace {

Eigen::Vector2cd single_spin_state(Axis axis) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  Eigen::Vector2cd v;
  switch (axis) {
    case Axis::X: v << inv_sqrt2, inv_sqrt2; break;
    case Axis::Y: v << inv_sqrt2, Complex(0.0, inv_sqrt2); break;
    case Axis::Z: v << 1.0, 0.0; break;
  }
  return v;
}

}  // namespace

DensityOperator coherent_spin_state(Axis axis, int n_sites,
                                    Representation rep) {
  if (rep == Representation::Full) {
    const HilbertSpace space = HilbertSpace::spin_register(n_sites);
    const Eigen::Vector2cd single = single_spin_state(axis);
    Vector psi = Vector::Ones(1);
    for (int i = 0; i < n_sites; ++i) {
      Vector next(psi.size() * 2);
      for (Eigen::Index k = 0; k < psi.size(); ++k) {
        next[2 * k] = psi[k] * single[0];
        next[2 * k + 1] = psi[k] * single[1];
      }
      psi = std::move(next);
    }
    return DensityOperator::pure(space, psi);
  }

  // Dicke sector: rotate the maximal-J^z state |j, j> onto the axis.
  const HilbertSpace space = HilbertSpace::dicke_sector(n_sites);
  const DickeOperators ops = dicke_operators(n_sites);
  Vector top = Vector::Zero(space.dimension());
  top[0] = 1.0;
  const double half_pi = std::numbers::pi / 2.0;
  switch (axis) {
    case Axis::Z:
      break;
    case Axis::X:
      top = Evolver(ops.jy).state(top, half_pi);
      break;
    case Axis::Y:
      top = Evolver(ops.jx).state(top, -half_pi);
      break;
  }
  return DensityOperator::pure(space, top);
}

DickeOperators dicke_operators(int n_sites) {
  const HilbertSpace space = HilbertSpace::dicke_sector(n_sites);
  const std::int64_t dim = space.dimension();
  const double j = n_sites / 2.0;
  Matrix jz = Matrix::Zero(dim, dim);
  Matrix jp = Matrix::Zero(dim, dim);  // raising operator
  for (std::int64_t k = 0; k < dim; ++k) {
    const double m = j - static_cast<double>(k);  // basis ordered m = +j..-j
    jz(k, k) = m;
    if (k + 1 < dim) {
      // J^+ |j, m-1> = sqrt(j(j+1) - m(m-1)) |j, m>
      const double m_low = m - 1.0;
      jp(k, k + 1) = std::sqrt(j * (j + 1.0) - m_low * (m_low + 1.0));
    }
  }
  const Matrix jm = jp.adjoint();
  const Complex i(0.0, 1.0);
  Matrix jx = 0.5 * (jp + jm);
  Matrix jy = (jp - jm) / (2.0 * i);
  return {Operator::hermitian(space, std::move(jx)),
          Operator::hermitian(space, std::move(jy)),
          Operator::hermitian(space, std::move(jz))};
}

Operator dicke_parity_x(int n_sites) {
  // prod_i sigma_i^x restricted to the symmetric sector: every site rotation
  // composes to e^{-i pi J^x} with the overall phase e^{i pi j}. The J^x
  // spectrum is exactly {-j..+j}, so j - lambda rounds to an integer and the
  // phases are exactly +-1; rounding keeps the operator involutory to
  // machine precision.
  const DickeOperators ops = dicke_operators(n_sites);
  const SpectralDecomposition eig = spectral_decompose(ops.jx);
  const double j = n_sites / 2.0;
  Vector signs(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < signs.size(); ++k) {
    const long level = std::lround(j - eig.eigenvalues[k]);
    signs[k] = (level % 2 == 0) ? 1.0 : -1.0;
  }
  Matrix parity =
      eig.eigenvectors * signs.asDiagonal() * eig.eigenvectors.adjoint();
  parity = 0.5 * (parity + parity.adjoint().eval());
  return Operator::hermitian(ops.jx.space(), std::move(parity));
}

SectorProjector dicke_parity_projector(int n_sites, int sector) {
  if (sector != 1 && sector != -1)
    throw std::invalid_argument("sector must be +1 or -1");
  const Operator parity = dicke_parity_x(n_sites);
  const std::int64_t dim = parity.dimension();
  Matrix p = 0.5 * (Matrix::Identity(dim, dim) +
                    static_cast<double>(sector) * parity.matrix());
  return SectorProjector(Operator::hermitian(parity.space(), std::move(p)),
                         {SectorKind::ParityX, static_cast<double>(sector)});
}

DensityOperator oat_evolve(int n_sites, double chi, double t,
                           Axis initial_axis) {
  if (n_sites < 2) throw std::invalid_argument("oat needs N >= 2");
  const DickeOperators ops = dicke_operators(n_sites);
  const Operator h = Operator::hermitian(
      ops.jz.space(),
      (chi / n_sites) * (ops.jz.matrix() * ops.jz.matrix()));
  const DensityOperator initial =
      coherent_spin_state(initial_axis, n_sites, Representation::Dicke);
  if (t == 0.0) return initial;
  return evolve(initial, h, t);
}

RampSchedule RampSchedule::linear(HamiltonianSpec interaction,
                                  double omega_from, double omega_to,
                                  double duration, int steps) {
  RampSchedule s;
  s.duration = duration;
  s.steps = steps;
  s.omega_profile = {{0.0, omega_from}, {duration, omega_to}};
  s.interaction = std::move(interaction);
  s.validate();
  return s;
}

double RampSchedule::omega_at(double t) const {
  if (omega_profile.empty()) return 0.0;
  if (t <= omega_profile.front().first) return omega_profile.front().second;
  if (t >= omega_profile.back().first) return omega_profile.back().second;
  for (std::size_t k = 1; k < omega_profile.size(); ++k) {
    const auto& [t0, w0] = omega_profile[k - 1];
    const auto& [t1, w1] = omega_profile[k];
    if (t <= t1) {
      const double frac = (t - t0) / (t1 - t0);
      return w0 + frac * (w1 - w0);
    }
  }
  return omega_profile.back().second;
}

void RampSchedule::validate() const {
  if (steps < 1) throw std::invalid_argument("ramp needs >= 1 step");
  if (duration <= 0.0) throw std::invalid_argument("ramp needs duration > 0");
  if (omega_profile.size() < 1)
    throw std::invalid_argument("ramp needs a field profile");
  for (std::size_t k = 1; k < omega_profile.size(); ++k)
    if (omega_profile[k].first < omega_profile[k - 1].first)
      throw std::invalid_argument("field profile knots must be sorted");
  interaction.validate();
}

RampResult quasi_adiabatic_ramp(const RampSchedule& schedule,
                                const DensityOperator& initial) {
  schedule.validate();
  const int n = schedule.interaction.n_sites;
  if (!(initial.space() == HilbertSpace::spin_register(n)))
    throw std::invalid_argument("initial state does not match the model size");

  const SectorProjector p_even = parity_projector(Axis::X, +1, n);
  const SectorProjector p_odd = parity_projector(Axis::X, -1, n);
  const SupportCheck in_even = is_supported_in_sector(initial, p_even, 1e-10);
  const SupportCheck in_odd = is_supported_in_sector(initial, p_odd, 1e-10);
  if (!in_even.supported && !in_odd.supported)
    throw std::invalid_argument(
        "initial state is not supported in a P_x sector");
  const SectorProjector& sector = in_even.supported ? p_even : p_odd;

  const Operator h_int = build_hamiltonian(schedule.interaction);
  const Operator jz = collective_spin(Axis::Z, n);
  const Matrix jz2 = jz.matrix() * jz.matrix();
  const double dt = schedule.duration / schedule.steps;

  DensityOperator state = initial;
  RampDiagnostics diag;
  for (int step = 0; step < schedule.steps; ++step) {
    const double t_mid = (step + 0.5) * dt;
    const double omega = schedule.omega_at(t_mid);
    const Operator h_step =
        h_int + build_hamiltonian(HamiltonianSpec::field(
                    n, Eigen::VectorXd::Constant(n, omega)));
    const Evolver evolver(h_step);
    state = evolver.state(state, dt);

    diag.times.push_back((step + 1) * dt);
    diag.omegas.push_back(omega);
    diag.parity.push_back(expectation(state, sector.op()).real());
    diag.four_jz2.push_back(4.0 *
                            (state.matrix() * jz2).trace().real());
    diag.energy.push_back(expectation(state, h_step).real());
    diag.ground_energy.push_back(evolver.decomposition().eigenvalues.minCoeff());
  }

  const double omega_final = schedule.omega_at(schedule.duration);
  const Operator h_final =
      h_int + build_hamiltonian(HamiltonianSpec::field(
                  n, Eigen::VectorXd::Constant(n, omega_final)));
  const Vector gs = sector_ground_state(h_final, sector);
  diag.final_gs_fidelity = (gs.adjoint() * state.matrix() * gs)(0, 0).real();
  return {std::move(state), std::move(diag)};
}

namespace {

/// Zeroes the blocks of rho_eig between degeneracy groups of the ascending
/// eigenvalues: adjacent levels within gap_tol share a projector.
Matrix dephase_grouped(const Matrix& rho_eig, const RealVector& eigenvalues,
                       double gap_tol) {
  const std::int64_t dim = eigenvalues.size();
  Matrix dephased = Matrix::Zero(dim, dim);
  std::int64_t start = 0;
  while (start < dim) {
    std::int64_t end = start + 1;
    while (end < dim && eigenvalues[end] - eigenvalues[end - 1] <= gap_tol)
      ++end;
    const std::int64_t len = end - start;
    dephased.block(start, start, len, len) =
        rho_eig.block(start, start, len, len);
    start = end;
  }
  return dephased;
}

}  // namespace

DensityOperator diagonal_ensemble(const DensityOperator& rho,
                                  const Operator& h_final, double gap_tol) {
  require_same_space(rho.op(), h_final, "diagonal_ensemble");
  const SpectralDecomposition eig = spectral_decompose(h_final);
  const Matrix rho_eig =
      eig.eigenvectors.adjoint() * rho.matrix() * eig.eigenvectors;
  const Matrix dephased = dephase_grouped(rho_eig, eig.eigenvalues, gap_tol);
  Matrix out = eig.eigenvectors * dephased * eig.eigenvectors.adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  out /= out.trace().real();
  return DensityOperator::from_psd(Operator(rho.space(), std::move(out)));
}

DensityOperator diagonal_ensemble(const DensityOperator& rho,
                                  const Operator& h_final,
                                  const SectorProjector& p, double gap_tol) {
  require_same_space(rho.op(), h_final, "diagonal_ensemble");
  require_same_space(rho.op(), p.op(), "diagonal_ensemble");
  const SupportCheck support = is_supported_in_sector(rho, p, 1e-10);
  if (!support.supported)
    throw std::invalid_argument(
        "state is not supported in the sector (residual " +
        std::to_string(support.residual) + ")");
  const double conservation =
      (h_final.matrix() * p.matrix() - p.matrix() * h_final.matrix())
          .cwiseAbs()
          .maxCoeff();
  if (conservation > 1e-10)
    throw std::invalid_argument("H does not conserve the sector (|[H,P]| = " +
                                std::to_string(conservation) + ")");

  const Matrix basis = sector_basis(p);
  const Matrix h_block = basis.adjoint() * h_final.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (h_block + h_block.adjoint()));
  const Matrix vectors = basis * solver.eigenvectors();
  const Matrix rho_eig = vectors.adjoint() * rho.matrix() * vectors;
  const Matrix dephased =
      dephase_grouped(rho_eig, solver.eigenvalues(), gap_tol);
  Matrix out = vectors * dephased * vectors.adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  out /= out.trace().real();
  return DensityOperator::from_psd(Operator(rho.space(), std::move(out)));
}

Vector sector_ground_state(const Operator& h, const SectorProjector& p) {
  require_same_space(h, p.op(), "sector_ground_state");
  const Matrix basis = sector_basis(p);
  const Matrix h_restricted = basis.adjoint() * h.matrix() * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      0.5 * (h_restricted + h_restricted.adjoint()));
  return basis * solver.eigenvectors().col(0);
}

std::pair<double, double> minimal_quadrature_variance(
    const DensityOperator& rho, const Operator& a, const Operator& b) {
  const double var_a = variance(rho, a);
  const double var_b = variance(rho, b);
  const Complex mean_a = expectation(rho, a);
  const Complex mean_b = expectation(rho, b);
  const Complex anticomm =
      (rho.matrix() * (a.matrix() * b.matrix() + b.matrix() * a.matrix()))
          .trace();
  const double cov = 0.5 * anticomm.real() - (mean_a * mean_b).real();
  const double mid = 0.5 * (var_a + var_b);
  const double half_diff = 0.5 * (var_a - var_b);
  const double radius = std::hypot(half_diff, cov);
  const double angle = 0.5 * std::atan2(-2.0 * cov, -(var_a - var_b));
  return {mid - radius, angle};
}

double squeezing_parameter(const DensityOperator& rho, const Operator& jy,
                           const Operator& jz, int n_sites) {
  const auto [min_var, angle] = minimal_quadrature_variance(rho, jy, jz);
  (void)angle;
  return min_var / (n_sites / 4.0);
}

}  // namespace symproj
