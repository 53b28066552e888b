#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <symproj/circuit.hpp>
#include <symproj/metrology.hpp>
#include <symproj/rng.hpp>

using namespace symproj;

namespace {

Operator random_hermitian(const HilbertSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t d = space.dimension();
  Matrix x(d, d);
  for (std::int64_t r = 0; r < d; ++r)
    for (std::int64_t c = 0; c < d; ++c) x(r, c) = rng.complex_gaussian();
  return Operator::hermitian(space, 0.5 * (x + x.adjoint().eval()));
}

DensityOperator random_full_density(int n, std::uint64_t seed, int rank) {
  const HilbertSpace space = HilbertSpace::spin_register(n);
  const SectorProjector full(Operator::identity(space),
                             {SectorKind::Magnetization, 0.0});
  return random_density_in_sector(full, rank, seed);
}

DensityOperator css_x(int n) {
  const HilbertSpace space = HilbertSpace::spin_register(n);
  return DensityOperator::pure(
      space, Vector::Constant(space.dimension(), std::pow(2.0, -0.5 * n)));
}

}  // namespace

TEST_CASE("qfi: maximally mixed, pure reduction, cat state") {
  const HilbertSpace q3 = HilbertSpace::spin_register(3);
  const DensityOperator mixed =
      DensityOperator(Operator(q3, Matrix::Identity(8, 8) / 8.0));
  CHECK(qfi(mixed, random_hermitian(q3, 1)) < 1e-12);

  // pure state: F_Q = 4 Var(G); CSS along x with G = J^z gives N
  const DensityOperator css = css_x(4);
  const Operator jz = collective_spin(Axis::Z, 4);
  CHECK(qfi(css, jz) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(qfi(css, jz) ==
        doctest::Approx(4.0 * variance(css, jz)).epsilon(1e-10));

  // cat state at N=4: F_Q(J^x) = N^2 = 16
  CHECK(qfi(cat_state(4, +1), collective_spin(Axis::X, 4)) ==
        doctest::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("qfi: invariant under G -> G + c, bounded by 4<G^2>") {
  const HilbertSpace q3 = HilbertSpace::spin_register(3);
  const DensityOperator rho = random_full_density(3, 5, 3);
  const Operator g = random_hermitian(q3, 6);
  const Operator shifted = g + 2.7 * Operator::identity(q3);
  CHECK(std::abs(qfi(rho, g) - qfi(rho, shifted)) < 1e-9);

  const double four_g2 =
      4.0 * (rho.matrix() * g.matrix() * g.matrix()).trace().real();
  CHECK(qfi(rho, g) <= four_g2 + 1e-8);
}

TEST_CASE("qfi convexity spot-check on random pairs") {
  const HilbertSpace q2 = HilbertSpace::spin_register(2);
  for (std::uint64_t seed : {10u, 20u, 30u}) {
    const DensityOperator a = random_full_density(2, seed, 2);
    const DensityOperator b = random_full_density(2, seed + 1, 3);
    const Operator g = random_hermitian(q2, seed + 2);
    const double lambda = 0.3;
    const DensityOperator mix = DensityOperator(Operator(
        q2, lambda * a.matrix() + (1.0 - lambda) * b.matrix()));
    CHECK(qfi(mix, g) <=
          lambda * qfi(a, g) + (1.0 - lambda) * qfi(b, g) + 1e-8);
  }
}

TEST_CASE("signal_to_noise: standard quantum limit at the CSS") {
  // O = J^y, G = J^z, theta = 0: |<[J^y,J^z]>|^2/Var(J^y) = <J^x>^2/(N/4) = N
  const DensityOperator css = css_x(4);
  const double snr = signal_to_noise(css, collective_spin(Axis::Y, 4),
                                     collective_spin(Axis::Z, 4), 0.0);
  CHECK(snr == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("signal_to_noise: commuting observable gives zero signal") {
  const DensityOperator css = css_x(3);
  const Operator jz = collective_spin(Axis::Z, 3);
  CHECK(signal_to_noise(css, jz, jz, 0.1) < 1e-20);
}

TEST_CASE("signal_to_noise: zero variance is undefined, not zero") {
  const HilbertSpace q1 = HilbertSpace::spin_register(1);
  Vector up(2);
  up << 1, 0;
  const DensityOperator rho = DensityOperator::pure(q1, up);
  // rho is a sigma^z eigenstate: Var(sigma^z) = 0
  CHECK_THROWS_AS(signal_to_noise(rho, pauli_on_site(Axis::Z, 0, 1),
                                  pauli_on_site(Axis::X, 0, 1), 0.0),
                  ZeroVarianceError);
}

TEST_CASE("derivative identity i d<O>/dtheta = <[O,G]> vs finite differences") {
  const int n = 3;
  const HilbertSpace space = HilbertSpace::spin_register(n);
  const DensityOperator rho = random_full_density(n, 31, 2);
  const Operator o = random_hermitian(space, 32);
  const Operator g = random_hermitian(space, 33);
  const Evolver evolver(g);
  const double theta = 0.4;
  const double h = 1e-5;
  const double above =
      expectation(evolver.state(rho, theta + h), o).real();
  const double below =
      expectation(evolver.state(rho, theta - h), o).real();
  const double numeric = (above - below) / (2.0 * h);
  const Complex comm = (evolver.state(rho, theta).matrix() *
                        (o.matrix() * g.matrix() - g.matrix() * o.matrix()))
                           .trace();
  // i d<O>/dtheta = <[O,G]>  =>  d<O>/dtheta = Im<[O,G]>; the commutator
  // expectation is purely imaginary for Hermitian O, G.
  CHECK(std::abs(comm.real()) < 1e-10);
  CHECK(numeric == doctest::Approx(comm.imag()).epsilon(1e-6));
}

TEST_CASE("projector_sensitivity_curve: unity at zero, curvature = <G^2>") {
  const int n = 4;
  const SectorProjector p = parity_projector(Axis::X, +1, n);
  const Operator jy = collective_spin(Axis::Y, n);

  // CSS: <(J^y)^2> = N/4 = 1
  const SensitivityCurve curve = projector_sensitivity_curve(
      css_x(n), p, jy, {0.0, 1e-3, 1e-2});
  CHECK(curve.p_values[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (const double v : curve.p_values) {
    CHECK(v >= -1e-10);
    CHECK(v <= 1.0 + 1e-10);
  }
  CHECK(std::abs(curve.curvature_estimate - 1.0) < 1e-4);

  // random mixed sector state: curvature matches <G^2> within 1e-4 relative
  const DensityOperator rho = random_density_in_sector(p, 5, 77);
  const double g2 = (rho.matrix() * jy.matrix() * jy.matrix()).trace().real();
  const SensitivityCurve curve2 =
      projector_sensitivity_curve(rho, p, jy, {1e-3});
  CHECK(std::abs(curve2.curvature_estimate - g2) <= 1e-4 * g2);

  // hypothesis violation (G = J^x commutes with P) is an error with residuals
  CHECK_THROWS_AS(projector_sensitivity_curve(css_x(n), p,
                                              collective_spin(Axis::X, n),
                                              {1e-3}),
                  std::invalid_argument);
}

TEST_CASE("curvature error stays below the cubic-term bound") {
  const int n = 4;
  const SectorProjector p = parity_projector(Axis::X, +1, n);
  const Operator jz = collective_spin(Axis::Z, n);
  const DensityOperator rho = random_density_in_sector(p, 3, 123);
  const double g2 = (rho.matrix() * jz.matrix() * jz.matrix()).trace().real();
  for (const double theta : {1e-2, 1e-3, 1e-4}) {
    const SensitivityCurve curve =
        projector_sensitivity_curve(rho, p, jz, {theta});
    CHECK(std::abs(curve.curvature_estimate - g2) <= 10.0 * theta * g2);
  }
}

TEST_CASE("check_theorem: equality chain on random mixed sector states") {
  const int n = 4;
  const SectorProjector p = parity_projector(Axis::X, +1, n);
  const Operator jz = collective_spin(Axis::Z, n);

  const DensityOperator rho = random_density_in_sector(p, 3, 7);
  const TheoremReport report = check_theorem(rho, p, jz);
  CHECK(report.pass);
  CHECK(report.hypotheses_hold);
  CHECK(std::abs(report.qfi - report.four_g2) <=
        1e-8 * std::max(1.0, report.four_g2));
  CHECK(std::abs(report.xi_p_inv2 - report.qfi) <=
        1e-6 * std::max(1.0, report.qfi));
  // mixed state in the sector has <G> = 0, so 4Var = 4<G^2>
  CHECK(report.four_var == doctest::Approx(report.four_g2).epsilon(1e-12));

  // the theorem is rank-independent
  for (std::int64_t rank : {1, 2, 4, 8}) {
    const TheoremReport r =
        check_theorem(random_density_in_sector(p, rank, 100 + rank), p, jz);
    CHECK(r.pass);
  }
}

TEST_CASE("check_theorem: violated hypothesis is reported, not thrown") {
  const int n = 4;
  const SectorProjector p = parity_projector(Axis::X, +1, n);
  const DensityOperator rho = random_density_in_sector(p, 3, 7);
  const TheoremReport report =
      check_theorem(rho, p, collective_spin(Axis::X, n));
  CHECK_FALSE(report.pass);
  CHECK_FALSE(report.hypotheses_hold);
  CHECK(report.offdiag_residual > 0.1);
}

TEST_CASE("monotone chain xi <= F_Q <= 4Var <= 4<G^2>") {
  const int n = 3;
  const HilbertSpace space = HilbertSpace::spin_register(n);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityOperator rho =
        random_full_density(n, 1000 + seed, 1 + seed % 8);
    const Operator o = random_hermitian(space, 2000 + seed);
    const Operator g = random_hermitian(space, 3000 + seed);
    const double fq = qfi(rho, g);
    const double four_var = 4.0 * variance(rho, g);
    const double four_g2 =
        4.0 * (rho.matrix() * g.matrix() * g.matrix()).trace().real();
    const double snr = signal_to_noise(rho, o, g, 0.0);
    CHECK(snr <= fq + 1e-8 * std::max(1.0, fq));
    CHECK(fq <= four_var + 1e-8 * std::max(1.0, four_var));
    CHECK(four_var <= four_g2 + 1e-8 * std::max(1.0, four_g2));
  }
}

TEST_CASE("separability_witness: product, cat, and positive correlations") {
  // product state saturates: qfi = bound = N, no false positive
  Eigen::Matrix2cd half_z;
  half_z << 0.5, 0, 0, -0.5;
  std::vector<LocalGenerator> locals_z;
  for (int site = 0; site < 4; ++site) locals_z.push_back({site, half_z});
  const WitnessReport product = separability_witness(css_x(4), locals_z);
  CHECK(product.qfi == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(product.bound == doctest::Approx(4.0).epsilon(1e-10));
  CHECK_FALSE(product.entangled);

  // cat state: qfi = N^2 > bound = N, violation by exactly a factor N
  Eigen::Matrix2cd half_x;
  half_x << 0, 0.5, 0.5, 0;
  std::vector<LocalGenerator> locals_x;
  for (int site = 0; site < 4; ++site) locals_x.push_back({site, half_x});
  const WitnessReport cat = separability_witness(cat_state(4, +1), locals_x);
  CHECK(cat.qfi == doctest::Approx(16.0).epsilon(1e-10));
  CHECK(cat.bound == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(cat.entangled);
  // reduced sector form: <G^2> > sum_i <G_i^2> with positive correlations
  CHECK(cat.g2 > cat.sum_local_g2 + 0.5);

  CHECK_THROWS_AS(
      separability_witness(css_x(4), {{5, half_z}}), std::invalid_argument);
}

TEST_CASE("fidelity: identical, orthogonal, and mixed sanity") {
  const DensityOperator a = cat_state(3, +1);
  const DensityOperator b = cat_state(3, -1);
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(fidelity(a, b) == doctest::Approx(0.0).epsilon(1e-7));

  const DensityOperator mixed = random_full_density(3, 8, 4);
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-7));
}
