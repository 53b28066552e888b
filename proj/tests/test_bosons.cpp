#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <symproj/bosons.hpp>
#include <symproj/metrology.hpp>

using namespace symproj;

TEST_CASE("fock block enumeration: dimension formula and determinism") {
  const FockBlock block = FockBlock::build(3, 2, 1);
  CHECK(block.dim_a == 6);  // C(4, 2)
  CHECK(block.dim_b == 3);  // C(3, 2)
  CHECK(block.dimension == 18);

  // lexicographic ascending: (0,0,2) < (0,1,1) < ... < (2,0,0)
  CHECK(block.occ_a.front() == std::vector<int>({0, 0, 2}));
  CHECK(block.occ_a.back() == std::vector<int>({2, 0, 0}));
  const FockBlock again = FockBlock::build(3, 2, 1);
  CHECK(block.occ_a == again.occ_a);
  CHECK(block.occ_b == again.occ_b);
}

TEST_CASE("fock universe: neighbor blocks, ordering, k_max guard") {
  const FockUniverse u(2, 1, 1);
  REQUIRE(u.blocks().size() == 3);
  CHECK(u.blocks()[0].n_a == 0);
  CHECK(u.blocks()[1].n_a == 1);
  CHECK(u.blocks()[2].n_a == 2);
  CHECK(u.central_block() == 1);
  CHECK(u.dimension() == 3 + 4 + 3);

  CHECK_THROWS_AS(FockUniverse(2, 1, 1, 0), std::invalid_argument);

  // boundary of the boson-number range: missing blocks are skipped
  const FockUniverse edge(2, 0, 2);
  CHECK(edge.blocks().size() == 2);
  CHECK(edge.blocks()[0].n_a == 0);
}

TEST_CASE("tunneling generator: hermitian, block-off-diagonal, ladder value") {
  const FockUniverse u(2, 1, 1);
  const Operator g = tunneling_generator(u);
  CHECK(g.hermiticity_residual() < 1e-14);

  const SectorProjector p = number_projector(u, 1);
  const OffDiagonalCheck check = is_off_diagonal(g, p, 1e-12);
  CHECK(check.off_diagonal);
  CHECK(check.diagonal_residual == 0.0);

  // single pair, one boson on each side: <1,1|G^2|1,1> = 1 by hand:
  // G|1,1> = -(1/2)(sqrt(2)|2,0> + sqrt(2)|0,2>), squared norm = 1.
  const FockUniverse pair(1, 1, 1);
  const Operator g1 = tunneling_generator(pair);
  const Vector psi = fock_product_vector(pair, {1}, {1});
  const Vector moved = g1.matrix() * psi;
  CHECK(moved.squaredNorm() == doctest::Approx(1.0));

  // every central-block column moves somewhere unless both transfers block
  const FockBlock& central = u.blocks()[u.central_block()];
  for (std::int64_t ia = 0; ia < central.dim_a; ++ia)
    for (std::int64_t ib = 0; ib < central.dim_b; ++ib) {
      const std::int64_t col = u.index(u.central_block(), ia, ib);
      CHECK(g.matrix().col(col).cwiseAbs().maxCoeff() > 0.0);
    }
}

TEST_CASE("number projector: completeness over blocks") {
  const FockUniverse u(2, 2, 1);
  Matrix sum = Matrix::Zero(u.dimension(), u.dimension());
  for (const auto& block : u.blocks())
    sum += number_projector(u, block.n_a).matrix();
  CHECK((sum - Matrix::Identity(u.dimension(), u.dimension()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  const SectorProjector p = number_projector(u, 2);
  CHECK(p.rank() == u.blocks()[u.central_block()].dimension);
  CHECK_THROWS_AS(number_projector(u, 9), std::invalid_argument);
}

TEST_CASE("ideal BEC: explicit N=2 state and uniform SPDM") {
  const FockUniverse u(2, 1, 1);
  const Vector psi = ideal_bec_vector(u);
  // A side (|10> + |01>)/sqrt(2) times the same on B: all four central
  // amplitudes are 1/2.
  const FockBlock& central = u.blocks()[u.central_block()];
  for (std::int64_t ia = 0; ia < central.dim_a; ++ia)
    for (std::int64_t ib = 0; ib < central.dim_b; ++ib)
      CHECK(std::abs(psi[u.index(u.central_block(), ia, ib)] - 0.5) < 1e-14);

  const Spdm a = spdm_a(u, psi);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(a.m(i, j) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(a.total() == doctest::Approx(1.0));

  // larger case: every SPDM entry equals N_A/N
  const FockUniverse big(3, 2, 1);
  const Spdm big_a = spdm_a(big, ideal_bec_vector(big));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(big_a.m(i, j) - Complex(2.0 / 3.0, 0.0)) < 1e-12);
}

TEST_CASE("closed form: frozen paper arithmetic") {
  // N=1, N_A=N_B=1: 1 + 1 + 2 = 4
  const FockUniverse pair(1, 1, 1);
  const Vector psi = fock_product_vector(pair, {1}, {1});
  CHECK(qfi_closed_form(spdm_a(pair, psi), spdm_b(pair, psi)) ==
        doctest::Approx(4.0));

  // N=2 ideal condensates, n_A = n_B = 1/2: 2*1 + 2*4*(1/4) = 4
  const FockUniverse u(2, 1, 1);
  const Vector bec = ideal_bec_vector(u);
  const double closed = qfi_closed_form(spdm_a(u, bec), spdm_b(u, bec));
  CHECK(closed == doctest::Approx(4.0));
  CHECK(brute_force_qfi(u, bec, tunneling_generator(u)) ==
        doctest::Approx(4.0));

  // diagonal SPDMs: N_A + N_B + 2 sum_i n_ai n_bi
  const FockUniverse loc(2, 2, 1);
  const Vector fock = fock_product_vector(loc, {1, 1}, {0, 1});
  const double diag_closed =
      qfi_closed_form(spdm_a(loc, fock), spdm_b(loc, fock));
  CHECK(diag_closed == doctest::Approx(2.0 + 1.0 + 2.0 * (1.0 * 0 + 1.0 * 1)));
  CHECK(brute_force_qfi(loc, fock, tunneling_generator(loc)) ==
        doctest::Approx(diag_closed).epsilon(1e-10));
}

TEST_CASE("separable bound: frozen values") {
  CHECK(separable_bound(2, 0.5, 0.5) == doctest::Approx(3.0));
  CHECK(separable_bound(3, 0.0, 0.8) == doctest::Approx(3.0 * 0.8));
  // ideal BEC beats the bound: 4 > 3 witnesses mode entanglement
  CHECK(4.0 > separable_bound(2, 0.5, 0.5));
}

TEST_CASE("coherence witness: condensate, localized, staggered phases") {
  const FockUniverse u(3, 2, 1);
  const Vector bec = ideal_bec_vector(u);
  const CoherenceWitness on = coherence_witness(spdm_a(u, bec), 1, 3);
  // all entries N_A/N = 2/3 over N(N-1) = 6 ordered pairs: N_A(N-1) = 4
  CHECK(on.statistic == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(on.excess_over_separable ==
        doctest::Approx(2.0 * (1.0 / 3.0) * 4.0).epsilon(1e-10));
  CHECK(on.entangled);

  const Vector fock = fock_product_vector(u, {1, 1, 0}, {1, 0, 0});
  const CoherenceWitness off = coherence_witness(spdm_a(u, fock), 1, 3);
  CHECK(std::abs(off.statistic) < 1e-12);
  CHECK_FALSE(off.entangled);

  // staggered relabeling a_i -> (-1)^i a_i flips the statistic sign while
  // the QFI (phase-invariant) is unchanged; the witness claims no converse.
  Eigen::MatrixXcd staggered = spdm_a(u, bec).m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      staggered(i, j) *= std::pow(-1.0, i) * std::pow(-1.0, j);
  const CoherenceWitness flipped = coherence_witness(Spdm(staggered), 1, 3);
  CHECK(flipped.statistic < 0.0);
  CHECK_FALSE(flipped.entangled);
}

TEST_CASE("brute force equals closed form for mixed product states") {
  // mixture of two A-side Fock states, pure ideal B side: still a product
  // with fixed numbers, so the closed form must match the full spectral
  // computation on the dense density matrix.
  const FockUniverse u(2, 2, 1);
  const Vector v1 = fock_product_vector(u, {1, 1}, {0, 1});
  const Vector v2 = fock_product_vector(u, {2, 0}, {0, 1});
  Matrix mix = 0.6 * (v1 * v1.adjoint()) + 0.4 * (v2 * v2.adjoint());
  const DensityOperator rho =
      DensityOperator::from_psd(Operator(u.space(), std::move(mix)));
  const Operator g = tunneling_generator(u);
  const double brute = brute_force_qfi(u, rho, g);

  Eigen::MatrixXcd a_mix =
      0.6 * spdm_a(u, v1).m + 0.4 * spdm_a(u, v2).m;
  const double closed = qfi_closed_form(Spdm(a_mix), spdm_b(u, v1));
  CHECK(brute == doctest::Approx(closed).epsilon(1e-10));

  // and a pure superposition within the A block against the rank-one path
  Vector sup = (v1 + v2) / std::sqrt(2.0);
  CHECK(brute_force_qfi(u, sup, g) ==
        doctest::Approx(brute_force_qfi(
            u, DensityOperator::pure(u.space(), sup), g))
            .epsilon(1e-10));
}

TEST_CASE("truncation guard: states touching the boundary blocks throw") {
  // three bosons in two pairs: the k_max = 1 universe around (1,2) holds
  // blocks (0,3),(1,2),(2,1) but not (3,0), so a state on (2,1) spills.
  const FockUniverse u(2, 1, 2);
  REQUIRE(u.blocks().size() == 3);
  const FockBlock& boundary = u.blocks()[2];
  REQUIRE(boundary.n_a == 2);
  Vector psi = Vector::Zero(u.dimension());
  psi[u.index(2, boundary.index_a({1, 1}), boundary.index_b({1, 0}))] = 1.0;
  CHECK_THROWS_AS(brute_force_qfi(u, psi, tunneling_generator(u)),
                  TruncationError);

  // k_max = 2 completes the ladder (0..3), and then nothing spills
  const FockUniverse wide(2, 1, 2, 2);
  REQUIRE(wide.blocks().size() == 4);
  const FockBlock& same = wide.blocks()[2];
  REQUIRE(same.n_a == 2);
  Vector ok = Vector::Zero(wide.dimension());
  ok[wide.index(2, same.index_a({1, 1}), same.index_b({1, 0}))] = 1.0;
  CHECK_NOTHROW(brute_force_qfi(wide, ok, tunneling_generator(wide)));

  // states inside the central block never trip the guard
  CHECK_NOTHROW(
      brute_force_qfi(u, ideal_bec_vector(u), tunneling_generator(u)));
}

TEST_CASE("evolution under H = J G reproduces the curvature law") {
  const FockUniverse u(2, 1, 1);
  const Operator g = tunneling_generator(u);
  const SectorProjector p = number_projector(u, 1);
  const DensityOperator rho = ideal_bec_state(u);
  const double g2 = qfi_closed_form(spdm_a(u, ideal_bec_vector(u)),
                                    spdm_b(u, ideal_bec_vector(u))) /
                    4.0;
  const double j_rate = 1.0;
  const Evolver evolver(Operator::hermitian(
      u.space(), j_rate * g.matrix()));
  for (const double t : {1e-2, 1e-3}) {
    const DensityOperator rho_t = evolver.state(rho, t);
    const double p_mean = expectation(rho_t, p.op()).real();
    const double curvature = (1.0 - p_mean) / (t * t);
    CHECK(std::abs(curvature - g2) <= 10.0 * t * g2);
  }
}

TEST_CASE("theorem with the number projector on the full Fock matrix") {
  const FockUniverse u(2, 2, 2);
  const Operator g = tunneling_generator(u);
  const SectorProjector p = number_projector(u, 2);
  const TheoremReport report = check_theorem(ideal_bec_state(u), p, g);
  CHECK(report.pass);
  CHECK(report.qfi == doctest::Approx(qfi_closed_form(
                          spdm_a(u, ideal_bec_vector(u)),
                          spdm_b(u, ideal_bec_vector(u))))
                          .epsilon(1e-8));
}

TEST_CASE("Heisenberg versus standard-quantum-limit scaling at desk scale") {
  // ideal condensates: QFI ~ N^2; localized bosons: QFI ~ N. Ratio per
  // doubling must improve by at least 1.5x for the condensate.
  std::vector<double> ideal_qfi, localized_qfi;
  for (int n : {2, 4}) {
    const int half = n / 2;
    const FockUniverse u(n, half, half);
    ideal_qfi.push_back(qfi_closed_form(spdm_a(u, ideal_bec_vector(u)),
                                        spdm_b(u, ideal_bec_vector(u))));
    std::vector<int> occ_a(n, 0), occ_b(n, 0);
    for (int k = 0; k < half; ++k) occ_a[k % n] = 1;
    for (int k = 0; k < half; ++k) occ_b[(k + half) % n] = 1;
    const Vector fock = fock_product_vector(u, occ_a, occ_b);
    localized_qfi.push_back(
        qfi_closed_form(spdm_a(u, fock), spdm_b(u, fock)));
  }
  const double ideal_gain = ideal_qfi[1] / ideal_qfi[0];
  const double localized_gain = localized_qfi[1] / localized_qfi[0];
  CHECK(ideal_gain >= 1.5 * localized_gain);
}
