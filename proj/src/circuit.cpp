#include "symproj/circuit.hpp"

#include <bit>
#include <cmath>

namespace symproj {

Operator cnot(int control, int target, int n_qubits) {
  const HilbertSpace space = HilbertSpace::spin_register(n_qubits);
  if (control < 0 || control >= n_qubits || target < 0 || target >= n_qubits)
    throw std::invalid_argument("cnot qubit index out of range");
  if (control == target)
    throw std::invalid_argument("cnot control and target must differ");
  const std::int64_t dim = space.dimension();
  const std::int64_t control_bit = std::int64_t{1}
                                   << (n_qubits - 1 - control);
  const std::int64_t target_bit = std::int64_t{1} << (n_qubits - 1 - target);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const std::int64_t row = (col & control_bit) ? (col ^ target_bit) : col;
    m(row, col) = 1.0;
  }
  return Operator(space, std::move(m));
}

ParityExtraction parity_extraction(const DensityOperator& rho) {
  if (rho.space().kind() != SpaceKind::SpinRegister)
    throw std::invalid_argument("parity_extraction runs on spin registers");
  const int n = rho.space().n_sites();
  const HilbertSpace extended = HilbertSpace::spin_register(n + 1);
  const std::int64_t dim = rho.dimension();

  // rho (x) |0><0| with the ancilla as the least significant qubit.
  Matrix full = Matrix::Zero(2 * dim, 2 * dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c)
      full(2 * r, 2 * c) = rho.matrix()(r, c);

  for (int qubit = 0; qubit < n; ++qubit) {
    const Matrix gate = cnot(qubit, n, n + 1).matrix();
    full = gate * full * gate.adjoint();
  }

  ParityExtraction result;
  for (int outcome = 0; outcome < 2; ++outcome) {
    Matrix post(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r)
      for (std::int64_t c = 0; c < dim; ++c)
        post(r, c) = full(2 * r + outcome, 2 * c + outcome);
    const double probability = post.trace().real();
    CircuitOutcome& branch = outcome == 0 ? result.even : result.odd;
    branch.outcome_bit = outcome;
    branch.probability = probability;
    if (probability >= 1e-14) {
      post /= probability;
      post = 0.5 * (post + post.adjoint().eval());
      branch.post_state =
          DensityOperator::from_psd(Operator(rho.space(), std::move(post)));
    }
  }
  return result;
}

DensityOperator cat_state(int n_qubits, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("cat sign must be +1 or -1");
  const HilbertSpace space = HilbertSpace::spin_register(n_qubits);
  const std::int64_t dim = space.dimension();
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  Vector psi(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    // |->_x>^N is uniform; |<-_x>^N carries (-1)^{popcount}.
    const int ones = std::popcount(static_cast<std::uint64_t>(b));
    const double mirror = (ones % 2 == 0) ? 1.0 : -1.0;
    psi[b] = amp * (1.0 + sign * mirror);
  }
  return DensityOperator::pure(space, psi);
}

std::vector<CorrelationRow> correlation_preservation_report(
    const DensityOperator& rho, const std::vector<std::pair<int, int>>& pairs) {
  if (rho.space().kind() != SpaceKind::SpinRegister)
    throw std::invalid_argument("correlation report runs on spin registers");
  const int n = rho.space().n_sites();
  const SectorProjector p = parity_projector(Axis::Z, +1, n);
  const SectorSplit split = sector_split(rho, p);

  std::vector<CorrelationRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const Operator xx = Operator::hermitian(
        rho.space(), pauli_on_site(Axis::X, i, n).matrix() *
                         pauli_on_site(Axis::X, j, n).matrix());
    CorrelationRow row;
    row.i = i;
    row.j = j;
    row.before = expectation(rho, xx).real();
    double after = 0.0;
    if (split.in_sector)
      after += split.weight_in * expectation(*split.in_sector, xx).real();
    if (split.complement)
      after += split.weight_out * expectation(*split.complement, xx).real();
    row.after = after;
    row.residual = std::abs(row.before - row.after);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace symproj
