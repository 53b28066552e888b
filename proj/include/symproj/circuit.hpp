#pragma once

#include <optional>
#include <vector>

#include "symproj/symmetry.hpp"

namespace symproj {

/// Controlled-NOT between two qubits of an n-qubit register. Involutory.
Operator cnot(int control, int target, int n_qubits);

struct CircuitOutcome {
  std::optional<DensityOperator> post_state;  // absent for a zero-probability branch
  int outcome_bit = 0;
  double probability = 0.0;
};

struct ParityExtraction {
  CircuitOutcome even;  // ancilla outcome 0 <-> prod sigma^z = +1
  CircuitOutcome odd;   // ancilla outcome 1 <-> prod sigma^z = -1
};

/// Parity measurement circuit: append an ancilla in |0>, run CNOT(i ->
/// ancilla) for every data qubit, measure the ancilla in z, and return both
/// post-selected branches. The whole (N+1)-qubit space is simulated; no
/// stabilizer shortcut. Convention (fixed here, asserted in tests): a basis
/// state |z> with z_i = 1 meaning sigma^z = -1 has parity (-1)^{sum z_i};
/// even parity flips the ancilla an even number of times, so outcome 0 is
/// the even branch P rho P / Tr(P rho P).
ParityExtraction parity_extraction(const DensityOperator& rho);

/// (|->_x>^N + sign |<-_x>^N) / sqrt(2). Eigenstate of prod sigma^z with
/// eigenvalue equal to sign: sigma^z maps ->_x to <-_x sitewise, so the
/// symmetric cat is the even one.
DensityOperator cat_state(int n_qubits, int sign);

struct CorrelationRow {
  int i = 0;
  int j = 0;
  double before = 0.0;    // <sigma_i^x sigma_j^x> on rho
  double after = 0.0;     // weighted branch value after z-parity splitting
  double residual = 0.0;  // |before - after|
};

/// Verifies Tr(rho s_i^x s_j^x) = Tr[(P rho P + Q rho Q) s_i^x s_j^x] for the
/// requested pairs; x-correlations commute with z-parity, so splitting
/// preserves them.
std::vector<CorrelationRow> correlation_preservation_report(
    const DensityOperator& rho, const std::vector<std::pair<int, int>>& pairs);

}  // namespace symproj
