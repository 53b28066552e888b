#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "symproj/symmetry.hpp"

namespace symproj {

/// Thrown when the block universe is too small for the requested
/// computation (generator amplitudes would leave the enumerated basis).
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation-number basis of one fixed-number block: all vectors
/// (n_a1..n_aN, n_b1..n_bN) with sum n_a = N_A and sum n_b = N_B,
/// enumerated in ascending lexicographic order (deterministic across runs).
struct FockBlock {
  int n_pairs = 0;
  int n_a = 0;
  int n_b = 0;
  std::vector<std::vector<int>> occ_a;  // per A-basis index
  std::vector<std::vector<int>> occ_b;  // per B-basis index
  std::int64_t dim_a = 0;
  std::int64_t dim_b = 0;
  std::int64_t dimension = 0;  // dim_a * dim_b

  static FockBlock build(int n_pairs, int n_a, int n_b);

  /// Index of an A-side occupation vector, -1 if absent.
  std::int64_t index_a(const std::vector<int>& occ) const;
  std::int64_t index_b(const std::vector<int>& occ) const;

 private:
  std::map<std::vector<int>, std::int64_t> index_a_;
  std::map<std::vector<int>, std::int64_t> index_b_;
};

/// Direct sum of the blocks (N_A + k, N_B - k) for |k| <= k_max around a
/// central block, ordered by ascending N_A. G^2 closes on the central block
/// exactly for k_max >= 1, which is therefore the minimum accepted.
class FockUniverse {
 public:
  FockUniverse(int n_pairs, int n_a, int n_b, int k_max = 1);

  int n_pairs() const { return n_pairs_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int k_max() const { return k_max_; }
  const std::vector<FockBlock>& blocks() const { return blocks_; }
  const std::vector<std::int64_t>& offsets() const { return offsets_; }
  std::size_t central_block() const { return central_; }
  std::int64_t dimension() const { return space_.dimension(); }
  const HilbertSpace& space() const { return space_; }

  /// Global basis index of (block, ia, ib).
  std::int64_t index(std::size_t block, std::int64_t ia,
                     std::int64_t ib) const;
  /// Block containing a global index.
  std::size_t block_of(std::int64_t index) const;

 private:
  int n_pairs_, n_a_, n_b_, k_max_;
  std::size_t central_ = 0;
  std::vector<FockBlock> blocks_;
  std::vector<std::int64_t> offsets_;
  HilbertSpace space_;
};

/// Pairwise tunneling generator G = -1/2 sum_i (a_i^dag b_i + b_i^dag a_i)
/// on the universe. Hermitian; connects a block only to its (N_A +- 1)
/// neighbors, so it is purely off-diagonal with respect to boson number.
Operator tunneling_generator(const FockUniverse& u);

/// Diagonal projector onto the block with the given N_A.
SectorProjector number_projector(const FockUniverse& u, int n_a);

/// Normalized (sum_i a_i^dag / sqrt(N))^{N_A} (sum_i b_i^dag / sqrt(N))^{N_B}
/// |vac>, embedded in the universe.
Vector ideal_bec_vector(const FockUniverse& u);
DensityOperator ideal_bec_state(const FockUniverse& u);

/// Product Fock state with the given per-mode occupations (sums must match
/// the central block totals).
Vector fock_product_vector(const FockUniverse& u,
                           const std::vector<int>& occ_a,
                           const std::vector<int>& occ_b);

/// Single-particle density matrix <c_i^dag c_j>, Hermitian PSD with trace
/// equal to the boson total.
struct Spdm {
  Eigen::MatrixXcd m;

  explicit Spdm(Eigen::MatrixXcd entries, double expected_trace = -1.0);
  int modes() const { return static_cast<int>(m.rows()); }
  double total() const { return m.trace().real(); }
};

Spdm spdm_a(const FockUniverse& u, const Vector& psi);
Spdm spdm_b(const FockUniverse& u, const Vector& psi);

/// Closed form for product states with fixed boson numbers:
///   F_Q(G) = 4<G^2> = N_A + N_B + sum_{ij} (<a_i^dag a_j><b_j^dag b_i> + h.c.)
double qfi_closed_form(const Spdm& a, const Spdm& b);

/// Separable bound F_sep = N (n_A + n_B + 2 n_A n_B) at uniform densities.
double separable_bound(int n_modes, double n_a, double n_b);

struct CoherenceWitness {
  double statistic = 0.0;             // sum_{i != j} Re <a_i^dag a_j>
  double excess_over_separable = 0.0; // 2 (N_B/N) * statistic
  bool entangled = false;             // statistic > 1e-10
};

/// Mode-entanglement witness from A-side coherences, valid under the premise
/// that the B side is a uniform ideal condensate. A positive statistic
/// violates the separable bound; a non-positive one certifies nothing.
CoherenceWitness coherence_witness(const Spdm& a, int n_b, int n_modes);

/// QFI oracle on the enumerated Fock space: the spectral formula applied to
/// the dense density matrix. Before evaluating, the generator amplitudes
/// that would leave the universe are collected into a spill matrix S and the
/// residual Tr(S rho S^dag) must vanish (<= 1e-10 relative), otherwise the
/// truncation is insufficient and a TruncationError is thrown.
double brute_force_qfi(const FockUniverse& u, const DensityOperator& rho,
                       const Operator& g);

/// Same oracle on a pure state, using the exact rank-one reduction of the
/// spectral formula: F_Q = 4(<G^2> - <G>^2). Matvec only; no d^2 density
/// matrix is materialized.
double brute_force_qfi(const FockUniverse& u, const Vector& psi,
                       const Operator& g);

}  // namespace symproj
