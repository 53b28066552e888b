#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "symproj/operator.hpp"

namespace symproj {

enum class SectorKind { ParityX, ParityZ, Magnetization, BosonNumber };

std::string to_string(SectorKind k);

struct SectorLabel {
  SectorKind kind;
  double value;  // parity +-1, magnetization m, or boson total N_A
};

/// Idempotent Hermitian operator with a sector label. Construction verifies
/// P^2 = P and P = P^dag within 1e-12 and that Tr(P) rounds to an integer
/// rank within 1e-8.
class SectorProjector {
 public:
  SectorProjector(Operator op, SectorLabel label);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const HilbertSpace& space() const { return op_.space(); }
  const SectorLabel& label() const { return label_; }
  std::int64_t rank() const { return rank_; }

  /// Q = 1 - P.
  Matrix complement_matrix() const;

 private:
  Operator op_;
  SectorLabel label_;
  std::int64_t rank_ = 0;
};

/// P = (1 + sector * prod_i sigma_i^a) / 2 on the 2^N register,
/// axis in {x, z}, sector +1 (even) or -1 (odd). Rank 2^{N-1}.
SectorProjector parity_projector(Axis axis, int sector, int n_sites);

/// Projector onto the J^z = m eigenspace of the 2^N register,
/// m in {-N/2, ..., +N/2} in integer steps; rank C(N, N/2 + m).
SectorProjector magnetization_projector(double m, int n_sites);

struct SupportCheck {
  bool supported;
  double residual;  // max entry |P rho P - rho|
};

/// Eq.-style sector-support test: true iff max|P rho P - rho| <= tol.
SupportCheck is_supported_in_sector(const DensityOperator& rho,
                                    const SectorProjector& p,
                                    double tol = 1e-10);

struct OffDiagonalCheck {
  bool off_diagonal;
  double diagonal_residual;      // max entry |P G P|
  double completeness_residual;  // max entry |P G Q + Q G P - G|
};

/// Off-diagonality of a Hermitian generator with respect to a sector:
/// P G P = 0 and P G Q + Q G P = G, both within tol.
OffDiagonalCheck is_off_diagonal(const Operator& g, const SectorProjector& p,
                                 double tol = 1e-10);

struct SectorSplit {
  std::optional<DensityOperator> in_sector;   // P rho P / w, absent if w < 1e-14
  std::optional<DensityOperator> complement;  // Q rho Q / w
  double weight_in = 0.0;
  double weight_out = 0.0;
};

/// rho -> (P rho P / w_P, Q rho Q / w_Q) with the branch weights.
/// Weights sum to 1 within 1e-10; a branch below weight 1e-14 is flagged
/// empty and carries no normalized state.
SectorSplit sector_split(const DensityOperator& rho, const SectorProjector& p);

/// Orthonormal columns spanning the range of P (dimension x rank).
Matrix sector_basis(const SectorProjector& p);

/// Seeded mixed state supported in the sector: rho = P X X^dag P normalized,
/// X a dim x rank complex Gaussian matrix drawn from Rng(seed).
/// Deterministic per seed. Throws when rank < 1 or rank > rank(P).
DensityOperator random_density_in_sector(const SectorProjector& p,
                                         std::int64_t rank,
                                         std::uint64_t seed);

}  // namespace symproj
