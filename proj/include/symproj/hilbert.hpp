#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symproj {

/// Kind of labeled Hilbert space an operator lives on.
enum class SpaceKind {
  SpinRegister,  ///< N spin-1/2 sites, dimension 2^N
  DickeSector,   ///< fully symmetric sector of N spins, dimension N+1
  FockBlocks,    ///< direct sum of fixed-number bosonic blocks
};

/// Boson totals (N_A, N_B) of one fixed-number block.
struct BlockTotals {
  int n_a = 0;
  int n_b = 0;
  friend bool operator==(const BlockTotals&, const BlockTotals&) = default;
};

/// A labeled finite-dimensional Hilbert space. Immutable after construction.
///
/// Full spin registers are capped at 12 sites (dimension 4096); dense
/// spectral work beyond that is not desk scale.
class HilbertSpace {
 public:
  static constexpr int kMaxRegisterSites = 12;
  static constexpr std::int64_t kMaxDimension = 20000;

  /// Empty placeholder space (dimension 0); real spaces come from the
  /// factories below.
  HilbertSpace() = default;

  static HilbertSpace spin_register(int n_sites);
  static HilbertSpace dicke_sector(int n_sites);
  static HilbertSpace fock_blocks(int n_pairs, std::vector<BlockTotals> blocks,
                                  std::int64_t dimension);

  SpaceKind kind() const { return kind_; }
  std::int64_t dimension() const { return dim_; }

  /// Number of spin sites (spin-register or dicke-sector spaces).
  int n_sites() const;
  /// Number of (a_i, b_i) mode pairs (fock-blocks spaces).
  int n_pairs() const;
  /// Block totals in basis order (fock-blocks spaces).
  const std::vector<BlockTotals>& blocks() const;

  std::string describe() const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  SpaceKind kind_ = SpaceKind::SpinRegister;
  std::int64_t dim_ = 0;
  int n_sites_ = 0;
  int n_pairs_ = 0;
  std::vector<BlockTotals> blocks_;
};

}  // namespace symproj
