#include "symproj/bosons.hpp"

#include <algorithm>
#include <cmath>

#include "symproj/metrology.hpp"

namespace symproj {

namespace {

/// All occupation vectors of `parts` modes summing to `total`, ascending
/// lexicographic.
std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(parts, 0);
  // Recursive descent in lexicographic order.
  auto fill = [&](auto&& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      current[index] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current[index] = k;
      self(self, index + 1, remaining - k);
    }
  };
  if (parts > 0 && total >= 0) fill(fill, 0, total);
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i)
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return result;
}

}  // namespace

FockBlock FockBlock::build(int n_pairs, int n_a, int n_b) {
  if (n_pairs < 1) throw std::invalid_argument("need >= 1 mode pair");
  if (n_a < 0 || n_b < 0)
    throw std::invalid_argument("boson totals must be nonnegative");
  FockBlock block;
  block.n_pairs = n_pairs;
  block.n_a = n_a;
  block.n_b = n_b;
  block.occ_a = compositions(n_a, n_pairs);
  block.occ_b = compositions(n_b, n_pairs);
  block.dim_a = static_cast<std::int64_t>(block.occ_a.size());
  block.dim_b = static_cast<std::int64_t>(block.occ_b.size());
  block.dimension = block.dim_a * block.dim_b;
  const double expected_a = binomial(n_a + n_pairs - 1, n_pairs - 1);
  const double expected_b = binomial(n_b + n_pairs - 1, n_pairs - 1);
  if (block.dim_a != static_cast<std::int64_t>(std::llround(expected_a)) ||
      block.dim_b != static_cast<std::int64_t>(std::llround(expected_b)))
    throw std::logic_error("composition count mismatch");
  for (std::int64_t k = 0; k < block.dim_a; ++k)
    block.index_a_[block.occ_a[k]] = k;
  for (std::int64_t k = 0; k < block.dim_b; ++k)
    block.index_b_[block.occ_b[k]] = k;
  return block;
}

std::int64_t FockBlock::index_a(const std::vector<int>& occ) const {
  const auto it = index_a_.find(occ);
  return it == index_a_.end() ? -1 : it->second;
}

std::int64_t FockBlock::index_b(const std::vector<int>& occ) const {
  const auto it = index_b_.find(occ);
  return it == index_b_.end() ? -1 : it->second;
}

FockUniverse::FockUniverse(int n_pairs, int n_a, int n_b, int k_max)
    : n_pairs_(n_pairs), n_a_(n_a), n_b_(n_b), k_max_(k_max) {
  if (k_max < 1)
    throw std::invalid_argument(
        "universe needs k_max >= 1: G^2 only closes on the central block "
        "with the neighbor blocks present");
  if (n_a < 0 || n_b < 0 || n_a + n_b < 1)
    throw std::invalid_argument("need at least one boson");

  std::int64_t dim = 0;
  std::vector<BlockTotals> totals;
  for (int k = -k_max; k <= k_max; ++k) {
    const int a = n_a + k;
    const int b = n_b - k;
    if (a < 0 || b < 0) continue;
    if (a == n_a) central_ = blocks_.size();
    offsets_.push_back(dim);
    blocks_.push_back(FockBlock::build(n_pairs, a, b));
    dim += blocks_.back().dimension;
  }
  std::vector<BlockTotals> block_totals;
  for (const auto& b : blocks_) block_totals.push_back({b.n_a, b.n_b});
  space_ = HilbertSpace::fock_blocks(n_pairs, std::move(block_totals), dim);
}

std::int64_t FockUniverse::index(std::size_t block, std::int64_t ia,
                                 std::int64_t ib) const {
  return offsets_[block] + ia * blocks_[block].dim_b + ib;
}

std::size_t FockUniverse::block_of(std::int64_t index) const {
  for (std::size_t k = blocks_.size(); k-- > 0;)
    if (index >= offsets_[k]) return k;
  throw std::out_of_range("index outside universe");
}

namespace {

/// Applies the tunneling amplitudes out of one basis state, forwarding each
/// (target occupations, amplitude) to the sink. Targets may lie outside the
/// universe; the caller decides what to do with those.
template <typename Sink>
void for_each_transfer(const FockUniverse& u, std::size_t block_index,
                       std::int64_t ia, std::int64_t ib, Sink&& sink) {
  const FockBlock& block = u.blocks()[block_index];
  const std::vector<int>& a = block.occ_a[ia];
  const std::vector<int>& b = block.occ_b[ib];
  for (int i = 0; i < u.n_pairs(); ++i) {
    // a_i^dag b_i : (n_a, n_b) -> (n_a + 1, n_b - 1)
    if (b[i] > 0) {
      const double amp = -0.5 * std::sqrt((a[i] + 1.0) * b[i]);
      std::vector<int> ta = a, tb = b;
      ++ta[i];
      --tb[i];
      sink(block.n_a + 1, block.n_b - 1, std::move(ta), std::move(tb), amp);
    }
    // b_i^dag a_i : (n_a, n_b) -> (n_a - 1, n_b + 1)
    if (a[i] > 0) {
      const double amp = -0.5 * std::sqrt(a[i] * (b[i] + 1.0));
      std::vector<int> ta = a, tb = b;
      --ta[i];
      ++tb[i];
      sink(block.n_a - 1, block.n_b + 1, std::move(ta), std::move(tb), amp);
    }
  }
}

std::int64_t locate(const FockUniverse& u, int n_a,
                    const std::vector<int>& occ_a,
                    const std::vector<int>& occ_b) {
  for (std::size_t k = 0; k < u.blocks().size(); ++k) {
    if (u.blocks()[k].n_a != n_a) continue;
    const std::int64_t ia = u.blocks()[k].index_a(occ_a);
    const std::int64_t ib = u.blocks()[k].index_b(occ_b);
    if (ia < 0 || ib < 0) throw std::logic_error("occupation lookup failed");
    return u.index(k, ia, ib);
  }
  return -1;  // outside the universe
}

}  // namespace

Operator tunneling_generator(const FockUniverse& u) {
  const std::int64_t dim = u.dimension();
  Matrix g = Matrix::Zero(dim, dim);
  for (std::size_t blk = 0; blk < u.blocks().size(); ++blk) {
    const FockBlock& block = u.blocks()[blk];
    for (std::int64_t ia = 0; ia < block.dim_a; ++ia)
      for (std::int64_t ib = 0; ib < block.dim_b; ++ib) {
        const std::int64_t source = u.index(blk, ia, ib);
        for_each_transfer(u, blk, ia, ib,
                          [&](int target_na, int, std::vector<int> ta,
                              std::vector<int> tb, double amp) {
                            const std::int64_t target =
                                locate(u, target_na, ta, tb);
                            if (target >= 0) g(target, source) += amp;
                          });
      }
  }
  return Operator::hermitian(u.space(), std::move(g));
}

SectorProjector number_projector(const FockUniverse& u, int n_a) {
  bool found = false;
  Matrix p = Matrix::Zero(u.dimension(), u.dimension());
  for (std::size_t blk = 0; blk < u.blocks().size(); ++blk) {
    if (u.blocks()[blk].n_a != n_a) continue;
    found = true;
    const std::int64_t offset = u.offsets()[blk];
    for (std::int64_t k = 0; k < u.blocks()[blk].dimension; ++k)
      p(offset + k, offset + k) = 1.0;
  }
  if (!found)
    throw std::invalid_argument("N_A = " + std::to_string(n_a) +
                                " has no block in this universe");
  return SectorProjector(Operator::hermitian(u.space(), std::move(p)),
                         {SectorKind::BosonNumber, static_cast<double>(n_a)});
}

Vector ideal_bec_vector(const FockUniverse& u) {
  // (sum_i a_i^dag)^{N_A} |vac> = sum_n N_A!/prod(n_i!) prod (a_i^dag)^{n_i},
  // and (a^dag)^n |0> = sqrt(n!) |n>, so the |n> amplitude is
  // N_A!/sqrt(prod n_i!) up to overall normalization.
  const FockBlock& block = u.blocks()[u.central_block()];
  auto amplitudes = [&](const std::vector<std::vector<int>>& occs) {
    Eigen::VectorXd amps(occs.size());
    for (std::size_t k = 0; k < occs.size(); ++k) {
      double log_prod = 0.0;
      for (const int n : occs[k]) log_prod += std::lgamma(n + 1.0);
      amps[k] = std::exp(-0.5 * log_prod);
    }
    amps /= amps.norm();
    return amps;
  };
  const Eigen::VectorXd amp_a = amplitudes(block.occ_a);
  const Eigen::VectorXd amp_b = amplitudes(block.occ_b);
  Vector psi = Vector::Zero(u.dimension());
  for (std::int64_t ia = 0; ia < block.dim_a; ++ia)
    for (std::int64_t ib = 0; ib < block.dim_b; ++ib)
      psi[u.index(u.central_block(), ia, ib)] = amp_a[ia] * amp_b[ib];
  return psi;
}

DensityOperator ideal_bec_state(const FockUniverse& u) {
  return DensityOperator::pure(u.space(), ideal_bec_vector(u));
}

Vector fock_product_vector(const FockUniverse& u, const std::vector<int>& occ_a,
                           const std::vector<int>& occ_b) {
  const FockBlock& block = u.blocks()[u.central_block()];
  const std::int64_t ia = block.index_a(occ_a);
  const std::int64_t ib = block.index_b(occ_b);
  if (ia < 0 || ib < 0)
    throw std::invalid_argument(
        "occupations do not match the central block totals");
  Vector psi = Vector::Zero(u.dimension());
  psi[u.index(u.central_block(), ia, ib)] = 1.0;
  return psi;
}

Spdm::Spdm(Eigen::MatrixXcd entries, double expected_trace)
    : m(std::move(entries)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SPDM must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("SPDM must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("SPDM must be positive semidefinite");
  if (expected_trace >= 0.0 &&
      std::abs(m.trace().real() - expected_trace) > 1e-10)
    throw std::invalid_argument("SPDM trace does not match the boson total");
}

namespace {

/// <c_i^dag c_j> over the A (side=0) or B (side=1) modes of a pure state.
Eigen::MatrixXcd one_body_matrix(const FockUniverse& u, const Vector& psi,
                                 int side) {
  if (psi.size() != u.dimension())
    throw std::invalid_argument("state size does not match universe");
  const int n = u.n_pairs();
  Eigen::MatrixXcd rho1 = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t blk = 0; blk < u.blocks().size(); ++blk) {
    const FockBlock& block = u.blocks()[blk];
    for (std::int64_t ia = 0; ia < block.dim_a; ++ia)
      for (std::int64_t ib = 0; ib < block.dim_b; ++ib) {
        const std::int64_t source = u.index(blk, ia, ib);
        const Complex amp = psi[source];
        if (amp == Complex(0.0, 0.0)) continue;
        const std::vector<int>& occ = side == 0 ? block.occ_a[ia]
                                                : block.occ_b[ib];
        for (int j = 0; j < n; ++j) {
          if (occ[j] == 0) continue;
          // diagonal: number operator
          rho1(j, j) += std::conj(amp) * amp * static_cast<double>(occ[j]);
          for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            std::vector<int> target = occ;
            --target[j];
            ++target[i];
            const double factor = std::sqrt(occ[j] * (occ[i] + 1.0));
            std::int64_t target_index;
            if (side == 0) {
              const std::int64_t ta = block.index_a(target);
              if (ta < 0) throw std::logic_error("index lookup failed");
              target_index = u.index(blk, ta, ib);
            } else {
              const std::int64_t tb = block.index_b(target);
              if (tb < 0) throw std::logic_error("index lookup failed");
              target_index = u.index(blk, ia, tb);
            }
            rho1(i, j) += std::conj(psi[target_index]) * factor * amp;
          }
        }
      }
  }
  rho1 = 0.5 * (rho1 + rho1.adjoint().eval());
  return rho1;
}

}  // namespace

Spdm spdm_a(const FockUniverse& u, const Vector& psi) {
  return Spdm(one_body_matrix(u, psi, 0));
}

Spdm spdm_b(const FockUniverse& u, const Vector& psi) {
  return Spdm(one_body_matrix(u, psi, 1));
}

double qfi_closed_form(const Spdm& a, const Spdm& b) {
  if (a.modes() != b.modes())
    throw std::invalid_argument("SPDMs must have equal mode counts");
  // sum_{ij} <a_i^dag a_j><b_j^dag b_i> = Tr(A B) with M_ij = <c_i^dag c_j>.
  const Complex cross = (a.m * b.m).trace();
  return a.total() + b.total() + 2.0 * cross.real();
}

double separable_bound(int n_modes, double n_a, double n_b) {
  if (n_modes < 1) throw std::invalid_argument("need >= 1 mode");
  return n_modes * (n_a + n_b + 2.0 * n_a * n_b);
}

CoherenceWitness coherence_witness(const Spdm& a, int n_b, int n_modes) {
  if (n_modes != a.modes())
    throw std::invalid_argument("mode count does not match SPDM");
  CoherenceWitness w;
  w.statistic = a.m.sum().real() - a.m.trace().real();
  w.excess_over_separable =
      2.0 * (static_cast<double>(n_b) / n_modes) * w.statistic;
  w.entangled = w.statistic > 1e-10;
  return w;
}

namespace {

struct SpillEntry {
  std::int64_t source;
  double amplitude;
  std::int64_t spill_row;
};

/// Generator amplitudes that leave the universe, as a sparse rectangular
/// matrix S (spill basis x universe). Exact <G^2> for a state rho equals
/// Tr(rho G_trunc^2) + Tr(S rho S^dag); the second term is the truncation
/// residual.
std::vector<SpillEntry> spill_matrix(const FockUniverse& u) {
  std::vector<SpillEntry> entries;
  std::map<std::pair<int, std::pair<std::vector<int>, std::vector<int>>>,
           std::int64_t>
      spill_index;
  for (std::size_t blk = 0; blk < u.blocks().size(); ++blk) {
    const FockBlock& block = u.blocks()[blk];
    for (std::int64_t ia = 0; ia < block.dim_a; ++ia)
      for (std::int64_t ib = 0; ib < block.dim_b; ++ib) {
        const std::int64_t source = u.index(blk, ia, ib);
        for_each_transfer(
            u, blk, ia, ib,
            [&](int target_na, int, std::vector<int> ta, std::vector<int> tb,
                double amp) {
              if (locate(u, target_na, ta, tb) >= 0) return;
              const auto key = std::make_pair(
                  target_na, std::make_pair(std::move(ta), std::move(tb)));
              const auto [it, inserted] = spill_index.try_emplace(
                  key, static_cast<std::int64_t>(spill_index.size()));
              entries.push_back({source, amp, it->second});
            });
      }
  }
  return entries;
}

double truncation_residual(const FockUniverse& u, const Matrix& rho) {
  const std::vector<SpillEntry> spill = spill_matrix(u);
  // Tr(S rho S^dag) = sum_{rows r} sum_{s,s' in row r} S_rs rho_ss' conj(S_rs')
  std::map<std::int64_t, std::vector<const SpillEntry*>> by_row;
  for (const auto& e : spill) by_row[e.spill_row].push_back(&e);
  double residual = 0.0;
  for (const auto& [row, list] : by_row) {
    Complex value(0.0, 0.0);
    for (const auto* e1 : list)
      for (const auto* e2 : list)
        value += e1->amplitude * rho(e1->source, e2->source) * e2->amplitude;
    residual += value.real();
  }
  return residual;
}

// Pure state: Tr(S psi psi^dag S^dag) = |S psi|^2.
double truncation_residual(const FockUniverse& u, const Vector& psi) {
  const std::vector<SpillEntry> spill = spill_matrix(u);
  std::map<std::int64_t, Complex> row_amplitude;
  for (const auto& e : spill)
    row_amplitude[e.spill_row] += e.amplitude * psi[e.source];
  double residual = 0.0;
  for (const auto& [row, amp] : row_amplitude) residual += std::norm(amp);
  return residual;
}

void require_closure(double residual, double scale) {
  if (residual > 1e-10 * std::max(1.0, scale))
    throw TruncationError(
        "universe too small: <G^2> via closure disagrees with the matrix "
        "square by " + std::to_string(residual));
}

}  // namespace

double brute_force_qfi(const FockUniverse& u, const DensityOperator& rho,
                       const Operator& g) {
  require_same_space(rho.op(), g, "brute_force_qfi");
  if (!(rho.space() == u.space()))
    throw std::invalid_argument("state does not live on the universe");
  const double g2 = (rho.matrix() * g.matrix() * g.matrix()).trace().real();
  require_closure(truncation_residual(u, rho.matrix()), std::abs(g2));
  return qfi(rho, g);
}

double brute_force_qfi(const FockUniverse& u, const Vector& psi,
                       const Operator& g) {
  if (psi.size() != u.dimension())
    throw std::invalid_argument("state size does not match universe");
  const double norm2 = psi.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw std::invalid_argument("state vector must be normalized");
  const Vector g_psi = g.matrix() * psi;
  const double g2 = g_psi.squaredNorm();
  require_closure(truncation_residual(u, psi), g2);
  const Complex mean = psi.dot(g_psi);
  // Rank-one spectral reduction of the QFI sum: the only populated
  // eigenvector is psi itself, every cross term carries weight 4 p_0.
  return 4.0 * (g2 - std::norm(mean));
}

}  // namespace symproj
