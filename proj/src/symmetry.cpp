#include "symproj/symmetry.hpp"

#include <bit>
#include <cmath>

#include "symproj/rng.hpp"

namespace symproj {

std::string to_string(SectorKind k) {
  switch (k) {
    case SectorKind::ParityX: return "parity-x";
    case SectorKind::ParityZ: return "parity-z";
    case SectorKind::Magnetization: return "magnetization";
    case SectorKind::BosonNumber: return "boson-number";
  }
  return "?";
}

SectorProjector::SectorProjector(Operator op, SectorLabel label)
    : op_(std::move(op)), label_(label) {
  const double herm = op_.hermiticity_residual();
  if (herm > 1e-12)
    throw std::invalid_argument("projector hermiticity residual " +
                                std::to_string(herm));
  const double idem =
      (op_.matrix() * op_.matrix() - op_.matrix()).cwiseAbs().maxCoeff();
  if (idem > 1e-12)
    throw std::invalid_argument("projector idempotency residual " +
                                std::to_string(idem));
  const double tr = op_.trace().real();
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) > 1e-8)
    throw std::invalid_argument("projector trace " + std::to_string(tr) +
                                " is not an integer rank");
  rank_ = static_cast<std::int64_t>(rounded);
}

Matrix SectorProjector::complement_matrix() const {
  return Matrix::Identity(op_.dimension(), op_.dimension()) - op_.matrix();
}

SectorProjector parity_projector(Axis axis, int sector, int n_sites) {
  if (axis == Axis::Y)
    throw std::invalid_argument("parity projector takes axis x or z");
  if (sector != 1 && sector != -1)
    throw std::invalid_argument("sector must be +1 (even) or -1 (odd)");
  const HilbertSpace space = HilbertSpace::spin_register(n_sites);
  Matrix parity = Matrix::Identity(space.dimension(), space.dimension());
  for (int site = 0; site < n_sites; ++site)
    parity = pauli_on_site(axis, site, n_sites).matrix() * parity;
  Matrix p = 0.5 * (Matrix::Identity(space.dimension(), space.dimension()) +
                    static_cast<double>(sector) * parity);
  const SectorKind kind =
      axis == Axis::X ? SectorKind::ParityX : SectorKind::ParityZ;
  return SectorProjector(Operator::hermitian(space, std::move(p)),
                         {kind, static_cast<double>(sector)});
}

SectorProjector magnetization_projector(double m, int n_sites) {
  const HilbertSpace space = HilbertSpace::spin_register(n_sites);
  // J^z eigenvalue of basis state b is N/2 - popcount(b); m must be one of
  // those, i.e. N/2 - m a whole number of down spins.
  const double ups = n_sites / 2.0 + m;
  const double rounded = std::round(ups);
  if (std::abs(ups - rounded) > 1e-9 || rounded < 0 || rounded > n_sites)
    throw std::invalid_argument("m = " + std::to_string(m) +
                                " is not a J^z eigenvalue for N = " +
                                std::to_string(n_sites));
  const int n_up = static_cast<int>(rounded);
  Matrix p = Matrix::Zero(space.dimension(), space.dimension());
  for (std::int64_t b = 0; b < space.dimension(); ++b) {
    const int downs = std::popcount(static_cast<std::uint64_t>(b));
    if (n_sites - downs == n_up) p(b, b) = 1.0;
  }
  return SectorProjector(Operator::hermitian(space, std::move(p)),
                         {SectorKind::Magnetization, m});
}

SupportCheck is_supported_in_sector(const DensityOperator& rho,
                                    const SectorProjector& p, double tol) {
  require_same_space(rho.op(), p.op(), "is_supported_in_sector");
  const Matrix& pm = p.matrix();
  const double residual =
      (pm * rho.matrix() * pm - rho.matrix()).cwiseAbs().maxCoeff();
  return {residual <= tol, residual};
}

OffDiagonalCheck is_off_diagonal(const Operator& g, const SectorProjector& p,
                                 double tol) {
  require_same_space(g, p.op(), "is_off_diagonal");
  if (g.hermiticity_residual() > 1e-12)
    throw std::invalid_argument("is_off_diagonal needs a Hermitian generator");
  const Matrix& pm = p.matrix();
  const Matrix q = p.complement_matrix();
  const Matrix gp = g.matrix() * pm;
  const double diag = (pm * gp).cwiseAbs().maxCoeff();
  const Matrix cross = pm * g.matrix() * q + q * gp;
  const double completeness = (cross - g.matrix()).cwiseAbs().maxCoeff();
  return {diag <= tol && completeness <= tol, diag, completeness};
}

SectorSplit sector_split(const DensityOperator& rho,
                         const SectorProjector& p) {
  require_same_space(rho.op(), p.op(), "sector_split");
  constexpr double kEmpty = 1e-14;
  const Matrix& pm = p.matrix();
  const Matrix q = p.complement_matrix();
  Matrix in = pm * rho.matrix() * pm;
  Matrix out = q * rho.matrix() * q;

  SectorSplit split;
  split.weight_in = in.trace().real();
  split.weight_out = out.trace().real();
  if (split.weight_in >= kEmpty) {
    in /= split.weight_in;
    in = 0.5 * (in + in.adjoint().eval());
    split.in_sector =
        DensityOperator::from_psd(Operator(rho.space(), std::move(in)));
  }
  if (split.weight_out >= kEmpty) {
    out /= split.weight_out;
    out = 0.5 * (out + out.adjoint().eval());
    split.complement =
        DensityOperator::from_psd(Operator(rho.space(), std::move(out)));
  }
  return split;
}

Matrix sector_basis(const SectorProjector& p) {
  const SpectralDecomposition eig = spectral_decompose(p.op());
  Matrix basis(p.op().dimension(), p.rank());
  std::int64_t col = 0;
  // Ascending eigenvalues: the range eigenvectors (eigenvalue 1) sit at the
  // tail.
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] > 0.5) {
      if (col >= p.rank()) throw std::runtime_error("projector rank mismatch");
      basis.col(col++) = eig.eigenvectors.col(k);
    }
  }
  if (col != p.rank()) throw std::runtime_error("projector rank mismatch");
  return basis;
}

DensityOperator random_density_in_sector(const SectorProjector& p,
                                         std::int64_t rank,
                                         std::uint64_t seed) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (rank > p.rank())
    throw std::invalid_argument("rank " + std::to_string(rank) +
                                " exceeds sector dimension " +
                                std::to_string(p.rank()));
  const std::int64_t dim = p.op().dimension();
  Rng rng(seed);
  Matrix x(dim, rank);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < rank; ++c) x(r, c) = rng.complex_gaussian();
  const Matrix projected = p.matrix() * x;
  Matrix rho = projected * projected.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityOperator::from_psd(Operator(p.space(), std::move(rho)));
}

}  // namespace symproj
