#include "symproj/operator.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "symproj/rng.hpp"

namespace symproj {

Axis axis_from_string(const std::string& s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw std::invalid_argument("unknown axis '" + s + "'");
}

std::string to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::Matrix2cd pauli_matrix(Axis axis) {
  Eigen::Matrix2cd s;
  const Complex i(0.0, 1.0);
  switch (axis) {
    case Axis::X: s << 0, 1, 1, 0; break;
    case Axis::Y: s << 0, -i, i, 0; break;
    case Axis::Z: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

Operator::Operator(HilbertSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("operator matrix must be square");
  if (entries_.rows() != space_.dimension())
    throw std::invalid_argument("operator matrix size " +
                                std::to_string(entries_.rows()) +
                                " does not match " + space_.describe());
}

Operator Operator::hermitian(HilbertSpace space, Matrix entries, double tol) {
  Operator op(std::move(space), std::move(entries));
  const double res = op.hermiticity_residual();
  if (res > tol)
    throw std::invalid_argument("hermiticity residual " + std::to_string(res) +
                                " above tolerance");
  op.hermitian_ = true;
  return op;
}

Operator Operator::identity(const HilbertSpace& space) {
  Operator op(space, Matrix::Identity(space.dimension(), space.dimension()));
  op.hermitian_ = true;
  return op;
}

Operator Operator::zero(const HilbertSpace& space) {
  Operator op(space, Matrix::Zero(space.dimension(), space.dimension()));
  op.hermitian_ = true;
  return op;
}

Operator Operator::adjoint() const {
  Operator out(space_, entries_.adjoint());
  out.hermitian_ = hermitian_;
  return out;
}

double Operator::hermiticity_residual() const {
  return max_abs(entries_ - entries_.adjoint());
}

void require_same_space(const Operator& a, const Operator& b,
                        const char* context) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument(std::string(context) + ": operands live on " +
                                a.space().describe() + " vs " +
                                b.space().describe());
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator+");
  Operator out(a.space_, a.entries_ + b.entries_);
  out.hermitian_ = a.hermitian_ && b.hermitian_;
  return out;
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator-");
  Operator out(a.space_, a.entries_ - b.entries_);
  out.hermitian_ = a.hermitian_ && b.hermitian_;
  return out;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator*");
  return Operator(a.space_, a.entries_ * b.entries_);
}

Operator operator*(Complex c, const Operator& a) {
  Operator out(a.space_, c * a.entries_);
  out.hermitian_ = a.hermitian_ && c.imag() == 0.0;
  return out;
}

Operator operator*(double c, const Operator& a) {
  return Complex(c, 0.0) * a;
}

DensityOperator::DensityOperator(Operator op, ValidationTolerances tol)
    : op_(std::move(op)) {
  const double herm = op_.hermiticity_residual();
  if (herm > tol.hermiticity)
    throw std::invalid_argument("density operator hermiticity residual " +
                                std::to_string(herm));
  const Complex tr = op_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace)
    throw std::invalid_argument("density operator trace deviates from 1 by " +
                                std::to_string(std::abs(tr - 1.0)));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op_.matrix(),
                                               Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.positivity)
    throw std::invalid_argument("density operator has eigenvalue " +
                                std::to_string(min_eig));
}

DensityOperator DensityOperator::pure(HilbertSpace space, const Vector& psi) {
  if (psi.size() != space.dimension())
    throw std::invalid_argument("state vector size does not match space");
  const double norm = psi.norm();
  if (norm < 1e-14) throw std::invalid_argument("cannot normalize zero vector");
  const Vector v = psi / norm;
  return DensityOperator(Operator(std::move(space), v * v.adjoint()),
                         Unchecked{});
}

DensityOperator DensityOperator::from_psd(Operator op,
                                          ValidationTolerances tol) {
  const double herm = op.hermiticity_residual();
  if (herm > tol.hermiticity)
    throw std::invalid_argument("density operator hermiticity residual " +
                                std::to_string(herm));
  const Complex tr = op.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace)
    throw std::invalid_argument("density operator trace deviates from 1 by " +
                                std::to_string(std::abs(tr - 1.0)));
  return DensityOperator(std::move(op), Unchecked{});
}

double DensityOperator::purity() const {
  return op_.matrix().squaredNorm();  // Tr(rho^2) for Hermitian rho
}

double SpectralDecomposition::reconstruction_error(const Matrix& source) const {
  const Matrix rebuilt = eigenvectors *
                         eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                         eigenvectors.adjoint();
  return (rebuilt - source).cwiseAbs().maxCoeff();
}

double SpectralDecomposition::unitarity_residual() const {
  const Matrix gram = eigenvectors.adjoint() * eigenvectors;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

SpectralDecomposition spectral_decompose(const Operator& a) {
  const double res = a.hermiticity_residual();
  if (res > 1e-12)
    throw std::invalid_argument("spectral_decompose needs a Hermitian operator"
                                " (residual " + std::to_string(res) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator tensor(const Operator& a, const Operator& b) {
  if (a.space().kind() != SpaceKind::SpinRegister ||
      b.space().kind() != SpaceKind::SpinRegister)
    throw std::invalid_argument("tensor is defined for spin registers");
  const HilbertSpace product =
      HilbertSpace::spin_register(a.space().n_sites() + b.space().n_sites());
  Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  Operator out(product, std::move(m));
  if (a.hermitian_tagged() && b.hermitian_tagged())
    out = Operator::hermitian(product, out.matrix());
  return out;
}

Operator pauli_on_site(Axis axis, int site, int n_sites) {
  const HilbertSpace space = HilbertSpace::spin_register(n_sites);
  if (site < 0 || site >= n_sites)
    throw std::invalid_argument("site " + std::to_string(site) +
                                " out of range for N=" + std::to_string(n_sites));
  const Eigen::Matrix2cd s = pauli_matrix(axis);
  const std::int64_t dim = space.dimension();
  // Entrywise Kronecker embedding: site 0 is the most significant bit.
  const std::int64_t stride = std::int64_t{1} << (n_sites - 1 - site);
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const int bit = static_cast<int>((col / stride) & 1);
    for (int row_bit = 0; row_bit < 2; ++row_bit) {
      const Complex amp = s(row_bit, bit);
      if (amp == Complex(0.0, 0.0)) continue;
      const std::int64_t row = bit == row_bit ? col
                               : (row_bit ? col + stride : col - stride);
      m(row, col) = amp;
    }
  }
  return Operator::hermitian(space, std::move(m));
}

Operator collective_spin(Axis axis, int n_sites) {
  const HilbertSpace space = HilbertSpace::spin_register(n_sites);
  Matrix m = Matrix::Zero(space.dimension(), space.dimension());
  for (int site = 0; site < n_sites; ++site)
    m += 0.5 * pauli_on_site(axis, site, n_sites).matrix();
  return Operator::hermitian(space, std::move(m));
}

Evolver::Evolver(const Operator& h)
    : space_(h.space()), eig_(spectral_decompose(h)) {}

Matrix Evolver::unitary(double t) const {
  const Vector phases =
      (Complex(0.0, -t) * eig_.eigenvalues.cast<Complex>().array()).exp();
  return eig_.eigenvectors * phases.asDiagonal() * eig_.eigenvectors.adjoint();
}

DensityOperator Evolver::state(const DensityOperator& rho, double t) const {
  if (!(rho.space() == space_))
    throw std::invalid_argument("evolve: state and generator spaces differ");
  const Matrix u = unitary(t);
  Matrix evolved = u * rho.matrix() * u.adjoint();
  // Unitary conjugation drifts hermiticity only at machine precision;
  // resymmetrize so downstream 1e-12 checks never trip on accumulated noise.
  evolved = 0.5 * (evolved + evolved.adjoint().eval());
  const Complex tr = evolved.trace();
  evolved /= tr.real();
  return DensityOperator::from_psd(Operator(space_, std::move(evolved)));
}

Vector Evolver::state(const Vector& psi, double t) const {
  if (psi.size() != space_.dimension())
    throw std::invalid_argument("evolve: vector size does not match space");
  return unitary(t) * psi;
}

DensityOperator evolve(const DensityOperator& rho, const Operator& h,
                       double t) {
  require_same_space(rho.op(), h, "evolve");
  return Evolver(h).state(rho, t);
}

Complex expectation(const DensityOperator& rho, const Operator& o) {
  require_same_space(rho.op(), o, "expectation");
  return (rho.matrix() * o.matrix()).trace();
}

double variance(const DensityOperator& rho, const Operator& o) {
  require_same_space(rho.op(), o, "variance");
  if (o.hermiticity_residual() > 1e-12)
    throw std::invalid_argument("variance needs a Hermitian observable");
  const Complex mean = expectation(rho, o);
  const Complex second = (rho.matrix() * o.matrix() * o.matrix()).trace();
  return second.real() - mean.real() * mean.real();
}

}  // namespace symproj
