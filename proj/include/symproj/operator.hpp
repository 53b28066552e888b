#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "symproj/hilbert.hpp"

namespace symproj {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Axis { X, Y, Z };

Axis axis_from_string(const std::string& s);
std::string to_string(Axis a);

/// Numerical tolerances for the structural invariants of operators and
/// states. Defaults sit at the double-precision eigensolver noise floor.
struct ValidationTolerances {
  double hermiticity = 1e-12;
  double positivity = 1e-10;
  double trace = 1e-10;
};

/// Dense operator on a labeled Hilbert space.
///
/// The matrix is square and its size matches the space dimension; both are
/// checked at construction. An operator tagged Hermitian has been verified
/// to satisfy max|A - A^dag| <= 1e-12 entrywise.
class Operator {
 public:
  /// General (possibly non-Hermitian) operator.
  Operator(HilbertSpace space, Matrix entries);

  /// Verifies hermiticity before tagging; throws std::invalid_argument on
  /// residual above tol.
  static Operator hermitian(HilbertSpace space, Matrix entries,
                            double tol = 1e-12);

  static Operator identity(const HilbertSpace& space);
  static Operator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }
  std::int64_t dimension() const { return space_.dimension(); }
  bool hermitian_tagged() const { return hermitian_; }

  Operator adjoint() const;
  Complex trace() const { return entries_.trace(); }

  /// max entry |A - A^dag|.
  double hermiticity_residual() const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex c, const Operator& a);
  friend Operator operator*(double c, const Operator& a);

 private:
  HilbertSpace space_;
  Matrix entries_;
  bool hermitian_ = false;
};

/// Checks that two operators live on the same space; throws
/// std::invalid_argument otherwise.
void require_same_space(const Operator& a, const Operator& b,
                        const char* context);

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  /// Validating constructor: hermiticity within tol.hermiticity, eigenvalues
  /// >= -tol.positivity, trace = 1 within tol.trace.
  explicit DensityOperator(Operator op, ValidationTolerances tol = {});

  /// Normalized pure state |psi><psi|. PSD by construction.
  static DensityOperator pure(HilbertSpace space, const Vector& psi);

  /// For internal factories whose output is PSD by construction (unitary
  /// conjugation, projected Wishart, sector splits). Hermiticity and trace
  /// are still checked; the O(d^3) eigenvalue check is skipped.
  static DensityOperator from_psd(Operator op, ValidationTolerances tol = {});

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const HilbertSpace& space() const { return op_.space(); }
  std::int64_t dimension() const { return op_.dimension(); }

  double purity() const;

 private:
  struct Unchecked {};
  DensityOperator(Operator op, Unchecked) : op_(std::move(op)) {}

  Operator op_;
};

/// Eigensystem of a Hermitian operator: ascending eigenvalues, unitary
/// matrix of eigenvector columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  /// max entry |V diag(lambda) V^dag - A|.
  double reconstruction_error(const Matrix& source) const;
  /// max entry |V^dag V - 1|.
  double unitarity_residual() const;
};

/// Diagonalizes a Hermitian operator. Throws std::invalid_argument when the
/// hermiticity residual exceeds 1e-12.
SpectralDecomposition spectral_decompose(const Operator& a);

/// Kronecker product. Defined for spin registers; the result lives on the
/// combined register.
Operator tensor(const Operator& a, const Operator& b);

/// Pauli matrix on one site of an N-spin register, identity elsewhere.
/// Site 0 is the leftmost tensor factor (most significant bit); basis state
/// |0> on a site means sigma^z = +1.
Operator pauli_on_site(Axis axis, int site, int n_sites);

/// Collective spin J^a = sum_i sigma_i^a / 2 on the 2^N register.
Operator collective_spin(Axis axis, int n_sites);

/// Reusable propagator for one Hermitian generator: e^{-iHt} through the
/// spectral decomposition, exact and unitary to machine precision.
class Evolver {
 public:
  explicit Evolver(const Operator& h);

  Matrix unitary(double t) const;
  DensityOperator state(const DensityOperator& rho, double t) const;
  Vector state(const Vector& psi, double t) const;

  const SpectralDecomposition& decomposition() const { return eig_; }
  const HilbertSpace& space() const { return space_; }

 private:
  HilbertSpace space_;
  SpectralDecomposition eig_;
};

/// e^{-iHt} rho e^{+iHt}. For repeated times with one H, use Evolver.
DensityOperator evolve(const DensityOperator& rho, const Operator& h,
                       double t);

/// Tr(rho O).
Complex expectation(const DensityOperator& rho, const Operator& o);

/// <O^2> - <O>^2 for Hermitian O. Nonnegative up to eigensolver noise.
double variance(const DensityOperator& rho, const Operator& o);

// Debug serialization: row-major complex-pair JSON dump (see README for the
// format).
std::string to_json_string(const Operator& op);
Operator operator_from_json_string(const std::string& text);
void save_operator_json(const Operator& op, const std::string& path);
Operator load_operator_json(const std::string& path);

}  // namespace symproj
