// qmat.hpp -- dense complex linear algebra and state bookkeeping for small
// qubit registers (at most 6 qubits, dimension 64).
//
// Conventions:
//   |0> is horizontal polarization ("up"), |1> is vertical ("down").
//   Basis order is big-endian: qubit 0 (photon 1) is the slowest index, so
//   the ket string "010" maps to index 0b010 = 2.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nssbell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 6;

/// Thrown when operands have incompatible dimensions or a value violates
/// the invariants of its type.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of qubits n with 2^n == dim, or -1 if dim is not a power of two.
int qubits_for_dimension(Eigen::Index dim);

// ---------------------------------------------------------------------------
// Basic operators
// ---------------------------------------------------------------------------

Matrix identity(Eigen::Index dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Kronecker product; `a` is the slow index.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// a ⊗ a ⊗ ... (n factors). n == 0 yields the 1x1 identity.
Matrix kron_power(const Matrix& a, int n);

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

class PureState {
 public:
  /// Validates length 2^n (1 <= n <= 6) and unit norm to 1e-12.
  static PureState from_amplitudes(Vector amplitudes);

  /// Computational basis ket from a bit string such as "010".
  static PureState basis(std::string_view bits);

  const Vector& amplitudes() const { return amplitudes_; }
  int qubits() const { return qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }

  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  PureState(Vector amplitudes, int qubits)
      : amplitudes_(std::move(amplitudes)), qubits_(qubits) {}

  Vector amplitudes_;
  int qubits_;
};

// ---------------------------------------------------------------------------
// DensityOperator
// ---------------------------------------------------------------------------

struct DensityCheck {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |Tr(rho) - 1|
  double min_eigenvalue = 0.0;

  bool ok() const;
};

/// Measures how far `m` is from being a valid density matrix.
DensityCheck check_density(const Matrix& m);

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenFloor = -1e-10;

class DensityOperator {
 public:
  /// Validates the Hermitian, unit-trace and PSD invariants.
  static DensityOperator from_matrix(Matrix m);
  static DensityOperator from_pure(const PureState& psi);
  static DensityOperator maximally_mixed(int qubits);

  const Matrix& matrix() const { return matrix_; }
  int qubits() const { return qubits_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

 private:
  DensityOperator(Matrix m, int qubits) : matrix_(std::move(m)), qubits_(qubits) {}

  Matrix matrix_;
  int qubits_;
};

// ---------------------------------------------------------------------------
// Observable
// ---------------------------------------------------------------------------

class Observable {
 public:
  /// Validates squareness and Hermiticity to 1e-12.
  static Observable from_matrix(Matrix m);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

 private:
  explicit Observable(Matrix m) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
Observable tensor(const Observable& a, const Observable& b);

/// Reduced operator on the subsystems listed in `keep` (ascending order is
/// not required; the result keeps the original relative order). `dims` are
/// the subsystem dimensions, slowest first.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& dims,
                              const std::vector<int>& keep);

/// Tr(rho * obs). Throws if the imaginary part exceeds 1e-10.
double expectation(const DensityOperator& rho, const Observable& obs);
double expectation(const Matrix& rho, const Matrix& obs);

/// (1/2) * sum |eig(rho - sigma)|.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// |<psi|rho|psi>| style fidelity for a pure reference: <psi|rho|psi>.
double fidelity(const Vector& psi, const Matrix& rho);

}  // namespace nssbell
