#include "nssbell/qmat.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace nssbell {

int qubits_for_dimension(Eigen::Index dim) {
  for (int n = 0; n <= 30; ++n) {
    if ((Eigen::Index{1} << n) == dim) return n;
  }
  return -1;
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0),
       Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix kron_power(const Matrix& a, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, a);
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  return m.rows() == m.cols() &&
         max_abs(m * m.adjoint() - identity(m.rows())) <= tol;
}

// ---------------------------------------------------------------------------

PureState PureState::from_amplitudes(Vector amplitudes) {
  const int n = qubits_for_dimension(amplitudes.size());
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("PureState: length must be 2^n with 1 <= n <= 6");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) {
    throw InvariantError("PureState: amplitudes are not unit norm");
  }
  return PureState(std::move(amplitudes), n);
}

PureState PureState::basis(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("PureState::basis: need 1..6 bits");
  }
  Eigen::Index index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw InvariantError("PureState::basis: bit string must contain only 0/1");
    }
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v(index) = 1.0;
  return PureState(std::move(v), n);
}

// ---------------------------------------------------------------------------

bool DensityCheck::ok() const {
  return hermiticity_error <= kHermitianTol && trace_error <= kTraceTol &&
         min_eigenvalue >= kEigenFloor;
}

DensityCheck check_density(const Matrix& m) {
  DensityCheck c;
  c.hermiticity_error = max_abs(m - m.adjoint());
  c.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

DensityOperator DensityOperator::from_matrix(Matrix m) {
  if (m.rows() != m.cols()) throw DimensionError("DensityOperator: matrix not square");
  const int n = qubits_for_dimension(m.rows());
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("DensityOperator: dimension must be 2^n with 1 <= n <= 6");
  }
  const DensityCheck c = check_density(m);
  if (!c.ok()) {
    throw InvariantError("DensityOperator: invariants violated (herm=" +
                         std::to_string(c.hermiticity_error) +
                         ", trace=" + std::to_string(c.trace_error) +
                         ", min_eig=" + std::to_string(c.min_eigenvalue) + ")");
  }
  return DensityOperator(std::move(m), n);
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.projector(), psi.qubits());
}

DensityOperator DensityOperator::maximally_mixed(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw DimensionError("DensityOperator::maximally_mixed: need 1..6 qubits");
  }
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return DensityOperator(identity(d) / static_cast<double>(d), qubits);
}

Observable Observable::from_matrix(Matrix m) {
  if (m.rows() != m.cols()) throw DimensionError("Observable: matrix not square");
  if (!is_hermitian(m, kHermitianTol)) throw InvariantError("Observable: not Hermitian");
  return Observable(std::move(m));
}

// ---------------------------------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
  if (a.qubits() + b.qubits() > kMaxQubits) {
    throw DimensionError("tensor: more than 6 qubits");
  }
  return PureState::from_amplitudes(kron(a.amplitudes(), b.amplitudes()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  if (a.qubits() + b.qubits() > kMaxQubits) {
    throw DimensionError("tensor: more than 6 qubits");
  }
  return DensityOperator::from_matrix(kron(a.matrix(), b.matrix()));
}

Observable tensor(const Observable& a, const Observable& b) {
  return Observable::from_matrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial_trace: matrix not square");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: subsystem dimension < 1");
    total *= d;
  }
  if (total != m.rows()) {
    throw DimensionError("partial_trace: product of dims does not match matrix dimension");
  }
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int idx : keep) {
    if (idx < 0 || idx >= k || kept[idx]) {
      throw DimensionError("partial_trace: invalid or repeated keep index");
    }
    kept[idx] = true;
  }

  // Strides of the full index (big-endian: subsystem 0 slowest).
  std::vector<Eigen::Index> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> kept_ids, traced_ids;
  for (int s = 0; s < k; ++s) (kept[s] ? kept_ids : traced_ids).push_back(s);

  Eigen::Index dk = 1, dt = 1;
  for (int s : kept_ids) dk *= dims[s];
  for (int s : traced_ids) dt *= dims[s];

  // Offset into the full index contributed by a mixed-radix counter over
  // the given subsystems.
  auto offset = [&](Eigen::Index counter, const std::vector<int>& ids) {
    Eigen::Index off = 0;
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
      const int s = *it;
      off += (counter % dims[s]) * stride[s];
      counter /= dims[s];
    }
    return off;
  };

  std::vector<Eigen::Index> kept_off(dk), traced_off(dt);
  for (Eigen::Index i = 0; i < dk; ++i) kept_off[i] = offset(i, kept_ids);
  for (Eigen::Index t = 0; t < dt; ++t) traced_off[t] = offset(t, traced_ids);

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) {
        acc += m(kept_off[i] + traced_off[t], kept_off[j] + traced_off[t]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& dims,
                              const std::vector<int>& keep) {
  return DensityOperator::from_matrix(partial_trace(rho.matrix(), dims, keep));
}

double expectation(const Matrix& rho, const Matrix& obs) {
  if (rho.rows() != obs.rows() || rho.cols() != obs.cols()) {
    throw DimensionError("expectation: dimension mismatch");
  }
  const Complex v = (rho * obs).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw InvariantError("expectation: imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

double expectation(const DensityOperator& rho, const Observable& obs) {
  return expectation(rho.matrix(), obs.matrix());
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  const Matrix diff = rho - sigma;
  const Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

double fidelity(const Vector& psi, const Matrix& rho) {
  if (psi.size() != rho.rows()) throw DimensionError("fidelity: dimension mismatch");
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

}  // namespace nssbell
