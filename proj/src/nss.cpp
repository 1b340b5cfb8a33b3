#include "nssbell/nss.hpp"

#include "nssbell/su2rep.hpp"

#include <cmath>

namespace nssbell {

Matrix LogicalBasis::isometry() const {
  Matrix v(8, 4);
  v << zero_p, zero_pp, one_p, one_pp;
  return v;
}

const LogicalBasis& logical_basis() {
  static const LogicalBasis basis = [] {
    const SchurBasis sb = schur_basis_3qubit();
    const Matrix v = sb.sector_vectors(sb.sectors.at(1));
    return LogicalBasis{v.col(0), v.col(1), v.col(2), v.col(3)};
  }();
  return basis;
}

const Matrix& code_projector() {
  static const Matrix p = [] {
    const Matrix v = logical_basis().isometry();
    return Matrix(v * v.adjoint());
  }();
  return p;
}

const Matrix& reject_projector() {
  static const Matrix p = identity(8) - code_projector();
  return p;
}

LogicalObservable make_logical_observable(const Matrix& code_matrix) {
  if (code_matrix.rows() != 4 || code_matrix.cols() != 4) {
    throw DimensionError("make_logical_observable: code matrix must be 4x4");
  }
  if (!is_hermitian(code_matrix, kHermitianTol)) {
    throw InvariantError("make_logical_observable: code matrix not Hermitian");
  }
  const Matrix v = logical_basis().isometry();
  return {code_matrix, v * code_matrix * v.adjoint()};
}

LogicalObservable logical_pauli_general(double c_z, double c_x) {
  return make_logical_observable(kron(c_z * pauli_z() + c_x * pauli_x(), identity(2)));
}

LogicalObservable logical_pauli_z() { return logical_pauli_general(1.0, 0.0); }
LogicalObservable logical_pauli_x() { return logical_pauli_general(0.0, 1.0); }

PureState encode(const Eigen::Vector2cd& logical, const Eigen::Vector2cd& gauge) {
  if (std::abs(logical.squaredNorm() - 1.0) > 1e-12 ||
      std::abs(gauge.squaredNorm() - 1.0) > 1e-12) {
    throw InvariantError("encode: logical and gauge vectors must be normalized");
  }
  Vector code(4);
  code << logical(0) * gauge(0), logical(0) * gauge(1),
          logical(1) * gauge(0), logical(1) * gauge(1);
  Vector psi = logical_basis().isometry() * code;
  // Exact up to rounding; normalize so the PureState check sees unit norm.
  psi.normalize();
  return PureState::from_amplitudes(std::move(psi));
}

DecodedLogical decode_logical(const Matrix& rho) {
  if (rho.rows() != 8 || rho.cols() != 8) {
    throw DimensionError("decode_logical: expected a 3-qubit operator");
  }
  DecodedLogical out;
  const Matrix v = logical_basis().isometry();
  const Matrix block = v.adjoint() * rho * v;
  const double accept = block.trace().real();
  out.reject_probability = (reject_projector() * rho).trace().real();
  if (out.reject_probability >= 1.0 - 1e-12 || accept <= 1e-12) return out;

  Eigen::Matrix2cd logical = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      logical(a, b) = block(2 * a, 2 * b) + block(2 * a + 1, 2 * b + 1);
    }
  }
  out.logical_state = logical / accept;
  return out;
}

DecodedLogical decode_logical(const DensityOperator& rho) {
  return decode_logical(rho.matrix());
}

PureState swap_qubits(const PureState& state, int i, int j) {
  const int n = state.qubits();
  if (i < 1 || i > n || j < 1 || j > n || i == j) {
    throw InvariantError("swap_qubits: need distinct qubit indices in 1.." +
                         std::to_string(n));
  }
  // Bit positions in the big-endian index.
  const int bi = n - i;
  const int bj = n - j;
  const Vector& in = state.amplitudes();
  Vector out(in.size());
  for (Eigen::Index k = 0; k < in.size(); ++k) {
    const Eigen::Index xi = (k >> bi) & 1;
    const Eigen::Index xj = (k >> bj) & 1;
    Eigen::Index target = k;
    if (xi != xj) target ^= (Eigen::Index{1} << bi) | (Eigen::Index{1} << bj);
    out(target) = in(k);
  }
  return PureState::from_amplitudes(std::move(out));
}

}  // namespace nssbell
