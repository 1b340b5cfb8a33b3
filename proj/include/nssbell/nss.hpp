// nss.hpp -- three-photon noiseless-subsystem code.
//
// The j=1/2 sector of three qubits holds two spin-1/2 copies. The copy label
// is the logical qubit (untouched by collective rotations); the spin label
// (' or '') is the gauge qubit, which collective noise scrambles. Code-basis
// order is (0', 0'', 1', 1''): logical index slow, gauge index fast.

#pragma once

#include "nssbell/qmat.hpp"

#include <array>
#include <optional>

namespace nssbell {

struct LogicalBasis {
  Vector zero_p;   // |0'_L>  = (|010> - |100>) / sqrt2
  Vector zero_pp;  // |0''_L> = (|011> - |101>) / sqrt2
  Vector one_p;    // |1'_L>  = (-2|001> + |010> + |100>) / sqrt6
  Vector one_pp;   // |1''_L> = (2|110> - |101> - |011>) / sqrt6

  /// 8x4 isometry with columns in code-basis order.
  Matrix isometry() const;
};

const LogicalBasis& logical_basis();

/// Projector onto the spin-3/2 (reject) sector of three qubits.
const Matrix& reject_projector();
/// Projector onto the j=1/2 (code) sector of three qubits.
const Matrix& code_projector();

struct LogicalObservable {
  Matrix code_matrix;  // 4x4 in the (0', 0'', 1', 1'') basis
  Matrix full_matrix;  // 8x8, zero on the spin-3/2 sector
};

/// Embeds a 4x4 code-basis operator into the three-qubit space.
LogicalObservable make_logical_observable(const Matrix& code_matrix);

/// c_z * sigma_z + c_x * sigma_x on the logical index, identity on the gauge.
LogicalObservable logical_pauli_general(double c_z, double c_x);
LogicalObservable logical_pauli_z();
LogicalObservable logical_pauli_x();

/// a (g0|0'> + g1|0''>) + b (g0|1'> + g1|1''>).
PureState encode(const Eigen::Vector2cd& logical, const Eigen::Vector2cd& gauge);

struct DecodedLogical {
  /// Empty when the state lies entirely in the reject sector.
  std::optional<Eigen::Matrix2cd> logical_state;
  double reject_probability = 0.0;
};

/// Postselected logical state: the j=1/2 block renormalized by the accept
/// probability, with the gauge index traced out.
DecodedLogical decode_logical(const Matrix& rho);
DecodedLogical decode_logical(const DensityOperator& rho);

/// Exchanges qubits i and j (1-based) of a pure state.
PureState swap_qubits(const PureState& state, int i, int j);

}  // namespace nssbell
