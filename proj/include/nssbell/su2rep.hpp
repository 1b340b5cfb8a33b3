// su2rep.hpp -- U(2)/SU(2) group elements, Haar sampling, Wigner D-matrices
// built by symmetrized tensor powers, and the qubit Schur bases used by the
// collective twirl.

#pragma once

#include "nssbell/qmat.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace nssbell {

using Rng = std::mt19937_64;

/// Seed of worker `worker` derived from a run's base seed. Fixed contract:
/// base XOR worker index.
constexpr std::uint64_t worker_seed(std::uint64_t base, std::uint64_t worker) {
  return base ^ worker;
}

/// Independent base seed for sub-run `stream` of a batch (splitmix64 of
/// base + stream). Worker seeds are then derived from it with worker_seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Spin quantum number stored as 2j so half-integers stay exact.
struct Spin {
  int twice = 1;

  constexpr int dimension() const { return twice + 1; }
  constexpr double value() const { return 0.5 * twice; }
  friend constexpr bool operator==(Spin, Spin) = default;
};

inline constexpr Spin kSpinHalf{1};
inline constexpr Spin kSpinOne{2};
inline constexpr Spin kSpinThreeHalves{3};

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm2() const { return w * w + x * x + y * y + z * z; }
};

/// Hamilton product; matches multiplication of the corresponding SU(2)
/// matrices.
Quaternion operator*(const Quaternion& a, const Quaternion& b);

/// An element of U(2) written as e^{-i alpha} * Omega' with Omega' in SU(2).
/// Omega' = w*I - i(x*sigma_x + y*sigma_y + z*sigma_z).
class GroupElementU2 {
 public:
  static GroupElementU2 identity() { return {}; }
  /// Validates |q| = 1 to 1e-12 and wraps alpha into [0, 2*pi).
  static GroupElementU2 make(double alpha, Quaternion q);

  double alpha() const { return alpha_; }
  const Quaternion& quaternion() const { return q_; }

  /// The SU(2) part as a 2x2 matrix.
  Eigen::Matrix2cd su2_matrix() const;
  /// e^{-i alpha} times the SU(2) part.
  Eigen::Matrix2cd u2_matrix() const;

  GroupElementU2 operator*(const GroupElementU2& rhs) const;

 private:
  GroupElementU2() = default;
  GroupElementU2(double alpha, Quaternion q) : alpha_(alpha), q_(q) {}

  double alpha_ = 0.0;
  Quaternion q_{};
};

/// Haar-random element of U(2): SU(2) part uniform on the 3-sphere (four
/// normalized standard normals), alpha uniform on [0, 2*pi).
GroupElementU2 haar_sample(Rng& rng);

// ---------------------------------------------------------------------------
// Wigner D-matrices
// ---------------------------------------------------------------------------

/// Row/column index inside D^j for magnetic number m (given as 2m). Index 0
/// is m = +j.
int m_index(Spin j, int twice_m);

/// Orthonormal Dicke states of `n` qubits as columns of a 2^n x (n+1)
/// matrix; column k has k excitations (m = n/2 - k).
Matrix dicke_states(int n);

class WignerMatrix {
 public:
  Spin spin() const { return spin_; }
  const Matrix& matrix() const { return matrix_; }
  Complex operator()(int twice_m, int twice_n) const {
    return matrix_(m_index(spin_, twice_m), m_index(spin_, twice_n));
  }

 private:
  friend WignerMatrix wigner_d(Spin, const GroupElementU2&, bool);
  WignerMatrix(Spin s, Matrix m) : spin_(s), matrix_(std::move(m)) {}

  Spin spin_;
  Matrix matrix_;
};

/// D^j(g) for j in {1/2, 1, 3/2}, computed as the restriction of
/// U^{⊗2j} to the symmetric subspace. With include_phase the U(1) factor
/// enters as e^{-i 2j alpha}.
WignerMatrix wigner_d(Spin j, const GroupElementU2& g, bool include_phase = false);

/// One integrand of the orthogonality relation:
/// conj(D^j_{mn}) * D^{j'}_{m'n'}, with magnetic numbers given as 2m.
struct OrthogonalityTuple {
  Spin j, jp;
  int m, n, mp, np;

  /// delta_{jj'} delta_{mm'} delta_{nn'} / (2j+1).
  double expected() const;
};

struct MonteCarloEstimate {
  Complex mean{};
  double stderr_real = 0.0;
  double stderr_imag = 0.0;
  std::size_t samples = 0;

  /// True when both components are within `k` standard errors of `target`.
  /// `floor` absorbs rounding for integrands with zero variance.
  bool within(Complex target, double k, double floor = 1e-12) const;
};

MonteCarloEstimate check_orthogonality(const OrthogonalityTuple& t,
                                       std::size_t samples, Rng& rng);

/// Twelve tuples spanning j, j' in {1/2, 1, 3/2}: six diagonal (nonzero)
/// and six that vanish through one of the three deltas.
std::vector<OrthogonalityTuple> standard_orthogonality_tuples();

/// Estimates all tuples from one shared stream of Haar samples.
std::vector<MonteCarloEstimate> check_orthogonality_batch(
    const std::vector<OrthogonalityTuple>& tuples, std::size_t samples, Rng& rng);

// ---------------------------------------------------------------------------
// Schur bases
// ---------------------------------------------------------------------------

/// One irrep sector of the Schur decomposition. Rows
/// [offset, offset + multiplicity * dim(j)) belong to it, ordered with the
/// multiplicity (logical) index slow and the spin (gauge) index fast;
/// within a copy the spin index runs m = +j, ..., -j.
struct SchurSector {
  Spin spin;
  int multiplicity;
  int offset;

  int size() const { return multiplicity * spin.dimension(); }
};

/// Unitary change of basis for n qubits: row k holds the (real) coordinates
/// of the k-th Schur basis vector, so `transform * x` expresses x in Schur
/// coordinates.
struct SchurBasis {
  int qubits = 0;
  Matrix transform;
  std::vector<SchurSector> sectors;

  /// Columns are the basis vectors of `sector` in computational coordinates.
  Matrix sector_vectors(const SchurSector& sector) const;
};

/// Schur basis for 1, 2 or 3 qubits.
///   n=1: spin-1/2 (rows 0-1).
///   n=2: spin-1 triplet (rows 0-2), singlet (row 3).
///   n=3: spin-3/2 Dicke states (rows 0-3), then two spin-1/2 copies in the
///        order |0'_L>, |0''_L>, |1'_L>, |1''_L> (rows 4-7).
SchurBasis schur_basis(int qubits);
SchurBasis schur_basis_3qubit();

}  // namespace nssbell
