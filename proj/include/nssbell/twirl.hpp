// twirl.hpp -- collective depolarization: every photon of a block sees the
// same Haar-random U(2) element.
//
// The U(1) part of each sample is kept for fidelity with the U(2) average
// but acts as a global phase per block (one photon per slot), so it cancels
// in every conjugation.

#pragma once

#include "nssbell/qmat.hpp"
#include "nssbell/su2rep.hpp"

#include <cstdint>
#include <vector>

namespace nssbell {

enum class TwirlMethod { monte_carlo, exact };

enum class BlockMode {
  single_block,        // one block of n qubits
  independent_blocks,  // two blocks of n qubits with independent elements
  shared_block,        // two blocks of n qubits, same element on all 2n
};

struct TwirlSpec {
  int qubits_per_block = 3;
  TwirlMethod method = TwirlMethod::exact;
  std::size_t samples = 0;  // monte_carlo only
  BlockMode mode = BlockMode::single_block;
  int workers = 1;

  static TwirlSpec exact(int qubits_per_block, BlockMode mode = BlockMode::single_block);
  static TwirlSpec monte_carlo(int qubits_per_block, std::size_t samples,
                               BlockMode mode = BlockMode::single_block,
                               int workers = 1);

  int total_qubits() const;
  /// Throws InvariantError on bad sample or block counts.
  void validate() const;
};

/// U^{⊗n} for the full U(2) element.
Matrix collective_unitary(const GroupElementU2& g, int n_qubits);

/// Conjugation by U(g)^{⊗n}; rho must have exactly n qubits.
Matrix fixed_rotation(const Matrix& rho, const GroupElementU2& g, int n_qubits);
DensityOperator fixed_rotation(const DensityOperator& rho, const GroupElementU2& g,
                               int n_qubits);

/// Two blocks of n qubits rotated by g_a (first block) and g_b (second).
Matrix fixed_rotation_bipartite(const Matrix& rho, const GroupElementU2& g_a,
                                const GroupElementU2& g_b, int qubits_per_block);

/// Kraus operators of the exact single-block twirl for n <= 3: for each irrep
/// sector with spin dimension d, (1/sqrt d) * V (I_mult ⊗ |a><b|) V^dagger.
std::vector<Matrix> twirl_kraus(int n_qubits);

/// Haar average estimated from spec.samples draws. Worker w draws from
/// Rng(worker_seed(seed, w)) and handles a contiguous share of the samples;
/// shards are combined in worker order, so the result is bit-reproducible
/// for a fixed (seed, workers) pair. Output trace is renormalized to 1.
DensityOperator twirl_mc(const DensityOperator& rho, const TwirlSpec& spec,
                         std::uint64_t seed);
Matrix twirl_mc(const Matrix& rho, const TwirlSpec& spec, std::uint64_t seed);

/// Closed-form average via the Schur decomposition: cross-sector coherences
/// vanish and each sector's spin factor becomes maximally mixed. Supports
/// blocks of 1-3 qubits; shared_block needs 2n <= 3.
DensityOperator twirl_exact(const DensityOperator& rho, const TwirlSpec& spec);
Matrix twirl_exact(const Matrix& rho, const TwirlSpec& spec);

}  // namespace nssbell
