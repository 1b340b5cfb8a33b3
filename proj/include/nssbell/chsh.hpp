// chsh.hpp -- CHSH harness for the bare two-qubit singlet and the encoded
// six-photon singlet.
//
// Settings: A = Z, A' = cos(phi) Z + sin(phi) X, B = Z,
// B' = cos(phi) Z - sin(phi) X; the logical flavor uses the logical Pauli
// operators on each party's three-photon block. Correlators are ordered
// (AB, A'B, AB', A'B') and combine as g = E_AB + E_A'B + E_AB' - E_A'B'.

#pragma once

#include "nssbell/qmat.hpp"
#include "nssbell/su2rep.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace nssbell {

enum class Flavor { physical_2qubit, logical_6photon };

/// Collective noise applied to the shared state before measurement.
enum class Channel { none, independent, shared };

int qubits_per_party(Flavor flavor);

struct ChshSettings {
  double phi = 0.0;
  Flavor flavor = Flavor::physical_2qubit;
  // Party-local operators (2x2 physical, 8x8 logical).
  Matrix a, a_prime, b, b_prime;

  static ChshSettings make(double phi, Flavor flavor);
};

struct ChshResult {
  double s_value = 0.0;  // |g|
  double g_value = 0.0;  // signed combination
  std::array<double, 4> correlators{};
  std::array<double, 4> stderrs{};
  std::array<std::size_t, 4> trials{};
  std::array<std::size_t, 4> accepted{};
  double s_stderr = 0.0;
  double reject_rate = 0.0;
};

/// (|01> - |10>) / sqrt2.
PureState singlet_physical();
/// (|0'_L>|1'_L> - |1'_L>|0'_L>) / sqrt2 over photons 1-3 and 4-6.
PureState singlet_logical();
PureState singlet(Flavor flavor);

/// |1 + 2 cos(phi) - cos(2 phi)|.
double chsh_formula(double phi);

/// Exact correlators. Logical correlators are conditioned on both parties
/// landing in the code sector; empty if that never happens.
std::optional<ChshResult> chsh_exact(const Matrix& rho, const ChshSettings& settings);
std::optional<ChshResult> chsh_exact(const DensityOperator& rho,
                                     const ChshSettings& settings);

/// Exact CHSH value after rotating Alice's block by g_a and Bob's by g_b.
std::optional<ChshResult> chsh_fixed_misalignment(Flavor flavor, double phi,
                                                  const GroupElementU2& g_a,
                                                  const GroupElementU2& g_b);

/// Born-rule trial simulation. Each of the four setting pairs gets
/// `trials_per_setting` independent trials; every trial draws fresh Haar
/// elements when a channel is present. Worker w uses
/// Rng(worker_seed(seed, w)) for a contiguous share of each setting's trials.
/// Empty if some setting has no accepted trial.
std::optional<ChshResult> chsh_monte_carlo(Flavor flavor, double phi,
                                           std::size_t trials_per_setting,
                                           Channel channel, std::uint64_t seed,
                                           int workers = 1);

struct LhvEnumeration {
  std::array<int, 16> values{};  // g for each (A, A', B, B') in {+-1}^4
  int bound = 0;
  int count_plus_two = 0;
};

LhvEnumeration lhv_enumerate();
int lhv_bound();

}  // namespace nssbell
