#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nssbell/chsh.hpp"
#include "nssbell/nss.hpp"
#include "nssbell/twirl.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace nssbell;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> phi_grid() {
  std::vector<double> g;
  for (int i = 0; i < 200; ++i) g.push_back(i * (kPi / 2) / 199);
  return g;
}

}  // namespace

TEST_CASE("chsh_formula at the closed-form points") {
  CHECK(chsh_formula(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(chsh_formula(kPi / 3) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(chsh_formula(kPi / 2) == doctest::Approx(2.0).epsilon(1e-15));
  // pi/3 is the maximum on [0, pi/2] over a dense scan.
  double best = 0.0, arg = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double phi = i * (kPi / 2) / 100000;
    if (chsh_formula(phi) > best) {
      best = chsh_formula(phi);
      arg = phi;
    }
  }
  CHECK(best <= 2.5 + 1e-15);
  CHECK(std::abs(arg - kPi / 3) < 1e-4);
}

TEST_CASE("physical singlet") {
  const PureState s = singlet_physical();
  CHECK(std::abs(s.amplitudes().squaredNorm() - 1.0) < 1e-15);
  CHECK(expectation(s.projector(), kron(pauli_z(), pauli_z())) == doctest::Approx(-1.0));
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    CHECK(max_abs(fixed_rotation(s.projector(), haar_sample(rng), 2) - s.projector()) < 1e-12);
  }
}

TEST_CASE("settings use the stated observables") {
  const double phi = 0.4;
  const ChshSettings p = ChshSettings::make(phi, Flavor::physical_2qubit);
  CHECK(max_abs(p.a - pauli_z()) == 0.0);
  CHECK(max_abs(p.a_prime - (std::cos(phi) * pauli_z() + std::sin(phi) * pauli_x())) == 0.0);
  CHECK(max_abs(p.b_prime - (std::cos(phi) * pauli_z() - std::sin(phi) * pauli_x())) == 0.0);
  const ChshSettings l = ChshSettings::make(phi, Flavor::logical_6photon);
  CHECK(max_abs(l.a - logical_pauli_z().full_matrix) == 0.0);
  CHECK(max_abs(l.b_prime - logical_pauli_general(std::cos(phi), -std::sin(phi)).full_matrix) <
        1e-15);
}

TEST_CASE("logical singlet state") {
  const PureState psi = singlet_logical();
  CHECK(psi.qubits() == 6);
  CHECK(std::abs(psi.amplitudes().squaredNorm() - 1.0) < 1e-15);

  const LogicalBasis& lb = logical_basis();
  const Matrix p0 = lb.zero_p * lb.zero_p.adjoint();
  const Matrix p1 = lb.one_p * lb.one_p.adjoint();
  const Matrix c01 = lb.zero_p * lb.one_p.adjoint();
  const Matrix c10 = lb.one_p * lb.zero_p.adjoint();
  // Four-term expansion of the density matrix.
  const Matrix expected = 0.5 * (kron(p0, p1) - kron(c01, c10) - kron(c10, c01) + kron(p1, p0));
  CHECK(max_abs(psi.projector() - expected) < 1e-15);

  const Matrix reduced_in = 0.5 * (p0 + p1);
  CHECK(max_abs(partial_trace(psi.projector(), {8, 8}, {0}) - reduced_in) < 1e-15);
  CHECK(max_abs(partial_trace(psi.projector(), {8, 8}, {1}) - reduced_in) < 1e-15);
}

TEST_CASE("exact CHSH on the physical singlet follows the closed form") {
  const Matrix rho = singlet_physical().projector();
  for (double phi : phi_grid()) {
    const auto r = chsh_exact(rho, ChshSettings::make(phi, Flavor::physical_2qubit));
    REQUIRE(r);
    CHECK(std::abs(r->s_value - chsh_formula(phi)) < 1e-12);
    CHECK(std::abs(r->g_value - (r->correlators[0] + r->correlators[1] + r->correlators[2] -
                                 r->correlators[3])) == 0.0);
    CHECK(r->reject_rate == 0.0);
  }
  const auto r = chsh_exact(rho, ChshSettings::make(kPi / 3, Flavor::physical_2qubit));
  CHECK(r->s_value == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(chsh_exact(rho, ChshSettings::make(0.0, Flavor::physical_2qubit))->s_value ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(chsh_exact(rho, ChshSettings::make(0.0, Flavor::logical_6photon)),
                  DimensionError);
}

TEST_CASE("exact CHSH on the twirled logical singlet follows the closed form") {
  const Matrix rho = twirl_exact(singlet_logical().projector(),
                                 TwirlSpec::exact(3, BlockMode::independent_blocks));
  for (double phi : phi_grid()) {
    const auto r = chsh_exact(rho, ChshSettings::make(phi, Flavor::logical_6photon));
    REQUIRE(r);
    CHECK(std::abs(r->s_value - chsh_formula(phi)) < 1e-10);
    CHECK(r->reject_rate <= 1e-12);
  }
}

TEST_CASE("reject-only state has an undefined CHSH value") {
  const Matrix rho = kron(PureState::basis("000").projector(), PureState::basis("111").projector());
  CHECK(!chsh_exact(rho, ChshSettings::make(0.3, Flavor::logical_6photon)).has_value());
}

TEST_CASE("fixed misalignment: encoded protocol immune, bare protocol degrades") {
  Rng rng(7);
  bool bare_below_two = false;
  double worst_logical = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const GroupElementU2 ga = haar_sample(rng);
    const GroupElementU2 gb = haar_sample(rng);
    const auto bare = chsh_fixed_misalignment(Flavor::physical_2qubit, kPi / 3, ga, gb);
    REQUIRE(bare);
    bare_below_two = bare_below_two || bare->s_value < 2.0;
    if (k < 100) {
      const auto enc = chsh_fixed_misalignment(Flavor::logical_6photon, kPi / 3, ga, gb);
      REQUIRE(enc);
      worst_logical = std::max(worst_logical, std::abs(enc->s_value - 2.5));
    }
  }
  CHECK(bare_below_two);
  CHECK(worst_logical < 1e-10);
}

TEST_CASE("separable product states never exceed the LHV bound") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    const Matrix rho = kron(oracle::random_density(1, rng), oracle::random_density(1, rng));
    const double phi = std::uniform_real_distribution<double>(0.0, kPi / 2)(rng);
    CHECK(chsh_exact(rho, ChshSettings::make(phi, Flavor::physical_2qubit))->s_value <=
          2.0 + 1e-12);
  }
}

TEST_CASE("Monte Carlo, physical, no channel") {
  const auto r = chsh_monte_carlo(Flavor::physical_2qubit, kPi / 3, 100000, Channel::none, 11);
  REQUIRE(r);
  CHECK(std::abs(r->s_value - 2.5) <= 4 * r->s_stderr);
  CHECK(r->trials[0] == 100000);
  CHECK(r->reject_rate == 0.0);
}

TEST_CASE("Monte Carlo, logical, independent channel") {
  const auto r =
      chsh_monte_carlo(Flavor::logical_6photon, kPi / 3, 100000, Channel::independent, 12);
  REQUIRE(r);
  CHECK(std::abs(r->s_value - 2.5) <= 4 * r->s_stderr);
  CHECK(r->reject_rate < 1e-12);
}

TEST_CASE("Monte Carlo, physical, independent channel washes out correlations") {
  const auto r =
      chsh_monte_carlo(Flavor::physical_2qubit, kPi / 3, 100000, Channel::independent, 13);
  REQUIRE(r);
  CHECK(std::abs(r->g_value) <= 4 * r->s_stderr);
  // A shared element is a collective rotation of the whole singlet.
  const auto s = chsh_monte_carlo(Flavor::physical_2qubit, kPi / 3, 20000, Channel::shared, 13);
  CHECK(std::abs(s->s_value - 2.5) <= 4 * s->s_stderr);
}

TEST_CASE("Monte Carlo converges within 4 standard errors in >= 95% of repetitions") {
  int hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto r = chsh_monte_carlo(Flavor::physical_2qubit, kPi / 4, 2000, Channel::none,
                                    derive_seed(5, rep));
    REQUIRE(r);
    hits += std::abs(r->s_value - chsh_formula(kPi / 4)) <= 4 * r->s_stderr;
  }
  CHECK(hits >= 95);
}

TEST_CASE("Monte Carlo reproducibility and worker sharding") {
  const auto a = chsh_monte_carlo(Flavor::logical_6photon, 0.5, 3001, Channel::independent, 21, 3);
  const auto b = chsh_monte_carlo(Flavor::logical_6photon, 0.5, 3001, Channel::independent, 21, 3);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->g_value == b->g_value);
  CHECK(a->s_stderr == b->s_stderr);
  CHECK(a->trials[2] == 3001);
  CHECK_THROWS_AS(chsh_monte_carlo(Flavor::physical_2qubit, 0.5, 0, Channel::none, 1),
                  InvariantError);
}

TEST_CASE("LHV enumeration") {
  const LhvEnumeration e = lhv_enumerate();
  for (int v : e.values) CHECK((v == 2 || v == -2));
  CHECK(e.bound == 2);
  CHECK(lhv_bound() == 2);
  CHECK(e.count_plus_two == 8);
}
