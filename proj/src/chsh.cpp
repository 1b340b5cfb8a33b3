#include "nssbell/chsh.hpp"

#include "nssbell/nss.hpp"
#include "nssbell/twirl.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace nssbell {

namespace {

// Setting pairs in correlator order (AB, A'B, AB', A'B').
constexpr std::array<std::pair<int, int>, 4> kPairs{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
constexpr std::array<double, 4> kSigns{1.0, 1.0, 1.0, -1.0};

std::array<const Matrix*, 2> alice_ops(const ChshSettings& s) { return {&s.a, &s.a_prime}; }
std::array<const Matrix*, 2> bob_ops(const ChshSettings& s) { return {&s.b, &s.b_prime}; }

Matrix accept_projector(Flavor flavor) {
  return flavor == Flavor::logical_6photon ? code_projector() : identity(2);
}

void finish(ChshResult& r) {
  r.g_value = 0.0;
  double var = 0.0;
  for (int k = 0; k < 4; ++k) {
    r.g_value += kSigns[k] * r.correlators[k];
    var += r.stderrs[k] * r.stderrs[k];
  }
  r.s_value = std::abs(r.g_value);
  r.s_stderr = std::sqrt(var);
}

// Party measurement in its eigenbasis: columns of `basis` are orthonormal
// eigenvectors, `value[k]` is the outcome of column k and `accepted[k]` is
// false for reject-sector vectors.
struct PartyMeasurement {
  Matrix basis;
  std::vector<double> value;
  std::vector<bool> accepted;
};

PartyMeasurement measure_basis(const Matrix& op, Flavor flavor) {
  PartyMeasurement m;
  if (flavor == Flavor::physical_2qubit) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(op);
    m.basis = es.eigenvectors();
    for (int k = 0; k < 2; ++k) {
      m.value.push_back(es.eigenvalues()(k) > 0.0 ? 1.0 : -1.0);
      m.accepted.push_back(true);
    }
    return m;
  }
  const Matrix v = logical_basis().isometry();
  const Matrix code = v.adjoint() * op * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(code);
  const SchurBasis sb = schur_basis_3qubit();
  m.basis = Matrix(8, 8);
  m.basis.leftCols(4) = v * es.eigenvectors();
  m.basis.rightCols(4) = sb.sector_vectors(sb.sectors.at(0));
  for (int k = 0; k < 4; ++k) {
    m.value.push_back(es.eigenvalues()(k) > 0.0 ? 1.0 : -1.0);
    m.accepted.push_back(true);
  }
  for (int k = 0; k < 4; ++k) {
    m.value.push_back(0.0);
    m.accepted.push_back(false);
  }
  return m;
}

struct SettingTally {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

int qubits_per_party(Flavor flavor) {
  return flavor == Flavor::logical_6photon ? 3 : 1;
}

ChshSettings ChshSettings::make(double phi, Flavor flavor) {
  ChshSettings s;
  s.phi = phi;
  s.flavor = flavor;
  const double c = std::cos(phi), sn = std::sin(phi);
  if (flavor == Flavor::physical_2qubit) {
    s.a = pauli_z();
    s.a_prime = c * pauli_z() + sn * pauli_x();
    s.b = pauli_z();
    s.b_prime = c * pauli_z() - sn * pauli_x();
  } else {
    s.a = logical_pauli_z().full_matrix;
    s.a_prime = logical_pauli_general(c, sn).full_matrix;
    s.b = logical_pauli_z().full_matrix;
    s.b_prime = logical_pauli_general(c, -sn).full_matrix;
  }
  return s;
}

PureState singlet_physical() {
  Vector v(4);
  v << 0.0, 1.0, -1.0, 0.0;
  return PureState::from_amplitudes(v / std::sqrt(2.0));
}

PureState singlet_logical() {
  const LogicalBasis& lb = logical_basis();
  Vector v = (kron(lb.zero_p, lb.one_p) - kron(lb.one_p, lb.zero_p)) / std::sqrt(2.0);
  v.normalize();
  return PureState::from_amplitudes(std::move(v));
}

PureState singlet(Flavor flavor) {
  return flavor == Flavor::logical_6photon ? singlet_logical() : singlet_physical();
}

double chsh_formula(double phi) {
  return std::abs(1.0 + 2.0 * std::cos(phi) - std::cos(2.0 * phi));
}

std::optional<ChshResult> chsh_exact(const Matrix& rho, const ChshSettings& settings) {
  const int n = 2 * qubits_per_party(settings.flavor);
  const Eigen::Index d = Eigen::Index{1} << n;
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError("chsh_exact: state dimension does not match flavor");
  }
  const Matrix p = accept_projector(settings.flavor);
  const double accept = expectation(rho, kron(p, p));
  if (accept <= 1e-12) return std::nullopt;

  ChshResult r;
  if (settings.flavor == Flavor::logical_6photon) r.reject_rate = std::max(0.0, 1.0 - accept);
  const auto alice = alice_ops(settings);
  const auto bob = bob_ops(settings);
  for (int k = 0; k < 4; ++k) {
    const auto [ia, ib] = kPairs[k];
    r.correlators[k] = expectation(rho, kron(*alice[ia], *bob[ib])) / accept;
  }
  finish(r);
  return r;
}

std::optional<ChshResult> chsh_exact(const DensityOperator& rho,
                                     const ChshSettings& settings) {
  return chsh_exact(rho.matrix(), settings);
}

std::optional<ChshResult> chsh_fixed_misalignment(Flavor flavor, double phi,
                                                  const GroupElementU2& g_a,
                                                  const GroupElementU2& g_b) {
  const Matrix rho = fixed_rotation_bipartite(singlet(flavor).projector(), g_a, g_b,
                                              qubits_per_party(flavor));
  return chsh_exact(rho, ChshSettings::make(phi, flavor));
}

std::optional<ChshResult> chsh_monte_carlo(Flavor flavor, double phi,
                                           std::size_t trials_per_setting,
                                           Channel channel, std::uint64_t seed,
                                           int workers) {
  if (trials_per_setting < 1) {
    throw InvariantError("chsh_monte_carlo: trials_per_setting must be >= 1");
  }
  if (workers < 1) throw InvariantError("chsh_monte_carlo: workers must be >= 1");

  const int nq = qubits_per_party(flavor);
  const Eigen::Index d = Eigen::Index{1} << nq;
  const ChshSettings settings = ChshSettings::make(phi, flavor);
  const auto alice = alice_ops(settings);
  const auto bob = bob_ops(settings);
  std::array<PartyMeasurement, 2> meas_a{measure_basis(*alice[0], flavor),
                                         measure_basis(*alice[1], flavor)};
  std::array<PartyMeasurement, 2> meas_b{measure_basis(*bob[0], flavor),
                                         measure_basis(*bob[1], flavor)};

  // Amplitudes reshaped so that (U_A ⊗ U_B)|psi> <-> U_A * Psi * U_B^T.
  const Vector amps = singlet(flavor).amplitudes();
  Matrix psi(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) psi(i, j) = amps(i * d + j);

  const auto nworkers = static_cast<std::size_t>(workers);
  std::vector<std::array<SettingTally, 4>> tallies(nworkers);

  auto run_shard = [&](std::size_t w) {
    Rng rng(worker_seed(seed, w));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::size_t begin = trials_per_setting * w / nworkers;
    const std::size_t end = trials_per_setting * (w + 1) / nworkers;
    Matrix probs(d, d);
    for (int k = 0; k < 4; ++k) {
      const auto [ia, ib] = kPairs[k];
      const PartyMeasurement& ma = meas_a[ia];
      const PartyMeasurement& mb = meas_b[ib];
      const Matrix ea = ma.basis.adjoint();
      const Matrix eb = mb.basis.adjoint();
      Eigen::MatrixXd p_fixed;
      if (channel == Channel::none) p_fixed = (ea * psi * eb.transpose()).cwiseAbs2();
      SettingTally& t = tallies[w][k];
      for (std::size_t trial = begin; trial < end; ++trial) {
        Eigen::MatrixXd p;
        if (channel == Channel::none) {
          p = p_fixed;
        } else {
          const GroupElementU2 g_a = haar_sample(rng);
          const GroupElementU2 g_b = channel == Channel::shared ? g_a : haar_sample(rng);
          const Matrix ua = collective_unitary(g_a, nq);
          const Matrix ub = collective_unitary(g_b, nq);
          p = ((ea * ua) * psi * (eb * ub).transpose()).cwiseAbs2();
        }
        // Sample one eigenvector pair, then read off the outcomes.
        double r = uniform(rng) * p.sum();
        Eigen::Index ri = d - 1, ci = d - 1;
        for (Eigen::Index i = 0; i < d && r >= 0.0; ++i) {
          for (Eigen::Index j = 0; j < d; ++j) {
            r -= p(i, j);
            if (r < 0.0) {
              ri = i;
              ci = j;
              break;
            }
          }
        }
        ++t.trials;
        if (!ma.accepted[ri] || !mb.accepted[ci]) continue;
        const double prod = ma.value[ri] * mb.value[ci];
        ++t.accepted;
        t.sum += prod;
        t.sum_sq += prod * prod;
      }
    }
  };

  if (nworkers == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(run_shard, w);
  }

  ChshResult r;
  std::size_t all_trials = 0, all_accepted = 0;
  for (int k = 0; k < 4; ++k) {
    SettingTally t;
    for (const auto& shard : tallies) {
      t.trials += shard[k].trials;
      t.accepted += shard[k].accepted;
      t.sum += shard[k].sum;
      t.sum_sq += shard[k].sum_sq;
    }
    if (t.accepted == 0) return std::nullopt;
    const double n = static_cast<double>(t.accepted);
    const double mean = t.sum / n;
    r.correlators[k] = mean;
    r.trials[k] = t.trials;
    r.accepted[k] = t.accepted;
    if (t.accepted > 1) {
      const double var = std::max(0.0, (t.sum_sq - n * mean * mean) / (n - 1.0));
      r.stderrs[k] = std::sqrt(var / n);
    }
    all_trials += t.trials;
    all_accepted += t.accepted;
  }
  r.reject_rate = 1.0 - static_cast<double>(all_accepted) / static_cast<double>(all_trials);
  finish(r);
  return r;
}

LhvEnumeration lhv_enumerate() {
  LhvEnumeration e;
  e.bound = 0;
  for (int bits = 0; bits < 16; ++bits) {
    const int a = (bits & 8) ? -1 : 1;
    const int ap = (bits & 4) ? -1 : 1;
    const int b = (bits & 2) ? -1 : 1;
    const int bp = (bits & 1) ? -1 : 1;
    const int g = a * b + ap * b + a * bp - ap * bp;
    e.values[bits] = g;
    e.bound = std::max(e.bound, std::abs(g));
    if (g == 2) ++e.count_plus_two;
  }
  return e;
}

int lhv_bound() { return lhv_enumerate().bound; }

}  // namespace nssbell
