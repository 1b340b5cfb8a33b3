#include "nssbell/twirl.hpp"

#include <cmath>
#include <string>
#include <thread>

namespace nssbell {

namespace {

void require_dimension(const Matrix& rho, int qubits, const char* who) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError(std::string(who) + ": expected " + std::to_string(qubits) +
                         "-qubit operator, got dimension " + std::to_string(rho.rows()));
  }
}

// Applies sum_k K_k rho K_k^dagger with each K_k embedded on the qubit range
// [first, first + n) of a `total`-qubit register.
Matrix apply_block_channel(const Matrix& rho, const std::vector<Matrix>& kraus,
                           int first, int n, int total) {
  const Eigen::Index left = Eigen::Index{1} << first;
  const Eigen::Index right = Eigen::Index{1} << (total - first - n);
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& k : kraus) {
    Matrix full = k;
    if (left > 1) full = kron(identity(left), full);
    if (right > 1) full = kron(full, identity(right));
    out.noalias() += full * rho * full.adjoint();
  }
  return out;
}

}  // namespace

TwirlSpec TwirlSpec::exact(int qubits_per_block, BlockMode mode) {
  TwirlSpec s;
  s.qubits_per_block = qubits_per_block;
  s.method = TwirlMethod::exact;
  s.mode = mode;
  return s;
}

TwirlSpec TwirlSpec::monte_carlo(int qubits_per_block, std::size_t samples,
                                 BlockMode mode, int workers) {
  TwirlSpec s;
  s.qubits_per_block = qubits_per_block;
  s.method = TwirlMethod::monte_carlo;
  s.samples = samples;
  s.mode = mode;
  s.workers = workers;
  return s;
}

int TwirlSpec::total_qubits() const {
  return mode == BlockMode::single_block ? qubits_per_block : 2 * qubits_per_block;
}

void TwirlSpec::validate() const {
  if (qubits_per_block < 1 || total_qubits() > kMaxQubits) {
    throw InvariantError("TwirlSpec: block size out of range");
  }
  if (method == TwirlMethod::monte_carlo && samples < 1) {
    throw InvariantError("TwirlSpec: monte_carlo needs samples >= 1");
  }
  if (workers < 1) throw InvariantError("TwirlSpec: workers must be >= 1");
}

Matrix collective_unitary(const GroupElementU2& g, int n_qubits) {
  return kron_power(Matrix(g.u2_matrix()), n_qubits);
}

Matrix fixed_rotation(const Matrix& rho, const GroupElementU2& g, int n_qubits) {
  require_dimension(rho, n_qubits, "fixed_rotation");
  const Matrix u = collective_unitary(g, n_qubits);
  return u * rho * u.adjoint();
}

DensityOperator fixed_rotation(const DensityOperator& rho, const GroupElementU2& g,
                               int n_qubits) {
  return DensityOperator::from_matrix(fixed_rotation(rho.matrix(), g, n_qubits));
}

Matrix fixed_rotation_bipartite(const Matrix& rho, const GroupElementU2& g_a,
                                const GroupElementU2& g_b, int qubits_per_block) {
  require_dimension(rho, 2 * qubits_per_block, "fixed_rotation_bipartite");
  const Matrix u = kron(collective_unitary(g_a, qubits_per_block),
                        collective_unitary(g_b, qubits_per_block));
  return u * rho * u.adjoint();
}

std::vector<Matrix> twirl_kraus(int n_qubits) {
  const SchurBasis sb = schur_basis(n_qubits);
  std::vector<Matrix> kraus;
  for (const SchurSector& sector : sb.sectors) {
    const int d = sector.spin.dimension();
    const Matrix v = sb.sector_vectors(sector);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        Matrix inner = Matrix::Zero(sector.size(), sector.size());
        for (int copy = 0; copy < sector.multiplicity; ++copy) {
          inner(copy * d + a, copy * d + b) = 1.0;
        }
        kraus.push_back(scale * v * inner * v.adjoint());
      }
    }
  }
  return kraus;
}

Matrix twirl_mc(const Matrix& rho, const TwirlSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.method != TwirlMethod::monte_carlo) {
    throw InvariantError("twirl_mc: spec.method must be monte_carlo");
  }
  require_dimension(rho, spec.total_qubits(), "twirl_mc");

  const int n = spec.qubits_per_block;
  const auto workers = static_cast<std::size_t>(spec.workers);
  std::vector<Matrix> partial(workers, Matrix::Zero(rho.rows(), rho.cols()));

  auto run_shard = [&](std::size_t w) {
    const std::size_t begin = spec.samples * w / workers;
    const std::size_t end = spec.samples * (w + 1) / workers;
    Rng rng(worker_seed(seed, w));
    Matrix& acc = partial[w];
    for (std::size_t s = begin; s < end; ++s) {
      Matrix u;
      switch (spec.mode) {
        case BlockMode::single_block:
          u = collective_unitary(haar_sample(rng), n);
          break;
        case BlockMode::independent_blocks: {
          const GroupElementU2 g_a = haar_sample(rng);
          const GroupElementU2 g_b = haar_sample(rng);
          u = kron(collective_unitary(g_a, n), collective_unitary(g_b, n));
          break;
        }
        case BlockMode::shared_block:
          u = collective_unitary(haar_sample(rng), 2 * n);
          break;
      }
      acc.noalias() += u * rho * u.adjoint();
    }
  };

  if (workers == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_shard, w);
  }

  Matrix total = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& p : partial) total += p;
  total /= static_cast<double>(spec.samples);
  return total / total.trace().real();
}

DensityOperator twirl_mc(const DensityOperator& rho, const TwirlSpec& spec,
                         std::uint64_t seed) {
  return DensityOperator::from_matrix(twirl_mc(rho.matrix(), spec, seed));
}

Matrix twirl_exact(const Matrix& rho, const TwirlSpec& spec) {
  spec.validate();
  require_dimension(rho, spec.total_qubits(), "twirl_exact");
  const int n = spec.qubits_per_block;
  switch (spec.mode) {
    case BlockMode::single_block:
      return apply_block_channel(rho, twirl_kraus(n), 0, n, n);
    case BlockMode::independent_blocks: {
      const std::vector<Matrix> kraus = twirl_kraus(n);
      const Matrix half = apply_block_channel(rho, kraus, 0, n, 2 * n);
      return apply_block_channel(half, kraus, n, n, 2 * n);
    }
    case BlockMode::shared_block:
      return apply_block_channel(rho, twirl_kraus(2 * n), 0, 2 * n, 2 * n);
  }
  throw InvariantError("twirl_exact: unknown block mode");
}

DensityOperator twirl_exact(const DensityOperator& rho, const TwirlSpec& spec) {
  return DensityOperator::from_matrix(twirl_exact(rho.matrix(), spec));
}

}  // namespace nssbell
