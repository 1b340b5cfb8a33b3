#include "nssbell/su2rep.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace nssbell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Vector ket(int qubits, std::initializer_list<std::pair<const char*, double>> terms,
           double scale) {
  Vector v = Vector::Zero(Eigen::Index{1} << qubits);
  for (const auto& [bits, amp] : terms) {
    v += amp * PureState::basis(bits).amplitudes();
  }
  return scale * v;
}

}  // namespace

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

GroupElementU2 GroupElementU2::make(double alpha, Quaternion q) {
  if (std::abs(q.norm2() - 1.0) > 1e-12) {
    throw InvariantError("GroupElementU2: quaternion is not unit norm");
  }
  return GroupElementU2(wrap_angle(alpha), q);
}

Eigen::Matrix2cd GroupElementU2::su2_matrix() const {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << q_.w - i * q_.z, -q_.y - i * q_.x,
       q_.y - i * q_.x, q_.w + i * q_.z;
  return m;
}

Eigen::Matrix2cd GroupElementU2::u2_matrix() const {
  return std::polar(1.0, -alpha_) * su2_matrix();
}

GroupElementU2 GroupElementU2::operator*(const GroupElementU2& rhs) const {
  Quaternion q = q_ * rhs.q_;
  // Renormalize so long products stay on the sphere.
  const double s = 1.0 / std::sqrt(q.norm2());
  q = {q.w * s, q.x * s, q.y * s, q.z * s};
  return GroupElementU2(wrap_angle(alpha_ + rhs.alpha_), q);
}

GroupElementU2 haar_sample(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  Quaternion q;
  double n2 = 0.0;
  do {
    q = {normal(rng), normal(rng), normal(rng), normal(rng)};
    n2 = q.norm2();
  } while (n2 < 1e-300);
  const double s = 1.0 / std::sqrt(n2);
  q = {q.w * s, q.x * s, q.y * s, q.z * s};
  return GroupElementU2::make(uniform(rng), q);
}

// ---------------------------------------------------------------------------

int m_index(Spin j, int twice_m) {
  if (twice_m > j.twice || twice_m < -j.twice || (j.twice - twice_m) % 2 != 0) {
    throw InvariantError("m_index: 2m=" + std::to_string(twice_m) +
                         " invalid for 2j=" + std::to_string(j.twice));
  }
  return (j.twice - twice_m) / 2;
}

Matrix dicke_states(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix v = Matrix::Zero(dim, n + 1);
  for (Eigen::Index b = 0; b < dim; ++b) {
    v(b, std::popcount(static_cast<unsigned>(b))) = 1.0;
  }
  for (int k = 0; k <= n; ++k) v.col(k).normalize();
  return v;
}

WignerMatrix wigner_d(Spin j, const GroupElementU2& g, bool include_phase) {
  if (j.twice < 1 || j.twice > 3) {
    throw InvariantError("wigner_d: supported spins are 1/2, 1, 3/2");
  }
  const Matrix u = include_phase ? Matrix(g.u2_matrix()) : Matrix(g.su2_matrix());
  if (j.twice == 1) return WignerMatrix(j, u);
  const Matrix v = dicke_states(j.twice);
  return WignerMatrix(j, v.adjoint() * kron_power(u, j.twice) * v);
}

double OrthogonalityTuple::expected() const {
  if (j == jp && m == mp && n == np) return 1.0 / j.dimension();
  return 0.0;
}

std::vector<OrthogonalityTuple> standard_orthogonality_tuples() {
  return {
      // j = j', diagonal in (m, n): 1/(2j+1)
      {kSpinHalf, kSpinHalf, 1, 1, 1, 1},
      {kSpinHalf, kSpinHalf, -1, 1, -1, 1},
      {kSpinOne, kSpinOne, 2, 0, 2, 0},
      {kSpinOne, kSpinOne, 0, 0, 0, 0},
      {kSpinThreeHalves, kSpinThreeHalves, 3, 1, 3, 1},
      {kSpinThreeHalves, kSpinThreeHalves, -1, -1, -1, -1},
      // delta_{jj'}
      {kSpinHalf, kSpinThreeHalves, 1, 1, 1, 1},
      {kSpinHalf, kSpinOne, 1, -1, 0, 0},
      {kSpinOne, kSpinThreeHalves, 0, 0, 1, 1},
      // delta_{nn'}
      {kSpinOne, kSpinOne, 2, 0, 2, 2},
      // delta_{mm'}
      {kSpinThreeHalves, kSpinThreeHalves, 3, 1, 1, 1},
      {kSpinHalf, kSpinHalf, 1, -1, -1, -1},
  };
}

bool MonteCarloEstimate::within(Complex target, double k, double floor) const {
  return std::abs(mean.real() - target.real()) <= k * stderr_real + floor &&
         std::abs(mean.imag() - target.imag()) <= k * stderr_imag + floor;
}

std::vector<MonteCarloEstimate> check_orthogonality_batch(
    const std::vector<OrthogonalityTuple>& tuples, std::size_t samples, Rng& rng) {
  struct Index {
    int j, r, c, jp, rp, cp;
  };
  std::vector<Index> idx;
  idx.reserve(tuples.size());
  for (const auto& t : tuples) {
    idx.push_back({t.j.twice, m_index(t.j, t.m), m_index(t.j, t.n), t.jp.twice,
                   m_index(t.jp, t.mp), m_index(t.jp, t.np)});
  }

  std::vector<Complex> sum(tuples.size(), 0.0);
  std::vector<double> sq_re(tuples.size(), 0.0), sq_im(tuples.size(), 0.0);
  std::array<Matrix, 4> d;
  for (std::size_t s = 0; s < samples; ++s) {
    const GroupElementU2 g = haar_sample(rng);
    for (int tj = 1; tj <= 3; ++tj) d[tj] = wigner_d(Spin{tj}, g).matrix();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& x = idx[k];
      const Complex v = std::conj(d[x.j](x.r, x.c)) * d[x.jp](x.rp, x.cp);
      sum[k] += v;
      sq_re[k] += v.real() * v.real();
      sq_im[k] += v.imag() * v.imag();
    }
  }

  std::vector<MonteCarloEstimate> out(tuples.size());
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    auto& e = out[k];
    e.samples = samples;
    e.mean = sum[k] / n;
    if (samples > 1) {
      const double var_re = (sq_re[k] - n * e.mean.real() * e.mean.real()) / (n - 1.0);
      const double var_im = (sq_im[k] - n * e.mean.imag() * e.mean.imag()) / (n - 1.0);
      e.stderr_real = std::sqrt(std::max(var_re, 0.0) / n);
      e.stderr_imag = std::sqrt(std::max(var_im, 0.0) / n);
    }
  }
  return out;
}

MonteCarloEstimate check_orthogonality(const OrthogonalityTuple& t,
                                       std::size_t samples, Rng& rng) {
  return check_orthogonality_batch({t}, samples, rng).front();
}

// ---------------------------------------------------------------------------

Matrix SchurBasis::sector_vectors(const SchurSector& sector) const {
  return transform.middleRows(sector.offset, sector.size()).adjoint();
}

SchurBasis schur_basis(int qubits) {
  SchurBasis sb;
  sb.qubits = qubits;
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  switch (qubits) {
    case 1:
      sb.transform = identity(2);
      sb.sectors = {{kSpinHalf, 1, 0}};
      break;
    case 2: {
      sb.transform = Matrix::Zero(4, 4);
      sb.transform.topRows(3) = dicke_states(2).adjoint();
      sb.transform.row(3) = ket(2, {{"01", 1.0}, {"10", -1.0}}, r2).adjoint();
      sb.sectors = {{kSpinOne, 1, 0}, {Spin{0}, 1, 3}};
      break;
    }
    case 3: {
      sb.transform = Matrix::Zero(8, 8);
      sb.transform.topRows(4) = dicke_states(3).adjoint();
      // Two spin-1/2 copies: (0', 0'') and (1', 1'').
      sb.transform.row(4) = ket(3, {{"010", 1.0}, {"100", -1.0}}, r2).adjoint();
      sb.transform.row(5) = ket(3, {{"011", 1.0}, {"101", -1.0}}, r2).adjoint();
      sb.transform.row(6) =
          ket(3, {{"001", -2.0}, {"010", 1.0}, {"100", 1.0}}, r6).adjoint();
      sb.transform.row(7) =
          ket(3, {{"110", 2.0}, {"101", -1.0}, {"011", -1.0}}, r6).adjoint();
      sb.sectors = {{kSpinThreeHalves, 1, 0}, {kSpinHalf, 2, 4}};
      break;
    }
    default:
      throw DimensionError("schur_basis: supported block sizes are 1, 2, 3 qubits");
  }
  return sb;
}

SchurBasis schur_basis_3qubit() { return schur_basis(3); }

}  // namespace nssbell
