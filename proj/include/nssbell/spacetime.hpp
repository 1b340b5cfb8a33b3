// spacetime.hpp -- tetrad/metric identity checks and the torsion-induced
// birefringence phase.
//
// Geometric units (G = c = 1), signature (-, +, +, +). A tetrad matrix E
// stores e^a_mu with the frame index a as row and the coordinate index mu as
// column; its inverse holds e^mu_a (row mu, column a).

#pragma once

#include "nssbell/su2rep.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>

namespace nssbell {

using Matrix4 = Eigen::Matrix4d;
using SpacetimePoint = std::array<double, 4>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

const Matrix4& minkowski_eta();

struct MetricField {
  std::function<Matrix4(const SpacetimePoint&)> evaluate;
};

struct TetradField {
  std::function<Matrix4(const SpacetimePoint&)> evaluate;
};

struct TetradResiduals {
  double orthonormality = 0.0;  // max |e^mu_a e^nu_b g_{mu nu} - eta_{ab}|
  double coordinate_completeness = 0.0;  // max |e^a_mu e^nu_a - delta^nu_mu|
  double frame_completeness = 0.0;       // max |e^a_mu e^mu_b - delta^a_b|
  bool passed = false;
};

/// Throws InvariantError if the tetrad is singular at `point`.
TetradResiduals verify_tetrad(const MetricField& metric, const TetradField& tetrad,
                              const SpacetimePoint& point, double tol);

MetricField minkowski_metric();
TetradField identity_tetrad();

struct SchwarzschildFields {
  MetricField metric;
  TetradField tetrad;
};

/// Static diagonal metric and orthonormal tetrad in (t, r, theta, phi).
/// Evaluation at r <= 2M throws DomainError.
SchwarzschildFields schwarzschild_static_tetrad(double mass);

/// Tetrad field whose frame index is transformed by a fixed local Lorentz
/// matrix: e'^a_mu = Lambda^a_b e^b_mu.
TetradField lorentz_transformed(TetradField tetrad, const Matrix4& lambda);

/// Boost with rapidity `rapidity` along spatial axis 1, 2 or 3.
Matrix4 lorentz_boost(int axis, double rapidity);

struct BirefringenceParams {
  double k2 = 1.0;       // torsion-photon coupling
  double m_tilde = 1.0;  // torsion mass, inverse length
  double lambda = 1.0;   // wavelength
  double radius = 1.0;   // stellar radius
  double mu = 1.0;       // cosine of the line-of-sight angle, (0, 1]

  /// Lengths positive and 0 < mu <= 1.
  void validate() const;
};

/// sqrt(2/3) * 2 pi k2 m_tilde / (lambda R^2) * (mu + 2)(mu - 1) / (mu + 1).
/// Does not validate, so arithmetic checks outside the physical mu range work.
double birefringence_phase_unchecked(const BirefringenceParams& p);

/// Validates the parameters, then evaluates the phase.
double birefringence_phase(const BirefringenceParams& p);

/// Group element with fundamental matrix diag(1, e^{i delta_phi}): the
/// vertical polarization picks up the phase. Split as alpha = -delta_phi/2
/// and SU(2) part diag(e^{-i delta_phi/2}, e^{i delta_phi/2}).
GroupElementU2 birefringent_channel(double delta_phi);

}  // namespace nssbell
