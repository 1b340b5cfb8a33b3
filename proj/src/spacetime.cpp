#include "nssbell/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nssbell {

const Matrix4& minkowski_eta() {
  static const Matrix4 eta = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
  return eta;
}

TetradResiduals verify_tetrad(const MetricField& metric, const TetradField& tetrad,
                              const SpacetimePoint& point, double tol) {
  const Matrix4 g = metric.evaluate(point);
  const Matrix4 e = tetrad.evaluate(point);
  Eigen::FullPivLU<Matrix4> lu(e);
  if (!lu.isInvertible()) throw InvariantError("verify_tetrad: tetrad is singular");
  const Matrix4 e_inv = lu.inverse();  // e^mu_a

  TetradResiduals r;
  r.orthonormality = (e_inv.transpose() * g * e_inv - minkowski_eta()).cwiseAbs().maxCoeff();
  r.coordinate_completeness = (e_inv * e - Matrix4::Identity()).cwiseAbs().maxCoeff();
  r.frame_completeness = (e * e_inv - Matrix4::Identity()).cwiseAbs().maxCoeff();
  r.passed = r.orthonormality <= tol && r.coordinate_completeness <= tol &&
             r.frame_completeness <= tol;
  return r;
}

MetricField minkowski_metric() {
  return {[](const SpacetimePoint&) { return minkowski_eta(); }};
}

TetradField identity_tetrad() {
  return {[](const SpacetimePoint&) -> Matrix4 { return Matrix4::Identity(); }};
}

SchwarzschildFields schwarzschild_static_tetrad(double mass) {
  if (!(mass > 0.0)) throw DomainError("schwarzschild_static_tetrad: mass must be > 0");
  auto lapse2 = [mass](const SpacetimePoint& x) {
    const double r = x[1];
    if (!(r > 2.0 * mass)) {
      throw DomainError("schwarzschild: r=" + std::to_string(r) +
                        " is not outside the horizon 2M=" + std::to_string(2.0 * mass));
    }
    return 1.0 - 2.0 * mass / r;
  };
  MetricField metric{[lapse2](const SpacetimePoint& x) {
    const double f = lapse2(x);
    const double r = x[1];
    const double s = std::sin(x[2]);
    return Matrix4(Eigen::Vector4d(-f, 1.0 / f, r * r, r * r * s * s).asDiagonal());
  }};
  TetradField tetrad{[lapse2](const SpacetimePoint& x) {
    const double f = lapse2(x);
    const double r = x[1];
    return Matrix4(
        Eigen::Vector4d(std::sqrt(f), 1.0 / std::sqrt(f), r, r * std::sin(x[2])).asDiagonal());
  }};
  return {std::move(metric), std::move(tetrad)};
}

TetradField lorentz_transformed(TetradField tetrad, const Matrix4& lambda) {
  return {[t = std::move(tetrad), lambda](const SpacetimePoint& x) -> Matrix4 {
    return lambda * t.evaluate(x);
  }};
}

Matrix4 lorentz_boost(int axis, double rapidity) {
  if (axis < 1 || axis > 3) throw InvariantError("lorentz_boost: axis must be 1, 2 or 3");
  Matrix4 b = Matrix4::Identity();
  b(0, 0) = b(axis, axis) = std::cosh(rapidity);
  b(0, axis) = b(axis, 0) = std::sinh(rapidity);
  return b;
}

void BirefringenceParams::validate() const {
  if (!(k2 > 0.0) || !(m_tilde > 0.0) || !(lambda > 0.0) || !(radius > 0.0)) {
    throw InvariantError("BirefringenceParams: k2, m_tilde, lambda, R must be positive");
  }
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw InvariantError("BirefringenceParams: mu must lie in (0, 1]");
  }
}

double birefringence_phase_unchecked(const BirefringenceParams& p) {
  const double prefactor = std::sqrt(2.0 / 3.0) * 2.0 * std::numbers::pi * p.k2 *
                           p.m_tilde / (p.lambda * p.radius * p.radius);
  return prefactor * (p.mu + 2.0) * (p.mu - 1.0) / (p.mu + 1.0);
}

double birefringence_phase(const BirefringenceParams& p) {
  p.validate();
  return birefringence_phase_unchecked(p);
}

GroupElementU2 birefringent_channel(double delta_phi) {
  const double h = 0.5 * delta_phi;
  return GroupElementU2::make(-h, Quaternion{std::cos(h), 0.0, 0.0, std::sin(h)});
}

}  // namespace nssbell
