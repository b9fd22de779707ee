#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "dqpt/errors.hpp"

// Scalar-generic 3-vector geometry. Everything here is a pure function of
// its arguments and accepts arbitrary Eigen expressions.

namespace dqpt {

template <typename Derived>
Eigen::Vector3<typename Derived::Scalar> unit_direction(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Vector3<Scalar> w = v;
  const Scalar n = w.norm();
  if (n == Scalar(0)) throw DegenerateModeError("degenerate d-vector");
  return w / n;
}

/// Right-hand rotation of v by `angle` about the unit vector `axis`.
/// Matches conjugation by exp(-i*angle/2 * axis.sigma) on the Bloch sphere.
template <typename DerivedV, typename DerivedA>
Eigen::Vector3<typename DerivedV::Scalar> rotate_about(
    const Eigen::MatrixBase<DerivedV>& v, const Eigen::MatrixBase<DerivedA>& axis,
    typename DerivedV::Scalar angle) {
  using Scalar = typename DerivedV::Scalar;
  const Eigen::Vector3<Scalar> a = axis;
  return Eigen::AngleAxis<Scalar>(angle, a) * Eigen::Vector3<Scalar>(v);
}

/// Radius of the unique circle through three points in 3D.
/// Throws on collinear triples, where no finite circle exists.
template <typename D1, typename D2, typename D3>
typename D1::Scalar circumradius3(const Eigen::MatrixBase<D1>& p1,
                                  const Eigen::MatrixBase<D2>& p2,
                                  const Eigen::MatrixBase<D3>& p3) {
  using Scalar = typename D1::Scalar;
  const Eigen::Vector3<Scalar> u = p2 - p1;
  const Eigen::Vector3<Scalar> w = p3 - p1;
  const Scalar a = (Eigen::Vector3<Scalar>(p2) - Eigen::Vector3<Scalar>(p3)).norm();
  const Scalar b = w.norm();
  const Scalar c = u.norm();
  const Scalar four_area = Scalar(2) * u.cross(w).norm();
  if (four_area == Scalar(0))
    throw std::invalid_argument("degenerate triple: collinear points");
  return a * b * c / four_area;
}

}  // namespace dqpt
