#include "dqpt/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include "dqpt/errors.hpp"

namespace dqpt {

namespace {

using Matrix2c = Eigen::Matrix2cd;
constexpr std::complex<double> kI{0.0, 1.0};

Matrix2c pauli_dot(const Vec3& v) {
  Matrix2c m;
  m << v.z(), std::complex<double>(v.x(), -v.y()),
      std::complex<double>(v.x(), v.y()), -v.z();
  return m;
}

Matrix2c evolution_operator(const Vec3& d, double t) {
  // exp(-i t d.sigma) by eigendecomposition of the Hermitian 2x2 matrix.
  const Eigen::SelfAdjointEigenSolver<Matrix2c> es(pauli_dot(d));
  const auto& v = es.eigenvectors();
  Eigen::Vector2cd phases;
  phases << std::exp(-kI * t * es.eigenvalues()(0)),
      std::exp(-kI * t * es.eigenvalues()(1));
  return v * phases.asDiagonal() * v.adjoint();
}

Eigen::Vector2cd state_of_bloch(const BlochState& b) {
  // |phi> with <phi|sigma|phi> = b.
  const double theta = std::acos(std::clamp(b.z(), -1.0, 1.0));
  const double phi = std::atan2(b.y(), b.x());
  Eigen::Vector2cd psi;
  psi << std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0);
  return psi;
}

}  // namespace

ModeQuench mode_quench(const QuenchSpec& spec, double k) {
  const Vec3 d_i = d_vector(spec.initial, k);
  const Vec3 d_f = d_vector(spec.final_, k);
  if (d_i.norm() == 0.0)
    throw DegenerateModeError("degenerate d-vector: |d_i(k)| = 0 at k = " +
                                  std::to_string(k),
                              k);
  if (d_f.norm() == 0.0)
    throw DegenerateModeError("degenerate d-vector: |d_f(k)| = 0 at k = " +
                                  std::to_string(k),
                              k);
  return ModeQuench{ground_bloch(d_i), d_f, k};
}

BlochState evolve(const ModeQuench& mq, double t) {
  const double norm_f = mq.d_f.norm();
  if (norm_f == 0.0)
    throw DegenerateModeError("degenerate d-vector: |d_f| = 0", mq.k);
  const BlochState axis = normalize(mq.d_f);
  return rotate(mq.b_i, axis, 2.0 * norm_f * t);
}

Trajectory trajectory(const ModeQuench& mq, const TimeGrid& times) {
  times.validate();
  Trajectory traj;
  traj.k = mq.k;
  traj.times = times.points();
  traj.states.reserve(traj.times.size());
  for (double t : traj.times) traj.states.push_back(evolve(mq, t));
  return traj;
}

std::complex<double> loschmidt_mode(const ModeQuench& mq, double t) {
  const double norm_f = mq.d_f.norm();
  if (norm_f == 0.0)
    throw DegenerateModeError("degenerate d-vector: |d_f| = 0", mq.k);
  // d_hat_i . d_hat_f = (-b_i) . d_hat_f: the paper-frame dot product.
  const double dot = -mq.b_i.vec().dot(mq.d_f) / norm_f;
  const double x = norm_f * t;
  return {std::cos(x), dot * std::sin(x)};
}

BlochState unitary_oracle(const Vec3& d_f, double t, const BlochState& b_i) {
  const Matrix2c u = evolution_operator(d_f, t);
  const Matrix2c rho = 0.5 * (Matrix2c::Identity() + pauli_dot(b_i.vec()));
  const Matrix2c rho_t = u * rho * u.adjoint();
  const Vec3 b((rho_t * pauli_dot(Vec3::UnitX())).trace().real(),
               (rho_t * pauli_dot(Vec3::UnitY())).trace().real(),
               (rho_t * pauli_dot(Vec3::UnitZ())).trace().real());
  return BlochState(b);
}

std::complex<double> overlap_oracle(const ModeQuench& mq, double t) {
  const Matrix2c u = evolution_operator(mq.d_f, t);
  const Eigen::Vector2cd psi = state_of_bloch(mq.b_i);
  return (psi.adjoint() * u * psi)(0);
}

}  // namespace dqpt
