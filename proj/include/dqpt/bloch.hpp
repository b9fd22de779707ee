#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dqpt/geometry.hpp"

namespace dqpt {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kUnitTol = 1e-12;

/// Unit vector on the Bloch sphere (pure state).
class BlochState {
 public:
  /// `v` must already be unit length within 1e-12.
  explicit BlochState(const Vec3& v) : v_(v) {
    if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol)
      throw std::invalid_argument("BlochState: not a unit vector");
  }

  static BlochState from_direction(const Vec3& v) {
    return BlochState(unit_direction(v));
  }

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double dot(const BlochState& o) const { return v_.dot(o.v_); }

 private:
  Vec3 v_;
};

/// d -> d/|d|. Zero input signals a gap closing and is a hard error.
inline BlochState normalize(const Vec3& v) { return BlochState::from_direction(v); }

/// Right-hand rotation of b by `angle` about `axis`; norm preserved.
inline BlochState rotate(const BlochState& b, const BlochState& axis, double angle) {
  return BlochState(rotate_about(b.vec(), axis.vec(), angle));
}

/// Ground state of h = d.sigma: rho = (1 - d_hat.sigma)/2, Bloch vector -d_hat.
inline BlochState ground_bloch(const Vec3& d) {
  return BlochState::from_direction(-d);
}

inline double circumradius(const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  return circumradius3(p1, p2, p3);
}

/// k_j = (offset + 2 pi j / n_modes) mod 2 pi, j = 0..n_modes-1.
struct MomentumGrid {
  int n_modes = 1;
  double offset = 0.0;

  void validate() const {
    if (n_modes < 1) throw ConfigError("MomentumGrid: n_modes must be >= 1");
    if (!std::isfinite(offset)) throw ConfigError("MomentumGrid: offset must be finite");
  }

  double point(int j) const {
    double k = std::fmod(offset + kTwoPi * j / n_modes, kTwoPi);
    if (k < 0.0) k += kTwoPi;
    return k;
  }

  std::vector<double> points() const {
    std::vector<double> ks(static_cast<size_t>(n_modes));
    for (int j = 0; j < n_modes; ++j) ks[static_cast<size_t>(j)] = point(j);
    return ks;
  }
};

/// t_i = t_start + i*dt, i = 0..n_steps-1; all times nonnegative.
struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  int n_steps = 1;

  void validate() const {
    if (!(dt > 0.0)) throw ConfigError("TimeGrid: dt must be > 0");
    if (n_steps < 1) throw ConfigError("TimeGrid: n_steps must be >= 1");
    if (t_start < 0.0 || !std::isfinite(t_start))
      throw ConfigError("TimeGrid: t_start must be nonnegative");
  }

  double point(int i) const { return t_start + dt * i; }

  std::vector<double> points() const {
    std::vector<double> ts(static_cast<size_t>(n_steps));
    for (int i = 0; i < n_steps; ++i) ts[static_cast<size_t>(i)] = point(i);
    return ts;
  }
};

}  // namespace dqpt
