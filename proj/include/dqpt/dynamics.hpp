#pragma once

#include <complex>
#include <vector>

#include "dqpt/models.hpp"

namespace dqpt {

// Exact quench evolution per momentum mode. The state prepared in the
// ground state of h_i precesses about d_hat_f with period pi/|d_f|:
//
//   b(t) = R(d_hat_f, 2|d_f| t) b_i,
//
// the Bloch-sphere image of rho -> U rho U^dag with U = exp(-i t d_f.sigma).
// The closed-form rotation is the production path; the 2x2 conjugation
// below exists as an independent brute-force check.

struct ModeQuench {
  BlochState b_i;  // initial state, ground_bloch(d_i(k))
  Vec3 d_f;        // post-quench coefficient vector, |d_f| > 0
  double k = 0.0;

  double period() const { return kPi / d_f.norm(); }
};

/// Assemble the per-mode quench data at momentum k; throws
/// DegenerateModeError naming k if either d-vector vanishes there.
ModeQuench mode_quench(const QuenchSpec& spec, double k);

BlochState evolve(const ModeQuench& mq, double t);

struct Trajectory {
  double k = 0.0;
  std::vector<double> times;
  std::vector<BlochState> states;
};

Trajectory trajectory(const ModeQuench& mq, const TimeGrid& times);

/// Per-mode Loschmidt amplitude
///   G_k(t) = cos(|d_f| t) + i (d_hat_i . d_hat_f) sin(|d_f| t),
/// with d_hat_i the Hamiltonian-frame unit vector, i.e. -b_i.
std::complex<double> loschmidt_mode(const ModeQuench& mq, double t);

inline double loschmidt_sq(const ModeQuench& mq, double t) {
  const std::complex<double> g = loschmidt_mode(mq, t);
  return std::norm(g);
}

/// Brute-force check of evolve(): builds U = exp(-i t d_f.sigma) by
/// eigendecomposition of the 2x2 Hermitian d_f.sigma and conjugates the
/// density matrix. d_f = 0 is fine here (U = identity).
BlochState unitary_oracle(const Vec3& d_f, double t, const BlochState& b_i);

/// <phi_i| U(t) |phi_i> computed along the same brute-force path.
std::complex<double> overlap_oracle(const ModeQuench& mq, double t);

}  // namespace dqpt
