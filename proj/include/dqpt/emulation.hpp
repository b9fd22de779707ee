#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dqpt/observables.hpp"

namespace dqpt {

// Statistical emulation of the superconducting-qubit measurement chain:
// transmon device parameters, phenomenological decoherence, finite-shot
// tomography, and error-bar propagation into the rate function. Emulated
// states and records live in the experimental (lab) frame.

struct DeviceParams {
  double f01_ghz = 6.203;
  double anharm_mhz = -236.0;
  double t1_us = 8.3;
  double t2star_us = 6.8;
  double t2echo_us = 11.7;
  double readout_ghz = 6.793;
  double chi_mhz = -0.697;

  void validate() const;  // positive times, t2* <= 2 t1
};

struct ShotConfig {
  int n_shots = 5000;
  std::uint64_t seed = 0;
  double step_ns = 15.0;  // physical duration of one time step

  void validate() const;
};

struct TomographyRecord {
  double k = 0.0;
  int t_index = 0;
  Vec3 b_est = Vec3::Zero();            // raw per-axis averages, |b_est| <= sqrt(3)
  BlochState b_pure{Vec3(0.0, 0.0, 1.0)};  // normalize(b_est); pure states are assumed
  double fluctuation = 0.0;             // ||Delta d_hat(k)|| of the mode's path
};

/// l-th transmon level,
///   E_l = -E_J + sqrt(8 E_J E_C)(l + 1/2) - (E_C/2)[l(l+1) + 1/2],
/// in whatever common unit E_J and E_C are given (we use GHz, i.e. E/h).
double transmon_level(double e_j, double e_c, int level);

/// E_J solving E_1 - E_0 = f01 for a given E_C.
double transmon_ej_from_f01(double f01, double e_c);

/// Transmon regime 20 <= E_J/E_C <= 100; outside it the level formula is a
/// poor approximation and callers should warn.
bool transmon_regime_ok(double e_j, double e_c);

/// Transverse components (about the measurement Z axis) decay with T2*,
/// the longitudinal one relaxes toward the ground state +1 with T1:
///   (x, y) -> (x, y) e^(-t/T2*),   z -> 1 - (1 - z) e^(-t/T1).
/// With T2* <= 2 T1 the image stays inside the Bloch ball.
Vec3 apply_decoherence(const BlochState& b, double elapsed_us, const DeviceParams& dev);

/// Per axis a, draws n_shots projective outcomes with p(+1) = (1 + b_a)/2
/// and records the empirical mean. Deterministic given cfg.seed. Should
/// |b_est| vanish (pathological at realistic shot counts), b_pure falls
/// back to +z.
TomographyRecord sample_tomography(const Vec3& b_true, const ShotConfig& cfg);

/// Stream-independent per-sample seed so parallel order cannot matter.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k_index,
                          std::uint64_t t_index);

/// ||Delta d_hat(k)||: sample standard deviation of circumradius estimates
/// over disjoint equally spaced triples (i, i+m, i+2m), m = len/3.
/// n_triples < 0 selects the default m. Collinear triples are skipped;
/// fewer than 3 valid radii is an error.
double path_fluctuation(const std::vector<Vec3>& points, int n_triples = -1);

/// Delta f(t) = (1/N) sum_k ||Delta d_hat(k)|| / (1 + b_i(k) . b(k, t)).
/// A Loschmidt zero on the grid gives a distinguished infinite error bar.
double error_bar_rate(const QuenchSpec& spec,
                      const std::vector<TomographyRecord>& records, int t_index);

/// Measured-rate companion, f(t) = -(1/N) sum_k log[(1 + b_i . b(k,t))/2],
/// from the same records.
double rate_from_records(const QuenchSpec& spec,
                         const std::vector<TomographyRecord>& records, int t_index);

struct EmulationRun {
  std::vector<TomographyRecord> records;  // mode-major: ik * n_steps + it
};

/// Full pipeline: evolve exactly, map to the lab frame, optionally damp,
/// sample tomography with per-(k,t) derived seeds, and attach per-mode
/// path fluctuations.
EmulationRun emulate_quench(const QuenchSpec& spec, const ShotConfig& cfg,
                            const std::optional<DeviceParams>& decoherence,
                            int workers = 1);

}  // namespace dqpt
