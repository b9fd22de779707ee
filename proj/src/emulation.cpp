#include "dqpt/emulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dqpt/errors.hpp"
#include "dqpt/parallel.hpp"

namespace dqpt {

void DeviceParams::validate() const {
  if (!(t1_us > 0.0) || !(t2star_us > 0.0) || !(t2echo_us > 0.0))
    throw ConfigError("DeviceParams: coherence times must be positive");
  if (t2star_us > 2.0 * t1_us)
    throw ConfigError("DeviceParams: T2* must not exceed 2 T1");
}

void ShotConfig::validate() const {
  if (n_shots < 1) throw ConfigError("ShotConfig: n_shots must be >= 1");
  if (!(step_ns > 0.0)) throw ConfigError("ShotConfig: step_ns must be > 0");
}

double transmon_level(double e_j, double e_c, int level) {
  if (!(e_j > 0.0) || !(e_c > 0.0))
    throw std::invalid_argument("transmon_level: energies must be positive");
  if (level < 0) throw std::invalid_argument("transmon_level: level must be >= 0");
  const double l = level;
  return -e_j + std::sqrt(8.0 * e_j * e_c) * (l + 0.5) -
         0.5 * e_c * (l * (l + 1.0) + 0.5);
}

double transmon_ej_from_f01(double f01, double e_c) {
  // E_1 - E_0 = sqrt(8 E_J E_C) - E_C inverted for E_J.
  if (!(f01 > 0.0) || !(e_c > 0.0))
    throw std::invalid_argument("transmon_ej_from_f01: energies must be positive");
  const double s = f01 + e_c;
  return s * s / (8.0 * e_c);
}

bool transmon_regime_ok(double e_j, double e_c) {
  const double r = e_j / e_c;
  return r >= 20.0 && r <= 100.0;
}

Vec3 apply_decoherence(const BlochState& b, double elapsed_us,
                       const DeviceParams& dev) {
  if (elapsed_us < 0.0)
    throw std::invalid_argument("apply_decoherence: elapsed must be >= 0");
  dev.validate();
  const double transverse = std::exp(-elapsed_us / dev.t2star_us);
  const double longitudinal = std::exp(-elapsed_us / dev.t1_us);
  return Vec3(b.x() * transverse, b.y() * transverse,
              1.0 - (1.0 - b.z()) * longitudinal);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k_index,
                          std::uint64_t t_index) {
  // splitmix64 mixing of (base, k, t); collision-free enough for grids.
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(base ^ mix(k_index ^ mix(t_index)));
}

TomographyRecord sample_tomography(const Vec3& b_true, const ShotConfig& cfg) {
  cfg.validate();
  if (b_true.norm() > 1.0 + 1e-9)
    throw std::invalid_argument("sample_tomography: |b_true| must be <= 1");
  std::mt19937_64 rng(cfg.seed);
  TomographyRecord rec;
  for (int axis = 0; axis < 3; ++axis) {
    const double p = std::clamp(0.5 * (1.0 + b_true[axis]), 0.0, 1.0);
    std::binomial_distribution<long> binom(cfg.n_shots, p);
    const long plus = binom(rng);
    rec.b_est[axis] =
        2.0 * static_cast<double>(plus) / static_cast<double>(cfg.n_shots) - 1.0;
  }
  rec.b_pure = rec.b_est.norm() > 0.0 ? normalize(rec.b_est)
                                      : BlochState(Vec3(0.0, 0.0, 1.0));
  return rec;
}

double path_fluctuation(const std::vector<Vec3>& points, int n_triples) {
  const int n = static_cast<int>(points.size());
  if (n < 9)
    throw std::invalid_argument("path_fluctuation: need at least 9 points");
  const int m = n / 3;
  if (n_triples < 0) n_triples = m;
  if (n_triples < 1 || n_triples > m)
    throw std::invalid_argument("path_fluctuation: n_triples out of range");
  std::vector<double> radii;
  radii.reserve(static_cast<size_t>(n_triples));
  for (int i = 0; i < n_triples; ++i) {
    try {
      radii.push_back(circumradius(points[static_cast<size_t>(i)],
                                   points[static_cast<size_t>(i + m)],
                                   points[static_cast<size_t>(i + 2 * m)]));
    } catch (const std::invalid_argument&) {
      // collinear triple, skip
    }
  }
  if (radii.size() < 3)
    throw std::runtime_error("path_fluctuation: fewer than 3 valid radius estimates");
  const double mean =
      pairwise_sum(radii) / static_cast<double>(radii.size());
  double ss = 0.0;
  for (double r : radii) ss += (r - mean) * (r - mean);
  return std::sqrt(ss / static_cast<double>(radii.size() - 1));
}

namespace {

// Initial state of mode k in the lab frame.
Vec3 lab_initial_state(const QuenchSpec& spec, double k) {
  const Vec3 d_i = d_vector(spec.initial, k);
  if (d_i.norm() == 0.0)
    throw DegenerateModeError(
        "degenerate d-vector: |d_i(k)| = 0 at k = " + std::to_string(k), k);
  return to_experimental_frame(ground_bloch(d_i).vec());
}

const TomographyRecord& find_record(const std::vector<TomographyRecord>& records,
                                    double k, int t_index) {
  for (const auto& r : records)
    if (r.t_index == t_index && std::abs(r.k - k) <= 1e-12) return r;
  throw std::invalid_argument("missing tomography record for k = " +
                              std::to_string(k) + ", t_index = " +
                              std::to_string(t_index));
}

}  // namespace

double error_bar_rate(const QuenchSpec& spec,
                      const std::vector<TomographyRecord>& records, int t_index) {
  spec.validate();
  const auto ks = spec.momenta.points();
  std::vector<double> terms(ks.size());
  for (size_t j = 0; j < ks.size(); ++j) {
    const auto& rec = find_record(records, ks[j], t_index);
    const Vec3 b_i = lab_initial_state(spec, ks[j]);
    const double denom = 1.0 + b_i.dot(rec.b_pure.vec());
    terms[j] = denom > 0.0 ? rec.fluctuation / denom
                           : std::numeric_limits<double>::infinity();
  }
  return pairwise_sum(terms) / static_cast<double>(ks.size());
}

double rate_from_records(const QuenchSpec& spec,
                         const std::vector<TomographyRecord>& records,
                         int t_index) {
  spec.validate();
  const auto ks = spec.momenta.points();
  std::vector<double> logs(ks.size());
  for (size_t j = 0; j < ks.size(); ++j) {
    const auto& rec = find_record(records, ks[j], t_index);
    const Vec3 b_i = lab_initial_state(spec, ks[j]);
    const double overlap_sq = 0.5 * (1.0 + b_i.dot(rec.b_pure.vec()));
    logs[j] = overlap_sq > 0.0 ? std::log(overlap_sq)
                               : -std::numeric_limits<double>::infinity();
  }
  return -pairwise_sum(logs) / static_cast<double>(ks.size());
}

EmulationRun emulate_quench(const QuenchSpec& spec, const ShotConfig& cfg,
                            const std::optional<DeviceParams>& decoherence,
                            int workers) {
  spec.validate();
  cfg.validate();
  if (decoherence) decoherence->validate();
  const auto ks = spec.momenta.points();
  const int n_steps = spec.times.n_steps;

  EmulationRun run;
  run.records.resize(ks.size() * static_cast<size_t>(n_steps));
  parallel_for(static_cast<int>(ks.size()), workers, [&](int ik) {
    const ModeQuench mq = mode_quench(spec, ks[static_cast<size_t>(ik)]);
    std::vector<Vec3> path;
    path.reserve(static_cast<size_t>(n_steps));
    for (int it = 0; it < n_steps; ++it) {
      const BlochState b_true = evolve(mq, spec.times.point(it));
      Vec3 b_lab = to_experimental_frame(b_true.vec());
      if (decoherence) {
        const double elapsed_us = it * cfg.step_ns * 1e-3;
        b_lab = apply_decoherence(BlochState(b_lab), elapsed_us, *decoherence);
      }
      ShotConfig sample_cfg = cfg;
      sample_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(ik),
                                    static_cast<std::uint64_t>(it));
      TomographyRecord rec = sample_tomography(b_lab, sample_cfg);
      rec.k = ks[static_cast<size_t>(ik)];
      rec.t_index = it;
      path.push_back(rec.b_pure.vec());
      run.records[static_cast<size_t>(ik) * n_steps + it] = rec;
    }
    // Fluctuation needs enough points for triple partitioning.
    const double fluct = n_steps >= 9 ? path_fluctuation(path) : 0.0;
    for (int it = 0; it < n_steps; ++it)
      run.records[static_cast<size_t>(ik) * n_steps + it].fluctuation = fluct;
  });
  return run;
}

}  // namespace dqpt
