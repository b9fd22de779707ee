#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dqpt/bloch.hpp"

namespace dqpt {

// Two-band models as d(k) coefficient fields, h(k) = d0(k) + d(k).sigma.
// The canonical frame is the one the closed forms below are written in;
// the experimental frame is a fixed axis permutation applied on export.

struct IsingParams {
  double g = 0.0;  // transverse field; critical at |g| = 1
};

struct SshParams {
  double t = 1.0;   // mean hopping
  double dt = 0.0;  // dimerization, intra/inter-cell hopping t +- dt
};

struct KitaevParams {
  double t = 1.0;      // hopping
  double delta = 1.0;  // p-wave pairing
  double mu = 0.0;     // chemical potential
};

/// Tabulated d(k) and optional d0(k), periodically interpolated (linear).
struct CustomModel {
  std::vector<double> k;    // sorted, unique, in [0, 2pi)
  std::vector<Vec3> d;      // same length as k
  std::vector<double> d0;   // empty (== 0) or same length as k

  void validate() const;
  Vec3 d_at(double k_query) const;
  double d0_at(double k_query) const;
};

using ModelParams = std::variant<IsingParams, SshParams, KitaevParams, CustomModel>;

/// Pauli coefficient vector d(k) of the model.
///   Ising:  (0, sin k, g - cos k)
///   SSH:    ((t+dt) + (t-dt) cos k, (t-dt) sin k, 0)
///   Kitaev: (0, delta sin k, -mu/2 - t cos k)
Vec3 d_vector(const ModelParams& m, double k);

/// Identity coefficient d0(k); identically 0 for the named models.
double d0_scalar(const ModelParams& m, double k);

struct BandPair {
  double eps_minus = 0.0;
  double eps_plus = 0.0;
};

/// eps_+-(k) = d0(k) +- |d(k)|. Touching bands (|d| = 0) are allowed here.
BandPair band_energies(const ModelParams& m, double k);

/// Canonical (0, dy, dz) -> lab (dy, dz, dx): the fixed permutation placing
/// sin k on sigma_x and (g - cos k) on sigma_y. A proper rotation, so norms
/// and dot products are preserved.
inline Vec3 to_experimental_frame(const Vec3& d) { return Vec3(d.y(), d.z(), d.x()); }
inline Vec3 from_experimental_frame(const Vec3& d) { return Vec3(d.z(), d.x(), d.y()); }

bool same_family(const ModelParams& a, const ModelParams& b);

/// One numerical experiment: pre/post-quench model, momentum and time grids.
struct QuenchSpec {
  ModelParams initial;
  ModelParams final_;
  MomentumGrid momenta;
  TimeGrid times;

  void validate() const;
};

/// Load a custom model table from CSV with header k,dx,dy,dz,d0.
CustomModel load_custom_csv(std::istream& in);
CustomModel load_custom_csv_file(const std::string& path);

}  // namespace dqpt
