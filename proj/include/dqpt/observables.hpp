#pragma once

#include <optional>
#include <vector>

#include "dqpt/dynamics.hpp"

namespace dqpt {

// DQPT diagnostics. The rate function of the dynamical free energy is
//
//   f(t) = -(1/N) sum_k log |G_k(t)|^2,
//
// nonanalytic at the critical times t_c(n) = (pi/|d_f(k*)|)(n + 1/2) when a
// critical momentum k* with d_hat_i(k*) . d_hat_f(k*) = 0 exists.

struct RateCurve {
  std::vector<double> times;
  std::vector<double> values;
  int n_modes = 0;  // -1 marks the thermodynamic (N -> infinity) limit
};

struct CriticalSet {
  std::optional<double> k_star;  // in (0, pi) when present
  std::vector<double> t_c;
  double period = 0.0;  // pi/|d_f(k_star)|; 0 when no critical momentum
};

/// s(k, t) = b_hat(k, t) . b_hat_i(k); +1 initially, -1 at Loschmidt zeros.
struct TextureGrid {
  std::vector<double> k_values;
  std::vector<double> t_values;
  std::vector<std::vector<double>> s;  // s[ik][it]

  double min_value() const;
};

/// Exact Loschmidt zeros on the grid yield +infinity as a distinguished
/// value, not an error; degenerate modes (|d| = 0) throw naming k.
double rate_function(const QuenchSpec& spec, double t);

RateCurve rate_curve(const QuenchSpec& spec, int workers = 1);

/// Thermodynamic limit f(t) = -(1/2pi) integral_0^2pi dk log |G_k(t)|^2 by
/// adaptive quadrature split at the perpendicularity momenta, where the
/// integrand can develop integrable log singularities. quad_tol is the
/// absolute tolerance on the returned value.
double rate_function_thermo(const ModelParams& initial, const ModelParams& final_,
                            double t, double quad_tol);

/// Ising quench crosses the equilibrium phase boundary, i.e.
/// (1 - |g_i|)(1 - |g_f|) < 0.
bool dqpt_predicate(double g_i, double g_f);

/// k* = arccos((1 + g_i g_f)/(g_i + g_f)) in (0, pi) when the modulus
/// condition holds; absent otherwise (including g_i + g_f = 0).
std::optional<double> critical_momentum(double g_i, double g_f);

/// t_c(n) = (pi/|d_f(k_star)|)(n + 1/2), n = 0..n_max.
std::vector<double> critical_times(double k_star, double g_f, int n_max);

CriticalSet critical_set(double g_i, double g_f, int n_max);

/// C_dyn = (cos theta_{k=0} - cos theta_{k=pi}) / 2 with theta_k the angle
/// between d_hat_i(k) and d_hat_f(k) at the precession fixed points.
int chern_fixed_points(double g_i, double g_f);

/// Midpoint-rule winding integral of the evolved state field b(k, t') over
/// k in [0, pi], rescaled time t' = |d_f(k)| t in [0, pi] (one precession
/// cycle per mode):
///   C_dyn = (1/4pi) int dk int dt' (b x d_t' b) . d_k b.
double chern_integral(const QuenchSpec& spec, int nk, int nt);

TextureGrid skyrmion_texture(const QuenchSpec& spec, int workers = 1);

enum class SphereCoverage { Full, PartialHalfOrLess };

/// Full iff d_hat_i(k) . d_hat_f(k) changes sign on [0, pi], i.e. iff the
/// trajectories sweep the whole sphere; agrees with dqpt_predicate.
SphereCoverage sphere_coverage(const QuenchSpec& spec);

}  // namespace dqpt
