#include "dqpt/observables.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "dqpt/errors.hpp"
#include "dqpt/parallel.hpp"
#include "dqpt/quadrature.hpp"

namespace dqpt {

namespace {

struct ModeTerms {
  std::vector<double> norm_f;  // |d_f(k_j)|
  std::vector<double> dot;     // d_hat_i(k_j) . d_hat_f(k_j)
};

// Per-mode invariants of the quench; throws naming k on a degenerate mode.
ModeTerms mode_terms(const QuenchSpec& spec) {
  const auto ks = spec.momenta.points();
  ModeTerms mt;
  mt.norm_f.reserve(ks.size());
  mt.dot.reserve(ks.size());
  for (double k : ks) {
    const Vec3 d_i = d_vector(spec.initial, k);
    const Vec3 d_f = d_vector(spec.final_, k);
    const double ni = d_i.norm(), nf = d_f.norm();
    if (ni == 0.0)
      throw DegenerateModeError(
          "degenerate d-vector: |d_i(k)| = 0 at k = " + std::to_string(k), k);
    if (nf == 0.0)
      throw DegenerateModeError(
          "degenerate d-vector: |d_f(k)| = 0 at k = " + std::to_string(k), k);
    mt.norm_f.push_back(nf);
    mt.dot.push_back(d_i.dot(d_f) / (ni * nf));
  }
  return mt;
}

double rate_from_terms(const ModeTerms& mt, double t) {
  const size_t n = mt.norm_f.size();
  std::vector<double> logs(n);
  for (size_t j = 0; j < n; ++j) {
    const double c = std::cos(mt.norm_f[j] * t);
    const double s = std::sin(mt.norm_f[j] * t);
    const double gsq = c * c + mt.dot[j] * mt.dot[j] * s * s;
    logs[j] = std::log(gsq);  // gsq == 0 gives -inf, hence f = +inf
  }
  return -pairwise_sum(logs) / static_cast<double>(n);
}

double ising_df_norm(double g_f, double k) {
  return d_vector(IsingParams{g_f}, k).norm();
}

}  // namespace

double TextureGrid::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : s)
    for (double v : row) m = std::min(m, v);
  return m;
}

double rate_function(const QuenchSpec& spec, double t) {
  spec.validate();
  return rate_from_terms(mode_terms(spec), t);
}

RateCurve rate_curve(const QuenchSpec& spec, int workers) {
  spec.validate();
  const ModeTerms mt = mode_terms(spec);
  RateCurve curve;
  curve.times = spec.times.points();
  curve.values.assign(curve.times.size(), 0.0);
  curve.n_modes = spec.momenta.n_modes;
  parallel_for(static_cast<int>(curve.times.size()), workers, [&](int i) {
    curve.values[static_cast<size_t>(i)] =
        rate_from_terms(mt, curve.times[static_cast<size_t>(i)]);
  });
  return curve;
}

double rate_function_thermo(const ModelParams& initial, const ModelParams& final_,
                            double t, double quad_tol) {
  if (!(quad_tol > 0.0)) throw ConfigError("rate_function_thermo: quad_tol must be > 0");

  const auto log_gsq = [&](double k) {
    const Vec3 d_i = d_vector(initial, k);
    const Vec3 d_f = d_vector(final_, k);
    const double ni = d_i.norm(), nf = d_f.norm();
    if (ni == 0.0 || nf == 0.0)
      throw DegenerateModeError(
          "degenerate d-vector at k = " + std::to_string(k), k);
    const double dot = d_i.dot(d_f) / (ni * nf);
    const double c = std::cos(nf * t), s = std::sin(nf * t);
    double gsq = c * c + dot * dot * s * s;
    // Integrable log singularity at (k*, t_c); an exact zero at a node can
    // only arise on constructed inputs, clamp it instead of returning -inf.
    if (gsq < DBL_MIN) gsq = DBL_MIN;
    return std::log(gsq);
  };

  // Split the integration range at the perpendicularity momenta, so the
  // possible singularities sit on interval ends that GK15 never evaluates.
  std::vector<double> cuts{0.0, kTwoPi};
  const int scan = 512;
  double prev_k = 0.0, prev_u = 0.0;
  for (int i = 0; i <= scan; ++i) {
    const double k = kTwoPi * i / scan;
    const double u = d_vector(initial, k).dot(d_vector(final_, k));
    if (i > 0 && ((prev_u < 0.0 && u > 0.0) || (prev_u > 0.0 && u < 0.0))) {
      double a = prev_k, b = k, ua = prev_u;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        const double um = d_vector(initial, m).dot(d_vector(final_, m));
        if ((ua < 0.0) == (um < 0.0)) {
          a = m;
          ua = um;
        } else {
          b = m;
        }
      }
      cuts.push_back(0.5 * (a + b));
    } else if (u == 0.0) {
      cuts.push_back(k);
    }
    prev_k = k;
    prev_u = u;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double tol_integral = quad_tol * kTwoPi;
  double total = 0.0, achieved = 0.0;
  try {
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] < 1e-14) continue;
      const auto r = integrate_adaptive(
          log_gsq, cuts[i], cuts[i + 1],
          tol_integral * (cuts[i + 1] - cuts[i]) / kTwoPi);
      total += r.value;
      achieved += r.error_estimate;
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError("rate_function_thermo: quadrature did not converge",
                          (achieved + e.achieved_tolerance()) / kTwoPi);
  }
  return -total / kTwoPi;
}

bool dqpt_predicate(double g_i, double g_f) {
  return (1.0 - std::abs(g_i)) * (1.0 - std::abs(g_f)) < 0.0;
}

std::optional<double> critical_momentum(double g_i, double g_f) {
  if (g_i + g_f == 0.0) return std::nullopt;
  const double c = (1.0 + g_i * g_f) / (g_i + g_f);
  if (!(std::abs(c) < 1.0)) return std::nullopt;
  return std::acos(c);
}

std::vector<double> critical_times(double k_star, double g_f, int n_max) {
  if (n_max < 0) throw ConfigError("critical_times: n_max must be >= 0");
  const double nf = ising_df_norm(g_f, k_star);
  if (nf == 0.0)
    throw DegenerateModeError("degenerate d-vector at k*", k_star);
  const double period = kPi / nf;
  std::vector<double> tc(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) tc[static_cast<size_t>(n)] = period * (n + 0.5);
  return tc;
}

CriticalSet critical_set(double g_i, double g_f, int n_max) {
  CriticalSet cs;
  cs.k_star = critical_momentum(g_i, g_f);
  if (cs.k_star) {
    cs.period = kPi / ising_df_norm(g_f, *cs.k_star);
    cs.t_c = critical_times(*cs.k_star, g_f, n_max);
  }
  return cs;
}

int chern_fixed_points(double g_i, double g_f) {
  double cos_sum = 0.0;
  for (double k : {0.0, kPi}) {
    const Vec3 d_i = d_vector(IsingParams{g_i}, k);
    const Vec3 d_f = d_vector(IsingParams{g_f}, k);
    if (d_i.norm() == 0.0 || d_f.norm() == 0.0)
      throw DegenerateModeError(
          "degenerate fixed point at k = " + std::to_string(k), k);
    const double cos_theta = d_i.dot(d_f) / (d_i.norm() * d_f.norm());
    cos_sum += (k == 0.0) ? cos_theta : -cos_theta;
  }
  return static_cast<int>(std::lround(cos_sum / 2.0));
}

double chern_integral(const QuenchSpec& spec, int nk, int nt) {
  if (nk < 16 || nt < 16) throw ConfigError("chern_integral: nk, nt must be >= 16");
  const double dk = kPi / nk;
  const double dtp = kPi / nt;
  const double h = 1e-5;  // central-difference step in k

  // Evolved state at (k, t'): rescaled time t' = |d_f| t makes every mode
  // complete one precession cycle (angle 2t') over t' in [0, pi].
  const auto state_at = [&](double k, double tp) {
    const Vec3 d_i = d_vector(spec.initial, k);
    const Vec3 d_f = d_vector(spec.final_, k);
    if (d_i.norm() == 0.0 || d_f.norm() == 0.0)
      throw DegenerateModeError(
          "degenerate d-vector at k = " + std::to_string(k), k);
    return rotate_about(-d_i.normalized(), d_f.normalized(), 2.0 * tp);
  };

  std::vector<double> terms(static_cast<size_t>(nk) * static_cast<size_t>(nt));
  for (int ik = 0; ik < nk; ++ik) {
    const double k = (ik + 0.5) * dk;
    const Vec3 axis = d_vector(spec.final_, k).normalized();
    for (int it = 0; it < nt; ++it) {
      const double tp = (it + 0.5) * dtp;
      const Vec3 b = state_at(k, tp);
      const Vec3 db_dt = 2.0 * axis.cross(b);
      const Vec3 db_dk = (state_at(k + h, tp) - state_at(k - h, tp)) / (2.0 * h);
      terms[static_cast<size_t>(ik) * nt + it] = b.cross(db_dt).dot(db_dk);
    }
  }
  return pairwise_sum(terms) * dk * dtp / (4.0 * kPi);
}

TextureGrid skyrmion_texture(const QuenchSpec& spec, int workers) {
  spec.validate();
  TextureGrid grid;
  grid.k_values = spec.momenta.points();
  grid.t_values = spec.times.points();
  grid.s.assign(grid.k_values.size(),
                std::vector<double>(grid.t_values.size(), 0.0));
  parallel_for(static_cast<int>(grid.k_values.size()), workers, [&](int ik) {
    const ModeQuench mq = mode_quench(spec, grid.k_values[static_cast<size_t>(ik)]);
    auto& row = grid.s[static_cast<size_t>(ik)];
    for (size_t it = 0; it < grid.t_values.size(); ++it)
      row[it] = evolve(mq, grid.t_values[it]).dot(mq.b_i);
  });
  return grid;
}

SphereCoverage sphere_coverage(const QuenchSpec& spec) {
  // Sign scan of d_hat_i . d_hat_f over the half zone; gap closings along
  // the scan are skipped, continuity covers them.
  const int scan = 4096;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    const double k = kPi * i / scan;
    const Vec3 d_i = d_vector(spec.initial, k);
    const Vec3 d_f = d_vector(spec.final_, k);
    const double ni = d_i.norm(), nf = d_f.norm();
    if (ni == 0.0 || nf == 0.0) continue;
    const double dot = d_i.dot(d_f) / (ni * nf);
    lo = std::min(lo, dot);
    hi = std::max(hi, dot);
  }
  return (lo < 0.0 && hi > 0.0) ? SphereCoverage::Full
                                : SphereCoverage::PartialHalfOrLess;
}

}  // namespace dqpt
