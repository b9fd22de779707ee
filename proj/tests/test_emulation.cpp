#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dqpt/emulation.hpp"
#include "test_util.hpp"

using namespace dqpt;

namespace {

QuenchSpec default_quench(int n_modes = 30, double offset = 0.0) {
  const double tc = 1.6066365958281106;
  return QuenchSpec{IsingParams{0.2}, IsingParams{1.5},
                    MomentumGrid{n_modes, offset},
                    TimeGrid{0.0, 2.0 * tc / 70.0, 140}};
}

}  // namespace

TEST_CASE("transmon levels reproduce the device spectroscopy") {
  // anharmonicity (E2 - E1) - (E1 - E0) = -E_C from the closed form
  for (double ec : {0.15, 0.236, 0.4})
    for (double ej : {5.0, 21.96, 40.0}) {
      const double anh = (transmon_level(ej, ec, 2) - transmon_level(ej, ec, 1)) -
                         (transmon_level(ej, ec, 1) - transmon_level(ej, ec, 0));
      CHECK(anh == doctest::Approx(-ec).epsilon(1e-12));
    }

  // E_C/h = 236 MHz and f01 = 6.203 GHz pin E_J/h near 21.96 GHz
  const double ec = 0.236;
  const double ej = transmon_ej_from_f01(6.203, ec);
  CHECK(ej == doctest::Approx(21.960127648305086).epsilon(1e-12));
  const double f01 = transmon_level(ej, ec, 1) - transmon_level(ej, ec, 0);
  CHECK(f01 == doctest::Approx(6.203).epsilon(1e-12));
  CHECK(transmon_regime_ok(ej, ec));  // ratio ~ 93
  CHECK_FALSE(transmon_regime_ok(2.0, 1.0));
  CHECK_FALSE(transmon_regime_ok(150.0, 1.0));

  CHECK_THROWS_AS(transmon_level(-1.0, 0.2, 0), std::invalid_argument);
  CHECK_THROWS_AS(transmon_level(20.0, 0.2, -1), std::invalid_argument);
}

TEST_CASE("decoherence damping") {
  DeviceParams dev;
  const BlochState b(Vec3(1, 0, 0));

  CHECK(apply_decoherence(b, 0.0, dev).isApprox(b.vec(), 1e-15));
  CHECK(apply_decoherence(b, 1e6, dev).isApprox(Vec3(0, 0, 1), 1e-12));

  const Vec3 mid = apply_decoherence(b, dev.t2star_us, dev);
  CHECK(mid.x() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(mid.y() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(mid.z() ==
        doctest::Approx(1.0 - std::exp(-dev.t2star_us / dev.t1_us)).epsilon(1e-14));

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(0.0, 30.0);
  for (int i = 0; i < 300; ++i) {
    const Vec3 damped = apply_decoherence(dqpt_test::random_unit(rng), ut(rng), dev);
    CHECK(damped.norm() <= 1.0 + 1e-12);
  }

  DeviceParams unphysical;
  unphysical.t2star_us = 20.0;  // > 2 T1
  CHECK_THROWS_AS(unphysical.validate(), ConfigError);
}

TEST_CASE("tomography sampling: determinism and exact poles") {
  ShotConfig cfg{5000, 99, 15.0};
  const TomographyRecord a = sample_tomography(Vec3(0, 0, 1), cfg);
  CHECK(a.b_est.z() == 1.0);  // p(+1) = 1, all shots up
  const TomographyRecord b = sample_tomography(Vec3(0.2, -0.4, 0.5), cfg);
  const TomographyRecord c = sample_tomography(Vec3(0.2, -0.4, 0.5), cfg);
  CHECK(b.b_est == c.b_est);
  cfg.seed = 100;
  const TomographyRecord d = sample_tomography(Vec3(0.2, -0.4, 0.5), cfg);
  CHECK(b.b_est != d.b_est);
  CHECK(std::abs(b.b_pure.vec().norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(sample_tomography(Vec3(1.2, 0, 0), cfg), std::invalid_argument);
  CHECK_THROWS_AS((ShotConfig{0, 1, 15.0}.validate()), ConfigError);
}

TEST_CASE("tomography converges to the true state") {
  const Vec3 b_true(0.3, -0.5, 0.8);  // norm < 1 is fine for the sampler
  ShotConfig cfg{1000000, 12345, 15.0};
  const TomographyRecord rec = sample_tomography(b_true / b_true.norm(), cfg);
  CHECK((rec.b_est - b_true / b_true.norm()).cwiseAbs().maxCoeff() < 0.005);
}

TEST_CASE("tomography estimates are unbiased") {
  const Vec3 b_true(0.3, -0.2, 0.6);
  const int reps = 400, shots = 2000;
  Vec3 mean = Vec3::Zero();
  for (int r = 0; r < reps; ++r) {
    ShotConfig cfg{shots, 7000 + static_cast<std::uint64_t>(r), 15.0};
    mean += sample_tomography(b_true, cfg).b_est;
  }
  mean /= reps;
  for (int axis = 0; axis < 3; ++axis) {
    const double se = std::sqrt((1.0 - b_true[axis] * b_true[axis]) /
                                (static_cast<double>(reps) * shots));
    CHECK(std::abs(mean[axis] - b_true[axis]) < 3.0 * se);
  }
}

TEST_CASE("derived seeds separate modes, times, and bases") {
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
  CHECK(derive_seed(42, 3, 7) == derive_seed(42, 3, 7));
}

TEST_CASE("path fluctuation estimator") {
  // noiseless circle: every triple reproduces the same radius
  std::vector<Vec3> circle;
  for (int i = 0; i < 70; ++i) {
    const double th = kTwoPi * i / 70.0;
    circle.emplace_back(0.8 * std::cos(th), 0.8 * std::sin(th), 0.3);
  }
  CHECK(path_fluctuation(circle) < 1e-10);

  // 70 points partition into floor(70/3) = 23 disjoint triples
  CHECK_NOTHROW(path_fluctuation(circle, 23));
  CHECK_THROWS_AS(path_fluctuation(circle, 24), std::invalid_argument);
  CHECK_THROWS_AS(path_fluctuation({circle.begin(), circle.begin() + 8}),
                  std::invalid_argument);

  // isotropic noise sigma = 0.01: estimator lands within a factor 3 of sigma
  const double sigma = 0.01;
  double total = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<Vec3> pts = circle;
    for (auto& p : pts) p += Vec3(noise(rng), noise(rng), noise(rng));
    total += path_fluctuation(pts);
  }
  const double mean_fluct = total / 100.0;
  CHECK(mean_fluct > sigma / 3.0);
  CHECK(mean_fluct < sigma * 3.0);

  // straight-line path: all triples collinear, no radius estimates
  std::vector<Vec3> line;
  for (int i = 0; i < 12; ++i) line.emplace_back(i * 0.1, 0.0, 0.0);
  CHECK_THROWS_AS(path_fluctuation(line), std::runtime_error);
}

TEST_CASE("error bar rate formula") {
  // single mode at k = 0, g_i = 0.2: lab-frame initial state (0, 1, 0)
  QuenchSpec spec{IsingParams{0.2}, IsingParams{1.5}, MomentumGrid{1, 0.0},
                  TimeGrid{0.0, 0.1, 1}};
  TomographyRecord rec;
  rec.k = 0.0;
  rec.t_index = 0;
  rec.b_pure = BlochState(Vec3(1, 0, 0));  // perpendicular to b_i
  rec.fluctuation = 0.01;
  CHECK(error_bar_rate(spec, {rec}, 0) == doctest::Approx(0.01).epsilon(1e-14));

  rec.fluctuation = 0.0;
  CHECK(error_bar_rate(spec, {rec}, 0) == 0.0);

  // antipodal estimate: distinguished infinite error bar
  rec.b_pure = BlochState(Vec3(0, -1, 0));
  rec.fluctuation = 0.01;
  CHECK(std::isinf(error_bar_rate(spec, {rec}, 0)));
  CHECK(std::isinf(rate_from_records(spec, {rec}, 0)));

  // missing mode is reported with its momentum
  CHECK_THROWS_WITH_AS(error_bar_rate(spec, {rec}, 3),
                       doctest::Contains("t_index = 3"), std::invalid_argument);
}

TEST_CASE("exact records reproduce the exact rate function") {
  const QuenchSpec spec = default_quench(12);
  std::vector<TomographyRecord> records;
  const auto ks = spec.momenta.points();
  for (size_t ik = 0; ik < ks.size(); ++ik) {
    const ModeQuench mq = mode_quench(spec, ks[ik]);
    for (int it = 0; it < spec.times.n_steps; ++it) {
      TomographyRecord rec;
      rec.k = ks[ik];
      rec.t_index = it;
      rec.b_pure = BlochState(
          to_experimental_frame(evolve(mq, spec.times.point(it)).vec()));
      rec.b_est = rec.b_pure.vec();
      records.push_back(rec);
    }
  }
  for (int it : {0, 17, 35, 100})
    CHECK(rate_from_records(spec, records, it) ==
          doctest::Approx(rate_function(spec, spec.times.point(it))).epsilon(1e-12));
}

TEST_CASE("emulation pipeline is deterministic and worker independent") {
  const QuenchSpec spec = default_quench(8);
  const ShotConfig cfg{200, 424242, 15.0};
  const EmulationRun r1 = emulate_quench(spec, cfg, std::nullopt, 1);
  const EmulationRun r2 = emulate_quench(spec, cfg, std::nullopt, 1);
  const EmulationRun r3 = emulate_quench(spec, cfg, std::nullopt, 3);
  REQUIRE(r1.records.size() == r2.records.size());
  REQUIRE(r1.records.size() == r3.records.size());
  for (size_t i = 0; i < r1.records.size(); ++i) {
    CHECK(r1.records[i].b_est == r2.records[i].b_est);
    CHECK(r1.records[i].b_est == r3.records[i].b_est);
    CHECK(r1.records[i].fluctuation == r3.records[i].fluctuation);
  }
}

TEST_CASE("emulated rate converges to the exact curve at large shot counts") {
  const QuenchSpec spec = default_quench(30);
  const ShotConfig cfg{1000000, 5, 15.0};
  const EmulationRun run = emulate_quench(spec, cfg, std::nullopt, 2);
  double worst = 0.0;
  for (int it = 0; it < spec.times.n_steps; ++it) {
    const double f_emul = rate_from_records(spec, run.records, it);
    const double f_exact = rate_function(spec, spec.times.point(it));
    worst = std::max(worst, std::abs(f_emul - f_exact));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("decoherence bends the emulated trajectory toward the ground state") {
  const QuenchSpec spec = default_quench(4);
  const ShotConfig cfg{400000, 11, 15.0};
  DeviceParams dev;
  dev.t1_us = 0.3;  // exaggerated decay so the drift is visible
  dev.t2star_us = 0.5;
  const EmulationRun noisy = emulate_quench(spec, cfg, dev, 1);
  // late-time estimates approach the lab ground state +z
  const auto& last = noisy.records[static_cast<size_t>(spec.times.n_steps) - 1];
  CHECK(last.b_pure.z() > 0.9);
}

TEST_CASE("device parameter table defaults") {
  const DeviceParams dev;
  CHECK(dev.f01_ghz == 6.203);
  CHECK(dev.anharm_mhz == -236.0);
  CHECK(dev.t1_us == 8.3);
  CHECK(dev.t2star_us == 6.8);
  CHECK(dev.t2echo_us == 11.7);
  CHECK(dev.readout_ghz == 6.793);
  CHECK(dev.chi_mhz == -0.697);
  dev.validate();
}
