#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dqpt/bloch.hpp"
#include "dqpt/dynamics.hpp"
#include "test_util.hpp"

using namespace dqpt;
using dqpt_test::random_unit;
using dqpt_test::random_vec3;

TEST_CASE("normalize scales to the unit sphere") {
  CHECK(normalize(Vec3(0, 0, 2)).vec().isApprox(Vec3(0, 0, 1), 1e-15));

  // (0, sin(pi/2), 1.5 - cos(pi/2)) = (0, 1, 1.5), divided by sqrt(3.25)
  const BlochState b = normalize(Vec3(0.0, 1.0, 1.5));
  CHECK(b.x() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(b.y() == doctest::Approx(0.5547001962252291).epsilon(1e-13));
  CHECK(b.z() == doctest::Approx(0.8320502943378437).epsilon(1e-13));
  CHECK(std::abs(b.vec().norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(normalize(Vec3(0, 0, 0)), DegenerateModeError);
  CHECK_THROWS_WITH(normalize(Vec3(0, 0, 0)), "degenerate d-vector");
}

TEST_CASE("BlochState rejects non-unit input") {
  CHECK_THROWS_AS(BlochState(Vec3(0, 0, 0.5)), std::invalid_argument);
  CHECK_NOTHROW(BlochState(Vec3(0, 0, 1)));
}

TEST_CASE("rotate: fixed point, half turn, oracle agreement") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const BlochState axis = random_unit(rng);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    const double angle = u(rng);
    CHECK(rotate(axis, axis, angle).vec().isApprox(axis.vec(), 1e-12));
  }

  const BlochState half =
      rotate(BlochState(Vec3(1, 0, 0)), BlochState(Vec3(0, 0, 1)), kPi);
  CHECK(half.vec().isApprox(Vec3(-1, 0, 0), 1e-12));

  // Rotation by theta about n equals conjugation by exp(-i theta/2 n.sigma).
  const BlochState b(Vec3(1, 0, 0));
  const BlochState axis(Vec3(0, 1, 0));
  const double theta = kPi / 3.0;
  const BlochState r = rotate(b, axis, theta);
  const BlochState o = unitary_oracle(axis.vec(), theta / 2.0, b);
  CHECK((r.vec() - o.vec()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rotation composition and isometry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const BlochState b1 = random_unit(rng);
    const BlochState b2 = random_unit(rng);
    const BlochState a = random_unit(rng);
    const double t1 = u(rng), t2 = u(rng);
    const BlochState c1 = rotate(rotate(b1, a, t1), a, t2);
    const BlochState c2 = rotate(b1, a, t1 + t2);
    CHECK((c1.vec() - c2.vec()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(rotate(b1, a, t1).dot(rotate(b2, a, t1)) ==
          doctest::Approx(b1.dot(b2)).epsilon(1e-10));
  }
}

TEST_CASE("ground_bloch is the antipode of d_hat") {
  CHECK(ground_bloch(Vec3(0, 0, 1)).vec().isApprox(Vec3(0, 0, -1), 1e-15));
  // Ising g = 0.2 at k = 0: d = (0, 0, -0.8) -> ground state +z
  CHECK(ground_bloch(Vec3(0, 0, -0.8)).vec().isApprox(Vec3(0, 0, 1), 1e-15));
  CHECK(ground_bloch(Vec3(0, 1, 0)).vec().isApprox(Vec3(0, -1, 0), 1e-15));
  CHECK_THROWS_AS(ground_bloch(Vec3(0, 0, 0)), DegenerateModeError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec3 d = dqpt_test::random_df(rng);
    CHECK(ground_bloch(d).dot(normalize(d)) == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("circumradius of explicit circles") {
  CHECK(circumradius(Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(circumradius(Vec3(2, 0, 0), Vec3(0, 2, 0), Vec3(-2, 0, 0)) ==
        doctest::Approx(2.0).epsilon(1e-14));

  // radius 0.7 about the z axis, points at 0, 50, 100 degrees
  const double r = 0.7;
  const Vec3 c(0.3, -0.2, 1.1);
  auto at = [&](double deg) {
    const double th = deg * kPi / 180.0;
    return Vec3(c + r * std::cos(th) * Vec3(1, 0, 0) +
                r * std::sin(th) * Vec3(0, 1, 0));
  };
  CHECK(circumradius(at(0), at(50), at(100)) == doctest::Approx(0.7).epsilon(1e-10));

  CHECK_THROWS_AS(circumradius(Vec3(0, 0, 0), Vec3(1, 1, 1), Vec3(2, 2, 2)),
                  std::invalid_argument);
}

TEST_CASE("circumradius is invariant under rigid motions") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p1 = random_vec3(rng), p2 = random_vec3(rng), p3 = random_vec3(rng);
    double r0;
    try {
      r0 = circumradius(p1, p2, p3);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const BlochState axis = random_unit(rng);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double th = u(rng);
    const Vec3 shift = random_vec3(rng);
    auto move = [&](const Vec3& p) {
      return Vec3(rotate_about(p, axis.vec(), th) + shift);
    };
    CHECK(circumradius(move(p1), move(p2), move(p3)) ==
          doctest::Approx(r0).epsilon(1e-10));
  }
}

TEST_CASE("momentum grid points and wrapping") {
  MomentumGrid g{4, 0.0};
  g.validate();
  const auto ks = g.points();
  CHECK(ks.size() == 4);
  CHECK(ks[0] == 0.0);
  CHECK(ks[1] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(ks[3] == doctest::Approx(3 * kPi / 2).epsilon(1e-15));

  // offsets larger than the spacing wrap back into [0, 2pi)
  MomentumGrid shifted{4, 5.0};
  for (double k : shifted.points()) {
    CHECK(k >= 0.0);
    CHECK(k < kTwoPi);
  }
  CHECK(shifted.point(0) == doctest::Approx(5.0).epsilon(1e-15));

  CHECK_THROWS_AS((MomentumGrid{0, 0.0}.validate()), ConfigError);
}

TEST_CASE("time grid validation") {
  TimeGrid t{0.0, 0.1, 5};
  t.validate();
  CHECK(t.point(4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS((TimeGrid{0.0, 0.0, 5}.validate()), ConfigError);
  CHECK_THROWS_AS((TimeGrid{-1.0, 0.1, 5}.validate()), ConfigError);
  CHECK_THROWS_AS((TimeGrid{0.0, 0.1, 0}.validate()), ConfigError);
}
