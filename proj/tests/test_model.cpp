#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dyad/errors.hpp"
#include "dyad/model.hpp"
#include "oracles.hpp"

using namespace dyad;
using doctest::Approx;

namespace {
Parameters friends() { return {1, 1, 0, 0, 2, 2}; }
}  // namespace

TEST_CASE("vector field") {
  const Rate zero = vector_field({0, 0}, friends());
  CHECK(zero.dx_dt == 0.0);
  CHECK(zero.dy_dt == 0.0);

  const Rate r = vector_field({1, 0}, friends());
  CHECK(r.dx_dt == -1.0);
  CHECK(r.dy_dt == Approx(std::numbers::pi / 2).epsilon(1e-15));

  const Parameters fig3{1, 1, -5, -4.19, -5, -3};
  const Rate s = vector_field({0, 0}, fig3);
  CHECK(s.dx_dt == -5.0);
  CHECK(s.dy_dt == -4.19);

  CHECK_THROWS_AS(vector_field({NAN, 0}, fig3), std::domain_error);
}

TEST_CASE("jacobian entries") {
  const Matrix2 j = jacobian({0, 0}, friends());
  CHECK(j[0][0] == -1.0);
  CHECK(j[0][1] == 2.0);
  CHECK(j[1][0] == 2.0);
  CHECK(j[1][1] == -1.0);

  const Matrix2 k = jacobian({0, 0}, Parameters{1, 2, 3, -7, 1, -1});
  CHECK(k[0][0] == -1.0);
  CHECK(k[0][1] == 1.0);
  CHECK(k[1][0] == -1.0);
  CHECK(k[1][1] == -2.0);

  // Outer symmetric fixed point of the friends system, x = 2 atan(x).
  const double xs = oracle::symmetric_fixed_point(2.0);
  CHECK(xs == Approx(2.33112237).epsilon(1e-8));
  const Matrix2 o = jacobian({xs, xs}, friends());
  CHECK(o[0][1] == Approx(2.0 / (1.0 + xs * xs)).epsilon(1e-14));
  CHECK(o[0][1] == Approx(0.3108).epsilon(1e-3));
}

TEST_CASE("jacobian matches finite differences at random states") {
  oracle::Draws draws(7);
  for (int k = 0; k < 100; ++k) {
    Parameters p = draws.params();
    p.f2 = InfluenceFunction::tanh(draws.uniform(0.5, 2.0));
    const State s{draws.uniform(-6, 6), draws.uniform(-6, 6)};
    const Matrix2 j = jacobian(s, p);
    const double h = 1e-6;
    const Rate xp = vector_field({s.x + h, s.y}, p), xm = vector_field({s.x - h, s.y}, p);
    const Rate yp = vector_field({s.x, s.y + h}, p), ym = vector_field({s.x, s.y - h}, p);
    const double fd[2][2] = {{(xp.dx_dt - xm.dx_dt) / (2 * h), (yp.dx_dt - ym.dx_dt) / (2 * h)},
                             {(xp.dy_dt - xm.dy_dt) / (2 * h), (yp.dy_dt - ym.dy_dt) / (2 * h)}};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        CHECK(std::abs(fd[r][c] - j[r][c]) <= 1e-6 * std::max(std::abs(j[r][c]), 1e-2));
    // divergence is the constant trace
    CHECK(j[0][0] + j[1][1] == -(p.m1 + p.m2));
  }
}

TEST_CASE("uninfluenced equilibrium") {
  CHECK(uninfluenced_equilibrium(friends()) == State{0, 0});
  CHECK(uninfluenced_equilibrium(Parameters{2, 1, 4, -3, 1, 1}) == State{2, -3});
  CHECK(uninfluenced_equilibrium(Parameters{1, 2, -4, -2, -5, -4}) == State{-4, -1});
}

TEST_CASE("invariant radius") {
  CHECK(invariant_radius(friends()) == Approx(std::numbers::pi + 1));
  CHECK(invariant_radius(Parameters{1, 1, -5, -4.19, -5, -3}) ==
        Approx(5 + 5 * std::numbers::pi / 2 + 1));
  CHECK(invariant_radius(Parameters{2, 2, 0, 0, 1, 1}) == Approx(std::numbers::pi / 4 + 1));

  const auto unbounded = InfluenceFunction::custom(
      "identity", [](double x) { return x; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, INFINITY);
  Parameters p = friends();
  p.f1 = unbounded;
  CHECK_THROWS_AS(invariant_radius(p), ConfigError);
}

TEST_CASE("field points inward on the invariant box boundary") {
  oracle::Draws draws(11);
  for (int k = 0; k < 20; ++k) {
    const Parameters p = draws.params();
    const double r = invariant_radius(p);
    for (int i = 0; i < 100; ++i) {
      const double t = -r + 2 * r * i / 99.0;
      CHECK(vector_field({r, t}, p).dx_dt < 0);
      CHECK(vector_field({-r, t}, p).dx_dt > 0);
      CHECK(vector_field({t, r}, p).dy_dt < 0);
      CHECK(vector_field({t, -r}, p).dy_dt > 0);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((Parameters{0, 1, 0, 0, 1, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((Parameters{1, -1, 0, 0, 1, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((Parameters{1, 1, 0, 0, 0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((Parameters{1, 1, INFINITY, 0, 1, 1}.validate()), ConfigError);
  CHECK_NOTHROW(friends().validate());
  CHECK(parse_param_name("c2") == ParamName::C2);
  CHECK_THROWS_AS(parse_param_name("d1"), ConfigError);
}

TEST_CASE("schedule segments are left-closed") {
  Parameters later = friends();
  later.c1 = -2;
  Parameters last = friends();
  last.b1 = 1;
  const ParameterSchedule sched(friends(), {{6.0, later}, {7.0, last}});
  CHECK(sched.segment_count() == 3);
  CHECK(sched.segment_at(0.0) == 0);
  CHECK(sched.segment_at(5.999) == 0);
  CHECK(sched.segment_at(6.0) == 1);
  CHECK(sched.segment_at(6.5) == 1);
  CHECK(sched.segment_at(7.0) == 2);
  CHECK(sched.params_at(6.0).c1 == -2);
  CHECK(sched.params_at(100.0).b1 == 1);
  CHECK(sched.segment_start(2) == 7.0);

  CHECK_THROWS_AS(ParameterSchedule(friends(), {{7.0, later}, {6.0, last}}), ConfigError);
  CHECK_THROWS_AS(ParameterSchedule(friends(), {{0.0, later}}), ConfigError);
  Parameters bad = friends();
  bad.m1 = 0;
  CHECK_THROWS_AS(ParameterSchedule(friends(), {{1.0, bad}}), ConfigError);
}
