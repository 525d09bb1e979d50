#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "dyad/errors.hpp"
#include "dyad/model.hpp"

namespace dyad {

enum class Method { FixedRk4, AdaptiveRk45 };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct IntegratorConfig {
  Method method = Method::AdaptiveRk45;
  double step = 1e-3;  // fixed-rk4 step; initial trial step for rk45
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double t_end = 10.0;
  // Output spacing; samples land exactly on multiples of it. 0 keeps every step.
  double sample_interval = 0.0;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<std::size_t> segments;        // schedule segment of each sample
  std::vector<std::size_t> schedule_marks;  // sample indices where a switch took effect

  std::size_t size() const noexcept { return times.size(); }
  const State& back() const { return states.back(); }
};

// Classical fourth-order Runge-Kutta step of size h.
template <class Field>
State rk4_step(const Field& field, State s, double h) {
  auto shifted = [](State a, Rate k, double w) { return State{a.x + w * k.dx_dt, a.y + w * k.dy_dt}; };
  const Rate k1 = field(s);
  const Rate k2 = field(shifted(s, k1, 0.5 * h));
  const Rate k3 = field(shifted(s, k2, 0.5 * h));
  const Rate k4 = field(shifted(s, k3, h));
  return {s.x + h / 6.0 * (k1.dx_dt + 2.0 * k2.dx_dt + 2.0 * k3.dx_dt + k4.dx_dt),
          s.y + h / 6.0 * (k1.dy_dt + 2.0 * k2.dy_dt + 2.0 * k3.dy_dt + k4.dy_dt)};
}

/**
 * Dormand-Prince 5(4) stepper with mixed absolute/relative error control.
 *
 * advance() performs exactly one accepted step that never crosses `t_limit`,
 * so callers can pin steps to switch times and output instants.
 */
class Rk45Stepper {
 public:
  Rk45Stepper(double abs_tol, double rel_tol, double initial_step = 1e-3,
              double max_step = std::numeric_limits<double>::infinity())
      : abs_tol_(abs_tol), rel_tol_(rel_tol), h_(initial_step), max_step_(max_step) {}

  double suggested_step() const noexcept { return h_; }

  template <class Field>
  void advance(const Field& field, double& t, State& s, double t_limit) {
    bool rejected = false;
    for (;;) {
      const double remaining = t_limit - t;
      const bool clamped = h_ >= remaining;
      const double h = std::min({h_, remaining, max_step_});
      if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
        throw IntegrationError("adaptive step size underflow", t);

      State next;
      const double err = trial(field, s, h, next);
      if (!std::isfinite(next.x) || !std::isfinite(next.y) || !std::isfinite(err)) {
        h_ = 0.2 * h;
        rejected = true;
        continue;
      }
      if (err <= 1.0) {
        double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        factor = std::clamp(factor, 0.2, rejected ? 1.0 : 5.0);
        // A step shortened only to hit t_limit says nothing about the natural step.
        const double grown = h * factor;
        h_ = clamped ? std::max(h_, grown) : grown;
        t = (h == remaining) ? t_limit : t + h;
        s = next;
        return;
      }
      h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
      rejected = true;
    }
  }

 private:
  template <class Field>
  double trial(const Field& field, State s, double h, State& out) const {
    auto at = [&](std::initializer_list<std::pair<double, Rate>> terms) {
      State r = s;
      for (const auto& [w, k] : terms) {
        r.x += h * w * k.dx_dt;
        r.y += h * w * k.dy_dt;
      }
      return r;
    };
    const Rate k1 = field(s);
    const Rate k2 = field(at({{1.0 / 5.0, k1}}));
    const Rate k3 = field(at({{3.0 / 40.0, k1}, {9.0 / 40.0, k2}}));
    const Rate k4 = field(at({{44.0 / 45.0, k1}, {-56.0 / 15.0, k2}, {32.0 / 9.0, k3}}));
    const Rate k5 = field(at({{19372.0 / 6561.0, k1},
                              {-25360.0 / 2187.0, k2},
                              {64448.0 / 6561.0, k3},
                              {-212.0 / 729.0, k4}}));
    const Rate k6 = field(at({{9017.0 / 3168.0, k1},
                              {-355.0 / 33.0, k2},
                              {46732.0 / 5247.0, k3},
                              {49.0 / 176.0, k4},
                              {-5103.0 / 18656.0, k5}}));
    out = at({{35.0 / 384.0, k1},
              {500.0 / 1113.0, k3},
              {125.0 / 192.0, k4},
              {-2187.0 / 6784.0, k5},
              {11.0 / 84.0, k6}});
    const Rate k7 = field(out);

    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    const double ex = h * (e1 * k1.dx_dt + e3 * k3.dx_dt + e4 * k4.dx_dt + e5 * k5.dx_dt +
                           e6 * k6.dx_dt + e7 * k7.dx_dt);
    const double ey = h * (e1 * k1.dy_dt + e3 * k3.dy_dt + e4 * k4.dy_dt + e5 * k5.dy_dt +
                           e6 * k6.dy_dt + e7 * k7.dy_dt);
    const double sx = abs_tol_ + rel_tol_ * std::max(std::abs(s.x), std::abs(out.x));
    const double sy = abs_tol_ + rel_tol_ * std::max(std::abs(s.y), std::abs(out.y));
    return std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy) * (ey / sy)));
  }

  double abs_tol_, rel_tol_;
  double h_;
  double max_step_;
};

// Integrates the system over [0, cfg.t_end]. Steps restart exactly at every
// schedule switch, and switch times always appear as samples.
Trajectory integrate(State s0, const ParameterSchedule& schedule, const IntegratorConfig& cfg);

struct ConvergeResult {
  State state;
  bool converged = false;
  double time = 0.0;
};

// Runs until |vector_field| < tol or t_max. Non-convergence is reported in
// the flag, never thrown.
ConvergeResult converge(State s0, const Parameters& p, double tol, double t_max,
                        const IntegratorConfig& cfg = {});

}  // namespace dyad
