#include "dyad/integrate.hpp"

#include <cmath>
#include <string>

namespace dyad {
namespace {

// Next output instant after t, snapped to seg_end when within rounding of it.
double next_target(double t, double seg_end, double interval) {
  if (interval <= 0.0) return seg_end;
  const double idx = std::floor(t / interval * (1.0 + 1e-12) + 1e-9) + 1.0;
  const double target = idx * interval;
  if (target >= seg_end - 1e-9 * interval) return seg_end;
  return target;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::FixedRk4: return "rk4";
    case Method::AdaptiveRk45: return "rk45";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "rk4" || name == "fixed-rk4") return Method::FixedRk4;
  if (name == "rk45" || name == "adaptive-rk45") return Method::AdaptiveRk45;
  throw ConfigError("unknown integration method '" + std::string(name) + "' (expected rk4 or rk45)");
}

void IntegratorConfig::validate() const {
  if (!std::isfinite(t_end) || !(t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!std::isfinite(step) || !(step > 0.0)) throw ConfigError("step must be positive");
  if (step > t_end) throw ConfigError("step must not exceed t_end");
  for (double tol : {abs_tol, rel_tol})
    if (!(tol > 0.0) || tol > 1e-2) throw ConfigError("tolerances must lie in (0, 1e-2]");
  if (!std::isfinite(sample_interval) || sample_interval < 0.0)
    throw ConfigError("sample_interval must be non-negative");
}

Trajectory integrate(State s0, const ParameterSchedule& schedule, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(s0.x) || !std::isfinite(s0.y)) throw ConfigError("initial state must be finite");

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  traj.segments.push_back(0);

  Rk45Stepper stepper(cfg.abs_tol, cfg.rel_tol, cfg.step);
  State s = s0;
  double t = 0.0;

  for (std::size_t k = 0; k < schedule.segment_count(); ++k) {
    const double seg_start = schedule.segment_start(k);
    if (seg_start >= cfg.t_end) break;
    const double seg_end =
        k + 1 < schedule.segment_count() ? std::min(schedule.segment_start(k + 1), cfg.t_end) : cfg.t_end;
    const Parameters& p = schedule.segment(k);
    auto field = [&p](State q) { return vector_field(q, p); };

    if (k > 0) {
      // The sample at the switch instant belongs to the new segment.
      traj.segments.back() = k;
      traj.schedule_marks.push_back(traj.size() - 1);
    }

    while (t < seg_end) {
      const double target = next_target(t, seg_end, cfg.sample_interval);
      if (cfg.method == Method::FixedRk4) {
        const double span = target - t;
        const auto n = static_cast<long>(std::ceil(span / cfg.step - 1e-9));
        const double h = span / static_cast<double>(std::max(1L, n));
        const double t0 = t;
        for (long i = 1; i <= std::max(1L, n); ++i) {
          s = rk4_step(field, s, h);
          t = (i == std::max(1L, n)) ? target : t0 + static_cast<double>(i) * h;
          if (cfg.sample_interval <= 0.0 || t == target) {
            traj.times.push_back(t);
            traj.states.push_back(s);
            traj.segments.push_back(k);
          }
        }
      } else {
        while (t < target) {
          stepper.advance(field, t, s, target);
          if (cfg.sample_interval <= 0.0 || t == target) {
            traj.times.push_back(t);
            traj.states.push_back(s);
            traj.segments.push_back(k);
          }
        }
      }
      if (!std::isfinite(s.x) || !std::isfinite(s.y))
        throw IntegrationError("integration produced a non-finite state", t);
    }
  }
  return traj;
}

ConvergeResult converge(State s0, const Parameters& p, double tol, double t_max,
                        const IntegratorConfig& cfg) {
  auto field = [&p](State q) { return vector_field(q, p); };
  auto speed = [&](State q) {
    const Rate r = field(q);
    return std::hypot(r.dx_dt, r.dy_dt);
  };

  ConvergeResult result{s0, false, 0.0};
  if (speed(s0) < tol) {
    result.converged = true;
    return result;
  }
  Rk45Stepper stepper(cfg.abs_tol, cfg.rel_tol, cfg.step, 1.0);
  double t = 0.0;
  State s = s0;
  try {
    while (t < t_max) {
      stepper.advance(field, t, s, t_max);
      if (speed(s) < tol) {
        result.converged = true;
        break;
      }
    }
  } catch (const IntegrationError&) {
    // reported through the flag
  }
  result.state = s;
  result.time = t;
  return result;
}

}  // namespace dyad
