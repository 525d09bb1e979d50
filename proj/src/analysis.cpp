#include "dyad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "dyad/errors.hpp"
#include "dyad/parallel.hpp"

namespace dyad {
namespace {

double distance(State a, State b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

bool theorem1_applies(const Parameters& p, std::span<const SteadyState> states) {
  return p.m1 * p.m2 > std::abs(p.c1 * p.c2) && states.size() == 1;
}

bool theorem2_applies(const Parameters& p) { return p.c1 * p.c2 < 0.0; }

double divergence_certificate(const Parameters& p) { return -(p.m1 + p.m2); }

bool focus_condition(const SteadyState& ss, const Parameters& p) {
  const double cc = p.c1 * p.c2;
  if (!(cc < 0.0)) throw ConfigError("focus condition applies only to opposite attitudes (c1 c2 < 0)");
  const double product = p.f2.deriv1(ss.point.x) * p.f1.deriv1(ss.point.y);
  const double dm = p.m1 - p.m2;
  return product > -(dm * dm) / (4.0 * cc);
}

bool oscillation_condition(const Parameters& p) {
  return std::sqrt(std::abs(p.c1 * p.c2)) > std::abs(p.m1 - p.m2) / 2.0;
}

double quadratic_weight(const Parameters& p) {
  return (2.0 * p.m1 * p.m2 - std::abs(p.c1 * p.c2)) / (p.c2 * p.c2);
}

double quadratic_lyapunov(State s, const SteadyState& ss, double weight) {
  const double u = s.x - ss.point.x, v = s.y - ss.point.y;
  return 0.5 * u * u + 0.5 * weight * v * v;
}

double quadratic_lyapunov_rate(State s, const Parameters& p, const SteadyState& ss, double weight) {
  const Rate r = vector_field(s, p);
  return (s.x - ss.point.x) * r.dx_dt + weight * (s.y - ss.point.y) * r.dy_dt;
}

double integral_lyapunov(State s, const Parameters& p, const SteadyState& ss) {
  const double xs = ss.point.x, ys = ss.point.y;
  const double along_y = p.f1.integral(ys, s.y) - (s.y - ys) * p.f1.eval(ys);
  const double along_x = p.f2.integral(xs, s.x) - (s.x - xs) * p.f2.eval(xs);
  return std::abs(p.c1) * along_y + std::abs(p.c2) * along_x;
}

double integral_lyapunov_rate(State s, const Parameters& p, const SteadyState& ss) {
  // Chain rule on L with the full field, so the check exercises the dynamics
  // rather than the simplified closed form of the derivative.
  const Rate r = vector_field(s, p);
  const double grad_y = std::abs(p.c1) * (p.f1.eval(s.y) - p.f1.eval(ss.point.y));
  const double grad_x = std::abs(p.c2) * (p.f2.eval(s.x) - p.f2.eval(ss.point.x));
  return grad_x * r.dx_dt + grad_y * r.dy_dt;
}

LyapunovReport lyapunov_descent_check(const Parameters& p, const SteadyState& ss,
                                      std::size_t n_samples, std::uint64_t seed) {
  p.validate();
  LyapunovReport report;
  if (p.m1 * p.m2 > std::abs(p.c1 * p.c2)) {
    report.kind = LyapunovKind::Quadratic;
    report.weight = quadratic_weight(p);
  } else if (theorem2_applies(p)) {
    report.kind = LyapunovKind::Integral;
  } else {
    throw ConfigError("Lyapunov check needs m1 m2 > |c1 c2| or c1 c2 < 0");
  }

  const double radius = invariant_radius(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-radius, radius);

  report.samples = n_samples;
  report.max_rate = -std::numeric_limits<double>::infinity();
  report.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_samples; ++k) {
    const State s{coord(rng), coord(rng)};
    double rate, value;
    if (report.kind == LyapunovKind::Quadratic) {
      rate = quadratic_lyapunov_rate(s, p, ss, report.weight);
      value = quadratic_lyapunov(s, ss, report.weight);
    } else {
      rate = integral_lyapunov_rate(s, p, ss);
      value = integral_lyapunov(s, p, ss);
    }
    if (rate > report.max_rate) {
      report.max_rate = rate;
      report.argmax = s;
    }
    if (distance(s, ss.point) > 1e-6) {
      report.min_value = std::min(report.min_value, value);
      if (!(rate < 0.0)) report.strict_descent = false;
    }
  }
  if (n_samples == 0) {
    report.max_rate = 0.0;
    report.min_value = 0.0;
  }
  return report;
}

Separatrix separatrix(const SteadyState& saddle, const Parameters& p, double arc_length,
                      const IntegratorConfig& cfg) {
  if (saddle.cls != StabilityClass::Saddle) throw ConfigError("separatrix needs a saddle");
  if (!(arc_length > 0.0) || !std::isfinite(arc_length))
    throw ConfigError("separatrix arc length must be positive");

  const Matrix2 j = jacobian(saddle.point, p);
  const double lambda = saddle.eigenvalues[0].real();  // the negative one
  // Two candidate null vectors of (J - lambda I); keep the better scaled one.
  State v1{j[0][1], lambda - j[0][0]};
  State v2{lambda - j[1][1], j[1][0]};
  State v = std::hypot(v1.x, v1.y) >= std::hypot(v2.x, v2.y) ? v1 : v2;
  const double norm = std::hypot(v.x, v.y);
  v = {v.x / norm, v.y / norm};

  Separatrix out;
  out.saddle = saddle.point;
  out.stable_direction = v;

  const double radius = invariant_radius(p);
  constexpr double kSeed = 1e-6;
  constexpr double kMaxTime = 1e3;
  auto reversed = [&p](State q) {
    const Rate r = vector_field(q, p);
    return Rate{-r.dx_dt, -r.dy_dt};
  };

  for (int branch = 0; branch < 2; ++branch) {
    const double sign = branch == 0 ? 1.0 : -1.0;
    auto& line = out.branches[branch];
    line.push_back(saddle.point);
    State s{saddle.point.x + sign * kSeed * v.x, saddle.point.y + sign * kSeed * v.y};
    line.push_back(s);
    double arc = kSeed;
    double t = 0.0;
    Rk45Stepper stepper(cfg.abs_tol, cfg.rel_tol, std::min(cfg.step, 1e-3), 0.05);
    try {
      while (arc < arc_length && t < kMaxTime) {
        State next = s;
        stepper.advance(reversed, t, next, kMaxTime);
        if (std::abs(next.x) > radius || std::abs(next.y) > radius) break;
        const double seg = distance(s, next);
        if (arc + seg >= arc_length) {
          const double w = (arc_length - arc) / seg;
          line.push_back({s.x + w * (next.x - s.x), s.y + w * (next.y - s.y)});
          arc = arc_length;
          break;
        }
        arc += seg;
        s = next;
        line.push_back(s);
      }
    } catch (const IntegrationError&) {
      // keep what was traced
    }
    out.arc_lengths[branch] = arc;
  }
  return out;
}

void GridSpec::validate() const {
  for (double v : {x_min, x_max, y_min, y_max})
    if (!std::isfinite(v)) throw ConfigError("grid bounds must be finite");
  if (!(x_min < x_max) || !(y_min < y_max)) throw ConfigError("grid bounds must satisfy min < max");
  if (nx < 1 || ny < 1) throw ConfigError("grid counts must be positive");
}

State GridSpec::cell_center(int i, int j) const {
  auto center = [](double lo, double hi, int n, int k) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    return mid + half * (static_cast<double>(2 * k + 1 - n) / static_cast<double>(n));
  };
  return {center(x_min, x_max, nx, i), center(y_min, y_max, ny, j)};
}

BasinMap basin_map(const Parameters& p, const GridSpec& grid, const BasinOptions& opts) {
  grid.validate();
  const auto states = find_steady_states(p);
  BasinMap map;
  map.grid = grid;
  for (const auto& ss : states) {
    if (ss.stable()) map.attractors.push_back(ss);
    else if (ss.cls == StabilityClass::Saddle) map.saddles.push_back(ss);
  }
  if (map.attractors.empty()) throw ConfigError("basin map needs at least one stable steady state");

  auto nearest = [](const std::vector<SteadyState>& set, State s, double radius) {
    int best = -1;
    double best_d = radius;
    for (std::size_t k = 0; k < set.size(); ++k) {
      const double d = distance(set[k].point, s);
      if (d <= best_d) {
        best = static_cast<int>(k);
        best_d = d;
      }
    }
    return best;
  };

  const std::size_t cells = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  map.labels.assign(cells, kUnresolved);
  parallel_for(cells, opts.threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
    const auto result = converge(grid.cell_center(i, j), p, opts.tol, opts.t_max);
    int label = kUnresolved;
    if (result.converged) {
      const int a = nearest(map.attractors, result.state, opts.match_radius);
      if (a >= 0) label = a;
    }
    if (label == kUnresolved && nearest(map.saddles, result.state, opts.match_radius) >= 0)
      label = kSaddleBound;
    map.labels[idx] = label;
  });
  return map;
}

ScanResult scan_parameter(const Parameters& p, ParamName name, double lo, double hi, int n,
                          unsigned threads) {
  p.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw ConfigError("scan range must satisfy lo < hi");
  if (n < 2) throw ConfigError("scan needs at least 2 samples");
  if ((name == ParamName::M1 || name == ParamName::M2) && !(lo > 0.0))
    throw ConfigError("forgetting-rate scan must stay positive");
  if ((name == ParamName::C1 || name == ParamName::C2) && !(lo > 0.0 || hi < 0.0))
    throw ConfigError("influence-strength scan must not include 0");

  ScanResult result;
  result.parameter = name;
  result.values.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    result.values[k] = k == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  result.classes.resize(result.values.size());

  parallel_for(result.values.size(), threads, [&](std::size_t k) {
    Parameters q = p;
    set(q, name, result.values[k]);
    for (const auto& ss : find_steady_states(q)) result.classes[k].push_back(ss.cls);
  });

  for (std::size_t k = 0; k + 1 < result.values.size(); ++k) {
    if (result.count(k) != result.count(k + 1))
      result.folds.push_back({k, result.values[k], result.values[k + 1], result.count(k), result.count(k + 1)});
  }
  return result;
}

}  // namespace dyad
