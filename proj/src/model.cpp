#include "dyad/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dyad/errors.hpp"

namespace dyad {
namespace {

void require_finite(State s) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y))
    throw std::domain_error("state is not finite");
}

}  // namespace

void Parameters::validate() const {
  for (double v : {m1, m2, b1, b2, c1, c2})
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw ConfigError("forgetting rates m1, m2 must be positive");
  if (c1 * c2 == 0.0) throw ConfigError("influence strengths must satisfy c1 * c2 != 0");
}

Parameters Parameters::swapped() const {
  return Parameters{m2, m1, b2, b1, c2, c1, f2, f1};
}

std::string_view to_string(ParamName name) {
  switch (name) {
    case ParamName::M1: return "m1";
    case ParamName::M2: return "m2";
    case ParamName::B1: return "b1";
    case ParamName::B2: return "b2";
    case ParamName::C1: return "c1";
    case ParamName::C2: return "c2";
  }
  return "?";
}

ParamName parse_param_name(std::string_view name) {
  for (auto p : {ParamName::M1, ParamName::M2, ParamName::B1, ParamName::B2, ParamName::C1,
                 ParamName::C2})
    if (to_string(p) == name) return p;
  throw ConfigError("unknown parameter '" + std::string(name) + "' (expected m1, m2, b1, b2, c1 or c2)");
}

double get(const Parameters& p, ParamName name) {
  switch (name) {
    case ParamName::M1: return p.m1;
    case ParamName::M2: return p.m2;
    case ParamName::B1: return p.b1;
    case ParamName::B2: return p.b2;
    case ParamName::C1: return p.c1;
    case ParamName::C2: return p.c2;
  }
  return 0.0;
}

void set(Parameters& p, ParamName name, double value) {
  switch (name) {
    case ParamName::M1: p.m1 = value; break;
    case ParamName::M2: p.m2 = value; break;
    case ParamName::B1: p.b1 = value; break;
    case ParamName::B2: p.b2 = value; break;
    case ParamName::C1: p.c1 = value; break;
    case ParamName::C2: p.c2 = value; break;
  }
}

Rate vector_field(State s, const Parameters& p) {
  require_finite(s);
  return {-p.m1 * s.x + p.b1 + p.c1 * p.f1.eval(s.y),
          -p.m2 * s.y + p.b2 + p.c2 * p.f2.eval(s.x)};
}

Matrix2 jacobian(State s, const Parameters& p) {
  require_finite(s);
  return {{{-p.m1, p.c1 * p.f1.deriv1(s.y)}, {p.c2 * p.f2.deriv1(s.x), -p.m2}}};
}

State uninfluenced_equilibrium(const Parameters& p) { return {p.b1 / p.m1, p.b2 / p.m2}; }

double invariant_radius(const Parameters& p) {
  if (!p.f1.bounded() || !p.f2.bounded())
    throw ConfigError("invariant radius needs bounded influence functions");
  const double rx = (std::abs(p.b1) + std::abs(p.c1) * p.f1.sup()) / p.m1;
  const double ry = (std::abs(p.b2) + std::abs(p.c2) * p.f2.sup()) / p.m2;
  return std::max(rx, ry) + 1.0;
}

ParameterSchedule::ParameterSchedule(Parameters initial, std::vector<Switch> switches)
    : initial_(std::move(initial)), switches_(std::move(switches)) {
  initial_.validate();
  double last = 0.0;
  for (const auto& sw : switches_) {
    if (!std::isfinite(sw.time) || !(sw.time > last))
      throw ConfigError("schedule switch times must be positive and strictly increasing");
    sw.params.validate();
    last = sw.time;
  }
}

std::size_t ParameterSchedule::segment_at(double t) const {
  // Left-closed segments: a switch at t_k already applies at t = t_k.
  auto it = std::upper_bound(switches_.begin(), switches_.end(), t,
                             [](double value, const Switch& sw) { return value < sw.time; });
  return static_cast<std::size_t>(it - switches_.begin());
}

const Parameters& ParameterSchedule::segment(std::size_t k) const {
  if (k == 0) return initial_;
  return switches_.at(k - 1).params;
}

double ParameterSchedule::segment_start(std::size_t k) const {
  return k == 0 ? 0.0 : switches_.at(k - 1).time;
}

}  // namespace dyad
