#include "dyad/equilibria.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dyad/errors.hpp"
#include "dyad/roots.hpp"

namespace dyad {

std::string_view to_string(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::StableNode: return "stable-node";
    case StabilityClass::StableFocus: return "stable-focus";
    case StabilityClass::Saddle: return "saddle";
    case StabilityClass::Degenerate: return "degenerate";
  }
  return "?";
}

double nullcline1(double y, const Parameters& p) { return (p.b1 + p.c1 * p.f1.eval(y)) / p.m1; }
double nullcline2(double x, const Parameters& p) { return (p.b2 + p.c2 * p.f2.eval(x)) / p.m2; }

double steady_state_residual(double x, const Parameters& p) {
  return nullcline1(nullcline2(x, p), p) - x;
}

double steady_state_residual_slope(double x, const Parameters& p) {
  const double y = nullcline2(x, p);
  return (p.c1 / p.m1) * p.f1.deriv1(y) * (p.c2 / p.m2) * p.f2.deriv1(x) - 1.0;
}

SteadyState classify(State point, const Parameters& p) {
  const Rate r = vector_field(point, p);
  if (std::abs(r.dx_dt) > 1e-8 || std::abs(r.dy_dt) > 1e-8)
    throw ConfigError("point (" + std::to_string(point.x) + ", " + std::to_string(point.y) +
                      ") is not a steady state");

  SteadyState ss;
  ss.point = point;
  ss.trace = -(p.m1 + p.m2);
  ss.determinant = p.m1 * p.m2 - p.c1 * p.c2 * p.f2.deriv1(point.x) * p.f1.deriv1(point.y);
  ss.discriminant = ss.trace * ss.trace - 4.0 * ss.determinant;

  const double a = ss.trace, b = ss.determinant, disc = ss.discriminant;
  if (disc >= 0.0) {
    const double lo = 0.5 * (a - std::sqrt(disc));  // |lo| >= |A|/2 > 0
    ss.eigenvalues = {std::complex<double>(lo), std::complex<double>(b / lo)};
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    ss.eigenvalues = {std::complex<double>(0.5 * a, -im), std::complex<double>(0.5 * a, im)};
  }

  if (b < -kDegenerateDetTol)
    ss.cls = StabilityClass::Saddle;
  else if (b <= kDegenerateDetTol)
    ss.cls = StabilityClass::Degenerate;
  else
    ss.cls = disc < 0.0 ? StabilityClass::StableFocus : StabilityClass::StableNode;
  return ss;
}

std::vector<SteadyState> find_steady_states(const Parameters& p) {
  p.validate();
  const double radius = invariant_radius(p);
  const auto roots = find_roots([&p](double x) { return steady_state_residual(x, p); },
                                [&p](double x) { return steady_state_residual_slope(x, p); },
                                -radius, radius);
  std::vector<SteadyState> states;
  states.reserve(roots.size());
  for (const auto& r : roots) states.push_back(classify({r.x, nullcline2(r.x, p)}, p));
  if (states.empty() || states.size() > 3)
    throw NumericalError("steady-state scan found " + std::to_string(states.size()) + " roots");
  return states;
}

RegimeReport count_regime(const Parameters& p, std::span<const SteadyState> states) {
  RegimeReport report;
  report.count = states.size();
  const double cc = p.c1 * p.c2, mm = p.m1 * p.m2;
  report.threshold = mm / cc;
  report.weak_coupling = cc <= mm;

  bool any_saddle = false, any_negative = false, any_tangent = false;
  for (const auto& ss : states) {
    report.products.push_back(p.f1.deriv1(ss.point.y) * p.f2.deriv1(ss.point.x));
    any_saddle |= ss.cls == StabilityClass::Saddle;
    any_negative |= ss.determinant < 0.0;
    any_tangent |= ss.cls == StabilityClass::Degenerate;
  }

  // With c1 c2 > m1 m2 a product above the threshold is exactly B < 0, and a
  // product equal to it is B = 0. Close to a fold the middle state can carry
  // |B| below the tangency tolerance while still being a distinct root.
  if (report.weak_coupling)
    report.regime = RegimeCase::One;
  else if (any_saddle || (any_negative && states.size() == 3))
    report.regime = RegimeCase::Three;
  else if (any_tangent)
    report.regime = RegimeCase::Two;
  else
    report.regime = RegimeCase::One;

  if (static_cast<std::size_t>(report.regime) != report.count)
    throw std::logic_error("steady-state count " + std::to_string(report.count) +
                           " contradicts regime case " +
                           std::to_string(static_cast<int>(report.regime)) +
                           " (root scan missed or duplicated a root)");
  return report;
}

}  // namespace dyad
