#include "dyad/influence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dyad/errors.hpp"

namespace dyad {
namespace {

void require_finite(double xi) {
  if (!std::isfinite(xi)) throw std::domain_error("influence function argument is not finite");
}

// log(cosh(u)) without overflow.
double log_cosh(double u) {
  const double a = std::abs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double simpson_step(const InfluenceFunction::Scalar& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const InfluenceFunction::Scalar& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

const std::string kAtanName = "atan";
const std::string kTanhName = "tanh";

}  // namespace

std::string_view to_string(InfluenceKind kind) {
  switch (kind) {
    case InfluenceKind::Atan: return "atan";
    case InfluenceKind::Tanh: return "tanh";
    case InfluenceKind::Custom: return "custom";
  }
  return "?";
}

InfluenceKind parse_influence_kind(std::string_view name) {
  if (name == "atan") return InfluenceKind::Atan;
  if (name == "tanh") return InfluenceKind::Tanh;
  throw ConfigError("unknown influence kind '" + std::string(name) + "' (expected atan or tanh)");
}

InfluenceFunction::InfluenceFunction(InfluenceKind kind, double saturation)
    : kind_(kind), saturation_(saturation) {
  if (kind == InfluenceKind::Custom)
    throw ConfigError("custom influence functions are built with InfluenceFunction::custom");
  if (!std::isfinite(saturation) || saturation <= 0.0)
    throw ConfigError("influence saturation must be a positive finite number");
}

InfluenceFunction InfluenceFunction::custom(std::string name, Scalar value, Scalar first,
                                            Scalar second, double sup) {
  InfluenceFunction f;
  f.kind_ = InfluenceKind::Custom;
  f.saturation_ = 1.0;
  f.custom_ = std::make_shared<const CustomMap>(
      CustomMap{std::move(name), std::move(value), std::move(first), std::move(second), sup});
  return f;
}

const std::string& InfluenceFunction::name() const noexcept {
  switch (kind_) {
    case InfluenceKind::Atan: return kAtanName;
    case InfluenceKind::Tanh: return kTanhName;
    case InfluenceKind::Custom: break;
  }
  return custom_->name;
}

double InfluenceFunction::eval(double xi) const {
  require_finite(xi);
  const double s = saturation_;
  switch (kind_) {
    case InfluenceKind::Atan: return s * std::atan(xi / s);
    case InfluenceKind::Tanh: return s * std::tanh(xi / s);
    case InfluenceKind::Custom: break;
  }
  return custom_->value(xi);
}

double InfluenceFunction::deriv1(double xi) const {
  require_finite(xi);
  const double u = xi / saturation_;
  switch (kind_) {
    case InfluenceKind::Atan: return 1.0 / (1.0 + u * u);
    case InfluenceKind::Tanh: {
      const double c = std::cosh(u);
      return 1.0 / (c * c);
    }
    case InfluenceKind::Custom: break;
  }
  return custom_->first(xi);
}

double InfluenceFunction::deriv2(double xi) const {
  require_finite(xi);
  const double s = saturation_;
  const double u = xi / s;
  switch (kind_) {
    case InfluenceKind::Atan: {
      const double q = 1.0 + u * u;
      return -2.0 * u / (s * q * q);
    }
    case InfluenceKind::Tanh: {
      const double c = std::cosh(u);
      return -2.0 * std::tanh(u) / (s * c * c);
    }
    case InfluenceKind::Custom: break;
  }
  return custom_->second(xi);
}

double InfluenceFunction::integral(double from, double to) const {
  require_finite(from);
  require_finite(to);
  const double s = saturation_;
  // Antiderivatives in the scaled variable u = xi / s.
  auto atan_prim = [s](double xi) {
    const double u = xi / s;
    return s * s * (u * std::atan(u) - 0.5 * std::log1p(u * u));
  };
  auto tanh_prim = [s](double xi) { return s * s * log_cosh(xi / s); };
  switch (kind_) {
    case InfluenceKind::Atan: return atan_prim(to) - atan_prim(from);
    case InfluenceKind::Tanh: return tanh_prim(to) - tanh_prim(from);
    case InfluenceKind::Custom: break;
  }
  if (from == to) return 0.0;
  const double lo = std::min(from, to), hi = std::max(from, to);
  const double value = adaptive_simpson(custom_->value, lo, hi, 1e-10);
  return from <= to ? value : -value;
}

double InfluenceFunction::sup() const noexcept {
  switch (kind_) {
    case InfluenceKind::Atan: return saturation_ * std::numbers::pi / 2.0;
    case InfluenceKind::Tanh: return saturation_;
    case InfluenceKind::Custom: break;
  }
  return custom_->sup;
}

bool InfluenceFunction::bounded() const noexcept { return std::isfinite(sup()); }

bool operator==(const InfluenceFunction& a, const InfluenceFunction& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == InfluenceKind::Custom) return a.custom_ == b.custom_;
  return a.saturation_ == b.saturation_;
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::ZeroAtOrigin: return "zero-at-origin";
    case Axiom::PositiveSlope: return "positive-slope";
    case Axiom::UnitSlopeAtOrigin: return "unit-slope-at-origin";
    case Axiom::Concavity: return "concavity";
    case Axiom::SlopeDecay: return "slope-decay";
  }
  return "?";
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const AxiomCheck& AxiomReport::at(Axiom axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return c;
  throw std::out_of_range("axiom not in report");
}

AxiomReport validate_axioms(const InfluenceFunction& f, double half_width, int points,
                            double tol) {
  if (!std::isfinite(half_width) || half_width <= 0.0)
    throw ConfigError("axiom grid half-width must be positive");
  if (points < 3) throw ConfigError("axiom grid needs at least 3 points");
  if (!std::isfinite(tol) || tol <= 0.0) throw ConfigError("axiom tolerance must be positive");

  constexpr double kDecayFraction = 1e-2;

  auto check = [](Axiom a) {
    AxiomCheck c;
    c.axiom = a;
    return c;
  };
  AxiomCheck zero = check(Axiom::ZeroAtOrigin);
  AxiomCheck slope = check(Axiom::PositiveSlope);
  AxiomCheck unit = check(Axiom::UnitSlopeAtOrigin);
  AxiomCheck concave = check(Axiom::Concavity);
  AxiomCheck decay = check(Axiom::SlopeDecay);

  auto fail = [](AxiomCheck& c, double xi, double value) {
    if (!c.passed) return;
    c.passed = false;
    c.witness = xi;
    c.worst = value;
  };

  const double f0 = f.eval(0.0);
  zero.worst = f0;
  if (std::abs(f0) > tol) fail(zero, 0.0, f0);

  const double slope0 = f.deriv1(0.0);
  unit.worst = slope0;
  if (std::abs(slope0 - 1.0) > tol) fail(unit, 0.0, slope0);

  // Symmetric node placement: xi_i = -xi_{n-1-i} exactly, and 0 is a node for odd n.
  const int n = points;
  for (int i = 0; i < n; ++i) {
    const double xi = half_width * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
    const double d1 = f.deriv1(xi);
    if (!(d1 > 0.0)) fail(slope, xi, d1);
    if (xi != 0.0) {
      const double d2 = f.deriv2(xi);
      if (!(std::signbit(xi) ? d2 > 0.0 : d2 < 0.0)) fail(concave, xi, d2);
    }
  }

  for (double edge : {-half_width, half_width}) {
    const double d1 = f.deriv1(edge);
    if (!(d1 < kDecayFraction * slope0)) fail(decay, edge, d1);
  }
  if (decay.passed) decay.worst = std::max(f.deriv1(-half_width), f.deriv1(half_width));

  return AxiomReport{{zero, slope, unit, concave, decay}};
}

}  // namespace dyad
