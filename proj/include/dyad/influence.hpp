#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyad {

enum class InfluenceKind { Atan, Tanh, Custom };

std::string_view to_string(InfluenceKind kind);
InfluenceKind parse_influence_kind(std::string_view name);

/**
 * Saturating influence map f(xi) = s * g(xi / s) with g = atan or tanh.
 *
 * The scaling keeps f'(0) = 1 for every saturation s > 0 and bounds
 * |f| by s * sup|g|. Both built-ins are odd, C-infinity and satisfy the
 * admissibility axioms analytically.
 */
class InfluenceFunction {
 public:
  using Scalar = std::function<double(double)>;

  InfluenceFunction() : InfluenceFunction(InfluenceKind::Atan, 1.0) {}
  InfluenceFunction(InfluenceKind kind, double saturation);

  static InfluenceFunction atan(double saturation = 1.0) {
    return {InfluenceKind::Atan, saturation};
  }
  static InfluenceFunction tanh(double saturation = 1.0) {
    return {InfluenceKind::Tanh, saturation};
  }

  // Test hook: arbitrary smooth map given with its derivatives. `sup` is the
  // bound on |f| (infinity when unbounded). Integrals fall back to quadrature.
  static InfluenceFunction custom(std::string name, Scalar value, Scalar first,
                                  Scalar second, double sup);

  InfluenceKind kind() const noexcept { return kind_; }
  double saturation() const noexcept { return saturation_; }
  const std::string& name() const noexcept;

  double eval(double xi) const;
  double deriv1(double xi) const;
  double deriv2(double xi) const;

  // Integral of f over [from, to].
  double integral(double from, double to) const;

  // sup |f| over the real line.
  double sup() const noexcept;
  bool bounded() const noexcept;

  friend bool operator==(const InfluenceFunction& a, const InfluenceFunction& b);

 private:
  struct CustomMap {
    std::string name;
    Scalar value, first, second;
    double sup;
  };

  InfluenceKind kind_;
  double saturation_;
  std::shared_ptr<const CustomMap> custom_;
};

enum class Axiom { ZeroAtOrigin, PositiveSlope, UnitSlopeAtOrigin, Concavity, SlopeDecay };

std::string_view to_string(Axiom axiom);

struct AxiomCheck {
  Axiom axiom = Axiom::ZeroAtOrigin;
  bool passed = true;
  std::optional<double> witness;  // first violating xi
  double worst = 0.0;             // value of the checked quantity at the witness
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
  const AxiomCheck& at(Axiom axiom) const;
};

// Grid check of the five admissibility axioms on the symmetric grid
// [-half_width, half_width] with `points` nodes (odd counts hit 0 exactly).
// The decay axiom passes when f' at both grid edges drops below 1% of f'(0).
AxiomReport validate_axioms(const InfluenceFunction& f, double half_width, int points,
                            double tol);

}  // namespace dyad
