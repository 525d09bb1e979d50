#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "dyad/model.hpp"

namespace dyad {

enum class StabilityClass { StableNode, StableFocus, Saddle, Degenerate };

std::string_view to_string(StabilityClass cls);

// |B| at or below this marks a tangent (saddle-node) steady state.
inline constexpr double kDegenerateDetTol = 1e-6;

/**
 * A fixed point with the data of its characteristic polynomial
 * W(lambda) = lambda^2 - A lambda + B, where A is the Jacobian trace and B
 * its determinant.
 */
struct SteadyState {
  State point;
  double trace = 0.0;        // A = -(m1 + m2)
  double determinant = 0.0;  // B = m1 m2 - c1 c2 f2'(x) f1'(y)
  double discriminant = 0.0; // A^2 - 4B
  std::array<std::complex<double>, 2> eigenvalues{};  // ascending real part
  StabilityClass cls = StabilityClass::Degenerate;

  bool stable() const noexcept {
    return cls == StabilityClass::StableNode || cls == StabilityClass::StableFocus;
  }
};

// x on the first null-cline for a given y, and y on the second for a given x.
double nullcline1(double y, const Parameters& p);
double nullcline2(double x, const Parameters& p);

// F(x) = nullcline1(nullcline2(x)) - x and its derivative; roots are steady states.
double steady_state_residual(double x, const Parameters& p);
double steady_state_residual_slope(double x, const Parameters& p);

// Throws ConfigError when the point is not a steady state (residual > 1e-8).
SteadyState classify(State point, const Parameters& p);

// Every steady state inside the invariant box, sorted by x.
std::vector<SteadyState> find_steady_states(const Parameters& p);

enum class RegimeCase { One = 1, Two = 2, Three = 3 };

struct RegimeReport {
  RegimeCase regime = RegimeCase::One;
  bool weak_coupling = false;     // c1 c2 <= m1 m2
  double threshold = 0.0;         // m1 m2 / (c1 c2)
  std::vector<double> products;   // f1'(y_s) f2'(x_s) per state
  std::size_t count = 0;
};

// Which of the one/two/three steady-state conditions holds. Throws
// std::logic_error when the conditions disagree with the observed count.
RegimeReport count_regime(const Parameters& p, std::span<const SteadyState> states);

}  // namespace dyad
