#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "dyad/influence.hpp"

namespace dyad {

// Emotional valence of person 1 (x) and person 2 (y).
struct State {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

struct Rate {
  double dx_dt = 0.0;
  double dy_dt = 0.0;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/**
 * Constants of the coupled system
 *
 *   x' = -m1 x + b1 + c1 f1(y)
 *   y' = -m2 y + b2 + c2 f2(x)
 *
 * m_i are forgetting rates, b_i drive each person towards the uninfluenced
 * mood b_i / m_i, and c_i set the strength and sign of the partner's pull.
 */
struct Parameters {
  double m1 = 1.0, m2 = 1.0;
  double b1 = 0.0, b2 = 0.0;
  double c1 = 1.0, c2 = 1.0;
  InfluenceFunction f1{}, f2{};

  // Throws ConfigError unless m1, m2 > 0, c1 * c2 != 0 and all values finite.
  void validate() const;

  // Person 1 <-> person 2.
  Parameters swapped() const;

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

enum class ParamName { M1, M2, B1, B2, C1, C2 };

std::string_view to_string(ParamName name);
ParamName parse_param_name(std::string_view name);
double get(const Parameters& p, ParamName name);
void set(Parameters& p, ParamName name, double value);

Rate vector_field(State s, const Parameters& p);
Matrix2 jacobian(State s, const Parameters& p);
State uninfluenced_equilibrium(const Parameters& p);

// Half-width R of a forward-invariant box [-R, R]^2. Requires bounded f1, f2.
double invariant_radius(const Parameters& p);

// Piecewise-constant parameters; segment k applies on [t_k, t_{k+1}).
class ParameterSchedule {
 public:
  struct Switch {
    double time;
    Parameters params;
  };

  ParameterSchedule() = default;
  explicit ParameterSchedule(Parameters initial, std::vector<Switch> switches = {});

  const Parameters& initial() const noexcept { return initial_; }
  const std::vector<Switch>& switches() const noexcept { return switches_; }
  std::size_t segment_count() const noexcept { return switches_.size() + 1; }

  std::size_t segment_at(double t) const;
  const Parameters& params_at(double t) const { return segment(segment_at(t)); }
  const Parameters& segment(std::size_t k) const;
  // Start time of segment k (0 for the first).
  double segment_start(std::size_t k) const;

 private:
  Parameters initial_{};
  std::vector<Switch> switches_;
};

}  // namespace dyad
