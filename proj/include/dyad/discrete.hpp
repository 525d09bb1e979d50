#pragma once

#include <vector>

#include "dyad/influence.hpp"

namespace dyad {

// Scores of the two partners in one round. W speaks first, then H.
struct RoundState {
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const RoundState&, const RoundState&) = default;
};

/**
 * Round model
 *
 *   W_{t+1} = I_HW(H_t)     + r1 W_t + a
 *   H_{t+1} = I_WH(W_{t+1}) + r2 H_t + b
 *
 * with impact I(xi) = gain * f(xi) for an influence function f. The
 * empirical impact shapes of the original coding scheme are not published,
 * so the smooth influence family stands in for them.
 */
struct DiscreteParams {
  double r1 = 0.0, r2 = 0.0;  // inertia, |r_i| < 1
  double a = 0.0, b = 0.0;    // uninfluenced drives
  InfluenceFunction impact_hw{}, impact_wh{};
  double gain_hw = 1.0, gain_wh = 1.0;

  void validate() const;
  double husband_on_wife(double h) const { return gain_hw * impact_hw.eval(h); }
  double wife_on_husband(double w) const { return gain_wh * impact_wh.eval(w); }
};

RoundState step(RoundState s, const DiscreteParams& dp);

// n rounds; the result holds n + 1 states starting with s0.
std::vector<RoundState> iterate(RoundState s0, const DiscreteParams& dp, int n);

// All fixed points, sorted by W, with residual <= 1e-10.
std::vector<RoundState> fixed_points(const DiscreteParams& dp);

}  // namespace dyad
