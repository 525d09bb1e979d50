#include "dyad/discrete.hpp"

#include <cmath>

#include "dyad/errors.hpp"
#include "dyad/roots.hpp"

namespace dyad {

void DiscreteParams::validate() const {
  for (double v : {r1, r2, a, b, gain_hw, gain_wh})
    if (!std::isfinite(v)) throw ConfigError("discrete parameters must be finite");
  if (!(std::abs(r1) < 1.0) || !(std::abs(r2) < 1.0))
    throw ConfigError("inertia coefficients must satisfy |r| < 1");
}

RoundState step(RoundState s, const DiscreteParams& dp) {
  const double w = dp.husband_on_wife(s.h) + dp.r1 * s.w + dp.a;
  const double h = dp.wife_on_husband(w) + dp.r2 * s.h + dp.b;
  return {w, h};
}

std::vector<RoundState> iterate(RoundState s0, const DiscreteParams& dp, int n) {
  dp.validate();
  if (n < 1) throw ConfigError("number of rounds must be positive");
  std::vector<RoundState> seq;
  seq.reserve(static_cast<std::size_t>(n) + 1);
  seq.push_back(s0);
  for (int t = 0; t < n; ++t) seq.push_back(step(seq.back(), dp));
  return seq;
}

std::vector<RoundState> fixed_points(const DiscreteParams& dp) {
  dp.validate();
  if (!dp.impact_hw.bounded() || !dp.impact_wh.bounded())
    throw ConfigError("fixed-point search needs bounded impact functions");

  // W = (I_HW(H) + a) / (1 - r1),  H = (I_WH(W) + b) / (1 - r2)
  const double kw = 1.0 - dp.r1, kh = 1.0 - dp.r2;
  auto h_of = [&](double w) { return (dp.wife_on_husband(w) + dp.b) / kh; };
  auto g = [&](double w) { return (dp.husband_on_wife(h_of(w)) + dp.a) / kw - w; };
  auto dg = [&](double w) {
    const double dh = dp.gain_wh * dp.impact_wh.deriv1(w) / kh;
    return dp.gain_hw * dp.impact_hw.deriv1(h_of(w)) * dh / kw - 1.0;
  };

  const double rw = (std::abs(dp.a) + std::abs(dp.gain_hw) * dp.impact_hw.sup()) / kw;
  const double radius = rw + 1.0;
  std::vector<RoundState> out;
  for (const auto& r : find_roots(g, dg, -radius, radius)) out.push_back({r.x, h_of(r.x)});
  return out;
}

}  // namespace dyad
