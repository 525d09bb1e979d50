#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dyad/equilibria.hpp"
#include "dyad/integrate.hpp"
#include "dyad/model.hpp"

namespace dyad {

// m1 m2 > |c1 c2| and a unique steady state: that state is globally stable.
bool theorem1_applies(const Parameters& p, std::span<const SteadyState> states);

// c1 c2 < 0: unique, globally stable steady state.
bool theorem2_applies(const Parameters& p);

// Divergence of the field, -(m1 + m2). Negative everywhere, which rules out
// periodic orbits (Bendixson-Dulac with unit weight).
double divergence_certificate(const Parameters& p);

// For c1 c2 < 0: true iff f2'(x_s) f1'(y_s) > -(m1 - m2)^2 / (4 c1 c2),
// i.e. the state is a stable focus. Throws ConfigError when c1 c2 > 0.
bool focus_condition(const SteadyState& ss, const Parameters& p);

// sqrt|c1 c2| > |m1 - m2| / 2: opposite attitudes can produce oscillations.
bool oscillation_condition(const Parameters& p);

// ---------------------------------------------------------------------------
// Lyapunov certificates

enum class LyapunovKind {
  Quadratic,  // V = (x-xs)^2/2 + C (y-ys)^2/2, C = (2 m1 m2 - |c1 c2|) / c2^2
  Integral,   // L = |c1| int_0^v (f1(s+ys)-f1(ys)) ds + |c2| int_0^u (f2(s+xs)-f2(xs)) ds
};

double quadratic_weight(const Parameters& p);
double quadratic_lyapunov(State s, const SteadyState& ss, double weight);
double quadratic_lyapunov_rate(State s, const Parameters& p, const SteadyState& ss, double weight);
double integral_lyapunov(State s, const Parameters& p, const SteadyState& ss);
double integral_lyapunov_rate(State s, const Parameters& p, const SteadyState& ss);

struct LyapunovReport {
  LyapunovKind kind = LyapunovKind::Quadratic;
  double weight = 0.0;  // C for the quadratic form
  std::size_t samples = 0;
  double max_rate = 0.0;        // largest sampled dV/dt (or dL/dt)
  State argmax{};
  double min_value = 0.0;       // smallest sampled V (or L) away from the steady state
  bool strict_descent = true;   // rate < 0 at every sample away from the steady state

  bool holds(double tol = 1e-10) const noexcept { return max_rate <= tol && min_value >= 0.0; }
};

// Samples the invariant box uniformly (seeded, deterministic) and evaluates
// the theorem's Lyapunov function and its derivative along the flow.
// Throws ConfigError unless theorem1_applies or theorem2_applies holds.
LyapunovReport lyapunov_descent_check(const Parameters& p, const SteadyState& ss,
                                      std::size_t n_samples, std::uint64_t seed = 20240601);

// ---------------------------------------------------------------------------
// Separatrix

struct Separatrix {
  State saddle;
  State stable_direction;  // unit stable eigenvector
  std::array<std::vector<State>, 2> branches;  // start at the saddle
  std::array<double, 2> arc_lengths{};
};

// Stable manifold of a saddle traced in reversed time from saddle +- 1e-6 v
// until `arc_length` is reached or the invariant box is left.
Separatrix separatrix(const SteadyState& saddle, const Parameters& p, double arc_length,
                      const IntegratorConfig& cfg = {});

// ---------------------------------------------------------------------------
// Basins of attraction

inline constexpr int kUnresolved = -1;
inline constexpr int kSaddleBound = -2;

struct GridSpec {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  int nx = 11, ny = 11;

  void validate() const;
  // Centers are mirror-symmetric about the grid midpoint to the last bit.
  State cell_center(int i, int j) const;
};

struct BasinOptions {
  double tol = 1e-8;            // velocity threshold handed to converge()
  double t_max = 200.0;
  double match_radius = 1e-3;   // distance to accept an attractor or saddle
  unsigned threads = 0;
};

struct BasinMap {
  GridSpec grid;
  std::vector<int> labels;  // row-major, row j = y index, column i = x index
  std::vector<SteadyState> attractors;
  std::vector<SteadyState> saddles;

  int label(int i, int j) const { return labels.at(static_cast<std::size_t>(j) * grid.nx + i); }
};

BasinMap basin_map(const Parameters& p, const GridSpec& grid, const BasinOptions& opts = {});

// ---------------------------------------------------------------------------
// One-parameter scans

struct FoldInterval {
  std::size_t index = 0;  // between samples index and index + 1
  double lo = 0.0, hi = 0.0;
  std::size_t count_before = 0, count_after = 0;
};

struct ScanResult {
  ParamName parameter = ParamName::B1;
  std::vector<double> values;
  std::vector<std::vector<StabilityClass>> classes;
  std::vector<FoldInterval> folds;

  std::size_t count(std::size_t k) const { return classes.at(k).size(); }
};

ScanResult scan_parameter(const Parameters& p, ParamName name, double lo, double hi, int n,
                          unsigned threads = 0);

}  // namespace dyad
