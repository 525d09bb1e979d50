#pragma once

#include <functional>
#include <vector>

namespace dyad {

struct ScalarRoot {
  double x = 0.0;
  double residual = 0.0;  // F(x)
  bool tangent = false;   // double root found at an extremum of F
};

struct RootScanOptions {
  int points = 2001;            // uniform scan nodes including both ends
  double bracket_width = 1e-10; // bisection stops below this width
  double dedup = 1e-6;          // roots closer than this merge
  double tangent_tol = 1e-12;   // |F| at an extremum accepted as a double root
};

/**
 * All roots of a smooth scalar function on [lo, hi].
 *
 * Sign changes between scan nodes are bisected and Newton-polished. Local
 * minima of |F| without a sign change are refined through the zero of F'
 * so that tangent roots and root pairs closer than one scan cell are found.
 */
std::vector<ScalarRoot> find_roots(const std::function<double(double)>& f,
                                   const std::function<double(double)>& df, double lo,
                                   double hi, const RootScanOptions& opts = {});

}  // namespace dyad
