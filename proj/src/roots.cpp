#include "dyad/roots.hpp"

#include <algorithm>
#include <cmath>

#include "dyad/errors.hpp"

namespace dyad {
namespace {

// Bisection on a bracket with g(a) and g(b) of opposite sign (or zero).
double bisect(const std::function<double(double)>& g, double a, double b, double width) {
  double ga = g(a);
  if (ga == 0.0) return a;
  if (g(b) == 0.0) return b;
  for (int it = 0; it < 200 && (b - a) > width; ++it) {
    const double m = 0.5 * (a + b);
    const double gm = g(m);
    if (gm == 0.0) return m;
    if (std::signbit(gm) == std::signbit(ga)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double polish(const std::function<double(double)>& f, const std::function<double(double)>& df,
              double x, double a, double b) {
  double fx = f(x);
  for (int it = 0; it < 8 && fx != 0.0; ++it) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= a && next <= b)) break;
    const double fn = f(next);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

}  // namespace

std::vector<ScalarRoot> find_roots(const std::function<double(double)>& f,
                                   const std::function<double(double)>& df, double lo,
                                   double hi, const RootScanOptions& opts) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ConfigError("root scan needs a finite interval lo < hi");
  if (opts.points < 3) throw ConfigError("root scan needs at least 3 points");

  const int n = opts.points;
  std::vector<double> xs(n), vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    vs[i] = f(xs[i]);
  }

  std::vector<ScalarRoot> roots;
  auto add_bracketed = [&](double a, double b) {
    double x = bisect(f, a, b, opts.bracket_width);
    x = polish(f, df, x, a, b);
    roots.push_back({x, f(x), false});
  };

  for (int i = 0; i < n; ++i) {
    if (vs[i] == 0.0) {
      roots.push_back({xs[i], 0.0, false});
      continue;
    }
    if (i + 1 < n && vs[i + 1] != 0.0 && std::signbit(vs[i]) != std::signbit(vs[i + 1]))
      add_bracketed(xs[i], xs[i + 1]);
  }

  // Extrema of F that approach zero without a sign change between nodes.
  for (int i = 1; i + 1 < n; ++i) {
    const bool same_sign = vs[i - 1] != 0.0 && vs[i] != 0.0 && vs[i + 1] != 0.0 &&
                           std::signbit(vs[i - 1]) == std::signbit(vs[i]) &&
                           std::signbit(vs[i]) == std::signbit(vs[i + 1]);
    if (!same_sign) continue;
    if (!(std::abs(vs[i]) < std::abs(vs[i - 1]) && std::abs(vs[i]) <= std::abs(vs[i + 1]))) continue;

    const double a = xs[i - 1], b = xs[i + 1];
    const double da = df(a), db = df(b);
    double xe;
    if (da == 0.0) {
      xe = a;
    } else if (db == 0.0) {
      xe = b;
    } else if (std::signbit(da) != std::signbit(db)) {
      xe = bisect(df, a, b, 1e-15 * std::max(1.0, std::abs(a)));
    } else {
      continue;
    }
    const double fe = f(xe);
    if (fe != 0.0 && std::signbit(fe) != std::signbit(vs[i])) {
      add_bracketed(a, xe);
      add_bracketed(xe, b);
    } else if (std::abs(fe) <= opts.tangent_tol) {
      roots.push_back({xe, fe, true});
    }
  }

  std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  std::vector<ScalarRoot> unique;
  for (const auto& r : roots) {
    if (!unique.empty() && r.x - unique.back().x < opts.dedup) {
      auto& kept = unique.back();
      if (r.tangent || std::abs(r.residual) < std::abs(kept.residual)) {
        const bool tangent = kept.tangent || r.tangent;
        kept = r;
        kept.tangent = tangent;
      }
      continue;
    }
    unique.push_back(r);
  }
  return unique;
}

}  // namespace dyad
