#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "hwkit/errors.hpp"

namespace hwkit {

struct RootSolverConfig {
  double abs_tol = 1e-14;
  int max_iter = 100;

  void validate() const {
    if (!(abs_tol > 0)) throw DomainError("RootSolverConfig: abs_tol must be positive");
    if (max_iter < 1) throw DomainError("RootSolverConfig: max_iter must be at least 1");
  }
};

// Safeguarded Newton on a sign-changing bracket [lo, hi]. fdf(x) returns
// {f(x), f'(x)}. Newton steps that leave the bracket or stall fall back to
// bisection, so convergence never depends on a starting guess. The step
// tolerance is abs_tol scaled by max(1, |x|).
template <class Fdf>
double find_root(Fdf&& fdf, double lo, double hi, const RootSolverConfig& cfg, std::string_view what) {
  cfg.validate();
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw ConvergenceError(std::string(what) + ": bracket does not enclose a root", lo, flo);
  if (flo > 0) std::swap(lo, hi);  // now f(lo) < 0 < f(hi)

  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  auto [f, df] = fdf(x);
  for (int it = 0; it < cfg.max_iter; ++it) {
    const bool newton_ok = df != 0 && ((x - hi) * df - f) * ((x - lo) * df - f) < 0 &&
                           std::abs(2 * f) < std::abs(dx_old * df);
    dx_old = dx;
    if (newton_ok) {
      dx = f / df;
      x -= dx;
    } else {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    }
    if (std::abs(dx) <= cfg.abs_tol * std::max(1.0, std::abs(x))) return x;
    std::tie(f, df) = fdf(x);
    if (f == 0) return x;
    if (f < 0) lo = x;
    else hi = x;
    if (std::abs(hi - lo) <= cfg.abs_tol * std::max(1.0, std::abs(x))) return x;
  }
  throw ConvergenceError(std::string(what) + ": no convergence in " + std::to_string(cfg.max_iter) +
                             " iterations",
                         x, f);
}

}  // namespace hwkit
