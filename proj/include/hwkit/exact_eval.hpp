#pragma once

#include <vector>

#include "hwkit/roots.hpp"

namespace hwkit {

// Roots of the defining transcendental equations.
//   solve_kappa:  ρ sinh κ / κ = 1,   0 < ρ < 1, κ ≥ 0
//   solve_lambda: λ + ρ sin λ = π,    ρ > 1,     λ ∈ (0, π)
//   solve_xi:     sinh ξ / ξ = x,     x ≥ 1,     ξ ≥ 0
//   solve_zeta:   sin ζ / ζ = x,      0 < x ≤ 1, ζ ∈ [0, π)
double solve_kappa(double rho, const RootSolverConfig& cfg = {});
double solve_lambda(double rho, const RootSolverConfig& cfg = {});
double solve_xi(double x, const RootSolverConfig& cfg = {});
double solve_zeta(double x, const RootSolverConfig& cfg = {});

// ξ with log(sinh ξ / ξ) = L for L ≥ 0. Works for L far beyond the range
// where e^L is representable.
double solve_xi_log(double L, const RootSolverConfig& cfg = {});

// Below this |log ρ| (or |log x|) the evaluators switch to the Taylor series
// about the expansion point.
inline constexpr double kSeriesGuard = 1e-3;

// F(ρ), G(ρ) for ρ > 0 and J_BS(x) for x > 0.
double F_exact(double rho, const RootSolverConfig& cfg = {});
double G_exact(double rho, const RootSolverConfig& cfg = {});
double JBS_exact(double x, const RootSolverConfig& cfg = {});

// The same quantities from the closed forms alone, with no series guard.
// Defined for ρ ≠ 1 (x ≠ 1); used to check the guard overlap.
double F_closed_form(double rho, const RootSolverConfig& cfg = {});
double G_closed_form(double rho, const RootSolverConfig& cfg = {});
double JBS_closed_form(double x, const RootSolverConfig& cfg = {});

// Numerically stable pieces of the closed forms, accurate to relative
// precision near 0.
double sinhc_m1(double x);        // sinh x / x − 1
double log_sinhc(double x);       // log(sinh x / x), x ≥ 0
double xcothx_m1(double x);       // x coth x − 1
double one_minus_xcotx(double x); // 1 − x cot x, |x| < π
double x_minus_tanh(double x);    // x − tanh x
double tan_minus_x(double x);     // tan x − x, |x| < π/2

struct CriticalPoint {
  int k;
  double eta;    // root of tan η = η in (kπ, kπ + π/2)
  double z;      // −η²
  double omega;  // sin η / η
};

struct CriticalPointTable {
  std::vector<CriticalPoint> entries;
  double rho_x;    // |log|ω₁| + iπ|
  double theta_x;  // arg(log|ω₁| + iπ)
};

CriticalPointTable critical_points(int K, const RootSolverConfig& cfg = {});

}  // namespace hwkit
