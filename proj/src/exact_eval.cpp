#include "hwkit/exact_eval.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hwkit/coefficients.hpp"
#include "hwkit/errors.hpp"

namespace hwkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPiSq = 0.5 * kPi * kPi;
constexpr int kGuardOrder = 16;

// x cosh x − sinh x = Σ_{n≥1} 2n x^{2n+1}/(2n+1)!, every term positive.
double xcosh_minus_sinh(double x) {
  if (std::abs(x) >= 2) return x * std::cosh(x) - std::sinh(x);
  const double x2 = x * x;
  double t = x;  // x^{2n+1}/(2n+1)!
  double sum = 0;
  for (int n = 1; n < 40; ++n) {
    t *= x2 / ((2.0 * n) * (2.0 * n + 1));
    const double term = 2.0 * n * t;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// sin x − x cos x = Σ_{n≥1} (−1)^{n+1} 2n x^{2n+1}/(2n+1)!.
double sin_minus_xcos(double x) {
  if (std::abs(x) >= 1) return std::sin(x) - x * std::cos(x);
  const double x2 = x * x;
  double t = x;
  double sum = 0;
  for (int n = 1; n < 30; ++n) {
    t *= -x2 / ((2.0 * n) * (2.0 * n + 1));
    const double term = -2.0 * n * t;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// 1 − sin x / x.
double one_minus_sinc(double x) {
  if (std::abs(x) >= 0.5) return 1 - std::sin(x) / x;
  const double x2 = x * x;
  double t = 1, sum = 0;
  for (int n = 1; n < 20; ++n) {
    t *= -x2 / ((2.0 * n) * (2.0 * n + 1));
    sum -= t;
    if (std::abs(t) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Polynomial in s with coefficients c, by Horner.
double horner(const std::vector<double>& c, double s) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

const std::vector<double>& guard_F() {
  static const std::vector<double> c = coeffs_F(kGuardOrder).to_doubles();
  return c;
}
const std::vector<double>& guard_G() {
  static const std::vector<double> c = coeffs_G(kGuardOrder).to_doubles();
  return c;
}
const std::vector<double>& guard_J() {
  static const std::vector<double> c = coeffs_JBS(kGuardOrder, JbsVariable::log).to_doubles();
  return c;
}

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                      std::to_string(v));
}

// Root of λ + ρ sin λ = π for ρ > 1, reported through ε = π − λ and
// sin λ so that neither end of the range loses precision.
struct LambdaRoot {
  double lambda;
  double eps;
  double sin_lambda;
};

LambdaRoot lambda_root(double rho, const RootSolverConfig& cfg) {
  if (rho < 2) {
    // ε = ρ sin ε, i.e. sin ε / ε = 1/ρ, with ε ∈ (0, π/2 + …).
    const double eps = solve_zeta(1 / rho, cfg);
    return {kPi - eps, eps, std::sin(eps)};
  }
  // f is increasing on [π/(1+ρ), π/2] (f' = 1 + ρ cos λ > 0) and changes sign there.
  const double lam = find_root(
      [rho](double l) {
        return std::pair{l + rho * std::sin(l) - kPi, 1 + rho * std::cos(l)};
      },
      kPi / (1 + rho), kPi / 2, cfg, "solve_lambda");
  return {lam, kPi - lam, std::sin(lam)};
}

// 1 − ε cot ε from ε = π − λ, using sin ε = sin λ and cos ε = −cos λ.
double one_minus_eps_cot(const LambdaRoot& r) {
  if (r.eps < 1) return one_minus_xcotx(r.eps);
  return (r.sin_lambda + r.eps * std::cos(r.lambda)) / r.sin_lambda;
}

}  // namespace

double sinhc_m1(double x) {
  if (std::abs(x) >= 0.5) return std::sinh(x) / x - 1;
  const double x2 = x * x;
  double t = 1, sum = 0;
  for (int n = 1; n < 20; ++n) {
    t *= x2 / ((2.0 * n) * (2.0 * n + 1));
    sum += t;
    if (t <= 1e-18 * sum) break;
  }
  return sum;
}

double log_sinhc(double x) {
  x = std::abs(x);
  if (x < 1) return std::log1p(sinhc_m1(x));
  return x - std::log(2 * x) + std::log1p(-std::exp(-2 * x));
}

double xcothx_m1(double x) {
  x = std::abs(x);
  if (x > 20) return x - 1;  // coth x = 1 to double precision
  if (x == 0) return 0;
  return xcosh_minus_sinh(x) / std::sinh(x);
}

double one_minus_xcotx(double x) {
  if (x == 0) return 0;
  return sin_minus_xcos(x) / std::sin(x);
}

double x_minus_tanh(double x) {
  if (std::abs(x) > 20) return x - std::copysign(1.0, x);
  return xcosh_minus_sinh(x) / std::cosh(x);
}

double tan_minus_x(double x) { return sin_minus_xcos(x) / std::cos(x); }

double solve_xi_log(double L, const RootSolverConfig& cfg) {
  if (!(L >= 0) || !std::isfinite(L))
    throw DomainError("solve_xi_log: L must be finite and nonnegative, got " + std::to_string(L));
  if (L == 0) return 0;
  auto fdf = [L](double xi) {
    const double d = xi == 0 ? 0 : xcothx_m1(xi) / xi;
    return std::pair{log_sinhc(xi) - L, d};
  };
  double hi = std::max(2 * std::sqrt(6 * L), L + 2 * std::log(L + 2) + 2);
  while (fdf(hi).first < 0) hi *= 2;
  // log(sinh ξ/ξ) ≤ ξ²/6, so the root is at least √(6L).
  const double lo = std::min(std::sqrt(6 * L), hi);
  return find_root(fdf, lo, hi, cfg, "solve_xi");
}

double solve_xi(double x, const RootSolverConfig& cfg) {
  if (!(x >= 1) || !std::isfinite(x))
    throw DomainError("solve_xi: x must be finite and >= 1, got " + std::to_string(x));
  return solve_xi_log(std::log(x), cfg);
}

double solve_kappa(double rho, const RootSolverConfig& cfg) {
  if (!(rho > 0 && rho < 1)) throw DomainError("solve_kappa: rho must lie in (0, 1), got " + std::to_string(rho));
  return solve_xi_log(-std::log(rho), cfg);
}

double solve_zeta(double x, const RootSolverConfig& cfg) {
  if (!(x > 0 && x <= 1)) throw DomainError("solve_zeta: x must lie in (0, 1], got " + std::to_string(x));
  if (x == 1) return 0;
  const double gap = 1 - x;
  // 1 − sin ζ/ζ is increasing on (0, π) with derivative (sin ζ − ζ cos ζ)/ζ².
  auto fdf = [gap](double z) {
    if (z == 0) return std::pair{-gap, 0.0};
    return std::pair{one_minus_sinc(z) - gap, sin_minus_xcos(z) / (z * z)};
  };
  return find_root(fdf, 0.0, kPi, cfg, "solve_zeta");
}

double solve_lambda(double rho, const RootSolverConfig& cfg) {
  if (!(rho > 1) || !std::isfinite(rho))
    throw DomainError("solve_lambda: rho must be finite and > 1, got " + std::to_string(rho));
  return lambda_root(rho, cfg).lambda;
}

double F_closed_form(double rho, const RootSolverConfig& cfg) {
  require_positive(rho, "F_exact");
  if (rho < 1) {
    const double k = solve_kappa(rho, cfg);
    return kHalfPiSq - 1 + 0.5 * k * k - xcothx_m1(k);
  }
  if (rho == 1) return kHalfPiSq - 1;
  const LambdaRoot r = lambda_root(rho, cfg);
  return kHalfPiSq - 1 - 0.5 * r.eps * r.eps + one_minus_eps_cot(r);
}

double G_closed_form(double rho, const RootSolverConfig& cfg) {
  require_positive(rho, "G_exact");
  if (rho == 1) return std::sqrt(3.0);
  if (rho < 1) {
    const double k = solve_kappa(rho, cfg);
    return k / std::sqrt(xcothx_m1(k));
  }
  const LambdaRoot r = lambda_root(rho, cfg);
  return r.eps / std::sqrt(one_minus_eps_cot(r));
}

double JBS_closed_form(double x, const RootSolverConfig& cfg) {
  require_positive(x, "JBS_exact");
  if (x == 1) return 0;
  if (x > 1) {
    const double xi = solve_xi_log(std::log(x), cfg);
    return xi * x_minus_tanh(0.5 * xi);
  }
  const double z = solve_zeta(x, cfg);
  return z * tan_minus_x(0.5 * z);
}

double F_exact(double rho, const RootSolverConfig& cfg) {
  require_positive(rho, "F_exact");
  const double s = std::log(rho);
  if (std::abs(s) < kSeriesGuard) return kHalfPiSq + horner(guard_F(), s);
  return F_closed_form(rho, cfg);
}

double G_exact(double rho, const RootSolverConfig& cfg) {
  require_positive(rho, "G_exact");
  const double s = std::log(rho);
  if (std::abs(s) < kSeriesGuard) return std::sqrt(3.0) * horner(guard_G(), s);
  return G_closed_form(rho, cfg);
}

double JBS_exact(double x, const RootSolverConfig& cfg) {
  require_positive(x, "JBS_exact");
  const double y = std::log(x);
  if (std::abs(y) < kSeriesGuard) return horner(guard_J(), y);
  return JBS_closed_form(x, cfg);
}

CriticalPointTable critical_points(int K, const RootSolverConfig& cfg) {
  if (K < 1) throw DomainError("critical_points: K must be >= 1");
  CriticalPointTable t;
  for (int k = 1; k <= K; ++k) {
    // tan η = η  ⇔  sin η − η cos η = 0, with derivative η sin η.
    const double eta = find_root(
        [](double e) { return std::pair{sin_minus_xcos(e), e * std::sin(e)}; }, k * kPi,
        k * kPi + kPi / 2, cfg, "critical_points");
    t.entries.push_back({k, eta, -eta * eta, std::sin(eta) / eta});
  }
  const double l = std::log(std::abs(t.entries.front().omega));
  t.rho_x = std::hypot(l, kPi);
  t.theta_x = std::atan2(kPi, l);
  return t;
}

}  // namespace hwkit
