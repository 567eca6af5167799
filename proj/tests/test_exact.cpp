#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hwkit/coefficients.hpp"
#include "hwkit/exact_eval.hpp"

using namespace hwkit;

namespace {

constexpr double kPi = std::numbers::pi;

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

double series_value(const RationalSeries& s, double x) {
  const auto c = s.to_doubles();
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

// Reference values computed with 40-digit arithmetic (mpmath findroot).
TEST_CASE("root solvers against high-precision references") {
  CHECK(close(solve_kappa(0.5), 2.177318984965306752630, 1e-14));
  CHECK(close(solve_kappa(0.1), 4.499913997027288422749, 1e-14));
  CHECK(close(solve_xi(2.0), 2.177318984965306752630, 1e-14));
  CHECK(close(solve_lambda(2.0), 1.246098386555812291319, 1e-14));
  CHECK(close(solve_zeta(0.5), 1.895494267033980947144, 1e-14));
  CHECK(solve_xi(1.0) == 0.0);
  CHECK(solve_zeta(1.0) == 0.0);
}

TEST_CASE("root solver residuals and limits") {
  for (double rho : {1e-6, 1e-3, 0.05, 0.3, 0.9, 0.999, 0.99999}) {
    const double k = solve_kappa(rho);
    CHECK(std::abs(std::exp(std::log(rho) + log_sinhc(k)) - 1) < 1e-12);
  }
  for (double rho : {1.00001, 1.001, 1.5, 1.999, 2.0, 5.0, 100.0, 1e4}) {
    const double l = solve_lambda(rho);
    CHECK(l > 0);
    CHECK(l < kPi);
    CHECK(std::abs(l + rho * std::sin(l) - kPi) < 1e-12 * kPi);
  }
  for (double x : {1e-8, 0.01, 0.5, 0.99, 0.999999}) {
    const double z = solve_zeta(x);
    CHECK(std::abs(std::sin(z) / z - x) < 1e-12);
  }
  CHECK(solve_kappa(1 - 1e-12) < 1e-5);
  CHECK(solve_lambda(1 + 1e-12) > kPi - 1e-5);
  CHECK(solve_lambda(1e6) * (1 + 1e6) == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(solve_zeta(1e-12) > kPi - 1e-10);
  CHECK(std::isfinite(solve_kappa(1e-300)));

  CHECK_THROWS_AS(solve_kappa(1.0), DomainError);
  CHECK_THROWS_AS(solve_lambda(0.5), DomainError);
  CHECK_THROWS_AS(solve_zeta(0.0), DomainError);
  CHECK_THROWS_AS(solve_xi(0.5), DomainError);
}

TEST_CASE("non-convergence reports last iterate and residual") {
  RootSolverConfig cfg;
  cfg.max_iter = 2;
  try {
    solve_kappa(1e-4, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.last_iterate()));
    CHECK(std::isfinite(e.residual()));
  }
  cfg.abs_tol = 0;
  CHECK_THROWS_AS(solve_kappa(0.5, cfg), DomainError);
}

TEST_CASE("stable elementary pieces") {
  CHECK(close(xcothx_m1(1e-4), 1e-8 / 3 - 1e-16 / 45, 1e-14));
  CHECK(close(one_minus_xcotx(1e-4), 1e-8 / 3 + 1e-16 / 45, 1e-14));
  CHECK(close(x_minus_tanh(1e-3), 1e-9 / 3, 1e-6));
  CHECK(close(tan_minus_x(1e-3), 1e-9 / 3, 1e-6));
  CHECK(close(xcothx_m1(1.5), 1.5 / std::tanh(1.5) - 1, 1e-14));
  CHECK(close(log_sinhc(800.0), 800.0 - std::log(1600.0), 1e-15));
}

TEST_CASE("F, G, J_BS against high-precision references") {
  struct Row { double rho, F, G; };
  for (const Row& r : {Row{0.5, 5.071169695069919707112, 1.960044708248580505544},
                       Row{2.0, 3.776397990650572691614, 1.481015332340665549832},
                       Row{0.05, 13.98156439692853178933, 2.568689533141211832687},
                       Row{20.0, 20.23541064951053308666, 0.6563145270727677166229},
                       Row{0.01, 24.17910876533087875921, 2.905705220159331199861},
                       Row{100.0, 100.0488633291908568845, 0.3095787729116954841319},
                       Row{1000.0, 1000.004929876370746179, 0.09919729375534396741842}}) {
    CAPTURE(r.rho);
    CHECK(close(F_exact(r.rho), r.F, 1e-13));
    CHECK(close(G_exact(r.rho), r.G, 1e-12));
  }
  struct JRow { double x, J; };
  for (const JRow& r : {JRow{0.5, 0.8415957901058933821971}, JRow{1.5, 0.2285387040428849348952},
                        JRow{0.2, 5.904491670910733150858}, JRow{5.0, 3.018062374213422332525},
                        JRow{2.0, 0.6363674945252403976952}}) {
    CAPTURE(r.x);
    CHECK(close(JBS_exact(r.x), r.J, 1e-13));
  }
}

TEST_CASE("expansion point values") {
  CHECK(F_exact(1.0) == doctest::Approx(kPi * kPi / 2 - 1).epsilon(1e-15));
  CHECK(G_exact(1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(JBS_exact(1.0) == 0.0);
}

TEST_CASE("series cross-oracle at small log distance") {
  const auto f = coeffs_F(40);
  const auto g = coeffs_G(40);
  const auto j = coeffs_JBS(40, JbsVariable::log);
  for (double s : {-0.1, 0.1, -0.5, 0.7, -1.0, 1.0, -2.0, 2.0}) {
    CAPTURE(s);
    // at |s| = 2 the order-40 truncation error is a few 1e-12
    const double tol = std::abs(s) <= 1 ? 1e-12 : 1e-10;
    CHECK(std::abs(F_exact(std::exp(s)) - (kPi * kPi / 2 + series_value(f, s))) < tol);
    CHECK(std::abs(G_exact(std::exp(s)) - std::sqrt(3.0) * series_value(g, s)) < tol);
    CHECK(std::abs(JBS_exact(std::exp(s)) - series_value(j, s)) < tol);
  }
}

TEST_CASE("series guard and closed form agree in the overlap") {
  for (double s : {-1e-3, -9.9e-4, -5e-4, 5e-4, 9.9e-4, 1e-3, 2e-3}) {
    CAPTURE(s);
    const double rho = std::exp(s);
    CHECK(std::abs(F_exact(rho) - F_closed_form(rho)) < 1e-12);
    CHECK(std::abs(G_exact(rho) - G_closed_form(rho)) < 1e-12);
    CHECK(std::abs(JBS_exact(rho) - JBS_closed_form(rho)) < 1e-12);
  }
}

TEST_CASE("branch continuity across rho = 1") {
  // Log-spaced grid on [0.01, 100]: second differences stay at the size
  // set by the curvature, so neither branch has a jump.
  const int n = 2000;
  const double step = (std::log(100.0) - std::log(0.01)) / n;
  std::vector<double> F(n + 1), G(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double rho = std::exp(std::log(0.01) + i * step);
    F[i] = F_exact(rho);
    G[i] = G_exact(rho);
    CHECK(std::isfinite(F[i]));
    CHECK(G[i] > 0);
  }
  for (int i = 1; i < n; ++i) {
    CHECK(std::abs(F[i + 1] - 2 * F[i] + F[i - 1]) < 2 * step * step * (F[i] + 1));
    CHECK(std::abs(G[i + 1] - 2 * G[i] + G[i - 1]) < 2 * step * step);
  }
  // Across ρ = 1 and both series-guard switch points, the jump left over
  // after removing the local slope is below 1e-8.
  for (double p : {std::exp(-kSeriesGuard), 1.0, std::exp(kSeriesGuard)}) {
    CAPTURE(p);
    const double h = 1e-10, d = 1e-4;
    const double slopeF = (F_exact(p + d) - F_exact(p - d)) / (2 * d);
    const double slopeG = (G_exact(p + d) - G_exact(p - d)) / (2 * d);
    CHECK(std::abs(F_exact(p + h) - F_exact(p - h) - 2 * h * slopeF) < 1e-8);
    CHECK(std::abs(G_exact(p + h) - G_exact(p - h) - 2 * h * slopeG) < 1e-8);
    // first differences at spacing 1e-4 change smoothly across the switch
    const double dF1 = F_exact(p) - F_exact(p - d), dF2 = F_exact(p + d) - F_exact(p);
    CHECK(std::abs(dF2 - dF1) < 1e-7);
  }
}

TEST_CASE("J_BS nonnegative and branch continuity") {
  for (double x = 0.05; x < 20; x *= 1.01) CHECK(JBS_exact(x) >= 0);
  CHECK(std::abs(JBS_exact(1 + 1e-9) - JBS_exact(1 - 1e-9)) < 1e-15);
}

TEST_CASE("critical points") {
  const auto t = critical_points(5);
  REQUIRE(t.entries.size() == 5);
  CHECK(t.entries[0].eta == doctest::Approx(4.493409457909064).epsilon(1e-14));
  CHECK(t.entries[0].omega == doctest::Approx(-0.2172336282112217).epsilon(1e-13));
  CHECK(t.entries[0].z == doctest::Approx(-20.19072855642663).epsilon(1e-14));
  CHECK(t.entries[1].eta == doctest::Approx(7.7252).epsilon(1e-4));
  CHECK(t.entries[1].omega == doctest::Approx(0.1284).epsilon(1e-3));
  CHECK(t.rho_x == doctest::Approx(3.492945361823380).epsilon(1e-13));
  CHECK(t.theta_x == doctest::Approx(2.023173059722528).epsilon(1e-13));
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    const auto& e = t.entries[i];
    CHECK(std::abs(std::tan(e.eta) - e.eta) < 1e-10 * e.eta);
    CHECK(e.eta > e.k * kPi);
    CHECK(e.eta < e.k * kPi + kPi / 2);
    CHECK((e.omega > 0) == (e.k % 2 == 0));
    if (i > 0) CHECK(std::abs(e.omega) < std::abs(t.entries[i - 1].omega));
  }
  CHECK_THROWS_AS(critical_points(0), DomainError);
}
