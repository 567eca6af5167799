#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hwkit/density_pricing.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"

using namespace hwkit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("quadrature schemes") {
  for (auto name : {"tanh-sinh", "gauss-legendre", "newton-cotes"}) {
    QuadratureSpec q;
    q.scheme = parse_quad_scheme(name);
    CHECK(to_string(q.scheme) == name);
    const auto r = integrate([](double x) { return std::exp(x); }, 0, 1, q);
    CHECK(r.value == doctest::Approx(std::expm1(1.0)).epsilon(1e-10));
    CHECK(r.l1 == doctest::Approx(r.value).epsilon(1e-8));
  }
  CHECK(parse_quad_scheme("newton-cotes-composite") == QuadScheme::newton_cotes);
  CHECK_THROWS_AS(parse_quad_scheme("simpson"), DomainError);
  QuadratureSpec bad;
  bad.target_rel_err = 0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0, 1, bad), DomainError);
  QuadratureSpec tight{QuadScheme::newton_cotes, 2, 1e-12};
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(200 * x); }, 0, 3, tight), ConvergenceError);
  CHECK(composite_boole([](double x) { return x * x * x * x * x; }, 0, 2, 1) == doctest::Approx(64.0 / 6));
}

TEST_CASE("log-domain window") {
  const auto w = scan_log_window([](double x) { return -0.5 * (x - 3) * (x - 3); }, 0, 0.1, -50, 50);
  CHECK(w.peak == doctest::Approx(3).epsilon(1e-12));
  CHECK(w.hi > 3 + std::sqrt(120.0) - 0.2);
  CHECK(w.lo < 3 - std::sqrt(120.0) + 0.2);
  const double li = log_integral([](double x) { return 700 - 0.5 * x * x; }, 2, 0.2, -50, 50, {});
  CHECK(li == doctest::Approx(700 + 0.5 * std::log(2 * kPi)).epsilon(1e-12));
}

TEST_CASE("Bessel K") {
  CHECK(bessel_k(3, 10) == doctest::Approx(2.725270025659869208908e-5).epsilon(1e-11));
  CHECK(bessel_k(0.7, 2.5) == doctest::Approx(0.06777798985757463308238).epsilon(1e-11));
  CHECK(bessel_k(3.6, 400) == doctest::Approx(1.219350010818308202294e-175).epsilon(1e-10));
  CHECK(log_bessel_k(3, 2e4) == doctest::Approx(-2e4 + 0.5 * std::log(kPi / 4e4) + std::log1p(35 / 16e4)).epsilon(1e-12));
  for (double x : {0.5, 1.0, 3.0, 10.0, 40.0, 100.0}) {
    CHECK(bessel_k(0.5, x) == doctest::Approx(std::sqrt(kPi / (2 * x)) * std::exp(-x)).epsilon(1e-12));
    for (double nu = 0; nu <= 4; nu += 0.25) {
      CHECK(std::abs(bessel_k(nu, x) - bessel_k(-nu, x)) <= 1e-12 * bessel_k(nu, x));
      CHECK(bessel_k(nu, x) == doctest::Approx(std::cyl_bessel_k(nu, x)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(bessel_k(1, 0), DomainError);
}

TEST_CASE("rate function I") {
  CHECK(std::abs(rate_I(1, 1)) < 1e-15);
  CHECK(rate_I(1.2, 1.1) == doctest::Approx(0.01532988849829817454658).epsilon(1e-12));
  CHECK(rate_I(1.2, 1.1, default_evaluators().F) == doctest::Approx(rate_I(1.2, 1.1)).epsilon(1e-8));
  // log-coordinate Hessian at (1,1) by central differences
  auto I = [](double x, double y) { return rate_I(std::exp(x), std::exp(y), default_evaluators().F); };
  const double h = 1e-4;
  const double hxx = (I(h, 0) - 2 * I(0, 0) + I(-h, 0)) / (h * h);
  const double hyy = (I(0, h) - 2 * I(0, 0) + I(0, -h)) / (h * h);
  const double hxy = (I(h, h) - I(h, -h) - I(-h, h) + I(-h, -h)) / (4 * h * h);
  CHECK(hxx == doctest::Approx(3).epsilon(1e-6));
  CHECK(hyy == doctest::Approx(4).epsilon(1e-6));
  CHECK(hxy == doctest::Approx(-3).epsilon(1e-6));
  CHECK(hxx * hyy - hxy * hxy == doctest::Approx(3).epsilon(1e-5));
  CHECK_THROWS_AS(rate_I(0, 1), DomainError);
}

TEST_CASE("rate function J matches J_BS/4") {
  CHECK(std::abs(rate_J(1)) < 1e-14);
  for (double a = 0.5; a <= 2.0001; a += 0.05) {
    const auto r = rate_J_min(a);
    CHECK(r.value == doctest::Approx(JBS_exact(a) / 4).epsilon(1e-8));
    CHECK(std::abs(r.value - JBS_exact(a) / 4) < 1e-8);
    CHECK(r.v_star > 0);
    CHECK(std::isfinite(r.v_star));
  }
}

TEST_CASE("joint density") {
  const auto& ev = default_evaluators();
  double best = -1, ba = 0, bv = 0;
  for (double a = 0.8; a <= 1.2; a += 0.01)
    for (double v = 0.8; v <= 1.2; v += 0.01) {
      const double p = joint_density_leading(a, v, 0.01, 0, ev) * a * v;
      if (p > best) best = p, ba = a, bv = v;
    }
  CHECK(ba == doctest::Approx(1).epsilon(0.011));
  CHECK(bv == doctest::Approx(1).epsilon(0.011));

  // log-normal limit: σ_X = 2√(t/3), σ_Y = √t, correlation √3/2
  const double t = 1e-6;
  auto lognormal = [t](double x, double y) {
    const double sx = 2 * std::sqrt(t / 3), sy = std::sqrt(t), r = std::sqrt(3.0) / 2;
    const double q = (x * x / (sx * sx) - 2 * r * x * y / (sx * sy) + y * y / (sy * sy)) / (1 - r * r);
    return std::exp(-0.5 * q) / (2 * kPi * sx * sy * std::sqrt(1 - r * r));
  };
  double prev_gap = 1;
  for (double s : {2.0, 1.0, 0.5, 0.25}) {
    const double x = -s * std::sqrt(t), y = 0.5 * s * std::sqrt(t);
    const double a = std::exp(x), v = std::exp(y);
    const double gap = std::abs(joint_density_leading(a, v, t, 0, ev) * a * v / lognormal(x, y) - 1);
    CHECK(gap < 0.02);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }

  // ∫∫ over (a, v) reproduces n(t), here in log coordinates
  const double tau = 0.0025, mu = 3;
  auto inner = [&](double x) {
    return composite_gauss_legendre(
        [&](double y) { return joint_density_leading(std::exp(x), std::exp(y), tau, mu, ev) * std::exp(x + y); },
        -0.6, 0.6, 16);
  };
  const double total = composite_gauss_legendre(inner, -0.6, 0.6, 16);
  CHECK(total == doctest::Approx(norm_factor(tau, mu)).epsilon(1e-9));
  CHECK(total == doctest::Approx(1.00004).epsilon(5e-6));
}

TEST_CASE("Hartman-Watson integral") {
  CHECK(theta_hw(2, 0.5) == doctest::Approx(4.04532909015).epsilon(1e-10));
  CHECK(theta_hw(1 / 0.3, 0.3) == doctest::Approx(25.6487976903).epsilon(1e-10));
  CHECK(theta_hw(5, 0.2) == doctest::Approx(203.98183663).epsilon(1e-10));
  QuadratureSpec nc;
  nc.scheme = QuadScheme::newton_cotes;
  CHECK(theta_hw(2, 0.5, nc) == doctest::Approx(4.04532909015).epsilon(1e-8));
  for (double t = 0.5; t <= 2.0001; t += 0.25) CHECK(theta_hw(1, t) > 0);

  double prev_gap = 1e9;
  for (double t : {0.5, 0.3, 0.2}) {
    const double gap = std::abs(theta_asympt(1, t) / theta_hw(1 / t, t) - 1);
    CHECK(gap < 0.25);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(theta_asympt(1, 0.2) == doctest::Approx(std::sqrt(3.0) / (2 * kPi * 0.2) * std::exp(5.0)).epsilon(1e-14));
  const double t = 0.01;
  CHECK(std::log(theta_asympt(2, t)) * t == doctest::Approx(-(F_exact(2) - kPi * kPi / 2)).epsilon(0.05));

  const auto st = theta_hw_stability(2, 0.5);
  CHECK(st.stable);
  CHECK(st.rel_change < 1e-8);
  CHECK_FALSE(theta_hw_stability(20, 0.05).stable);
  CHECK_THROWS_AS(theta_hw(20, 0.05), DomainError);
  CHECK_THROWS_AS(theta_hw(10, 0.1), ConvergenceError);
}

TEST_CASE("normalization factor") {
  const auto& sc = table3_scenarios();
  const double paper[] = {1.00004, 1.00032, 1.00045, 1.00089, 1.00089, 1.00089, 1.00177};
  const double derived[] = {1.000036, 1.000321, 1.000446, 1.00089, 1.00089, 1.00089, 1.001773};
  for (std::size_t i = 0; i < sc.size(); ++i) {
    const auto p = sc[i].reduced();
    const double n = norm_factor(p.tau, p.mu);
    CHECK(std::abs(n - paper[i]) < 5e-6);
    CHECK(std::abs(n - derived[i]) < 1e-6);
    CHECK(raw_expectation(Payoff::unit, 0, p.tau, p.mu) == doctest::Approx(n).epsilon(1e-9));
  }
  CHECK(norm_factor(0.0025, 3) < norm_factor(0.0225, 3));
  CHECK(norm_factor(0.0625, -0.6) < norm_factor(0.125, -0.6));
}

TEST_CASE("marginal density f0") {
  const double tau = 0.0025, mu = 3;
  const double n = norm_factor(tau, mu);
  QuadratureSpec q;
  const double total =
      integrate([&](double u) { return f0_density(std::exp(u), tau, mu, default_evaluators(), q, n); }, -0.5, 0.5, q)
          .value;
  CHECK(std::abs(total - 1) < 1e-6);

  // unimodal near a = 1 at t = 0.01, μ = 0
  const double m = norm_factor(0.01, 0);
  int turns = 0;
  double prev = 0, prev_d = 1;
  for (double a = 0.7; a <= 1.3; a += 0.01) {
    const double f = f0_density(a, 0.01, 0, default_evaluators(), q, m);
    if (a > 0.7) {
      const double d = f - prev;
      if ((d > 0) != (prev_d > 0)) ++turns;
      prev_d = d;
    }
    prev = f;
  }
  CHECK(turns == 1);

  for (const auto& s : table3_scenarios()) {
    const auto p = s.reduced();
    const double nn = norm_factor(p.tau, p.mu);
    const double mean = raw_expectation(Payoff::mean, 0, p.tau, p.mu) / nn;
    const double x = (2 * p.mu + 2) * p.tau;
    CHECK(mean == doctest::Approx(std::expm1(x) / x).epsilon(2e-3));
    const double c = price_call_reduced(p.k, p.tau, p.mu), put = price_put_reduced(p.k, p.tau, p.mu);
    const double unit = raw_expectation(Payoff::unit, 0, p.tau, p.mu) / nn;
    CHECK(std::abs((c - put) - (mean - p.k * unit)) < 1e-6);
  }
}

TEST_CASE("deep out-of-the-money decay") {
  const double tau = 0.01, mu = 0;
  double prev = 1;
  for (double k = 1.1; k <= 1.5; k += 0.1) {
    const double c = price_call_reduced(k, tau, mu);
    CHECK(c < prev);
    CHECK(c > 0);
    prev = c;
  }
  const double slope = tau * (std::log(price_call_reduced(1.4, tau, mu)) - std::log(price_call_reduced(1.3, tau, mu)));
  CHECK(slope == doctest::Approx(-(rate_J(1.4) - rate_J(1.3))).epsilon(0.1));
}

TEST_CASE("scenario pricing") {
  const auto& sc = table3_scenarios();
  const double paper[] = {0.055954, 0.218388, 0.172269, 0.193174, 0.246415, 0.306220, 0.350093};
  const double spectral[] = {0.055986, 0.218387, 0.172269, 0.193174, 0.246416, 0.306220, 0.350095};
  const auto rows = price_scenarios(sc, default_evaluators(), {}, 3, true);
  REQUIRE(rows.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(std::abs(rows[i].price - paper[i]) < 2e-4);
    CHECK(std::abs(rows[i].price / spectral[i] - 1) < 1e-3);
    CHECK(rows[i].put_price.has_value());
  }
  CHECK(rows[0].price == doctest::Approx(0.055986).epsilon(2e-5));
  CHECK(rows[1].c_raw == doctest::Approx(0.130771).epsilon(1e-5));
  CHECK(rows[3].price < rows[4].price);
  CHECK(rows[4].price < rows[5].price);
  const auto one = price_scenario(sc[4]);
  CHECK(one.price == rows[4].price);
  const auto p = sc[1].reduced();
  CHECK(p.tau == doctest::Approx(0.0225));
  CHECK(p.mu == doctest::Approx(3));
  CHECK(p.k == 1);

  std::ostringstream csv;
  write_prices_csv(csv, rows, 6);
  CHECK(csv.str().rfind("scenario,mu,tau,c_A,n_tau,C_A,c_A_normalized,P_A\n1,3,0.0025,", 0) == 0);
  std::ostringstream js;
  write_prices_json(js, {rows[6]}, 6);
  CHECK(js.str().find("\"C_A\": 0.350093") != std::string::npos);
}

TEST_CASE("scenario JSON") {
  const auto back = parse_scenarios(scenarios_to_json(table3_scenarios()));
  REQUIRE(back.size() == 7);
  CHECK(back[3].S0 == 1.9);
  CHECK(back[2].r == 0.0125);
  CHECK_THROWS_AS(parse_scenarios("{\"S0\": 1}"), ParseError);
  CHECK_THROWS_AS(parse_scenarios("[{\"S0\": 1, \"r\": 0.1}]"), ParseError);
  CHECK_THROWS_AS(parse_scenarios("[{\"S0\": 2, \"r\": 0.1, \"sigma\": -1, \"T\": 1, \"K\": 2}]"), DomainError);
  CHECK_THROWS_AS(parse_scenarios("[1,"), ParseError);
}
