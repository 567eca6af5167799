#include "hwkit/asymptotics.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "hwkit/coefficients.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"
#include "hwkit/jet.hpp"
#include "hwkit/roots.hpp"

namespace hwkit {

namespace {

constexpr double kPi = std::numbers::pi;

const CriticalPoint& first_critical_point() {
  static const CriticalPoint cp = critical_points(1).entries.front();
  return cp;
}

double rho_x() {
  static const double r = critical_points(1).rho_x;
  return r;
}

double theta_x() {
  static const double t = critical_points(1).theta_x;
  return t;
}

// η(w) = √(η₁² − w), so that z = −η² = z₁ + w.
Jet eta_jet(int order) {
  const double eta1 = first_critical_point().eta;
  return sqrt(eta1 * eta1 - Jet::variable(order, 0.0));
}

std::vector<double> to_vector(const Jet& j) {
  std::vector<double> out(static_cast<std::size_t>(j.order()) + 1);
  for (int k = 0; k <= j.order(); ++k) out[k] = j[k];
  return out;
}

void check_n(int n) {
  if (n < 1) throw DomainError("asymptotic formulas need n >= 1, got " + std::to_string(n));
}

double sign_pow(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

double fit_C2_impl(double C1, double delta0, int levels) {
  const CriticalPoint& cp = first_critical_point();
  std::vector<std::vector<double>> T(static_cast<std::size_t>(levels));
  double delta = delta0;
  for (int k = 0; k < levels; ++k, delta /= 4) {
    const double omega = cp.omega + delta;
    // Real branch z > z₁: η ∈ (π, η₁) with sin η / η = ω.
    const double eta = find_root(
        [omega](double e) {
          return std::pair{std::sin(e) / e - omega, (e * std::cos(e) - std::sin(e)) / (e * e)};
        },
        kPi, cp.eta, RootSolverConfig{1e-16, 200}, "fit_C2");
    const double h = -eta * eta;
    T[k].push_back((h - cp.z - C1 * std::sqrt(delta)) / delta);
    // the remainder is a series in √δ, and √δ halves between levels
    for (int j = 1; j <= k; ++j) {
      const double f = std::ldexp(1.0, j);
      T[k].push_back((f * T[k][j - 1] - T[k - 1][j - 1]) / (f - 1));
    }
  }
  return T.back().back();
}

PuiseuxData compute_puiseux() {
  const CriticalPoint& cp = first_critical_point();
  PuiseuxData p{};
  p.z1 = cp.z;
  p.omega1 = cp.omega;
  // C₁² = −8 z₁ / f''(iξ₁), where f''(iξ₁) = −cos η₁ is taken by magnitude.
  p.C1 = std::sqrt(-8 * cp.z / std::abs(std::cos(cp.eta)));

  const auto a = g_taylor_at_z1(3);
  // g − ω₁ = a₂w² + a₃w³ + … reverted: w = a₂^{−1/2} δ^{1/2} − a₃/(2a₂²) δ + …
  p.C2 = -a[3] / (2 * a[2] * a[2]);

  const auto J = jcal_taylor_at_z1(3);
  const auto F = fcal_taylor_at_z1(3);
  // (1/6)X'''C₁³ + X''C₁C₂ in Taylor-coefficient form
  p.C32_J = J[3] * std::pow(p.C1, 3) + 2 * J[2] * p.C1 * p.C2;
  p.C32_F = F[3] * std::pow(p.C1, 3) + 2 * F[2] * p.C1 * p.C2;
  p.C2_fit = fit_C2_impl(p.C1, 1e-2, 6);
  return p;
}

AsymptoticConstants compute_constants() {
  const PuiseuxData& p = puiseux_data();
  const double w1 = p.omega1;
  const double rx = rho_x();
  const double eta1 = first_critical_point().eta;
  AsymptoticConstants c{};
  c.c_inf = -p.C1 * std::sqrt(1 - w1) / (2 * std::sqrt(kPi));
  c.d_inf = -p.C1 * std::sqrt(-w1 * rx / kPi);
  c.d_J = 1.5 * p.C32_J * std::sqrt(std::pow(-w1 * rx, 3) / kPi);
  c.d_F = 1.5 * p.C32_F * std::sqrt(std::pow(-w1 * rx, 3) / kPi);
  // Both conjugate singularities contribute, hence the factor 2.
  c.d_G = 2 / std::tgamma(0.25) * std::sqrt(2 * eta1 * eta1 / p.C1) * std::pow(-w1 * rx, -0.25);
  return c;
}

}  // namespace

std::vector<double> g_taylor_at_z1(int order) {
  const Jet eta = eta_jet(order);
  return to_vector(sin(eta) / eta);
}

std::vector<double> jcal_taylor_at_z1(int order) {
  // 𝒥 = −η²/2 + η tan(η/2)
  const Jet eta = eta_jet(order);
  Jet s(0), c(0);
  sincos(eta * 0.5, s, c);
  return to_vector(eta * (s / c) - (eta * eta) * 0.5);
}

std::vector<double> fcal_taylor_at_z1(int order) {
  // ℱ = π²/2 − η²/2 − η cot η
  const Jet eta = eta_jet(order);
  Jet s(0), c(0);
  sincos(eta, s, c);
  return to_vector(0.5 * kPi * kPi - (eta * eta) * 0.5 - eta * (c / s));
}

double fit_C2(double delta0, int levels) {
  if (!(delta0 > 0) || levels < 1) throw DomainError("fit_C2: need delta0 > 0 and levels >= 1");
  return fit_C2_impl(puiseux_data().C1, delta0, levels);
}

const PuiseuxData& puiseux_data() {
  static const PuiseuxData p = compute_puiseux();
  return p;
}

const AsymptoticConstants& asymptotic_constants() {
  static const AsymptoticConstants c = compute_constants();
  return c;
}

double asympt_c(int n) {
  check_n(n);
  const double w1 = first_critical_point().omega;
  return asymptotic_constants().c_inf * std::pow(1 - w1, -n) * sign_pow(n) * std::pow(n, -1.5);
}

double asympt_d(int n) {
  check_n(n);
  return asymptotic_constants().d_inf * std::pow(rho_x(), -n) * std::cos(theta_x() * (n - 0.5)) *
         std::pow(n, -1.5);
}

double asympt_cJ(int n) {
  check_n(n);
  return 2 * sign_pow(n);
}

double asympt_dJ(int n) {
  check_n(n);
  return asymptotic_constants().d_J * std::pow(rho_x(), -n) * std::cos(theta_x() * (n - 1.5)) *
         std::pow(n, -2.5);
}

double asympt_dF(int n) {
  check_n(n);
  return asymptotic_constants().d_F * std::pow(rho_x(), -n) * std::cos(theta_x() * (n - 1.5)) *
         std::pow(n, -2.5);
}

double asympt_dG(int n) {
  check_n(n);
  return asymptotic_constants().d_G * std::pow(rho_x(), -n) * std::sin(theta_x() * (n + 0.25)) *
         std::pow(n, -0.75);
}

AsymptFamily parse_asympt_family(std::string_view name) {
  if (name == "c") return AsymptFamily::c;
  if (name == "d") return AsymptFamily::d;
  if (name == "cJ") return AsymptFamily::cJ;
  if (name == "dJ") return AsymptFamily::dJ;
  if (name == "dF") return AsymptFamily::dF;
  if (name == "dG") return AsymptFamily::dG;
  throw DomainError("unknown asymptotic family '" + std::string(name) + "' (expected c, d, cJ, dJ, dF, dG)");
}

std::string_view to_string(AsymptFamily f) {
  switch (f) {
    case AsymptFamily::c: return "c";
    case AsymptFamily::d: return "d";
    case AsymptFamily::cJ: return "cJ";
    case AsymptFamily::dJ: return "dJ";
    case AsymptFamily::dF: return "dF";
    case AsymptFamily::dG: return "dG";
  }
  return "?";
}

double asympt(AsymptFamily f, int n) {
  switch (f) {
    case AsymptFamily::c: return asympt_c(n);
    case AsymptFamily::d: return asympt_d(n);
    case AsymptFamily::cJ: return asympt_cJ(n);
    case AsymptFamily::dJ: return asympt_dJ(n);
    case AsymptFamily::dF: return asympt_dF(n);
    case AsymptFamily::dG: return asympt_dG(n);
  }
  throw DomainError("unknown asymptotic family");
}

double trig_factor(AsymptFamily f, int n) {
  switch (f) {
    case AsymptFamily::c:
    case AsymptFamily::cJ: return 1.0;
    case AsymptFamily::d: return std::cos(theta_x() * (n - 0.5));
    case AsymptFamily::dJ:
    case AsymptFamily::dF: return std::cos(theta_x() * (n - 1.5));
    case AsymptFamily::dG: return std::sin(theta_x() * (n + 0.25));
  }
  throw DomainError("unknown asymptotic family");
}

double root_test_limit(AsymptFamily f) {
  switch (f) {
    case AsymptFamily::c: return 1 / (1 - first_critical_point().omega);
    case AsymptFamily::cJ: return 1.0;
    default: return 1 / rho_x();
  }
}

RationalSeries family_series(AsymptFamily f, int order) {
  switch (f) {
    case AsymptFamily::c: return coeffs_h(order);
    case AsymptFamily::d: return coeffs_h_log(order);
    case AsymptFamily::cJ: return coeffs_JBS(order, JbsVariable::omega);
    case AsymptFamily::dJ: return coeffs_JBS(order, JbsVariable::log);
    case AsymptFamily::dF: return coeffs_F(order);
    case AsymptFamily::dG: return coeffs_G(order);
  }
  throw DomainError("unknown asymptotic family");
}

double family_coefficient(AsymptFamily f, const RationalSeries& s, int n) {
  const double v = s[n].to_double();
  switch (f) {
    case AsymptFamily::dF: return sign_pow(n) * v;
    case AsymptFamily::dG: return std::sqrt(3.0) * sign_pow(n) * v;
    default: return v;
  }
}

std::vector<DiagnosticRow> diagnostic_epsilon(AsymptFamily f, const RationalSeries& s) {
  std::vector<DiagnosticRow> rows;
  rows.reserve(static_cast<std::size_t>(s.order()));
  for (int n = 1; n <= s.order(); ++n) {
    const double exact = family_coefficient(f, s, n);
    const double a = asympt(f, n);
    rows.push_back({n, exact, a, exact / a - 1, trig_factor(f, n)});
  }
  return rows;
}

std::vector<DiagnosticRow> diagnostic_epsilon(AsymptFamily f, int order) {
  return diagnostic_epsilon(f, family_series(f, order));
}

double root_test_median(const std::vector<DiagnosticRow>& rows, int lo, int hi) {
  std::vector<double> v;
  for (const auto& r : rows)
    if (r.n >= lo && r.n <= hi) v.push_back(std::pow(std::abs(r.coeff_exact), 1.0 / r.n));
  if (v.empty()) throw DomainError("root_test_median: no coefficients in range");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double max_abs_epsilon(const std::vector<DiagnosticRow>& rows, int lo, int hi, double min_trig) {
  double worst = 0;
  bool any = false;
  for (const auto& r : rows) {
    if (r.n < lo || r.n > hi || std::abs(r.trig_factor) <= min_trig) continue;
    worst = std::max(worst, std::abs(r.epsilon));
    any = true;
  }
  if (!any) throw DomainError("max_abs_epsilon: no rows pass the trig-factor filter");
  return worst;
}

void write_diagnostic_csv(std::ostream& os, const std::vector<DiagnosticRow>& rows, int precision) {
  os << "n,coeff_exact,coeff_asympt,epsilon,trig_factor\n";
  for (const auto& r : rows)
    fmt::print(os, "{},{:.{}g},{:.{}g},{:.{}g},{:.{}g}\n", r.n, r.coeff_exact, precision, r.coeff_asympt,
               precision, r.epsilon, precision, r.trig_factor, precision);
}

}  // namespace hwkit
