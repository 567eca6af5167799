#include "hwkit/density_pricing.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"
#include "json.hpp"

namespace hwkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi2 = 0.5 * kPi * kPi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxScanSteps = 20000;

// F(e^z) − π²/2 + e^z: the outer exponent once the inner saddle value
// e^{−e^z/τ} has been pulled out. Vanishes quadratically at z = 0.
double outer_exponent(double z, const Evaluators& ev) {
  const double rho = std::exp(z);
  return ev.F(rho) - kHalfPi2 + rho;
}

// log ∫ e^{μu} payoff(u) e^{−2e^z sinh²((u+z)/2)/τ} du
double log_inner(Payoff payoff, double z, double log_k, double tau, double mu, const QuadratureSpec& quad) {
  const double ez = std::exp(z);
  const double width = std::sqrt(tau / ez);
  const double step = 0.5 * width;
  const double centre = -z;
  double lo = centre - 40, hi = centre + 40;
  double start = centre;
  auto gauss = [=](double u) {
    const double s = std::sinh(0.5 * (u + z));
    return mu * u - 2 * ez * s * s / tau;
  };
  std::function<double(double)> logf;
  switch (payoff) {
    case Payoff::unit: logf = gauss; break;
    case Payoff::mean:
      logf = [=](double u) { return gauss(u) + u; };
      break;
    case Payoff::call:
      if (log_k >= hi) return kNegInf;
      lo = std::max(lo, log_k);
      start = std::max(centre, log_k + 0.25 * step);
      logf = [=](double u) {
        const double d = std::expm1(u - log_k);
        return d > 0 ? gauss(u) + log_k + std::log(d) : kNegInf;
      };
      break;
    case Payoff::put:
      if (log_k <= lo) return kNegInf;
      hi = std::min(hi, log_k);
      start = std::min(centre, log_k - 0.25 * step);
      logf = [=](double u) {
        const double d = -std::expm1(u - log_k);
        return d > 0 ? gauss(u) + log_k + std::log(d) : kNegInf;
      };
      break;
  }
  return log_integral(logf, start, step, lo, hi, quad);
}

// log K_ν(x) + x
double log_bessel_k_scaled(double nu, double x, const QuadratureSpec& quad) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("bessel_k: x must be positive and finite");
  if (!std::isfinite(nu)) throw DomainError("bessel_k: order must be finite");
  const double n = std::abs(nu);
  auto logf = [=](double u) {
    const double s = std::sinh(0.5 * u);
    return -2 * x * s * s + n * u + std::log1p(std::exp(-2 * n * u)) - std::numbers::ln2;
  };
  const double peak = std::asinh(n / x);
  const double step = std::min(0.5, 0.5 / std::sqrt(x * std::cosh(peak)));
  return log_integral(logf, peak, step, 0, 60 + 2 * peak, quad);
}

// Series/closed-form switch points of the evaluators, in z = log ρ.
std::vector<double> switch_points(const Evaluators& ev) {
  return {ev.F.domain().lo, ev.F.domain().hi, ev.G.domain().lo, ev.G.domain().hi};
}

double log_prefactor(double tau, double mu) { return -std::log(2 * kPi * tau) - 0.5 * mu * mu * tau; }

void check_tau(double tau, double mu) {
  if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("tau must be positive and finite");
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
}

// Gauss envelope of the Hartman–Watson integrand, −ξ²/2t − r(cosh ξ − 1) + log sinh ξ.
double theta_log_envelope(double xi, double r, double t) {
  return -xi * xi / (2 * t) - r * (std::cosh(xi) - 1) + std::log(std::sinh(xi));
}

struct ThetaSetup {
  std::function<double(double)> f;
  double upper;
  int panels;
  double log_scale;
};

ThetaSetup theta_setup(double r, double t) {
  if (!(r > 0 && t > 0) || !std::isfinite(r) || !std::isfinite(t))
    throw DomainError("theta_hw: r and t must be positive and finite");
  const double step = 0.25 * t;
  double best = kNegInf, xi = step;
  int steps = 0;
  for (;; xi += step) {
    const double v = theta_log_envelope(xi, r, t);
    best = std::max(best, v);
    if (v < best - 80) break;
    if (++steps > kMaxScanSteps) throw ConvergenceError("theta_hw: integrand does not decay", xi, v);
  }
  ThetaSetup s;
  s.f = [=](double x) {
    return std::exp(-x * x / (2 * t) - r * (std::cosh(x) - 1)) * std::sinh(x) * std::sin(kPi * x / t);
  };
  s.upper = xi;
  // two panels per half period of sin(πξ/t)
  s.panels = std::max(1, static_cast<int>(std::ceil(xi / (0.5 * t))));
  s.log_scale = std::log(r) - 0.5 * std::log(2 * kPi * kPi * kPi * t) + kHalfPi2 / t - r;
  return s;
}

double theta_panel_sum(const ThetaSetup& s, int panels, QuadScheme scheme) {
  if (scheme == QuadScheme::newton_cotes) return composite_boole(s.f, 0, s.upper, 4 * panels);
  return composite_gauss_legendre(s.f, 0, s.upper, panels);
}

}  // namespace

const Evaluators& default_evaluators() {
  static const Evaluators ev{make_evaluator(Target::F, kDefaultOrder), make_evaluator(Target::G, kDefaultOrder)};
  return ev;
}

Evaluators make_evaluators(int order, LogDomain domain) {
  return {make_evaluator(Target::F, order, domain), make_evaluator(Target::G, order, domain)};
}

LogWindow scan_log_window(const std::function<double(double)>& logf, double x0, double step, double lo_limit,
                          double hi_limit, double drop) {
  if (!(step > 0)) throw DomainError("scan_log_window: step must be positive");
  if (!(lo_limit <= x0 && x0 <= hi_limit)) throw DomainError("scan_log_window: start outside the limits");
  double x = x0, v = logf(x0);
  int steps = 0;
  // climb to the peak
  for (int dir : {1, -1}) {
    for (;;) {
      const double nx = std::clamp(x + dir * step, lo_limit, hi_limit);
      if (nx == x) break;
      const double nv = logf(nx);
      if (!(nv > v)) break;
      x = nx;
      v = nv;
      if (++steps > kMaxScanSteps) throw ConvergenceError("scan_log_window: no peak found", x, v);
    }
  }
  LogWindow w{x, x, x, v};
  if (v == kNegInf) return w;
  for (int dir : {1, -1}) {
    double e = x;
    for (;;) {
      const double ne = std::clamp(e + dir * step, lo_limit, hi_limit);
      if (ne == e) break;
      e = ne;
      const double ve = logf(e);
      if (ve > w.log_peak) {  // not unimodal; keep the larger peak
        w.log_peak = ve;
        w.peak = e;
      }
      if (ve < w.log_peak - drop) break;
      if (++steps > kMaxScanSteps) throw ConvergenceError("scan_log_window: integrand does not decay", e, ve);
    }
    (dir > 0 ? w.hi : w.lo) = e;
  }
  return w;
}

double log_integral(const std::function<double(double)>& logf, double x0, double step, double lo_limit,
                    double hi_limit, const QuadratureSpec& quad, const std::vector<double>& breaks) {
  const LogWindow w = scan_log_window(logf, x0, step, lo_limit, hi_limit);
  if (w.log_peak == kNegInf || w.lo == w.hi) return kNegInf;
  const double shift = w.log_peak;
  std::vector<double> cuts{w.lo};
  for (double b : breaks)
    if (b > w.lo && b < w.hi) cuts.push_back(b);
  cuts.push_back(w.hi);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    sum += integrate([&](double x) { return std::exp(logf(x) - shift); }, cuts[i], cuts[i + 1], quad).value;
  if (!(sum > 0)) return kNegInf;
  return shift + std::log(sum);
}

double log_bessel_k(double nu, double x, const QuadratureSpec& quad) {
  return log_bessel_k_scaled(nu, x, quad) - x;
}

double bessel_k(double nu, double x, const QuadratureSpec& quad) { return std::exp(log_bessel_k(nu, x, quad)); }

double rate_I(double a, double v, const PiecewiseEvaluator& F) {
  if (!(a > 0 && v > 0)) throw DomainError("rate_I: a and v must be positive");
  return (1 + v * v) / (2 * a) + F(v / a) - kHalfPi2;
}

double rate_I(double a, double v) {
  if (!(a > 0 && v > 0)) throw DomainError("rate_I: a and v must be positive");
  return (1 + v * v) / (2 * a) + F_exact(v / a) - kHalfPi2;
}

RateJResult rate_J_min(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw DomainError("rate_J: a must be positive and finite");
  const double la = std::log(a);
  const auto [y, val] = boost::math::tools::brent_find_minima(
      [a](double y) { return rate_I(a, std::exp(y)); }, la - 8, la + 8, std::numeric_limits<double>::digits);
  if (std::abs(y - la) > 7.99) throw ConvergenceError("rate_J: minimiser on the bracket edge", y, val);
  return {val, std::exp(y)};
}

double rate_J(double a) { return rate_J_min(a).value; }

double joint_density_leading(double a, double v, double t, double mu, const Evaluators& ev) {
  if (!(a > 0 && v > 0 && t > 0)) throw DomainError("joint_density_leading: a, v, t must be positive");
  const double lg = mu * std::log(v) - 0.5 * mu * mu * t - rate_I(a, v, ev.F) / t - std::log(2 * kPi * t * a * v);
  return ev.G(v / a) * std::exp(lg);
}

double theta_hw(double r, double t, const QuadratureSpec& quad, double min_t) {
  quad.validate();
  if (t < min_t)
    throw DomainError(fmt::format("theta_hw: t = {} is below the stable threshold {}; use theta_asympt", t, min_t));
  const ThetaSetup s = theta_setup(r, t);
  int panels = s.panels;
  double prev = theta_panel_sum(s, panels, quad.scheme);
  for (int level = 0; level < quad.levels; ++level) {
    panels *= 2;
    const double cur = theta_panel_sum(s, panels, quad.scheme);
    if (std::abs(cur - prev) <= quad.target_rel_err * std::abs(cur)) return std::exp(s.log_scale) * cur;
    prev = cur;
  }
  throw ConvergenceError(fmt::format("theta_hw: node doubling did not settle at t = {}; use theta_asympt", t),
                         std::exp(s.log_scale) * prev, 0);
}

ThetaStability theta_hw_stability(double r, double t, const QuadratureSpec& quad) {
  quad.validate();
  const ThetaSetup s = theta_setup(r, t);
  const double scale = std::exp(s.log_scale);
  const double coarse = scale * theta_panel_sum(s, s.panels, quad.scheme);
  const double fine = scale * theta_panel_sum(s, 2 * s.panels, quad.scheme);
  const double rel = std::abs(fine - coarse) / std::abs(fine);
  return {coarse, fine, rel, rel <= quad.target_rel_err && fine > 0, s.panels};
}

double theta_asympt(double rho, double t, const Evaluators& ev) {
  if (!(rho > 0 && t > 0)) throw DomainError("theta_asympt: rho and t must be positive");
  return ev.G(rho) / (2 * kPi * t) * std::exp(-(ev.F(rho) - kHalfPi2) / t);
}

void Scenario::validate() const {
  if (!(S0 > 0 && sigma > 0 && T > 0 && K > 0))
    throw DomainError("scenario: S0, sigma, T and K must be positive");
  if (!std::isfinite(r) || !std::isfinite(S0) || !std::isfinite(sigma) || !std::isfinite(T) || !std::isfinite(K))
    throw DomainError("scenario: inputs must be finite");
}

ReducedParams Scenario::reduced() const {
  validate();
  return {sigma * sigma * T / 4, 2 * r / (sigma * sigma) - 1, K / S0};
}

double norm_factor(double tau, double mu, const Evaluators& ev, const QuadratureSpec& quad) {
  check_tau(tau, mu);
  auto logf = [&](double z) {
    const double x = std::exp(z) / tau;
    return std::log(ev.G(std::exp(z))) - outer_exponent(z, ev) / tau + log_bessel_k_scaled(mu, x, quad);
  };
  const double li = log_integral(logf, 0, 0.25 * std::sqrt(tau), -15, 15, quad, switch_points(ev));
  return std::exp(std::log(2.0) + log_prefactor(tau, mu) + li);
}

double raw_expectation(Payoff payoff, double k, double tau, double mu, const Evaluators& ev,
                       const QuadratureSpec& quad) {
  check_tau(tau, mu);
  if ((payoff == Payoff::call || payoff == Payoff::put) && !(k > 0)) throw DomainError("strike k must be positive");
  const double log_k = (payoff == Payoff::call || payoff == Payoff::put) ? std::log(k) : 0;
  auto logf = [&](double z) {
    const double li = log_inner(payoff, z, log_k, tau, mu, quad);
    if (li == kNegInf) return kNegInf;
    return mu * z + std::log(ev.G(std::exp(z))) - outer_exponent(z, ev) / tau + li;
  };
  const double li = log_integral(logf, 0, 0.25 * std::sqrt(tau), -15, 15, quad, switch_points(ev));
  return std::exp(log_prefactor(tau, mu) + li);
}

double f0_density(double a, double t, double mu, const Evaluators& ev, const QuadratureSpec& quad, double norm) {
  if (!(a > 0)) throw DomainError("f0_density: a must be positive");
  check_tau(t, mu);
  if (!(norm > 0)) norm = norm_factor(t, mu, ev, quad);
  const double u = std::log(a);
  auto logf = [&](double z) {
    const double s = std::sinh(0.5 * (u + z));
    return mu * (u + z) + std::log(ev.G(std::exp(z))) - (outer_exponent(z, ev) + 2 * std::exp(z) * s * s) / t;
  };
  const double li =
      log_integral(logf, std::clamp(-u, -15.0, 15.0), 0.25 * std::sqrt(t), -15, 15, quad, switch_points(ev));
  return std::exp(log_prefactor(t, mu) + li) / norm;
}

double price_call_reduced(double k, double tau, double mu, const Evaluators& ev, const QuadratureSpec& quad) {
  return raw_expectation(Payoff::call, k, tau, mu, ev, quad) / norm_factor(tau, mu, ev, quad);
}

double price_put_reduced(double k, double tau, double mu, const Evaluators& ev, const QuadratureSpec& quad) {
  return raw_expectation(Payoff::put, k, tau, mu, ev, quad) / norm_factor(tau, mu, ev, quad);
}

PriceResult price_scenario(const Scenario& s, const Evaluators& ev, const QuadratureSpec& quad, bool with_put) {
  const ReducedParams p = s.reduced();
  PriceResult out;
  out.params = p;
  out.norm = norm_factor(p.tau, p.mu, ev, quad);
  out.c_raw = raw_expectation(Payoff::call, p.k, p.tau, p.mu, ev, quad);
  out.c_reduced = out.c_raw / out.norm;
  const double disc = std::exp(-s.r * s.T) * s.S0;
  out.price = disc * out.c_reduced;
  if (with_put) out.put_price = disc * raw_expectation(Payoff::put, p.k, p.tau, p.mu, ev, quad) / out.norm;
  return out;
}

std::vector<PriceResult> price_scenarios(const std::vector<Scenario>& s, const Evaluators& ev,
                                         const QuadratureSpec& quad, unsigned threads, bool with_put) {
  std::vector<PriceResult> out(s.size());
  std::vector<std::exception_ptr> errors(s.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, s.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < s.size();) {
      try {
        out[i] = price_scenario(s[i], ev, quad, with_put);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

const std::vector<Scenario>& table3_scenarios() {
  static const std::vector<Scenario> s{
      {2.0, 0.02, 0.10, 1, 2}, {2.0, 0.18, 0.30, 1, 2}, {2.0, 0.0125, 0.25, 2, 2}, {1.9, 0.05, 0.50, 1, 2},
      {2.0, 0.05, 0.50, 1, 2}, {2.1, 0.05, 0.50, 1, 2}, {2.0, 0.05, 0.50, 2, 2},
  };
  return s;
}

std::vector<Scenario> parse_scenarios(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenarios: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("scenarios: expected a JSON array");
  std::vector<Scenario> out;
  for (const auto& e : j) {
    if (!e.is_object()) throw ParseError("scenarios: each entry must be an object");
    auto num = [&](const char* key) {
      if (!e.contains(key) || !e.at(key).is_number())
        throw ParseError(fmt::format("scenarios: entry {} needs a numeric '{}'", out.size() + 1, key));
      return e.at(key).get<double>();
    };
    Scenario s{num("S0"), num("r"), num("sigma"), num("T"), num("K")};
    s.validate();
    out.push_back(s);
  }
  return out;
}

std::string scenarios_to_json(const std::vector<Scenario>& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : s) j.push_back({{"S0", x.S0}, {"r", x.r}, {"sigma", x.sigma}, {"T", x.T}, {"K", x.K}});
  return j.dump(2);
}

void write_prices_csv(std::ostream& os, const std::vector<PriceResult>& rows, int precision) {
  const bool puts = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.put_price.has_value(); });
  fmt::print(os, "scenario,mu,tau,c_A,n_tau,C_A,c_A_normalized{}\n", puts ? ",P_A" : "");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    fmt::print(os, "{},{:.{}g},{:.{}g},{:.{}g},{:.{}g},{:.{}g},{:.{}g}", i + 1, r.params.mu, precision, r.params.tau,
               precision, r.c_raw, precision, r.norm, precision, r.price, precision, r.c_reduced, precision);
    if (puts) fmt::print(os, ",{:.{}g}", r.put_price.value_or(std::nan("")), precision);
    os << '\n';
  }
}

void write_prices_json(std::ostream& os, const std::vector<PriceResult>& rows, int precision) {
  auto num = [precision](double v) { return fmt::format("{:.{}g}", v, precision); };
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    fmt::print(os,
               "  {{\"scenario\": {}, \"mu\": {}, \"tau\": {}, \"k\": {}, \"c_A\": {}, \"c_A_normalized\": {}, "
               "\"n_tau\": {}, \"C_A\": {}",
               i + 1, num(r.params.mu), num(r.params.tau), num(r.params.k), num(r.c_raw), num(r.c_reduced),
               num(r.norm), num(r.price));
    if (r.put_price) fmt::print(os, ", \"P_A\": {}", num(*r.put_price));
    os << (i + 1 < rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

}  // namespace hwkit
