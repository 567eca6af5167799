#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwkit/approx_eval.hpp"
#include "hwkit/quadrature.hpp"

namespace hwkit {

// Piecewise F and G used throughout the pricing path.
struct Evaluators {
  PiecewiseEvaluator F;
  PiecewiseEvaluator G;
};

// Order 6 on the default ρ domain.
const Evaluators& default_evaluators();
Evaluators make_evaluators(int order, LogDomain domain);

// Window of a log-concave-ish integrand: hill-climb from x0 in steps of
// `step`, then extend both ways until log f drops `drop` below the peak.
struct LogWindow {
  double lo;
  double hi;
  double peak;
  double log_peak;
};

LogWindow scan_log_window(const std::function<double(double)>& logf, double x0, double step, double lo_limit,
                          double hi_limit, double drop = 60);

// log ∫ exp(logf) over the scanned window; −inf for an identically zero
// integrand. The window is split at `breaks` (points where logf is only
// piecewise smooth).
double log_integral(const std::function<double(double)>& logf, double x0, double step, double lo_limit,
                    double hi_limit, const QuadratureSpec& quad, const std::vector<double>& breaks = {});

// ---- Bessel K ----

double log_bessel_k(double nu, double x, const QuadratureSpec& quad = {});
double bessel_k(double nu, double x, const QuadratureSpec& quad = {});

// ---- rate functions ----

// I(a,v) = (1 + v²)/(2a) + F(v/a) − π²/2
double rate_I(double a, double v, const PiecewiseEvaluator& F);
double rate_I(double a, double v);  // closed-form F

struct RateJResult {
  double value;
  double v_star;
};

// inf over v of I(a, v) by Brent minimisation in log v.
RateJResult rate_J_min(double a);
double rate_J(double a);

// Leading joint density of (A_t/t, V_t) with respect to da dv.
double joint_density_leading(double a, double v, double t, double mu, const Evaluators& ev);

// ---- Hartman–Watson ----

inline constexpr double kThetaMinT = 0.1;

// Direct quadrature of the oscillatory integral. Refuses t < min_t and throws
// ConvergenceError when node doubling does not settle.
double theta_hw(double r, double t, const QuadratureSpec& quad = {}, double min_t = kThetaMinT);

struct ThetaStability {
  double coarse;
  double fine;
  double rel_change;
  bool stable;
  int panels;  // panel count of the coarse pass
};

// One node-doubling step with no refusal, for detecting the small-t breakdown.
ThetaStability theta_hw_stability(double r, double t, const QuadratureSpec& quad = {});

// Leading small-t form at r = ρ/t.
double theta_asympt(double rho, double t, const Evaluators& ev = default_evaluators());

// ---- marginal density and prices ----

struct ReducedParams {
  double tau;
  double mu;
  double k;
};

struct Scenario {
  double S0;
  double r;
  double sigma;
  double T;
  double K;

  void validate() const;
  ReducedParams reduced() const;
};

enum class Payoff { unit, mean, call, put };

double norm_factor(double tau, double mu, const Evaluators& ev = default_evaluators(), const QuadratureSpec& quad = {});

// Un-normalised expectation of the payoff under the leading density (k only
// used by call/put). The unit payoff reproduces norm_factor.
double raw_expectation(Payoff payoff, double k, double tau, double mu, const Evaluators& ev = default_evaluators(),
                       const QuadratureSpec& quad = {});

// Normalised density with respect to da/a. Pass norm ≤ 0 to compute it.
double f0_density(double a, double t, double mu, const Evaluators& ev = default_evaluators(),
                  const QuadratureSpec& quad = {}, double norm = 0);

double price_call_reduced(double k, double tau, double mu, const Evaluators& ev = default_evaluators(),
                          const QuadratureSpec& quad = {});
double price_put_reduced(double k, double tau, double mu, const Evaluators& ev = default_evaluators(),
                         const QuadratureSpec& quad = {});

struct PriceResult {
  ReducedParams params;
  double c_reduced;  // normalised by n(τ)
  double c_raw;
  double norm;
  double price;
  std::optional<double> put_price;
};

PriceResult price_scenario(const Scenario& s, const Evaluators& ev = default_evaluators(),
                           const QuadratureSpec& quad = {}, bool with_put = false);

// Runs scenarios on up to `threads` workers (0: hardware concurrency).
std::vector<PriceResult> price_scenarios(const std::vector<Scenario>& s, const Evaluators& ev,
                                         const QuadratureSpec& quad, unsigned threads, bool with_put = false);

// Seven benchmark inputs, K = 2 throughout.
const std::vector<Scenario>& table3_scenarios();

// JSON array of {S0, r, sigma, T, K}.
std::vector<Scenario> parse_scenarios(std::string_view json_text);
std::string scenarios_to_json(const std::vector<Scenario>& s);

void write_prices_csv(std::ostream& os, const std::vector<PriceResult>& rows, int precision);
void write_prices_json(std::ostream& os, const std::vector<PriceResult>& rows, int precision);

}  // namespace hwkit
