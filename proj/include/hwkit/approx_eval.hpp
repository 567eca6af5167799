#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hwkit/rational_series.hpp"
#include "hwkit/roots.hpp"

namespace hwkit {

enum class Target { F, G, JBS };

Target parse_target(std::string_view name);
std::string_view to_string(Target t);

// Interval of the series variable s = log ρ (or log x for J_BS) on which
// the truncated series is used.
struct LogDomain {
  double lo;
  double hi;

  static LogDomain from_rho(double rho_lo, double rho_hi);
  double rho_lo() const;
  double rho_hi() const;
};

// Defaults from the pricing setup: order 6 on ρ ∈ [0.04, 32.88].
inline constexpr int kDefaultOrder = 6;
inline constexpr double kDefaultRhoLo = 0.04;
inline constexpr double kDefaultRhoHi = 32.88;

class PiecewiseEvaluator {
 public:
  // Builds from exact coefficients; the series must match the target's
  // offset/prefactor convention (π²/2 offset for F, √3 for G).
  PiecewiseEvaluator(Target target, const RationalSeries& series, LogDomain domain,
                     RootSolverConfig cfg = {});

  double operator()(double arg) const { return eval(arg); }
  double eval(double arg) const;
  // Series part only, at s = log(arg), regardless of the domain.
  double eval_series(double s) const;
  bool uses_series(double arg) const;

  Target target() const { return target_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const LogDomain& domain() const { return domain_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  Target target_;
  std::vector<double> coeffs_;
  double offset_ = 0;
  double scale_ = 1;
  LogDomain domain_;
  RootSolverConfig cfg_;
};

// Exact coefficients for the target, converted once.
PiecewiseEvaluator make_evaluator(Target target, int order, LogDomain domain, RootSolverConfig cfg = {});
PiecewiseEvaluator make_evaluator(Target target, int order = kDefaultOrder);

struct EvaluatorConfig {
  Target target = Target::F;
  int order = kDefaultOrder;
  LogDomain domain = LogDomain::from_rho(kDefaultRhoLo, kDefaultRhoHi);
};

// JSON block {"target": "F", "order": 6, "domain": [0.04, 32.88]} with the
// domain in ρ (or x) units. Missing keys keep their defaults.
EvaluatorConfig parse_evaluator_config(std::string_view json_text);
PiecewiseEvaluator make_evaluator(const EvaluatorConfig& cfg);

struct TruncationErrorRow {
  int order;
  double max_abs_error;
};

// max over the grid of |series_N − exact| for each requested N.
std::vector<TruncationErrorRow> truncation_error_profile(Target target, const std::vector<int>& orders,
                                                         const std::vector<double>& grid);

// Closed-form value of the target, for comparisons.
double exact_value(Target target, double arg, const RootSolverConfig& cfg = {});

}  // namespace hwkit
