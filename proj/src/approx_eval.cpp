#include "hwkit/approx_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hwkit/coefficients.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/exact_eval.hpp"
#include "json.hpp"

namespace hwkit {

namespace {

double radius() {
  static const double r = critical_points(1).rho_x;
  return r;
}

RationalSeries target_series(Target t, int order) {
  switch (t) {
    case Target::F: return coeffs_F(order);
    case Target::G: return coeffs_G(order);
    case Target::JBS: return coeffs_JBS(order, JbsVariable::log);
  }
  throw DomainError("unknown target");
}

}  // namespace

Target parse_target(std::string_view name) {
  if (name == "F") return Target::F;
  if (name == "G") return Target::G;
  if (name == "JBS" || name == "jbs" || name == "J") return Target::JBS;
  throw DomainError("unknown target '" + std::string(name) + "' (expected F, G, JBS)");
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::F: return "F";
    case Target::G: return "G";
    case Target::JBS: return "JBS";
  }
  return "?";
}

LogDomain LogDomain::from_rho(double rho_lo, double rho_hi) {
  if (!(rho_lo > 0 && rho_hi > 0)) throw DomainError("domain endpoints must be positive");
  return {std::log(rho_lo), std::log(rho_hi)};
}

double LogDomain::rho_lo() const { return std::exp(lo); }
double LogDomain::rho_hi() const { return std::exp(hi); }

double exact_value(Target target, double arg, const RootSolverConfig& cfg) {
  switch (target) {
    case Target::F: return F_exact(arg, cfg);
    case Target::G: return G_exact(arg, cfg);
    case Target::JBS: return JBS_exact(arg, cfg);
  }
  throw DomainError("unknown target");
}

PiecewiseEvaluator::PiecewiseEvaluator(Target target, const RationalSeries& series, LogDomain domain,
                                       RootSolverConfig cfg)
    : target_(target), domain_(domain), cfg_(cfg) {
  cfg_.validate();
  if (!(domain.lo <= 0 && domain.hi >= 0))
    throw DomainError("evaluator domain must contain the expansion point (log value 0)");
  const double r = radius();
  if (!(std::abs(domain.lo) < r && std::abs(domain.hi) < r))
    throw DomainError("evaluator domain [" + std::to_string(domain.lo) + ", " + std::to_string(domain.hi) +
                      "] (log units) must lie strictly inside the convergence radius " + std::to_string(r));
  switch (target) {
    case Target::F:
      if (series.offset() != SeriesOffset::half_pi_squared || series.prefactor_sq() != 1)
        throw SeriesError("F evaluator needs a series with the pi^2/2 offset and no surd");
      offset_ = 0.5 * std::numbers::pi * std::numbers::pi;
      break;
    case Target::G:
      if (series.offset() != SeriesOffset::none || series.prefactor_sq() != 3)
        throw SeriesError("G evaluator needs a series with prefactor_sq 3");
      scale_ = std::sqrt(3.0);
      break;
    case Target::JBS:
      if (!series.is_plain()) throw SeriesError("J_BS evaluator needs a plain series");
      break;
  }
  coeffs_ = series.to_doubles();
}

double PiecewiseEvaluator::eval_series(double s) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return offset_ + scale_ * acc;
}

bool PiecewiseEvaluator::uses_series(double arg) const {
  const double s = std::log(arg);
  return s >= domain_.lo && s <= domain_.hi;
}

double PiecewiseEvaluator::eval(double arg) const {
  if (!(arg > 0) || !std::isfinite(arg))
    throw DomainError("evaluator argument must be positive and finite, got " + std::to_string(arg));
  const double s = std::log(arg);
  if (s >= domain_.lo && s <= domain_.hi) return eval_series(s);
  return exact_value(target_, arg, cfg_);
}

PiecewiseEvaluator make_evaluator(Target target, int order, LogDomain domain, RootSolverConfig cfg) {
  const int lo = target == Target::JBS ? 2 : 1;
  if (order < lo || order > kMaxSeriesOrder)
    throw DomainError("evaluator order must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(kMaxSeriesOrder) + "]");
  return PiecewiseEvaluator(target, target_series(target, order), domain, cfg);
}

PiecewiseEvaluator make_evaluator(Target target, int order) {
  return make_evaluator(target, order, LogDomain::from_rho(kDefaultRhoLo, kDefaultRhoHi));
}

PiecewiseEvaluator make_evaluator(const EvaluatorConfig& cfg) {
  return make_evaluator(cfg.target, cfg.order, cfg.domain);
}

EvaluatorConfig parse_evaluator_config(std::string_view json_text) {
  EvaluatorConfig out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("evaluator config: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("evaluator config must be a JSON object");
    if (j.contains("target")) out.target = parse_target(j.at("target").get<std::string>());
    if (j.contains("order")) out.order = j.at("order").get<int>();
    if (j.contains("domain")) {
      const auto& d = j.at("domain");
      if (!d.is_array() || d.size() != 2) throw ParseError("evaluator config: domain must be [lo, hi]");
      out.domain = LogDomain::from_rho(d[0].get<double>(), d[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("evaluator config: ") + e.what());
  }
  return out;
}

std::vector<TruncationErrorRow> truncation_error_profile(Target target, const std::vector<int>& orders,
                                                         const std::vector<double>& grid) {
  if (orders.empty()) return {};
  const int top = *std::max_element(orders.begin(), orders.end());
  const RationalSeries full = target_series(target, top);
  std::vector<double> exact;
  exact.reserve(grid.size());
  for (double x : grid) exact.push_back(exact_value(target, x));

  const double r = radius();
  for (double x : grid)
    if (!(std::abs(std::log(x)) < r)) throw DomainError("truncation_error_profile: grid point outside the series domain");

  std::vector<TruncationErrorRow> rows;
  for (int n : orders) {
    // only eval_series is called, so the domain is never consulted
    const PiecewiseEvaluator e(target, full.truncated(n), LogDomain{0, 0});
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(e.eval_series(std::log(grid[i])) - exact[i]));
    rows.push_back({n, worst});
  }
  return rows;
}

}  // namespace hwkit
