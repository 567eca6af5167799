#include "hwkit/quadrature.hpp"

#include <fmt/format.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "hwkit/errors.hpp"

namespace hwkit {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::tanh_sinh;

// integrate() is non-const in this Boost version, so each thread keeps its own.
tanh_sinh<double>& tanh_sinh_integrator(int levels) {
  thread_local std::array<std::unique_ptr<tanh_sinh<double>>, 21> by_level;
  const int i = std::clamp(levels, 4, 20);
  if (!by_level[i]) by_level[i] = std::make_unique<tanh_sinh<double>>(i);
  return *by_level[i];
}

template <class Rule>
QuadResult doubling(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec,
                    Rule rule, const char* name) {
  int panels = 1;
  double prev = rule(f, a, b, panels);
  double prev_abs = rule([&f](double x) { return std::abs(f(x)); }, a, b, panels);
  for (int level = 1; level <= spec.levels; ++level) {
    panels *= 2;
    const double cur = rule(f, a, b, panels);
    const double l1 = rule([&f](double x) { return std::abs(f(x)); }, a, b, panels);
    const double err = std::abs(cur - prev);
    if (err <= spec.target_rel_err * std::max(l1, prev_abs) || l1 == 0) return {cur, err, l1};
    prev = cur;
    prev_abs = l1;
  }
  throw ConvergenceError(std::string(name) + ": no convergence after " + std::to_string(spec.levels) +
                             " panel doublings",
                         prev, std::abs(prev));
}

}  // namespace

QuadScheme parse_quad_scheme(std::string_view name) {
  if (name == "tanh-sinh" || name == "tanh_sinh") return QuadScheme::tanh_sinh;
  if (name == "gauss-legendre" || name == "gauss-legendre-composite" || name == "gauss_legendre")
    return QuadScheme::gauss_legendre;
  if (name == "newton-cotes" || name == "newton-cotes-composite" || name == "newton_cotes")
    return QuadScheme::newton_cotes;
  throw DomainError("unknown quadrature scheme '" + std::string(name) +
                    "' (expected tanh-sinh, gauss-legendre, newton-cotes)");
}

std::string_view to_string(QuadScheme s) {
  switch (s) {
    case QuadScheme::tanh_sinh: return "tanh-sinh";
    case QuadScheme::gauss_legendre: return "gauss-legendre";
    case QuadScheme::newton_cotes: return "newton-cotes";
  }
  return "?";
}

void QuadratureSpec::validate() const {
  if (!(target_rel_err > 0)) throw DomainError("QuadratureSpec: target_rel_err must be positive");
  if (levels < 1 || levels > 30) throw DomainError("QuadratureSpec: levels must lie in [1, 30]");
}

double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    sum += gauss<double, 20>::integrate(f, lo, i + 1 == panels ? b : lo + h);
  }
  return sum;
}

double composite_boole(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / (4.0 * panels);
  double sum = 7 * (f(a) + f(b));
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + 4 * i * h;
    sum += 32 * f(x0 + h) + 12 * f(x0 + 2 * h) + 32 * f(x0 + 3 * h);
    if (i + 1 < panels) sum += 14 * f(x0 + 4 * h);
  }
  return sum * 2 * h / 45;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate: limits must be finite");
  if (a == b) return {0, 0, 0};
  switch (spec.scheme) {
    case QuadScheme::tanh_sinh: {
      double err = 0, l1 = 0;
      std::size_t levels = 0;
      const double v = tanh_sinh_integrator(spec.levels).integrate(f, a, b, spec.target_rel_err, &err, &l1, &levels);
      // Boost's estimate is the change between the last two levels.
      if (!std::isfinite(v) || err > 10 * spec.target_rel_err * l1)
        throw ConvergenceError(fmt::format("tanh-sinh: error estimate {:.3g} (L1 {:.3g}, {} levels) above target {:.3g}",
                                           err, l1, levels, spec.target_rel_err),
                               v, err);
      return {v, err, l1};
    }
    case QuadScheme::gauss_legendre:
      return doubling(f, a, b, spec, composite_gauss_legendre, "gauss-legendre");
    case QuadScheme::newton_cotes:
      return doubling(f, a, b, spec, composite_boole, "newton-cotes");
  }
  throw DomainError("unknown quadrature scheme");
}

}  // namespace hwkit
