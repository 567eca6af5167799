#pragma once

#include <functional>
#include <string_view>

namespace hwkit {

enum class QuadScheme { tanh_sinh, gauss_legendre, newton_cotes };

QuadScheme parse_quad_scheme(std::string_view name);
std::string_view to_string(QuadScheme s);

struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::tanh_sinh;
  // Refinement budget: tanh-sinh halvings of the step, or panel doublings
  // for the composite rules.
  int levels = 12;
  double target_rel_err = 1e-8;

  void validate() const;
};

struct QuadResult {
  double value;
  double error;  // estimate of the absolute error
  double l1;     // estimate of ∫|f|
};

// ∫_a^b f over a finite interval. Throws ConvergenceError when the error
// estimate does not reach target_rel_err relative to ∫|f| within the
// refinement budget.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec);

// Fixed composite rules on n equal panels: 20-point Gauss–Legendre and
// 5-point closed Newton–Cotes (Boole).
double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);
double composite_boole(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace hwkit
