#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "hwkit/rational_series.hpp"

namespace hwkit {

// Local data at the branch point z₁ = −η₁² of h = g⁻¹:
//   h(ω) = z₁ + C₁ (ω − ω₁)^{1/2} + C₂ (ω − ω₁) + …
// and the (ω − ω₁)^{3/2} coefficients of 𝒥(h(ω)) and ℱ(h(ω)).
struct PuiseuxData {
  double z1;
  double omega1;
  double C1;
  double C2;
  double C32_J;
  double C32_F;
  // Second, independent estimate of C₂ from a direct fit of h on the real
  // axis; C2 itself comes from the Taylor coefficients of g at z₁.
  double C2_fit;
};

struct AsymptoticConstants {
  double c_inf;
  double d_inf;
  double d_J;
  double d_F;
  double d_G;
};

// Computed once on first use and cached.
const PuiseuxData& puiseux_data();
const AsymptoticConstants& asymptotic_constants();

// Taylor coefficients of g, 𝒥 and ℱ about z₁, up to (z − z₁)^order.
std::vector<double> g_taylor_at_z1(int order);
std::vector<double> jcal_taylor_at_z1(int order);
std::vector<double> fcal_taylor_at_z1(int order);

// Estimate of C₂ by Richardson extrapolation of (h(ω₁ + δ) − z₁ − C₁√δ)/δ
// over δ = δ₀ 4^{−k}, k = 0..levels−1.
double fit_C2(double delta0 = 1e-2, int levels = 6);

// Leading-order large-n values.
double asympt_c(int n);
double asympt_d(int n);
double asympt_cJ(int n);
double asympt_dJ(int n);
double asympt_dF(int n);
double asympt_dG(int n);

enum class AsymptFamily { c, d, cJ, dJ, dF, dG };

AsymptFamily parse_asympt_family(std::string_view name);
std::string_view to_string(AsymptFamily f);

double asympt(AsymptFamily f, int n);
// The oscillating factor of the leading term; 1 for the non-oscillating
// families c and cJ.
double trig_factor(AsymptFamily f, int n);
// Limit of |coeff_n|^{1/n}.
double root_test_limit(AsymptFamily f);

// Exact coefficient series the family's asymptotics refer to.
RationalSeries family_series(AsymptFamily f, int order);
// n-th coefficient in the normalization the asymptotic formula uses
// (sign flips for the log(1/ρ) variable, √3 for G).
double family_coefficient(AsymptFamily f, const RationalSeries& s, int n);

struct DiagnosticRow {
  int n;
  double coeff_exact;
  double coeff_asympt;
  double epsilon;  // coeff_exact / coeff_asympt − 1
  double trig_factor;
};

std::vector<DiagnosticRow> diagnostic_epsilon(AsymptFamily f, int order);
std::vector<DiagnosticRow> diagnostic_epsilon(AsymptFamily f, const RationalSeries& s);

// Median of |coeff_n|^{1/n} over n ∈ [lo, hi].
double root_test_median(const std::vector<DiagnosticRow>& rows, int lo, int hi);
// max |ε_n| over n ∈ [lo, hi] with |trig factor| > min_trig.
double max_abs_epsilon(const std::vector<DiagnosticRow>& rows, int lo, int hi, double min_trig);

// Columns n, coeff_exact, coeff_asympt, epsilon, trig_factor.
void write_diagnostic_csv(std::ostream& os, const std::vector<DiagnosticRow>& rows, int precision = 17);

}  // namespace hwkit
