#pragma once

#include <string_view>

#include "hwkit/rational_series.hpp"

namespace hwkit {

// Elementary even-function series in z = u², exact to the requested order.
//   sinhc_series:  sinh(√z)/√z = Σ zⁿ/(2n+1)!   (this is g)
//   cosh_series:   cosh(√z)    = Σ zⁿ/(2n)!
//   expm1_series:  e^y − 1
RationalSeries sinhc_series(int order);
RationalSeries cosh_series(int order);
RationalSeries expm1_series(int order);

// h = g⁻¹ expanded in (ω − 1), with h(1) = 0.
RationalSeries coeffs_h(int order);

// h(e^y) expanded in y.
RationalSeries coeffs_h_log(int order);

enum class JbsVariable { omega, log };

// J_BS expanded in (ω − 1) or in y = log ω.
RationalSeries coeffs_JBS(int order, JbsVariable variable);

// F(ρ) expanded in s = log ρ. Coefficient 0 holds −1; the π²/2 part of
// the constant term is carried by the offset flag.
RationalSeries coeffs_F(int order);

// G(ρ) expanded in s = log ρ, as √3 · Σ d_n sⁿ (prefactor_sq = 3).
RationalSeries coeffs_G(int order);

// Coefficient families addressable by name: h, h_log, jbs_omega, jbs_log, F, G.
enum class Family { h, h_log, jbs_omega, jbs_log, F, G };

Family parse_family(std::string_view name);
std::string_view to_string(Family f);
int min_order(Family f);
RationalSeries coeffs_for(Family f, int order);

}  // namespace hwkit
