#include "hwkit/coefficients.hpp"

#include <string>

#include "hwkit/errors.hpp"

namespace hwkit {

namespace {

void check_order(int order, int lo, const char* what) {
  if (order < lo || order > kMaxSeriesOrder)
    throw DomainError(std::string(what) + ": order must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(kMaxSeriesOrder) + "], got " + std::to_string(order));
}

// Σ zⁿ / (2n + shift)!
RationalSeries factorial_series(int order, int shift) {
  std::vector<BigRational> c(static_cast<std::size_t>(order) + 1);
  mpz_class fact = 1;
  for (int k = 2; k <= shift; ++k) fact *= k;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact *= mpz_class(2 * n + shift - 1) * mpz_class(2 * n + shift);
    c[n] = BigRational(mpz_class(1), fact);
  }
  return RationalSeries(std::move(c));
}

// Drops the constant term and divides by z; the result has order - 1.
RationalSeries shift_down(const RationalSeries& a) {
  std::vector<BigRational> c(a.coeffs().begin() + 1, a.coeffs().end());
  return RationalSeries(std::move(c));
}

// h(1/ρ) expanded in s = log ρ.
RationalSeries h_of_inverse_rho(int order) { return coeffs_h_log(order).reflected(); }

}  // namespace

RationalSeries sinhc_series(int order) { return factorial_series(order, 1); }
RationalSeries cosh_series(int order) { return factorial_series(order, 0); }

RationalSeries expm1_series(int order) {
  std::vector<BigRational> c(static_cast<std::size_t>(order) + 1);
  mpz_class fact = 1;
  for (int n = 1; n <= order; ++n) {
    fact *= n;
    c[n] = BigRational(mpz_class(1), fact);
  }
  return RationalSeries(std::move(c));
}

RationalSeries coeffs_h(int order) {
  check_order(order, 1, "coeffs_h");
  return revert_series(sinhc_series(order));
}

RationalSeries coeffs_h_log(int order) {
  check_order(order, 1, "coeffs_h_log");
  return series_compose(coeffs_h(order), expm1_series(order));
}

RationalSeries coeffs_JBS(int order, JbsVariable variable) {
  check_order(order, 2, "coeffs_JBS");
  // 𝒥(z) = z/2 − √z tanh(√z/2) = z/2 − (z/2)·S(z/4)/C(z/4), S = sinh(√w)/√w, C = cosh(√w).
  const RationalSeries quarter = RationalSeries::monomial(order, 1, BigRational(1, 4));
  const RationalSeries ratio =
      series_div(series_compose(sinhc_series(order), quarter), series_compose(cosh_series(order), quarter));
  const RationalSeries half_z = RationalSeries::monomial(order, 1, BigRational(1, 2));
  const RationalSeries jcal = series_sub(half_z, series_mul(half_z, ratio));
  const RationalSeries inner = variable == JbsVariable::omega ? coeffs_h(order) : coeffs_h_log(order);
  return series_compose(jcal, inner);
}

RationalSeries coeffs_F(int order) {
  check_order(order, 1, "coeffs_F");
  // F = π²/2 + z/2 − √z/tanh√z at z = h(1/ρ); √z/tanh√z = C(z)/S(z).
  const RationalSeries coth_part = series_div(cosh_series(order), sinhc_series(order));
  const RationalSeries fcal =
      series_sub(RationalSeries::monomial(order, 1, BigRational(1, 2)), coth_part);
  return series_compose(fcal, h_of_inverse_rho(order))
      .with_prefactor(1, SeriesOffset::half_pi_squared);
}

RationalSeries coeffs_G(int order) {
  check_order(order, 1, "coeffs_G");
  // 𝒢² = z / (√z/tanh√z − 1) = 1 / q with q = (C/S − 1)/z.
  const RationalSeries coth_part = series_div(cosh_series(order + 1), sinhc_series(order + 1));
  const RationalSeries q = shift_down(coth_part);
  const RationalSeries g_sq = series_inverse(q);
  return series_sqrt(series_compose(g_sq, h_of_inverse_rho(order)), BigRational(3));
}

Family parse_family(std::string_view name) {
  if (name == "h") return Family::h;
  if (name == "h_log") return Family::h_log;
  if (name == "jbs_omega") return Family::jbs_omega;
  if (name == "jbs_log") return Family::jbs_log;
  if (name == "F") return Family::F;
  if (name == "G") return Family::G;
  throw DomainError("unknown coefficient family '" + std::string(name) +
                    "' (expected h, h_log, jbs_omega, jbs_log, F, G)");
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::h: return "h";
    case Family::h_log: return "h_log";
    case Family::jbs_omega: return "jbs_omega";
    case Family::jbs_log: return "jbs_log";
    case Family::F: return "F";
    case Family::G: return "G";
  }
  return "?";
}

int min_order(Family f) { return f == Family::jbs_omega || f == Family::jbs_log ? 2 : 1; }

RationalSeries coeffs_for(Family f, int order) {
  switch (f) {
    case Family::h: return coeffs_h(order);
    case Family::h_log: return coeffs_h_log(order);
    case Family::jbs_omega: return coeffs_JBS(order, JbsVariable::omega);
    case Family::jbs_log: return coeffs_JBS(order, JbsVariable::log);
    case Family::F: return coeffs_F(order);
    case Family::G: return coeffs_G(order);
  }
  throw DomainError("unknown coefficient family");
}

}  // namespace hwkit
