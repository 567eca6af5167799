#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hwkit/big_rational.hpp"

namespace hwkit {

// Symbolic constant added to a series. F(ρ) carries π²/2, which has no
// rational representation.
enum class SeriesOffset { none, half_pi_squared };

// Truncated power series with exact rational coefficients.
//
// The represented value is
//     offset + sqrt(prefactor_sq) * sum_{n=0}^{order} coeffs[n] * x^n
// where offset is 0 or π²/2. A plain series has prefactor_sq == 1 and no
// offset. coeffs always holds exactly order + 1 entries.
//
// Coefficient sizes grow quickly: at order 100 the numerators and
// denominators of the inverse-function tables run to thousands of digits,
// so the coefficient generators cap the order at kMaxSeriesOrder.
class RationalSeries {
 public:
  RationalSeries() : coeffs_(1) {}
  explicit RationalSeries(std::vector<BigRational> coeffs, BigRational prefactor_sq = 1,
                          SeriesOffset offset = SeriesOffset::none);

  static RationalSeries zero(int order);
  // c * x^power, truncated to order.
  static RationalSeries monomial(int order, int power, BigRational c = 1);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigRational& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  const BigRational& prefactor_sq() const { return prefactor_sq_; }
  SeriesOffset offset() const { return offset_; }
  bool is_plain() const { return prefactor_sq_ == 1 && offset_ == SeriesOffset::none; }

  RationalSeries truncated(int order) const;
  // Zero-padded or truncated copy of exactly the requested order.
  RationalSeries resized(int order) const;
  // Substitutes x -> -x.
  RationalSeries reflected() const;
  RationalSeries with_prefactor(BigRational prefactor_sq, SeriesOffset offset) const;

  // Correctly rounded coefficients, without the prefactor or offset.
  std::vector<double> to_doubles() const;

  friend bool operator==(const RationalSeries& a, const RationalSeries& b) = default;

 private:
  std::vector<BigRational> coeffs_;
  BigRational prefactor_sq_{1};
  SeriesOffset offset_ = SeriesOffset::none;
};

inline constexpr int kMaxSeriesOrder = 128;

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_sub(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_neg(const RationalSeries& a);
RationalSeries series_scale(const RationalSeries& a, const BigRational& c);
RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_inverse(const RationalSeries& a);
RationalSeries series_div(const RationalSeries& a, const RationalSeries& b);
RationalSeries series_derivative(const RationalSeries& a);

// outer(inner(x)). inner must be plain with a zero constant term; the result
// keeps outer's prefactor and offset.
RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner);

// Square root of a plain series. The constant term must equal r^2 * surd for
// a rational r; the result carries prefactor_sq == surd and satisfies
// result * result == a to the input order.
RationalSeries series_sqrt(const RationalSeries& a, const BigRational& surd = 1);

// Compositional inverse of g(x) - g(0): returns h with h(0) = 0 and
// g(h(x)) = g(0) + x to order N. Newton iteration on series, doubling the
// attained order at each step.
RationalSeries revert_series(const RationalSeries& g);

// Line-oriented text form:
//   # hwkit rational series
//   order <N>
//   prefactor_sq <p/q>
//   offset <none|half_pi_squared>
//   <n> <p/q>          (N + 1 lines)
std::string serialize(const RationalSeries& s);
void write_series(std::ostream& os, const RationalSeries& s);
RationalSeries deserialize(std::string_view text);
RationalSeries read_series(std::istream& is);

std::string_view to_string(SeriesOffset offset);

}  // namespace hwkit
