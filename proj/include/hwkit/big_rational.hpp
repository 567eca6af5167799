#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hwkit {

// Arbitrary-precision rational, always held in lowest terms with a positive
// denominator. Thin value wrapper over GMP's mpq_class.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(long num, long den);
  BigRational(const mpz_class& num, const mpz_class& den);
  explicit BigRational(mpq_class q);

  // Accepts "p", "p/q" and "-p/q" in base 10.
  static BigRational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  // Correctly rounded (round-to-nearest-even) conversion to binary64.
  double to_double() const;

  // "p/q" with q == 1 printed explicitly, so every line of a series dump has
  // the same shape.
  std::string str() const;

  // True iff the value is the square of a rational; writes the root if so.
  bool exact_sqrt(BigRational& root) const;

  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& q);

}  // namespace hwkit
