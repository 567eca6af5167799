#include "hwkit/big_rational.hpp"

#include <mpfr.h>

#include <ostream>

#include "hwkit/errors.hpp"

namespace hwkit {

BigRational::BigRational(long num, long den) : BigRational(mpz_class(num), mpz_class(den)) {}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("BigRational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

BigRational::BigRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(start);

  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  mpz_class n, d;
  if (num.empty() || den.empty() || n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0 ||
      den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return BigRational(n, d);
}

double BigRational::to_double() const {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

std::string BigRational::str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

bool BigRational::exact_sqrt(BigRational& root) const {
  if (sgn(q_) < 0) return false;
  const mpz_class& n = q_.get_num();
  const mpz_class& d = q_.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = BigRational(rn, rd);
  return true;
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.str(); }

}  // namespace hwkit
