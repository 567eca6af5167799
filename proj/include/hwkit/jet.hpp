#pragma once

#include <cstddef>
#include <vector>

namespace hwkit {

// Truncated Taylor expansion c[0] + c[1] w + ... + c[M] w^M in double
// precision. Used to get high derivatives of the closed-form functions at a
// point without finite differences.
class Jet {
 public:
  explicit Jet(int order, double value = 0) : c_(static_cast<std::size_t>(order) + 1, 0.0) { c_[0] = value; }

  // value + w
  static Jet variable(int order, double value);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { a[0] += s; return a; }
  friend Jet operator-(Jet a, double s) { a[0] -= s; return a; }
  friend Jet operator-(double s, Jet a) { a *= -1; a[0] += s; return a; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  std::vector<double> c_;
};

Jet sqrt(const Jet& a);
// sin and cos share one recurrence.
void sincos(const Jet& a, Jet& s, Jet& c);
Jet sin(const Jet& a);
Jet cos(const Jet& a);

}  // namespace hwkit
