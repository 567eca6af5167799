#include "hwkit/jet.hpp"

#include <algorithm>
#include <cmath>

#include "hwkit/errors.hpp"

namespace hwkit {

Jet Jet::variable(int order, double value) {
  Jet j(order, value);
  if (order >= 1) j[1] = 1;
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  const int n = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c_[k] += o[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  const int n = std::min(order(), o.order());
  c_.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c_[k] -= o[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  Jet out(n);
  for (int k = 0; k <= n; ++k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
    out[k] = s;
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b[0] == 0) throw DomainError("Jet division by a jet with zero value");
  const int n = std::min(a.order(), b.order());
  Jet q(n);
  for (int k = 0; k <= n; ++k) {
    double s = a[k];
    for (int j = 1; j <= k; ++j) s -= b[j] * q[k - j];
    q[k] = s / b[0];
  }
  return q;
}

Jet sqrt(const Jet& a) {
  if (!(a[0] > 0)) throw DomainError("Jet sqrt needs a positive value");
  Jet r(a.order());
  r[0] = std::sqrt(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    double s = a[k];
    for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2 * r[0]);
  }
  return r;
}

void sincos(const Jet& a, Jet& s, Jet& c) {
  const int n = a.order();
  s = Jet(n, std::sin(a[0]));
  c = Jet(n, std::cos(a[0]));
  // s' = c a', c' = −s a'
  for (int k = 1; k <= n; ++k) {
    double ss = 0, cc = 0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a[j] * c[k - j];
      cc -= j * a[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}

Jet sin(const Jet& a) {
  Jet s(0), c(0);
  sincos(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s(0), c(0);
  sincos(a, s, c);
  return c;
}

}  // namespace hwkit
