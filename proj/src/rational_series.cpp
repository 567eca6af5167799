#include "hwkit/rational_series.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "hwkit/errors.hpp"

namespace hwkit {

namespace {

// Series over the integers with one shared denominator. Products are formed
// on the numerators only and the common content is removed once per
// operation, which avoids a gcd per coefficient product.
struct ScaledSeries {
  std::vector<mpz_class> num;
  mpz_class den{1};

  int order() const { return static_cast<int>(num.size()) - 1; }

  static ScaledSeries from(const RationalSeries& s) {
    ScaledSeries out;
    out.den = 1;
    for (const auto& c : s.coeffs()) {
      const mpz_class d = c.denominator();
      if (d != 1) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), d.get_mpz_t());
    }
    out.num.reserve(s.coeffs().size());
    for (const auto& c : s.coeffs()) {
      mpz_class scale = out.den / c.denominator();
      out.num.push_back(c.numerator() * scale);
    }
    return out;
  }

  void reduce() {
    mpz_class g = den;
    for (const auto& n : num) {
      if (g == 1) return;
      if (n != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    if (g == 1) return;
    den /= g;
    for (auto& n : num) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
  }

  void add_constant(const BigRational& c) {
    if (c.is_zero()) return;
    const mpz_class cd = c.denominator();
    if (cd != 1) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
      if (l != den) {
        const mpz_class f = l / den;
        for (auto& n : num) n *= f;
        den = l;
      }
    }
    num[0] += c.numerator() * (den / cd);
  }

  std::vector<BigRational> to_rationals() const {
    std::vector<BigRational> out;
    out.reserve(num.size());
    for (const auto& n : num) out.emplace_back(n, den);
    return out;
  }
};

ScaledSeries scaled_mul(const ScaledSeries& a, const ScaledSeries& b, int order) {
  ScaledSeries out;
  out.num.assign(static_cast<std::size_t>(order) + 1, mpz_class(0));
  out.den = a.den * b.den;
  mpz_class t;
  for (int i = 0; i <= std::min(order, a.order()); ++i) {
    if (a.num[i] == 0) continue;
    const int jmax = std::min(order - i, b.order());
    for (int j = 0; j <= jmax; ++j) {
      if (b.num[j] == 0) continue;
      mpz_addmul(out.num[i + j].get_mpz_t(), a.num[i].get_mpz_t(), b.num[j].get_mpz_t());
    }
  }
  out.reduce();
  return out;
}

void require_same_shape(const RationalSeries& a, const RationalSeries& b, const char* op) {
  if (a.prefactor_sq() != b.prefactor_sq())
    throw SeriesError(std::string(op) + ": mismatched surd prefactors " + a.prefactor_sq().str() +
                      " and " + b.prefactor_sq().str());
}

void require_no_offset(const RationalSeries& a, const char* op) {
  if (a.offset() != SeriesOffset::none)
    throw SeriesError(std::string(op) + ": series carries a symbolic offset");
}

SeriesOffset combine_offsets(SeriesOffset a, SeriesOffset b) {
  if (a != SeriesOffset::none && b != SeriesOffset::none)
    throw SeriesError("series_add: both operands carry a symbolic offset");
  return a != SeriesOffset::none ? a : b;
}

}  // namespace

RationalSeries::RationalSeries(std::vector<BigRational> coeffs, BigRational prefactor_sq,
                               SeriesOffset offset)
    : coeffs_(std::move(coeffs)), prefactor_sq_(std::move(prefactor_sq)), offset_(offset) {
  if (coeffs_.empty()) throw DomainError("RationalSeries: need at least one coefficient");
  if (prefactor_sq_.sign() <= 0) throw DomainError("RationalSeries: prefactor_sq must be positive");
}

RationalSeries RationalSeries::zero(int order) {
  if (order < 0) throw DomainError("RationalSeries: negative order");
  return RationalSeries(std::vector<BigRational>(static_cast<std::size_t>(order) + 1));
}

RationalSeries RationalSeries::monomial(int order, int power, BigRational c) {
  auto s = zero(order);
  if (power < 0) throw DomainError("RationalSeries::monomial: negative power");
  if (power <= order) s.coeffs_[static_cast<std::size_t>(power)] = std::move(c);
  return s;
}

RationalSeries RationalSeries::truncated(int order) const {
  if (order < 0) throw DomainError("RationalSeries::truncated: negative order");
  return resized(std::min(order, this->order()));
}

RationalSeries RationalSeries::resized(int order) const {
  if (order < 0) throw DomainError("RationalSeries::resized: negative order");
  RationalSeries out = *this;
  out.coeffs_.resize(static_cast<std::size_t>(order) + 1);
  return out;
}

RationalSeries RationalSeries::reflected() const {
  RationalSeries out = *this;
  for (std::size_t n = 1; n < out.coeffs_.size(); n += 2) out.coeffs_[n] = -out.coeffs_[n];
  return out;
}

RationalSeries RationalSeries::with_prefactor(BigRational prefactor_sq, SeriesOffset offset) const {
  return RationalSeries(coeffs_, std::move(prefactor_sq), offset);
}

std::vector<double> RationalSeries::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.to_double());
  return out;
}

RationalSeries series_add(const RationalSeries& a, const RationalSeries& b) {
  require_same_shape(a, b, "series_add");
  const int n = std::min(a.order(), b.order());
  std::vector<BigRational> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
  return RationalSeries(std::move(c), a.prefactor_sq(), combine_offsets(a.offset(), b.offset()));
}

RationalSeries series_neg(const RationalSeries& a) {
  require_no_offset(a, "series_neg");
  return series_scale(a, BigRational(-1));
}

RationalSeries series_sub(const RationalSeries& a, const RationalSeries& b) {
  return series_add(a, series_neg(b));
}

RationalSeries series_scale(const RationalSeries& a, const BigRational& c) {
  require_no_offset(a, "series_scale");
  std::vector<BigRational> out;
  out.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) out.push_back(x * c);
  return RationalSeries(std::move(out), a.prefactor_sq());
}

RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b) {
  require_no_offset(a, "series_mul");
  require_no_offset(b, "series_mul");
  const int n = std::min(a.order(), b.order());
  auto p = scaled_mul(ScaledSeries::from(a), ScaledSeries::from(b), n);
  return RationalSeries(p.to_rationals(), a.prefactor_sq() * b.prefactor_sq());
}

RationalSeries series_inverse(const RationalSeries& a) {
  require_no_offset(a, "series_inverse");
  if (a[0].is_zero()) throw SeriesError("series_inverse: zero constant term");
  const int n = a.order();
  // Newton: r <- r (2 - a r), doubling the number of correct terms.
  const ScaledSeries as = ScaledSeries::from(a.with_prefactor(1, SeriesOffset::none));
  ScaledSeries r;
  r.num = {a[0].denominator()};
  r.den = a[0].numerator();
  if (r.den < 0) {
    r.den = -r.den;
    r.num[0] = -r.num[0];
  }
  int m = 0;
  while (m < n) {
    const int m2 = std::min(2 * m + 1, n);
    r.num.resize(static_cast<std::size_t>(m2) + 1);
    ScaledSeries ar = scaled_mul(as, r, m2);
    for (auto& x : ar.num) x = -x;
    ar.num[0] += 2 * ar.den;
    r = scaled_mul(r, ar, m2);
    m = m2;
  }
  return RationalSeries(r.to_rationals(), 1 / a.prefactor_sq());
}

RationalSeries series_div(const RationalSeries& a, const RationalSeries& b) {
  require_no_offset(a, "series_div");
  if (b[0].is_zero()) throw SeriesError("series_div: divisor has zero constant term");
  const int n = std::min(a.order(), b.order());
  return series_mul(a.truncated(n), series_inverse(b.truncated(n)));
}

RationalSeries series_derivative(const RationalSeries& a) {
  require_no_offset(a, "series_derivative");
  if (a.order() == 0) return RationalSeries(std::vector<BigRational>{0}, a.prefactor_sq());
  std::vector<BigRational> c(static_cast<std::size_t>(a.order()));
  for (int i = 1; i <= a.order(); ++i) c[i - 1] = a[i] * BigRational(i);
  return RationalSeries(std::move(c), a.prefactor_sq());
}

RationalSeries series_compose(const RationalSeries& outer, const RationalSeries& inner) {
  if (!inner.is_plain())
    throw SeriesError("series_compose: inner series must be plain (no surd, no offset)");
  if (!inner[0].is_zero()) throw SeriesError("series_compose: inner series needs zero constant term");
  const int n = std::min(outer.order(), inner.order());
  const ScaledSeries in = ScaledSeries::from(inner.truncated(n));

  // Horner in the inner series, highest outer coefficient first.
  ScaledSeries acc;
  acc.num.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
  acc.den = 1;
  acc.add_constant(outer[n]);
  for (int k = n - 1; k >= 0; --k) {
    acc = scaled_mul(acc, in, n);
    acc.add_constant(outer[k]);
    acc.reduce();
  }
  return RationalSeries(acc.to_rationals(), outer.prefactor_sq(), outer.offset());
}

RationalSeries series_sqrt(const RationalSeries& a, const BigRational& surd) {
  if (!a.is_plain()) throw SeriesError("series_sqrt: input must be a plain series");
  if (surd.sign() <= 0) throw SeriesError("series_sqrt: surd must be positive");
  BigRational s0;
  if (a[0].sign() <= 0 || !(a[0] / surd).exact_sqrt(s0))
    throw SeriesError("series_sqrt: constant term " + a[0].str() + " is not a rational square times " +
                      surd.str());
  // With a = surd * b, s_k = (b_k - sum_{i=1}^{k-1} s_i s_{k-i}) / (2 s_0).
  const int n = a.order();
  std::vector<BigRational> s(static_cast<std::size_t>(n) + 1);
  s[0] = s0;
  const BigRational two_s0 = s0 * BigRational(2);
  for (int k = 1; k <= n; ++k) {
    BigRational acc = a[k] / surd;
    for (int i = 1; i < k; ++i) acc -= s[i] * s[k - i];
    s[k] = acc / two_s0;
  }
  return RationalSeries(std::move(s), surd);
}

RationalSeries revert_series(const RationalSeries& g) {
  if (!g.is_plain()) throw SeriesError("revert_series: input must be a plain series");
  if (g.order() < 1 || g[1].is_zero())
    throw SeriesError("revert_series: vanishing linear coefficient, not invertible");
  const int n = g.order();

  std::vector<BigRational> shifted = g.coeffs();
  shifted[0] = 0;
  const RationalSeries big_g(std::move(shifted));
  const RationalSeries dg = series_derivative(big_g);

  RationalSeries h = RationalSeries::monomial(1, 1, 1 / g[1]);
  int m = 1;
  while (m < n) {
    // h is exact through x^m; one Newton step makes it exact through x^{2m+1}.
    const int m2 = std::min(2 * m + 1, n);
    const RationalSeries hx = h.resized(m2);
    RationalSeries resid = series_compose(big_g.truncated(m2), hx);
    // resid - x vanishes through x^m; divide it by x^{m+1} before the
    // division by g'(h) so only m2 - m - 1 terms of g'(h) are needed.
    const int rest = m2 - m - 1;
    std::vector<BigRational> shifted_resid(static_cast<std::size_t>(rest) + 1);
    for (int i = 0; i <= rest; ++i) {
      shifted_resid[i] = resid[m + 1 + i];
      if (m + 1 + i == 1) shifted_resid[i] -= 1;
    }
    const RationalSeries deriv = series_compose(dg.truncated(rest), hx.truncated(rest));
    const RationalSeries step = series_div(RationalSeries(std::move(shifted_resid)), deriv);
    std::vector<BigRational> next = hx.coeffs();
    for (int i = 0; i <= rest; ++i) next[m + 1 + i] -= step[i];
    h = RationalSeries(std::move(next));
    m = m2;
  }
  return h;
}

std::string_view to_string(SeriesOffset offset) {
  return offset == SeriesOffset::half_pi_squared ? "half_pi_squared" : "none";
}

void write_series(std::ostream& os, const RationalSeries& s) {
  os << "# hwkit rational series\n";
  os << "order " << s.order() << '\n';
  os << "prefactor_sq " << s.prefactor_sq().str() << '\n';
  os << "offset " << to_string(s.offset()) << '\n';
  for (int i = 0; i <= s.order(); ++i) os << i << ' ' << s[i].str() << '\n';
}

std::string serialize(const RationalSeries& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

RationalSeries read_series(std::istream& is) {
  int order = -1;
  BigRational prefactor(1);
  SeriesOffset offset = SeriesOffset::none;
  bool have_prefactor = false, have_offset = false;
  std::vector<BigRational> coeffs;
  std::vector<bool> seen;

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("series line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string key, value, extra;
    ls >> key >> value;
    if (value.empty() || (ls >> extra)) fail("expected '<key> <value>'");
    if (key == "order") {
      try {
        order = std::stoi(value);
      } catch (const std::exception&) {
        fail("bad order '" + value + "'");
      }
      if (order < 0) fail("negative order");
      coeffs.assign(static_cast<std::size_t>(order) + 1, BigRational(0));
      seen.assign(coeffs.size(), false);
    } else if (key == "prefactor_sq") {
      prefactor = BigRational::parse(value);
      have_prefactor = true;
    } else if (key == "offset") {
      if (value == "none") offset = SeriesOffset::none;
      else if (value == "half_pi_squared") offset = SeriesOffset::half_pi_squared;
      else fail("unknown offset '" + value + "'");
      have_offset = true;
    } else {
      if (order < 0) fail("coefficient before 'order' header");
      std::size_t pos = 0;
      int idx = -1;
      try {
        idx = std::stoi(key, &pos);
      } catch (const std::exception&) {
        fail("bad index '" + key + "'");
      }
      if (pos != key.size() || idx < 0 || idx > order) fail("index out of range '" + key + "'");
      if (seen[idx]) fail("duplicate index " + key);
      coeffs[idx] = BigRational::parse(value);
      seen[idx] = true;
    }
  }
  if (order < 0) throw ParseError("series: missing 'order' header");
  if (!have_prefactor || !have_offset) throw ParseError("series: missing prefactor_sq/offset header");
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ParseError("series: missing coefficient lines");
  if (prefactor.sign() <= 0) throw ParseError("series: prefactor_sq must be positive");
  return RationalSeries(std::move(coeffs), prefactor, offset);
}

RationalSeries deserialize(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_series(is);
}

}  // namespace hwkit
