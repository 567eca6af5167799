#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hwkit/coefficients.hpp"
#include "hwkit/errors.hpp"
#include "hwkit/rational_series.hpp"

using hwkit::BigRational;
using hwkit::RationalSeries;

namespace {

RationalSeries S(std::initializer_list<BigRational> c) { return RationalSeries(std::vector<BigRational>(c)); }

std::vector<BigRational> R(std::initializer_list<const char*> items) {
  std::vector<BigRational> out;
  for (const char* s : items) out.push_back(BigRational::parse(s));
  return out;
}

// Lagrange inversion: [xⁿ] h = (1/n) [xⁿ⁻¹] (x / G(x))ⁿ, G = g − g(0).
RationalSeries lagrange_revert(const RationalSeries& g) {
  const int n = g.order();
  std::vector<BigRational> shifted(g.coeffs().begin() + 1, g.coeffs().end());
  const RationalSeries phi = hwkit::series_inverse(RationalSeries(shifted));
  std::vector<BigRational> h(static_cast<std::size_t>(n) + 1);
  RationalSeries power = RationalSeries::monomial(n - 1, 0);
  for (int k = 1; k <= n; ++k) {
    power = hwkit::series_mul(power, phi);
    h[k] = power[k - 1] / BigRational(k);
  }
  return RationalSeries(h);
}

}  // namespace

TEST_CASE("BigRational basics") {
  CHECK(BigRational(2, 4) == BigRational(1, 2));
  CHECK(BigRational(1, -3).str() == "-1/3");
  CHECK(BigRational(5).str() == "5/1");
  CHECK(BigRational::parse(" -6/4 ") == BigRational(-3, 2));
  CHECK_THROWS_AS(BigRational::parse("1/0"), hwkit::ParseError);
  CHECK_THROWS_AS(BigRational::parse("x"), hwkit::ParseError);
  CHECK_THROWS_AS(BigRational(1, 0), hwkit::DomainError);
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), hwkit::DomainError);
  CHECK(BigRational(1, 3).to_double() == 1.0 / 3.0);
  CHECK(BigRational(1, 10).to_double() == 0.1);
  BigRational r;
  CHECK(BigRational(9, 4).exact_sqrt(r));
  CHECK(r == BigRational(3, 2));
  CHECK_FALSE(BigRational(2).exact_sqrt(r));
}

TEST_CASE("series arithmetic") {
  CHECK(hwkit::series_add(S({1, 1}), S({1, -1})) == S({2, 0}));
  CHECK(hwkit::series_add(S({1, 2, 3}), RationalSeries::zero(2)) == S({1, 2, 3}));
  CHECK(hwkit::series_add(S({0, BigRational(1, 2)}), S({0, BigRational(1, 3)})) ==
        S({0, BigRational(5, 6)}));
  CHECK(hwkit::series_add(S({1, 1, 1}), S({1, 1})).order() == 1);
  CHECK_THROWS_AS(hwkit::series_add(S({1}).with_prefactor(3, hwkit::SeriesOffset::none), S({1})),
                  hwkit::SeriesError);

  CHECK(hwkit::series_mul(S({1, 1, 0, 0}), S({1, -1, 0, 0})) == S({1, 0, -1, 0}));
  CHECK(hwkit::series_inverse(S({1, -1, 0, 0, 0})) == S({1, 1, 1, 1, 1}));
  CHECK(hwkit::series_inverse(S({2, 1, 0})) == S({BigRational(1, 2), BigRational(-1, 4), BigRational(1, 8)}));
  CHECK_THROWS_AS(hwkit::series_div(S({1, 1}), S({0, 1})), hwkit::SeriesError);
  CHECK(hwkit::series_sqrt(S({1, 2, 1})) == S({1, 1, 0}));
  CHECK_THROWS_AS(hwkit::series_sqrt(S({2, 1})), hwkit::SeriesError);
  CHECK(hwkit::series_derivative(S({5, 1, 1, 1})) == S({1, 2, 3}));

  const auto s3 = hwkit::series_sqrt(S({3, 1, 0, 0}), 3);
  CHECK(s3.prefactor_sq() == BigRational(3));
  const auto sq = hwkit::series_mul(s3, s3);
  CHECK(sq.prefactor_sq() == BigRational(9));
  CHECK(hwkit::series_scale(sq.with_prefactor(1, hwkit::SeriesOffset::none), 3) == S({3, 1, 0, 0}));
}

TEST_CASE("composition reproduces exp and g") {
  std::vector<BigRational> e{1, 1, BigRational(1, 2), BigRational(1, 6)};
  CHECK(hwkit::series_compose(RationalSeries(e), S({0, 1, 0, 0})) == RationalSeries(e));
  const auto g = hwkit::series_div(hwkit::sinhc_series(4), S({1, 0, 0, 0, 0}));
  CHECK(g[0] == BigRational(1));
  CHECK(g[1] == BigRational(1, 6));
  CHECK(g[2] == BigRational(1, 120));
  CHECK_THROWS_AS(hwkit::series_compose(S({1, 1}), S({1, 1})), hwkit::SeriesError);
}

TEST_CASE("reversion") {
  CHECK(hwkit::revert_series(S({0, 1, 0, 0})) == S({0, 1, 0, 0}));
  // Catalan numbers with alternating signs.
  const auto c = hwkit::revert_series(S({0, 1, 1, 0, 0, 0, 0, 0}));
  CHECK(c == S({0, 1, -1, 2, -5, 14, -42, 132}));
  CHECK_THROWS_AS(hwkit::revert_series(S({0, 0, 1})), hwkit::SeriesError);

  for (int n = 1; n <= 10; ++n) {
    const auto g = hwkit::sinhc_series(n);
    CHECK(hwkit::revert_series(g) == lagrange_revert(g));
  }
  // A generic cubic with every coefficient nonzero.
  const auto g = S({7, 2, -3, BigRational(5, 7), 1, BigRational(-1, 9), 2, 3, 4, 5, 6});
  CHECK(hwkit::revert_series(g) == lagrange_revert(g));
}

TEST_CASE("back-substitution of h holds exactly to order 60") {
  const int n = 60;
  const auto h = hwkit::coeffs_h(n);
  auto g = hwkit::sinhc_series(n);
  const auto id = hwkit::series_compose(g, h);
  CHECK(id == S({1, 1}).resized(n));
}

TEST_CASE("closed-form coefficient prefixes") {
  CHECK(hwkit::coeffs_h(3).coeffs() == R({"0", "6", "-9/5", "144/175"}));
  CHECK(hwkit::coeffs_h(4)[4] == BigRational(-78, 175));
  CHECK(hwkit::coeffs_h_log(4).coeffs() == R({"0", "6", "6/5", "4/175", "-2/175"}));
  CHECK(hwkit::coeffs_JBS(4, hwkit::JbsVariable::omega).coeffs() ==
        R({"0", "0", "3/2", "-9/5", "333/175"}));
  CHECK(hwkit::coeffs_JBS(4, hwkit::JbsVariable::log).coeffs() ==
        R({"0", "0", "3/2", "-3/10", "109/1400"}));
  CHECK(hwkit::coeffs_h_log(12) ==
        hwkit::series_compose(hwkit::coeffs_h(12), hwkit::expm1_series(12)));
}

TEST_CASE("F and G tables") {
  const auto f = hwkit::coeffs_F(10);
  CHECK(f.offset() == hwkit::SeriesOffset::half_pi_squared);
  CHECK(f[0] == BigRational(-1));
  CHECK(f[1] == BigRational(-1));
  CHECK(f[2] == BigRational(1));
  CHECK(f[3] == BigRational(2, 15));
  CHECK(f[4] == BigRational(19, 525));
  CHECK(f[5] == BigRational(22, 2625));
  CHECK(f[6] == BigRational(4742, 3031875));
  CHECK(f[7] == BigRational(43636, 197071875));
  CHECK(f[8] == BigRational(146287, 6897515625));
  CHECK(f[9] == BigRational(68146, 57984609375));
  CHECK(f[10] == BigRational::parse("6740719066/38598324999609375"));

  const auto g = hwkit::coeffs_G(10);
  CHECK(g.prefactor_sq() == BigRational(3));
  CHECK(g.coeffs() == R({"1", "-1/5", "-1/70", "1/1050", "299/323400", "96917/525525000",
                         "-107749/10032750000", "-27333619/1876124250000",
                         "-308907281743/109790791110000000", "1589498602063/4940585599950000000",
                         "28340195926465733/103406456606953500000000"}));

  // 3·(G-series)² is the series of 𝒢² composed with h.
  const auto plain = g.with_prefactor(1, hwkit::SeriesOffset::none);
  const auto sq = hwkit::series_scale(hwkit::series_mul(plain, plain), 3);
  const auto coth = hwkit::series_div(hwkit::cosh_series(11), hwkit::sinhc_series(11));
  std::vector<BigRational> q(coth.coeffs().begin() + 1, coth.coeffs().end());
  const auto gsq = hwkit::series_compose(hwkit::series_inverse(RationalSeries(q)),
                                         hwkit::coeffs_h_log(10).reflected());
  CHECK(sq == gsq);
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(hwkit::coeffs_h(0), hwkit::DomainError);
  CHECK_THROWS_AS(hwkit::coeffs_JBS(1, hwkit::JbsVariable::log), hwkit::DomainError);
  CHECK_THROWS_AS(hwkit::coeffs_F(hwkit::kMaxSeriesOrder + 1), hwkit::DomainError);
  CHECK_THROWS_AS(hwkit::parse_family("X"), hwkit::DomainError);
  CHECK(hwkit::parse_family("jbs_log") == hwkit::Family::jbs_log);
}

TEST_CASE("serialization round trip") {
  const auto g = hwkit::coeffs_G(6);
  const std::string text = hwkit::serialize(g);
  CHECK(text.rfind("# hwkit rational series\norder 6\nprefactor_sq 3/1\noffset none\n0 1/1\n", 0) == 0);
  CHECK(hwkit::deserialize(text) == g);
  const auto f = hwkit::coeffs_F(3);
  CHECK(hwkit::deserialize(hwkit::serialize(f)) == f);

  CHECK_THROWS_AS(hwkit::deserialize("order 1\nprefactor_sq 1\noffset none\n0 1/1\n"), hwkit::ParseError);
  CHECK_THROWS_AS(hwkit::deserialize("order 0\nprefactor_sq 1\noffset weird\n0 1/1\n"), hwkit::ParseError);
  CHECK_THROWS_AS(hwkit::deserialize("0 1/1\n"), hwkit::ParseError);
  CHECK_THROWS_AS(hwkit::deserialize("order 0\nprefactor_sq 1\noffset none\n0 1/x\n"), hwkit::ParseError);
}

TEST_CASE("sign alternation of c_n for large n") {
  const auto h = hwkit::coeffs_h(100);
  for (int n = 20; n <= 100; ++n) CHECK(h[n].sign() == (n % 2 == 0 ? -1 : 1));
}
