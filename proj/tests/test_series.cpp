#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "trigspline/errors.hpp"
#include "trigspline/series.hpp"

using namespace trigspline;
namespace ts = trigspline::series;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force Lerch sum with enough terms that the remainder is below the
// comparison tolerance (p >= 2 only).
std::complex<double> lerch_brute(double theta, int p, double w, long terms) {
  std::complex<double> acc(0.0, 0.0);
  for (long n = terms - 1; n >= 0; --n) {
    const double angle = n * theta;
    acc += std::complex<double>(std::cos(angle), std::sin(angle)) /
           std::pow(n + w, p);
  }
  return acc;
}

}  // namespace

TEST_CASE("bernoulli numbers match known values") {
  CHECK(ts::bernoulli_number(0) == doctest::Approx(1.0));
  CHECK(ts::bernoulli_number(1) == doctest::Approx(-0.5));
  CHECK(ts::bernoulli_number(2) == doctest::Approx(1.0 / 6.0));
  CHECK(ts::bernoulli_number(3) == doctest::Approx(0.0));
  CHECK(ts::bernoulli_number(4) == doctest::Approx(-1.0 / 30.0));
  CHECK(ts::bernoulli_number(12) == doctest::Approx(-691.0 / 2730.0));
  CHECK(ts::bernoulli_number(20) ==
        doctest::Approx(-174611.0 / 330.0).epsilon(1e-12));
}

TEST_CASE("bernoulli polynomials: B_3(x) closed form and symmetry") {
  for (double x : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const double expected = x * x * x - 1.5 * x * x + 0.5 * x;
    CHECK(ts::bernoulli_poly(3, x) == doctest::Approx(expected).epsilon(1e-13));
    // B_n(1-x) = (-1)^n B_n(x)
    CHECK(ts::bernoulli_poly(5, 1.0 - x) ==
          doctest::Approx(-ts::bernoulli_poly(5, x)).epsilon(1e-12));
  }
}

TEST_CASE("hurwitz zeta against direct summation and known values") {
  CHECK(ts::hurwitz_zeta(2, 1.0) == doctest::Approx(kPi * kPi / 6.0));
  CHECK(ts::hurwitz_zeta(2, 0.5) == doctest::Approx(kPi * kPi / 2.0));
  CHECK(ts::hurwitz_zeta(4, 1.0) == doctest::Approx(std::pow(kPi, 4) / 90.0));
  for (int s : {2, 3, 5, 9}) {
    for (double a : {0.1, 0.37, 0.8, 1.0}) {
      double direct = 0.0;
      for (long n = 2000000 - 1; n >= 0; --n) direct += std::pow(n + a, -s);
      // crude integral remainder for the brute sum
      const double rem = std::pow(2000000.0 + a, 1.0 - s) / (s - 1.0);
      CHECK(std::abs(ts::hurwitz_zeta(s, a) - direct) <= rem + 1e-11);
    }
  }
}

TEST_CASE("zeta at negative integers via Bernoulli polynomials") {
  CHECK(ts::zeta_int(0, 1.0) == doctest::Approx(-0.5));
  CHECK(ts::zeta_int(-1, 1.0) == doctest::Approx(-1.0 / 12.0));
  CHECK(ts::zeta_int(-3, 1.0) == doctest::Approx(1.0 / 120.0));
}

TEST_CASE("digamma known values and recurrence") {
  const double gamma = 0.5772156649015328606;
  CHECK(ts::digamma(1.0) == doctest::Approx(-gamma).epsilon(1e-13));
  CHECK(ts::digamma(0.5) ==
        doctest::Approx(-gamma - 2.0 * std::log(2.0)).epsilon(1e-13));
  CHECK(ts::digamma(2.0) == doctest::Approx(1.0 - gamma).epsilon(1e-13));
  for (double x : {0.2, 0.7, 1.3, 4.5})
    CHECK(ts::digamma(x + 1.0) ==
          doctest::Approx(ts::digamma(x) + 1.0 / x).epsilon(1e-13));
}

TEST_CASE("lerch phi against brute force, p >= 2") {
  for (int p : {2, 3, 4, 7}) {
    for (double w : {0.2, 0.5, 1.0, 1.7, 3.2}) {
      for (double theta : {0.05, 0.9, 2.0, 3.1, -1.4, kPi}) {
        const long terms = 3000000;
        const auto brute = lerch_brute(theta, p, w, terms);
        const auto exact = ts::lerch_phi(theta, p, w);
        const double rem = std::pow(static_cast<double>(terms), 1.0 - p) /
                               (p - 1.0) +
                           2.0 / ((p - 1.0) * std::pow(terms, p - 1.0));
        CAPTURE(p);
        CAPTURE(w);
        CAPTURE(theta);
        CHECK(std::abs(exact - brute) <= rem + 1e-11 + 1e-13 * std::abs(brute));
      }
    }
  }
}

TEST_CASE("lerch phi at theta == 0 reduces to hurwitz zeta") {
  CHECK(ts::lerch_phi(0.0, 3, 0.4).real() ==
        doctest::Approx(ts::hurwitz_zeta(3, 0.4)).epsilon(1e-13));
  CHECK(ts::lerch_phi(2.0 * kPi, 2, 0.9).real() ==
        doctest::Approx(ts::hurwitz_zeta(2, 0.9)).epsilon(1e-12));
  CHECK_THROWS_AS((void)ts::lerch_phi(0.0, 1, 0.5), DomainError);
}

TEST_CASE("lerch phi handles nonpositive and large w by peeling") {
  // w = -1.3: two leading summands have negative bases.
  const double theta = 1.1;
  const int p = 2;
  const double w = -1.3;
  std::complex<double> brute(0.0, 0.0);
  for (long n = 2000000 - 1; n >= 0; --n) {
    const double angle = n * theta;
    brute += std::complex<double>(std::cos(angle), std::sin(angle)) /
             std::pow(n + w, p);
  }
  const auto exact = ts::lerch_phi(theta, p, w);
  CHECK(std::abs(exact - brute) < 1e-5);  // brute tail is ~5e-7
}

TEST_CASE("lerch pair matches termwise difference and the theta=0 limit") {
  const double w1 = 0.4, w2 = 1.9;
  for (double theta : {1.3, -2.2, 0.004}) {
    std::complex<double> brute(0.0, 0.0);
    for (long n = 4000000 - 1; n >= 0; --n) {
      const double angle = n * theta;
      brute += std::complex<double>(std::cos(angle), std::sin(angle)) *
               (1.0 / (n + w1) - 1.0 / (n + w2));
    }
    const auto exact = ts::lerch_phi_pair(theta, w1, w2);
    CHECK(std::abs(exact - brute) < 1e-5);  // pair terms decay like n^-2
  }
  const auto at_zero = ts::lerch_phi_pair(0.0, w1, w2);
  CHECK(at_zero.real() ==
        doctest::Approx(ts::digamma(w2) - ts::digamma(w1)).epsilon(1e-12));
  CHECK(at_zero.imag() == doctest::Approx(0.0));
}

TEST_CASE("real part of Li_2 on the circle matches the Bernoulli closed form") {
  for (double theta : {0.3, 1.0, 2.0, 4.0, 6.0}) {
    // sum cos(n theta)/n^2 = pi^2/6 - pi theta/2 + theta^2/4 on [0, 2pi]
    const auto phi = ts::lerch_phi(theta, 2, 1.0);
    const std::complex<double> li2 =
        phi * std::complex<double>(std::cos(theta), std::sin(theta));
    const double closed =
        kPi * kPi / 6.0 - kPi * theta / 2.0 + theta * theta / 4.0;
    CHECK(li2.real() == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("ladder power sum against brute force") {
  const struct {
    double theta;
    long first;
    int step;
    int p;
    double shift;
  } cases[] = {
      {0.7, 8, 9, 2, 0.0},   {0.7, 10, 9, 2, 0.0},  {2.9, 5, 18, 3, 0.0},
      {1.13, 4, 9, 2, 5.23}, {0.02, 8, 9, 4, -2.5}, {5.9, 13, 18, 2, 0.0},
  };
  for (const auto& c : cases) {
    double brute_cos = 0.0, brute_sin = 0.0;
    const long terms = 2000000;
    for (long i = terms - 1; i >= 0; --i) {
      const double n = static_cast<double>(c.first) + i * c.step;
      const double wgt = std::pow(n - c.shift, -c.p);
      brute_cos += std::cos(n * c.theta) * wgt;
      brute_sin += std::sin(n * c.theta) * wgt;
    }
    const auto sum =
        ts::ladder_power_sum(c.theta, c.first, c.step, c.p, c.shift);
    CAPTURE(c.theta);
    CAPTURE(c.p);
    CAPTURE(c.shift);
    CHECK(sum.cos_part == doctest::Approx(brute_cos).epsilon(5e-7));
    CHECK(sum.sin_part == doctest::Approx(brute_sin).epsilon(5e-7));
  }
}

TEST_CASE("ladder pair sum against brute force, including theta == 0") {
  for (double theta : {0.0, 0.9, 3.7}) {
    const long first = 5;
    const int step = 9;
    const double s1 = 7.31, s2 = -7.31;
    double brute_cos = 0.0, brute_sin = 0.0;
    for (long i = 4000000 - 1; i >= 0; --i) {
      const double n = static_cast<double>(first) + i * step;
      const double wgt = 1.0 / (n - s1) - 1.0 / (n - s2);
      brute_cos += std::cos(n * theta) * wgt;
      brute_sin += std::sin(n * theta) * wgt;
    }
    const auto sum = ts::ladder_pair_sum(theta, first, step, s1, s2);
    CAPTURE(theta);
    CHECK(sum.cos_part == doctest::Approx(brute_cos).epsilon(1e-6));
    CHECK(std::abs(sum.sin_part - brute_sin) < 1e-6);
  }
}

TEST_CASE("ladder sums flag exact poles") {
  CHECK_THROWS_AS(
      (void)ts::ladder_power_sum(1.0, 4, 9, 1, 4.0), SingularDenominator);
}
