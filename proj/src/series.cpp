#include "trigspline/series.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "trigspline/errors.hpp"

namespace trigspline::series {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606;
constexpr int kMaxBernoulli = 100;

long double binomial_ld(int n, int k) {
  long double b = 1.0L;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

const std::array<long double, kMaxBernoulli + 1>& bernoulli_table() {
  static const auto table = [] {
    std::array<long double, kMaxBernoulli + 1> b{};
    b[0] = 1.0L;
    for (int m = 1; m <= kMaxBernoulli; ++m) {
      long double acc = 0.0L;
      for (int k = 0; k < m; ++k) acc += binomial_ld(m + 1, k) * b[k];
      b[m] = -acc / (m + 1);
    }
    return b;
  }();
  return table;
}

// One complex exponential e^{i x} with the argument reduced first.
std::complex<double> unit_exp(double x) {
  const double r = std::remainder(x, 2.0 * kPi);
  return {std::cos(r), std::sin(r)};
}

double reduce_angle(double theta) { return std::remainder(theta, 2.0 * kPi); }

bool is_zero_angle(double reduced) { return reduced == 0.0; }

// Core Lerch series for w in (0, 1], theta reduced to [-pi, pi], theta != 0.
//   e^{-w mu} [ sum_{k != p-1} zeta(p-k, w) mu^k / k!
//               + mu^{p-1}/(p-1)! (H_{p-1} - gamma - psi(w) - ln(-mu)) ]
// with mu = i theta.  The split-off log term is returned separately so the
// pair version can cancel it analytically.
struct LerchCore {
  std::complex<double> smooth;      // everything except the log piece
  std::complex<double> log_coeff;   // coefficient of -ln(-mu), e^{-w mu} included
};

constexpr int kLerchTerms = 93;

// zeta(p-k, w)/k! for k = 0..kLerchTerms-1 plus the digamma piece of the
// special k = p-1 term, cached per (p, w): the same handful of (p, w) pairs
// recurs for every evaluation point of a spline configuration.
struct LerchTable {
  std::array<double, kLerchTerms> coeff;  // 0 at k == p-1
  double special;                          // (H_{p-1} - gamma - psi(w))/(p-1)!
};

const LerchTable& lerch_table(int p, double w) {
  thread_local std::unordered_map<std::uint64_t,
                                  std::unique_ptr<LerchTable>> cache;
  const std::uint64_t key =
      std::bit_cast<std::uint64_t>(w) ^ (static_cast<std::uint64_t>(p) << 1);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto table = std::make_unique<LerchTable>();
  double fact = 1.0;
  for (int k = 0; k < kLerchTerms; ++k) {
    if (k > 0) fact *= k;
    table->coeff[k] = (k == p - 1) ? 0.0 : zeta_int(p - k, w) / fact;
    if (k == p - 1) {
      double hsum = 0.0;
      for (int i = 1; i < p; ++i) hsum += 1.0 / i;
      table->special = (hsum - kEulerGamma - digamma(w)) / fact;
    }
  }
  return *cache.emplace(key, std::move(table)).first->second;
}

LerchCore lerch_core(double theta, int p, double w) {
  const LerchTable& table = lerch_table(p, w);
  const std::complex<double> mu(0.0, theta);
  std::complex<double> acc(0.0, 0.0);
  std::complex<double> mu_pow(1.0, 0.0);  // mu^k
  std::complex<double> special_factor(0.0, 0.0);
  double scale = 0.0;
  int small_count = 0;
  for (int k = 0; k < kLerchTerms; ++k) {
    if (k == p - 1) {
      acc += mu_pow * table.special;
      special_factor = mu_pow;
      double fact = 1.0;
      for (int i = 2; i <= k; ++i) fact *= i;
      special_factor /= fact;
    } else {
      const std::complex<double> term = mu_pow * table.coeff[k];
      acc += term;
      const double mag = std::abs(term);
      scale = std::max(scale, mag);
      if (k > p + 8) {
        small_count = (mag < 1e-20 * scale) ? small_count + 1 : 0;
        if (small_count >= 4) break;
      }
    }
    mu_pow *= mu;
  }
  const std::complex<double> pref = std::exp(-w * mu);
  LerchCore out;
  out.smooth = pref * acc;
  out.log_coeff = pref * special_factor;
  return out;
}

std::complex<double> log_neg_mu(double theta) {
  // ln(-i theta), principal branch
  return std::log(std::complex<double>(0.0, -theta));
}

struct SplitW {
  long offset;   // L with w = w0 + L
  double core_w; // w0 in (0, 4]
};

// The core series handles any moderate positive w directly; peeling is only
// needed for nonpositive w (explicit pole-side summands) and for very large
// w (to keep the Bernoulli-polynomial tail converging quickly).  Reducing
// positive w all the way to (0,1] would subtract near-equal large terms and
// lose precision at high p.
SplitW split_w(double w) {
  if (w > 4.0) {
    const long L = static_cast<long>(std::floor(w - 3.0));
    return {L, w - static_cast<double>(L)};
  }
  if (w <= 0.0) {
    const long L = -(static_cast<long>(std::floor(-w)) + 1);
    return {L, w - static_cast<double>(L)};
  }
  return {0, w};
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Explicit correction so that Phi(w) = z^{-L} (Phi_core(w0) + corr).
std::complex<double> offset_correction(const std::complex<double>& z, int p,
                                       const SplitW& sw) {
  std::complex<double> corr(0.0, 0.0);
  if (sw.offset > 0) {
    std::complex<double> zp(1.0, 0.0);
    for (long m = 0; m < sw.offset; ++m) {
      const double base = static_cast<double>(m) + sw.core_w;
      corr -= zp / ipow(base, p);
      zp *= z;
    }
  } else if (sw.offset < 0) {
    std::complex<double> zm(1.0, 0.0);
    for (long m = -1; m >= sw.offset; --m) {
      zm /= z;
      const double base = static_cast<double>(m) + sw.core_w;
      if (std::abs(base) < 1e-12)
        throw DomainError("lerch_phi: summand pole at nonpositive index");
      corr += zm / ipow(base, p);
    }
  }
  return corr;
}

std::complex<double> z_pow(const std::complex<double>& z, long e) {
  std::complex<double> r(1.0, 0.0);
  std::complex<double> base = e >= 0 ? z : 1.0 / z;
  long n = e >= 0 ? e : -e;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// exp(x) - 1 without cancellation for small |x|.
std::complex<double> complex_expm1(const std::complex<double>& x) {
  if (std::abs(x) > 0.5) return std::exp(x) - 1.0;
  std::complex<double> term = x;
  std::complex<double> acc = x;
  for (int k = 2; k <= 24; ++k) {
    term *= x / static_cast<double>(k);
    acc += term;
    if (std::abs(term) < 1e-20 * std::abs(acc)) break;
  }
  return acc;
}

}  // namespace

double bernoulli_number(int n) {
  if (n < 0 || n > kMaxBernoulli)
    throw std::invalid_argument("bernoulli_number: index out of range");
  return static_cast<double>(bernoulli_table()[n]);
}

double bernoulli_poly(int n, double x) {
  if (n < 0 || n > kMaxBernoulli)
    throw std::invalid_argument("bernoulli_poly: index out of range");
  const auto& b = bernoulli_table();
  long double acc = 0.0L;
  long double xp = 1.0L;  // x^{n-k} built from the top
  // Horner in x: B_n(x) = sum_k binom(n,k) B_k x^{n-k}
  for (int k = n; k >= 0; --k) {
    acc += binomial_ld(n, k) * b[k] * xp;
    xp *= x;
  }
  return static_cast<double>(acc);
}

double hurwitz_zeta(int s, double a) {
  if (s < 2) throw std::invalid_argument("hurwitz_zeta: requires s >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: requires a > 0");
  constexpr int kDirect = 24;
  constexpr int kCorrections = 12;
  long double acc = 0.0L;
  for (int n = 0; n < kDirect; ++n) acc += powl(n + static_cast<long double>(a), -s);
  const long double x = kDirect + static_cast<long double>(a);
  acc += powl(x, 1 - s) / (s - 1);
  acc += 0.5L * powl(x, -s);
  // Euler-Maclaurin corrections: B_{2i}/(2i)! * (s)_{2i-1} * x^{-s-2i+1}
  long double poch = s;  // (s)_{2i-1} built incrementally
  const auto& b = bernoulli_table();
  long double factorial = 2.0L;  // (2i)!
  for (int i = 1; i <= kCorrections; ++i) {
    if (i > 1) {
      poch *= (s + 2 * i - 3);
      poch *= (s + 2 * i - 2);
      factorial *= (2 * i - 1);
      factorial *= (2 * i);
    }
    acc += b[2 * i] / factorial * poch * powl(x, -s - 2 * i + 1);
  }
  return static_cast<double>(acc);
}

double zeta_int(int s, double a) {
  if (s == 1) throw std::invalid_argument("zeta_int: pole at s == 1");
  if (s >= 2) return hurwitz_zeta(s, a);
  const int n = 1 - s;  // >= 1
  return -bernoulli_poly(n, a) / n;
}

double riemann_zeta(int s) { return hurwitz_zeta(s, 1.0); }

double digamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double result = std::log(x) - 0.5 * inv;
  // asymptotic tail: - sum B_{2i} / (2i x^{2i})
  static const double coeff[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                 1.0 / 132, -691.0 / 32760, 1.0 / 12};
  double p = inv2;
  for (double c : coeff) {
    result -= c * p;
    p *= inv2;
  }
  return result + acc;
}

std::complex<double> lerch_phi(double theta, int p, double w) {
  if (p < 1) throw std::invalid_argument("lerch_phi: requires p >= 1");
  const double th = reduce_angle(theta);
  const SplitW sw = split_w(w);
  const std::complex<double> z = unit_exp(th);

  if (is_zero_angle(th)) {
    if (p == 1)
      throw DomainError("lerch_phi: divergent at theta == 0 with p == 1");
    double corr = 0.0;
    if (sw.offset > 0) {
      for (long m = 0; m < sw.offset; ++m)
        corr -= 1.0 / ipow(static_cast<double>(m) + sw.core_w, p);
    } else if (sw.offset < 0) {
      for (long m = -1; m >= sw.offset; --m) {
        const double base = static_cast<double>(m) + sw.core_w;
        if (std::abs(base) < 1e-12)
          throw DomainError("lerch_phi: summand pole at nonpositive index");
        corr += 1.0 / ipow(base, p);
      }
    }
    return hurwitz_zeta(p, sw.core_w) + corr;
  }

  const LerchCore core = lerch_core(th, p, sw.core_w);
  const std::complex<double> value =
      core.smooth - core.log_coeff * log_neg_mu(th);
  return z_pow(z, -sw.offset) * (value + offset_correction(z, p, sw));
}

std::complex<double> lerch_phi_pair(double theta, double w1, double w2) {
  const double th = reduce_angle(theta);
  const SplitW s1 = split_w(w1);
  const SplitW s2 = split_w(w2);
  const std::complex<double> z = unit_exp(th);

  if (is_zero_angle(th)) {
    double corr = 0.0;
    if (s1.offset > 0) {
      for (long m = 0; m < s1.offset; ++m) corr -= 1.0 / (m + s1.core_w);
    } else {
      for (long m = -1; m >= s1.offset; --m) {
        const double base = static_cast<double>(m) + s1.core_w;
        if (std::abs(base) < 1e-12)
          throw DomainError("lerch_phi_pair: summand pole");
        corr += 1.0 / base;
      }
    }
    if (s2.offset > 0) {
      for (long m = 0; m < s2.offset; ++m) corr += 1.0 / (m + s2.core_w);
    } else {
      for (long m = -1; m >= s2.offset; --m) {
        const double base = static_cast<double>(m) + s2.core_w;
        if (std::abs(base) < 1e-12)
          throw DomainError("lerch_phi_pair: summand pole");
        corr -= 1.0 / base;
      }
    }
    return corr + digamma(s2.core_w) - digamma(s1.core_w);
  }

  const LerchCore c1 = lerch_core(th, 1, s1.core_w);
  const LerchCore c2 = lerch_core(th, 1, s2.core_w);
  const std::complex<double> zL1 = z_pow(z, -s1.offset);
  const std::complex<double> zL2 = z_pow(z, -s2.offset);
  // Smooth and correction parts subtract directly.
  std::complex<double> result =
      zL1 * (c1.smooth + offset_correction(z, 1, s1)) -
      zL2 * (c2.smooth + offset_correction(z, 1, s2));
  // Combined log piece: -ln(-mu)(e^{-w1 mu} - e^{-w2 mu}), written with
  // expm1 so the cancellation survives theta -> 0.
  const std::complex<double> mu(0.0, th);
  const std::complex<double> diff =
      std::exp(-w2 * mu) * complex_expm1((w2 - w1) * mu);
  result -= log_neg_mu(th) * diff;
  return result;
}

LadderSum ladder_power_sum(double theta, long first, int step, int power,
                           double shift) {
  if (step < 1 || power < 1 || first < 1)
    throw std::invalid_argument("ladder_power_sum: bad ladder");
  LadderSum out;
  long n = first;
  while (static_cast<double>(n) - shift <= 0.0) {
    const double base = static_cast<double>(n) - shift;
    if (std::abs(base) < 1e-9 * std::max(1.0, std::abs(shift)))
      throw SingularDenominator("ladder_power_sum: ladder element at pole");
    const double wgt = 1.0 / ipow(base, power);
    out.cos_part += std::cos(n * theta) * wgt;
    out.sin_part += std::sin(n * theta) * wgt;
    n += step;
  }
  const double w = (static_cast<double>(n) - shift) / step;
  const std::complex<double> tail =
      unit_exp(n * theta) * std::pow(static_cast<double>(step), -power) *
      lerch_phi(step * theta, power, w);
  out.cos_part += tail.real();
  out.sin_part += tail.imag();
  return out;
}

LadderSum ladder_pair_sum(double theta, long first, int step, double shift1,
                          double shift2) {
  if (step < 1 || first < 1)
    throw std::invalid_argument("ladder_pair_sum: bad ladder");
  LadderSum out;
  long n = first;
  const double top = std::max(shift1, shift2);
  while (static_cast<double>(n) - top <= 0.0) {
    double term = 0.0;
    for (double shift : {shift1, shift2}) {
      const double base = static_cast<double>(n) - shift;
      if (std::abs(base) < 1e-9 * std::max(1.0, std::abs(shift)))
        throw SingularDenominator("ladder_pair_sum: ladder element at pole");
      term += (shift == shift1 ? 1.0 : -1.0) / base;
    }
    out.cos_part += std::cos(n * theta) * term;
    out.sin_part += std::sin(n * theta) * term;
    n += step;
  }
  const double w1 = (static_cast<double>(n) - shift1) / step;
  const double w2 = (static_cast<double>(n) - shift2) / step;
  const std::complex<double> tail = unit_exp(n * theta) *
                                    lerch_phi_pair(step * theta, w1, w2) /
                                    static_cast<double>(step);
  out.cos_part += tail.real();
  out.sin_part += tail.imag();
  return out;
}

}  // namespace trigspline::series
