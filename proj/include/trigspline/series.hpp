#pragma once

#include <complex>

namespace trigspline::series {

// Bernoulli number B_n in the B_1 = -1/2 convention.
double bernoulli_number(int n);

// Bernoulli polynomial B_n(x).
double bernoulli_poly(int n, double x);

// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^{-s} for integer s >= 2, a > 0.
double hurwitz_zeta(int s, double a);

// zeta(s, a) for any integer s != 1 (negative s via Bernoulli polynomials).
double zeta_int(int s, double a);

double riemann_zeta(int s);

// psi(x) for x > 0.
double digamma(double x);

// Lerch transcendent on the unit circle:
//   lerch_phi(theta, p, w) = sum_{n>=0} e^{i n theta} (n + w)^{-p}
// for integer p >= 1 and real w with w + n != 0 for all n >= 0.
// p == 1 requires theta != 0 (mod 2pi); the series then converges
// conditionally and the analytic value is returned.
std::complex<double> lerch_phi(double theta, int p, double w);

// lerch_phi(theta, 1, w1) - lerch_phi(theta, 1, w2).  The logarithmic
// singularity at theta == 0 (mod 2pi) cancels in the difference, so this
// is defined for all theta; at theta == 0 it equals psi(w2) - psi(w1).
std::complex<double> lerch_phi_pair(double theta, double w1, double w2);

struct LadderSum {
  double cos_part = 0.0;  // sum of cos(n*theta) * weight(n)
  double sin_part = 0.0;  // sum of sin(n*theta) * weight(n)
};

// Sum over the arithmetic ladder n = first, first+step, first+2*step, ...
// of trig(n*theta) * (n - shift)^{-power}.  Elements with n < shift are
// summed explicitly; the analytic tail uses lerch_phi.  power == 1 with
// theta == 0 (mod 2pi) diverges and throws.
LadderSum ladder_power_sum(double theta, long first, int step, int power,
                           double shift = 0.0);

// Paired first-order ladder:
//   sum over n in the ladder of trig(n*theta) * [ (n-shift1)^{-1} - (n-shift2)^{-1} ].
// Defined for all theta; the individual divergences at theta == 0 cancel.
LadderSum ladder_pair_sum(double theta, long first, int step, double shift1,
                          double shift2);

}  // namespace trigspline::series
