#include "trigspline/atoms.hpp"

#include <cmath>
#include <numbers>

#include "trigspline/errors.hpp"
#include "trigspline/series.hpp"

namespace trigspline::atoms {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAtoms = 160;

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Normalize trig(freq*n) to freq >= 0.
void push_atom(std::vector<TrigAtom>& out, double amp, bool is_sin, double freq,
               int power, double shift = 0.0) {
  if (amp == 0.0) return;
  if (freq < 0.0) {
    freq = -freq;
    if (is_sin) amp = -amp;
  }
  out.push_back({amp, is_sin, freq, power, shift});
}

void push_pair(std::vector<PairAtom>& out, double amp, bool is_sin, double freq,
               double s1, double s2) {
  if (amp == 0.0) return;
  if (freq < 0.0) {
    freq = -freq;
    if (is_sin) amp = -amp;
  }
  out.push_back({amp, is_sin, freq, s1, s2});
}

// sin^P(x) as a finite combination of sin/cos of multiples of x.
// P even:  2^{-P} binom(P,P/2) + 2^{1-P} sum_i (-1)^i binom(P,P/2-i) cos(2ix)
// P odd:   2^{1-P} sum_i (-1)^i binom(P,(P-1)/2-i) sin((2i+1)x)
struct Harmonic {
  double coeff;
  bool is_sin;
  int multiple;
};

std::vector<Harmonic> sin_power_reduction(int P) {
  std::vector<Harmonic> out;
  const double scale = std::pow(2.0, 1 - P);
  if (P % 2 == 0) {
    out.push_back({std::pow(2.0, -P) * binom(P, P / 2), false, 0});
    for (int i = 1; i <= P / 2; ++i) {
      const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
      out.push_back({scale * sgn * binom(P, P / 2 - i), false, 2 * i});
    }
  } else {
    for (int i = 0; i <= (P - 1) / 2; ++i) {
      const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
      out.push_back({scale * sgn * binom(P, (P - 1) / 2 - i), true, 2 * i + 1});
    }
  }
  return out;
}

struct TaylorTerm {
  int degree;
  double coeff;
  double majorant;  // upper bound on |coeff|
};

// Taylor data of the transform around 0, term by term.
std::vector<TaylorTerm> taylor_terms(TransformKind kind, double a, int m_root,
                                     int max_degree) {
  std::vector<TaylorTerm> out;
  switch (kind) {
    case TransformKind::Sin: {
      double fact = 1.0;
      for (int i = 0; 2 * i + 1 <= max_degree; ++i) {
        if (i > 0) fact *= (2.0 * i) * (2.0 * i + 1);
        const double c = ((i % 2 == 0) ? 1.0 : -1.0) / fact;
        out.push_back({2 * i + 1, c, std::abs(c)});
      }
      break;
    }
    case TransformKind::Arcsin: {
      double c = 1.0;
      for (int i = 0; 2 * i + 1 <= max_degree; ++i) {
        if (i > 0)
          c *= (2.0 * i - 1) / (2.0 * i) * (2.0 * i - 1) / (2.0 * i + 1);
        out.push_back({2 * i + 1, c, c});
      }
      break;
    }
    case TransformKind::Tan: {
      for (int i = 1; 2 * i - 1 <= max_degree; ++i) {
        double fact = 1.0;
        for (int s = 2; s <= 2 * i; ++s) fact *= s;
        const double c = ipow(2.0, 2 * i) * (ipow(2.0, 2 * i) - 1.0) *
                         std::abs(series::bernoulli_number(2 * i)) / fact;
        out.push_back({2 * i - 1, c, 3.3 * std::pow(2.0 / kPi, 2.0 * i)});
      }
      break;
    }
    case TransformKind::Arctan: {
      for (int i = 0; 2 * i + 1 <= max_degree; ++i) {
        const double c = ((i % 2 == 0) ? 1.0 : -1.0) / (2 * i + 1);
        out.push_back({2 * i + 1, c, std::abs(c)});
      }
      break;
    }
    case TransformKind::Log: {
      for (int d = 1; d <= max_degree; ++d) {
        const double c = ((d % 2 == 1) ? 1.0 : -1.0) / d;
        out.push_back({d, c, std::abs(c)});
      }
      break;
    }
    case TransformKind::Exp: {
      const double la = std::log(a);
      double c = 1.0;  // (ln a)^{d-1} / d!
      for (int d = 1; d <= max_degree; ++d) {
        if (d > 1) c *= la / d;
        else c = 1.0;
        out.push_back({d, c, std::abs(c)});
      }
      break;
    }
    case TransformKind::Root: {
      double t = 1.0;  // m * binom(1/m, d)
      for (int d = 1; d <= max_degree; ++d) {
        if (d > 1) t *= (1.0 / m_root - (d - 1)) / d;
        out.push_back({d, t, std::abs(t)});
      }
      break;
    }
  }
  return out;
}

double taylor_radius(TransformKind kind) {
  switch (kind) {
    case TransformKind::Sin:
    case TransformKind::Exp:
      return 4.0;  // entire; bound only to keep term counts finite
    case TransformKind::Tan:
      return kPi / 2;
    default:
      return 1.0;
  }
}

std::optional<AtomSeries> decompose_unmodulated(const FactorSpec& spec,
                                                long n_min);

// Representation of the base value b(n) as a pure power (ConstantPower) or
// a trig-harmonic power (SincPower).  b^degree expands into atoms.
void append_base_power(std::vector<TrigAtom>& out, const FactorSpec& spec,
                       double coeff, int degree) {
  const int q = 1 + spec.r;
  if (spec.base == BaseFamily::ConstantPower) {
    push_atom(out, coeff * std::pow(spec.alpha, degree), false, 0.0,
              degree * q, 0.0);
    return;
  }
  // (sin(alpha n)/(alpha n))^{q*degree}
  const int P = q * degree;
  const double inv = std::pow(spec.alpha, -P);
  for (const Harmonic& h : sin_power_reduction(P))
    push_atom(out, coeff * inv * h.coeff, h.is_sin, h.multiple * spec.alpha, P,
              0.0);
}

std::optional<AtomSeries> decompose_transformed(const FactorSpec& spec,
                                                long n_min) {
  const FactorSpec base = spec.base == BaseFamily::ConstantPower
                              ? FactorSpec::constant_power(spec.alpha, spec.r)
                              : FactorSpec::sinc_power(spec.alpha, spec.r);
  const double b_max = tail_envelope(base, n_min);
  const double radius = taylor_radius(spec.transform);
  if (!(b_max <= 0.7 * radius)) return std::nullopt;

  const int q = 1 + spec.r;
  const PowerBound base_bound = power_bound(base);
  AtomSeries series;
  series.valid_from = n_min;

  const auto terms = taylor_terms(spec.transform, spec.a, spec.m_root, 48);
  double first_scale = 0.0;
  int used_degree = 0;
  size_t used = 0;
  for (const TaylorTerm& t : terms) {
    const double term_bound = t.majorant * std::pow(b_max, t.degree);
    if (first_scale == 0.0) first_scale = term_bound;
    if (term_bound < 1e-22 * first_scale && used > 0) break;
    append_base_power(series.power_atoms, spec, t.coeff, t.degree);
    used_degree = t.degree;
    ++used;
    if (series.power_atoms.size() > kMaxAtoms) return std::nullopt;
  }
  // Remainder: sum of dropped majorant terms, expressed against n^{-q*D}.
  const int D = used_degree + 1;
  double k_sum = 0.0;
  double ratio_scale = 1.0;
  for (const TaylorTerm& t : terms) {
    if (t.degree < D) continue;
    k_sum += t.majorant * std::pow(b_max, t.degree - D);
  }
  // Geometric slack for degrees beyond the table.
  k_sum *= 1.5;
  ratio_scale = std::pow(base_bound.coeff, D);
  series.remainder_coeff = k_sum * ratio_scale;
  series.remainder_order = q * D;
  return series;
}

AtomSeries decompose_bump_poly(const FactorSpec& spec) {
  struct Entry {
    double amp;
    bool is_sin;
    int power;
  };
  static const std::vector<Entry> kTable[5] = {
      {},
      {{3.0, true, 3}, {-3.0, false, 2}},
      {{-15.0, true, 3}, {45.0, true, 5}, {-45.0, false, 4}},
      {{1575.0, true, 7}, {-630.0, true, 5}, {-1575.0, false, 6},
       {105.0, false, 4}},
      {{99225.0, true, 9}, {-42525.0, true, 7}, {945.0, true, 5},
       {-99225.0, false, 8}, {9450.0, false, 6}},
  };
  AtomSeries series;
  for (const Entry& e : kTable[spec.r])
    push_atom(series.power_atoms, e.amp / (kPi * ipow(spec.alpha, e.power)),
              e.is_sin, spec.alpha, e.power, 0.0);
  return series;
}

AtomSeries decompose_bump_sine(const FactorSpec& spec) {
  AtomSeries series;
  const double alpha = spec.alpha;
  if (spec.r % 2 == 1) {
    const int l = (spec.r - 1) / 2;
    double dfac = 1.0;
    for (int i = 1; i <= 2 * l + 1; i += 2) dfac *= i;
    const double S = ((l % 2 == 0) ? -1.0 : 1.0) * dfac * dfac *
                     ipow(kPi, 2 * (l + 1));
    std::vector<double> betas(l + 1);
    for (int i = 0; i <= l; ++i) betas[i] = (2 * i + 1) * kPi / (2.0 * alpha);
    for (int i = 0; i <= l; ++i) {
      double c = 1.0;
      for (int i2 = 0; i2 <= l; ++i2)
        if (i2 != i) c /= (betas[i] * betas[i] - betas[i2] * betas[i2]);
      const double amp =
          S * c / (ipow(4.0 * alpha * alpha, l + 1) * 2.0 * betas[i]);
      push_pair(series.pair_atoms, amp, false, alpha, betas[i], -betas[i]);
    }
    return series;
  }
  const int l = spec.r / 2;
  double lf = 1.0;
  for (int i = 2; i <= l; ++i) lf *= i;
  const double S = ((l % 2 == 0) ? 1.0 : -1.0) * lf * lf * ipow(kPi, 2 * l);
  std::vector<double> deltas(l);
  for (int i = 1; i <= l; ++i) deltas[i - 1] = i * kPi / alpha;
  for (int i = 0; i < l; ++i) {
    double c = 1.0;
    for (int i2 = 0; i2 < l; ++i2)
      if (i2 != i) c /= (deltas[i] * deltas[i] - deltas[i2] * deltas[i2]);
    const double amp = S * c /
                       (ipow(alpha, 2 * l) * alpha * 2.0 * deltas[i] *
                        deltas[i]);
    push_pair(series.pair_atoms, amp, true, alpha, deltas[i], 0.0);
    push_pair(series.pair_atoms, amp, true, alpha, -deltas[i], 0.0);
  }
  return series;
}

std::optional<AtomSeries> multiply_series(const AtomSeries& x,
                                          const AtomSeries& y,
                                          const FactorSpec& fx,
                                          const FactorSpec& fy) {
  if (!x.pair_atoms.empty() || !y.pair_atoms.empty()) return std::nullopt;
  if (x.power_atoms.size() * y.power_atoms.size() > kMaxAtoms / 2)
    return std::nullopt;
  AtomSeries out;
  out.valid_from = std::max(x.valid_from, y.valid_from);
  for (const TrigAtom& a : x.power_atoms) {
    for (const TrigAtom& b : y.power_atoms) {
      if (a.shift != 0.0 || b.shift != 0.0) return std::nullopt;
      const double amp = 0.5 * a.amp * b.amp;
      const int p = a.power + b.power;
      const double fsum = a.freq + b.freq;
      const double fdiff = a.freq - b.freq;
      if (!a.is_sin && !b.is_sin) {          // cos cos
        push_atom(out.power_atoms, amp, false, fsum, p);
        push_atom(out.power_atoms, amp, false, fdiff, p);
      } else if (a.is_sin && b.is_sin) {     // sin sin
        push_atom(out.power_atoms, amp, false, fdiff, p);
        push_atom(out.power_atoms, -amp, false, fsum, p);
      } else if (a.is_sin && !b.is_sin) {    // sin cos
        push_atom(out.power_atoms, amp, true, fsum, p);
        push_atom(out.power_atoms, amp, true, fdiff, p);
      } else {                               // cos sin
        push_atom(out.power_atoms, amp, true, fsum, p);
        push_atom(out.power_atoms, -amp, true, fdiff, p);
      }
    }
  }
  // |f g - A B| <= |f - A| |g|-bound + |A|-bound |g - B|, folded into a
  // single power-law remainder.
  const PowerBound px = power_bound(fx);
  const PowerBound py = power_bound(fy);
  const int ord = std::min(x.remainder_order + py.order,
                           px.order + y.remainder_order);
  out.remainder_coeff = x.remainder_coeff * py.coeff +
                        px.coeff * y.remainder_coeff +
                        x.remainder_coeff * y.remainder_coeff;
  out.remainder_order = ord;
  return out;
}

void apply_alternating(AtomSeries& series) {
  // (-1)^n == cos(pi n): split every atom into freq +- pi halves.
  std::vector<TrigAtom> power;
  for (const TrigAtom& a : series.power_atoms) {
    push_atom(power, 0.5 * a.amp, a.is_sin, a.freq + kPi, a.power, a.shift);
    push_atom(power, 0.5 * a.amp, a.is_sin, a.freq - kPi, a.power, a.shift);
  }
  series.power_atoms = std::move(power);
  std::vector<PairAtom> pairs;
  for (const PairAtom& a : series.pair_atoms) {
    push_pair(pairs, 0.5 * a.amp, a.is_sin, a.freq + kPi, a.shift1, a.shift2);
    push_pair(pairs, 0.5 * a.amp, a.is_sin, a.freq - kPi, a.shift1, a.shift2);
  }
  series.pair_atoms = std::move(pairs);
}

void scale_series(AtomSeries& series, double s) {
  for (TrigAtom& a : series.power_atoms) a.amp *= s;
  for (PairAtom& a : series.pair_atoms) a.amp *= s;
  series.remainder_coeff *= std::abs(s);
}

std::optional<AtomSeries> decompose_unmodulated(const FactorSpec& spec,
                                                long n_min) {
  switch (spec.family) {
    case FactorFamily::ConstantPower: {
      AtomSeries s;
      push_atom(s.power_atoms, spec.alpha, false, 0.0, 1 + spec.r, 0.0);
      return s;
    }
    case FactorFamily::SincPower: {
      AtomSeries s;
      const int P = 1 + spec.r;
      const double inv = std::pow(spec.alpha, -P);
      for (const Harmonic& h : sin_power_reduction(P))
        push_atom(s.power_atoms, inv * h.coeff, h.is_sin,
                  h.multiple * spec.alpha, P, 0.0);
      return s;
    }
    case FactorFamily::Transformed:
      return decompose_transformed(spec, n_min);
    case FactorFamily::BumpSine:
      return decompose_bump_sine(spec);
    case FactorFamily::BumpPoly:
      return decompose_bump_poly(spec);
    case FactorFamily::Composite: {
      const long head_len = static_cast<long>(spec.head.size());
      auto tail = decompose_factor(*spec.tail, std::max(n_min, head_len + 1));
      if (!tail) return std::nullopt;
      tail->valid_from = std::max(tail->valid_from, head_len + 1);
      return tail;
    }
    case FactorFamily::Product: {
      auto a = decompose_factor(*spec.left, n_min);
      auto b = decompose_factor(*spec.right, n_min);
      if (!a || !b) return std::nullopt;
      return multiply_series(*a, *b, *spec.left, *spec.right);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AtomSeries> decompose_factor(const FactorSpec& spec, long n_min) {
  auto series = decompose_unmodulated(spec, n_min);
  if (!series) return std::nullopt;
  series->valid_from = std::max(series->valid_from, n_min);
  switch (spec.modulation) {
    case Modulation::None:
      break;
    case Modulation::Alternating:
      apply_alternating(*series);
      break;
    case Modulation::EvenHalf: {
      AtomSeries alt = *series;
      apply_alternating(alt);
      scale_series(*series, 0.5);
      scale_series(alt, 0.5);
      series->power_atoms.insert(series->power_atoms.end(),
                                 alt.power_atoms.begin(),
                                 alt.power_atoms.end());
      series->pair_atoms.insert(series->pair_atoms.end(),
                                alt.pair_atoms.begin(), alt.pair_atoms.end());
      series->remainder_coeff += alt.remainder_coeff;
      break;
    }
  }
  if (spec.scale != 1.0) scale_series(*series, spec.scale);
  if (series->power_atoms.size() + series->pair_atoms.size() > kMaxAtoms)
    return std::nullopt;
  return series;
}

double atom_series_value(const AtomSeries& series, long n) {
  double v = 0.0;
  for (const TrigAtom& a : series.power_atoms) {
    const double t = a.is_sin ? std::sin(a.freq * n) : std::cos(a.freq * n);
    v += a.amp * t / ipow(static_cast<double>(n) - a.shift, a.power);
  }
  for (const PairAtom& a : series.pair_atoms) {
    const double t = a.is_sin ? std::sin(a.freq * n) : std::cos(a.freq * n);
    v += a.amp * t *
         (1.0 / (static_cast<double>(n) - a.shift1) -
          1.0 / (static_cast<double>(n) - a.shift2));
  }
  return v;
}

}  // namespace trigspline::atoms
