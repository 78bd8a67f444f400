#include "trigspline/factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "trigspline/errors.hpp"

namespace trigspline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

double double_factorial_odd(int l) {
  // (2l+1)!!
  double r = 1.0;
  for (int i = 1; i <= 2 * l + 1; i += 2) r *= i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double modulation_weight(Modulation mod, long j) {
  switch (mod) {
    case Modulation::None:
      return 1.0;
    case Modulation::Alternating:
      return (j % 2 == 0) ? 1.0 : -1.0;
    case Modulation::EvenHalf:
      return (j % 2 == 0) ? 1.0 : 0.0;
  }
  return 1.0;
}

double unmodulated_value(const FactorSpec& spec, long j);

// Lipschitz constant of a transform on [-B, B] (or [0, B] when the base is
// known positive), so that |T(x)| <= L |x| there.  Infinity when the range
// leaves the transform's domain.
double transform_lipschitz(TransformKind kind, double B, bool base_positive,
                           double a, int m_root) {
  switch (kind) {
    case TransformKind::Sin:
    case TransformKind::Arctan:
      return 1.0;
    case TransformKind::Arcsin:
      if (B > 1.0) return kInf;
      if (B < 1e-8) return 1.0;
      return std::asin(B) / B;
    case TransformKind::Tan:
      if (B >= kPi / 2) return kInf;
      if (B < 1e-8) return 1.0;
      return std::tan(B) / B;
    case TransformKind::Log:
      if (base_positive) return 1.0;
      if (B >= 1.0) return kInf;
      return 1.0 / (1.0 - B);
    case TransformKind::Exp:
      return std::exp(std::abs(std::log(a)) * B);
    case TransformKind::Root:
      if (base_positive) return 1.0;
      if (B >= 1.0) return kInf;
      return std::pow(1.0 - B, 1.0 / m_root - 1.0);
  }
  return kInf;
}

FactorSpec base_spec(const FactorSpec& spec) {
  FactorSpec b;
  b.family = spec.base == BaseFamily::ConstantPower ? FactorFamily::ConstantPower
                                                    : FactorFamily::SincPower;
  b.alpha = spec.alpha;
  b.r = spec.r;
  return b;
}

}  // namespace

FactorSpec FactorSpec::constant_power(double alpha, int r) {
  FactorSpec s;
  s.family = FactorFamily::ConstantPower;
  s.alpha = alpha;
  s.r = r;
  s.validate();
  return s;
}

FactorSpec FactorSpec::sinc_power(double alpha, int r) {
  FactorSpec s;
  s.family = FactorFamily::SincPower;
  s.alpha = alpha;
  s.r = r;
  s.validate();
  return s;
}

FactorSpec FactorSpec::transformed(TransformKind kind, BaseFamily base,
                                   double alpha, int r, double a, int m_root) {
  FactorSpec s;
  s.family = FactorFamily::Transformed;
  s.transform = kind;
  s.base = base;
  s.alpha = alpha;
  s.r = r;
  s.a = a;
  s.m_root = m_root;
  s.validate();
  return s;
}

FactorSpec FactorSpec::bump_sine(double alpha, int r) {
  FactorSpec s;
  s.family = FactorFamily::BumpSine;
  s.alpha = alpha;
  s.r = r;
  s.validate();
  return s;
}

FactorSpec FactorSpec::bump_poly(double alpha, int r) {
  FactorSpec s;
  s.family = FactorFamily::BumpPoly;
  s.alpha = alpha;
  s.r = r;
  s.validate();
  return s;
}

FactorSpec FactorSpec::composite(std::vector<double> head, FactorSpec tail) {
  FactorSpec s;
  s.family = FactorFamily::Composite;
  s.head = std::move(head);
  s.r = tail.r;
  s.tail = std::make_shared<const FactorSpec>(std::move(tail));
  s.validate();
  return s;
}

FactorSpec FactorSpec::product(FactorSpec f1, FactorSpec f2) {
  FactorSpec s;
  s.family = FactorFamily::Product;
  s.r = decay_order(f1) + decay_order(f2) - 1;
  s.left = std::make_shared<const FactorSpec>(std::move(f1));
  s.right = std::make_shared<const FactorSpec>(std::move(f2));
  s.validate();
  return s;
}

FactorSpec FactorSpec::alternating_power(double alpha, int r) {
  FactorSpec s = constant_power(alpha, r);
  s.modulation = Modulation::Alternating;
  return s;
}

FactorSpec FactorSpec::even_half_power(double alpha, int r) {
  FactorSpec s = constant_power(alpha, r);
  s.modulation = Modulation::EvenHalf;
  return s;
}

FactorSpec FactorSpec::scaled(double s) const {
  if (!(s > 0.0)) throw ConfigError("factor scale must be positive");
  FactorSpec out = *this;
  out.scale *= s;
  return out;
}

void FactorSpec::validate() const {
  if (!(scale > 0.0)) throw ConfigError("factor scale must be positive");
  switch (family) {
    case FactorFamily::ConstantPower:
      if (r < 1) throw ConfigError("constant-power factor requires r >= 1");
      if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
      break;
    case FactorFamily::SincPower:
      if (r < 0) throw ConfigError("sinc-power factor requires r >= 0");
      if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
      break;
    case FactorFamily::Transformed:
      if (r < 1) throw ConfigError("transformed factor requires r >= 1");
      if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
      if (transform == TransformKind::Log || transform == TransformKind::Exp) {
        if (!(a > 0.0) || a == 1.0)
          throw ConfigError("log/exp transform requires a > 0, a != 1");
      }
      if (transform == TransformKind::Root && m_root < 2)
        throw ConfigError("root transform requires m_root >= 2");
      break;
    case FactorFamily::BumpSine:
      if (r < 1) throw ConfigError("sine-bump factor requires r >= 1");
      if (!(alpha > 0.0 && alpha < kPi))
        throw ConfigError("sine-bump factor requires 0 < alpha < pi");
      break;
    case FactorFamily::BumpPoly:
      if (r < 1 || r > 4)
        throw UnsupportedOrder("polynomial-bump factor supports r in 1..4");
      if (!(alpha > 0.0 && alpha < kPi))
        throw ConfigError("polynomial-bump factor requires 0 < alpha < pi");
      break;
    case FactorFamily::Composite:
      if (head.empty()) throw ConfigError("composite factor requires a head");
      if (!tail) throw ConfigError("composite factor requires a tail");
      tail->validate();
      break;
    case FactorFamily::Product:
      if (!left || !right) throw ConfigError("product factor requires operands");
      left->validate();
      right->validate();
      break;
  }
}

bool operator==(const FactorSpec& a, const FactorSpec& b) {
  if (a.family != b.family || a.r != b.r || a.alpha != b.alpha ||
      a.scale != b.scale || a.modulation != b.modulation)
    return false;
  switch (a.family) {
    case FactorFamily::Transformed:
      if (a.transform != b.transform || a.base != b.base) return false;
      if ((a.transform == TransformKind::Log ||
           a.transform == TransformKind::Exp) &&
          a.a != b.a)
        return false;
      if (a.transform == TransformKind::Root && a.m_root != b.m_root)
        return false;
      return true;
    case FactorFamily::Composite:
      return a.head == b.head && *a.tail == *b.tail;
    case FactorFamily::Product:
      return *a.left == *b.left && *a.right == *b.right;
    default:
      return true;
  }
}

int decay_order(const FactorSpec& spec) {
  switch (spec.family) {
    case FactorFamily::Composite:
      return decay_order(*spec.tail);
    case FactorFamily::Product:
      return decay_order(*spec.left) + decay_order(*spec.right);
    default:
      return 1 + spec.r;
  }
}

double constant_power_value(double alpha, int r, long j) {
  return alpha * std::pow(static_cast<double>(j), -(1.0 + r));
}

double sinc_power_value(double alpha, int r, long j) {
  const double x = alpha * static_cast<double>(j);
  return ipow(std::sin(x) / x, 1 + r);
}

double transformed_value(const FactorSpec& spec, long j) {
  const double b = unmodulated_value(base_spec(spec), j);
  switch (spec.transform) {
    case TransformKind::Sin:
      return std::sin(b);
    case TransformKind::Arcsin:
      if (std::abs(b) > 1.0)
        throw DomainError("arcsin transform: |base| > 1 at j = " +
                          std::to_string(j));
      return std::asin(b);
    case TransformKind::Tan:
      return std::tan(b);
    case TransformKind::Arctan:
      return std::atan(b);
    case TransformKind::Log:
      // ln(a) * log_a(1 + b) == ln(1 + b); the 1+ keeps the argument off the
      // logarithm's singularity for decaying bases of either sign.
      if (1.0 + b <= 0.0)
        throw DomainError("log transform: 1 + base <= 0 at j = " +
                          std::to_string(j));
      return std::log1p(b);
    case TransformKind::Exp:
      return std::expm1(b * std::log(spec.a)) / std::log(spec.a);
    case TransformKind::Root: {
      if (1.0 + b < 0.0)
        throw DomainError("root transform: 1 + base < 0 at j = " +
                          std::to_string(j));
      return spec.m_root * std::expm1(std::log1p(b) / spec.m_root);
    }
  }
  throw std::logic_error("unknown transform");
}

double bump_sine_coefficient(int r, double alpha, long k) {
  if (r < 1) throw UnsupportedOrder("sine-bump coefficient requires r >= 1");
  if (!(alpha > 0.0 && alpha < kPi))
    throw ConfigError("sine-bump coefficient requires 0 < alpha < pi");
  if (k < 1) throw IndexOutOfRange("sine-bump coefficient requires k >= 1");
  const double ak = alpha * static_cast<double>(k);
  if (r % 2 == 1) {
    const int l = (r - 1) / 2;
    double denom = 1.0;
    for (int i = 0; i <= l; ++i) {
      const double odd = 2 * i + 1;
      const double f = 4.0 * ak * ak - odd * odd * kPi * kPi;
      const double ref = 4.0 * ak * ak + odd * odd * kPi * kPi;
      if (std::abs(f) < 1e-12 * ref)
        throw SingularDenominator("sine-bump resonance at k = " +
                                  std::to_string(k));
      denom *= f;
    }
    const double dfac = double_factorial_odd(l);
    const double sign = (l % 2 == 0) ? -1.0 : 1.0;  // (-1)^{l+1}
    return sign * dfac * dfac * ipow(kPi, 2 * (l + 1)) * std::cos(ak) / denom;
  }
  const int l = r / 2;
  double denom = 1.0;
  for (int i = 1; i <= l; ++i) {
    const double f = ak * ak - static_cast<double>(i) * i * kPi * kPi;
    const double ref = ak * ak + static_cast<double>(i) * i * kPi * kPi;
    if (std::abs(f) < 1e-12 * ref)
      throw SingularDenominator("sine-bump resonance at k = " +
                                std::to_string(k));
    denom *= f;
  }
  const double lf = factorial(l);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;  // (-1)^l
  return sign * lf * lf * ipow(kPi, 2 * l) / denom * std::sin(ak) / ak;
}

double bump_poly_coefficient(int r, double alpha, long k) {
  if (r < 1 || r > 4)
    throw UnsupportedOrder("polynomial-bump coefficient supports r in 1..4");
  if (!(alpha > 0.0 && alpha < kPi))
    throw ConfigError("polynomial-bump coefficient requires 0 < alpha < pi");
  if (k < 1)
    throw IndexOutOfRange("polynomial-bump coefficient requires k >= 1");
  const double x = alpha * static_cast<double>(k);
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (r) {
    case 1:
      return 3.0 * (s - x * c) / (kPi * ipow(x, 3));
    case 2:
      return -15.0 * ((x * x - 3.0) * s + 3.0 * x * c) / (kPi * ipow(x, 5));
    case 3:
      return 105.0 * ((15.0 - 6.0 * x * x) * s - (15.0 - x * x) * x * c) /
             (kPi * ipow(x, 7));
    case 4:
      return 945.0 *
             ((105.0 - 45.0 * x * x + ipow(x, 4)) * s -
              (105.0 - 10.0 * x * x) * x * c) /
             (kPi * ipow(x, 9));
  }
  throw std::logic_error("unreachable");
}

double composite_value(const std::vector<double>& head, const FactorSpec& tail,
                       long j) {
  if (j <= static_cast<long>(head.size())) return head[j - 1];
  return factor_value(tail, j);
}

double product_value(const FactorSpec& f1, const FactorSpec& f2, long j) {
  return factor_value(f1, j) * factor_value(f2, j);
}

namespace {

double unmodulated_value(const FactorSpec& spec, long j) {
  switch (spec.family) {
    case FactorFamily::ConstantPower:
      return constant_power_value(spec.alpha, spec.r, j);
    case FactorFamily::SincPower:
      return sinc_power_value(spec.alpha, spec.r, j);
    case FactorFamily::Transformed:
      return transformed_value(spec, j);
    case FactorFamily::BumpSine:
      return bump_sine_coefficient(spec.r, spec.alpha, j);
    case FactorFamily::BumpPoly:
      return bump_poly_coefficient(spec.r, spec.alpha, j);
    case FactorFamily::Composite:
      return composite_value(spec.head, *spec.tail, j);
    case FactorFamily::Product:
      return product_value(*spec.left, *spec.right, j);
  }
  throw std::logic_error("unknown factor family");
}

}  // namespace

double factor_value(const FactorSpec& spec, long j) {
  if (j < 1) throw IndexOutOfRange("factor_value requires j >= 1");
  return spec.scale * modulation_weight(spec.modulation, j) *
         unmodulated_value(spec, j);
}

namespace {

// |mu_k| * k^{1+r} bound for the sine bump: beyond the threshold every
// denominator factor exceeds half its leading term, below it we scan.
double bump_sine_power_coeff(int r, double alpha) {
  const int q = 1 + r;
  if (r % 2 == 1) {
    const int l = (r - 1) / 2;
    const double k0 = (2 * l + 1) * kPi / (std::sqrt(2.0) * alpha);
    const double dfac = double_factorial_odd(l);
    double coeff = dfac * dfac * ipow(kPi, 2 * (l + 1)) /
                   ipow(2.0 * alpha * alpha, l + 1);
    for (long k = 1; k <= static_cast<long>(k0) + 1; ++k) {
      const double v = bump_sine_coefficient(r, alpha, k);
      coeff = std::max(coeff, std::abs(v) * std::pow(static_cast<double>(k), q));
    }
    return coeff;
  }
  const int l = r / 2;
  const double k1 = std::sqrt(2.0) * l * kPi / alpha;
  const double lf = factorial(l);
  double coeff = lf * lf * ipow(kPi, 2 * l) * ipow(2.0, l) /
                 (ipow(alpha, 2 * l) * alpha);
  for (long k = 1; k <= static_cast<long>(k1) + 1; ++k) {
    const double v = bump_sine_coefficient(r, alpha, k);
    coeff = std::max(coeff, std::abs(v) * std::pow(static_cast<double>(k), q));
  }
  return coeff;
}

double bump_poly_power_coeff(int r, double alpha) {
  // numerator polynomial bound A_r max(1,x)^r
  static const double kNumeratorBound[] = {0.0, 2.0, 7.0, 37.0, 266.0};
  static const double kPrefactor[] = {0.0, 3.0, 15.0, 105.0, 945.0};
  const int q = 1 + r;
  double coeff = kPrefactor[r] * kNumeratorBound[r] / (kPi * ipow(alpha, r + 1));
  const long kmax = static_cast<long>(1.0 / alpha) + 1;
  for (long k = 1; k <= kmax; ++k) {
    const double v = bump_poly_coefficient(r, alpha, k);
    coeff = std::max(coeff, std::abs(v) * std::pow(static_cast<double>(k), q));
  }
  return coeff;
}

}  // namespace

double tail_envelope(const FactorSpec& spec, long J) {
  if (J < 1) throw IndexOutOfRange("tail_envelope requires J >= 1");
  const double s = spec.scale;
  switch (spec.family) {
    case FactorFamily::ConstantPower:
      return s * constant_power_value(spec.alpha, spec.r, J);
    case FactorFamily::SincPower: {
      const double x = spec.alpha * static_cast<double>(J);
      return s * ipow(std::min(1.0, 1.0 / x), 1 + spec.r);
    }
    case FactorFamily::Transformed: {
      const FactorSpec base = base_spec(spec);
      const double be = tail_envelope(base, J);
      const double L =
          transform_lipschitz(spec.transform, be,
                              spec.base == BaseFamily::ConstantPower, spec.a,
                              spec.m_root);
      return s * L * be;
    }
    case FactorFamily::BumpSine:
      return s * bump_sine_power_coeff(spec.r, spec.alpha) *
             std::pow(static_cast<double>(J), -(1.0 + spec.r));
    case FactorFamily::BumpPoly:
      return s * bump_poly_power_coeff(spec.r, spec.alpha) *
             std::pow(static_cast<double>(J), -(1.0 + spec.r));
    case FactorFamily::Composite: {
      const long H = static_cast<long>(spec.head.size());
      const double tail_part = tail_envelope(*spec.tail, std::max(J, H + 1));
      double env = tail_part;
      for (long j = J; j <= H; ++j)
        env = std::max(env, std::abs(spec.head[j - 1]));
      return s * env;
    }
    case FactorFamily::Product:
      return s * tail_envelope(*spec.left, J) * tail_envelope(*spec.right, J);
  }
  throw std::logic_error("unknown factor family");
}

PowerBound power_bound(const FactorSpec& spec) {
  const double s = spec.scale;
  switch (spec.family) {
    case FactorFamily::ConstantPower:
      return {s * spec.alpha, 1 + spec.r};
    case FactorFamily::SincPower:
      return {s * ipow(1.0 / spec.alpha, 1 + spec.r), 1 + spec.r};
    case FactorFamily::Transformed: {
      const PowerBound base = power_bound(base_spec(spec));
      const double B = tail_envelope(base_spec(spec), 1);
      const double L = transform_lipschitz(
          spec.transform, B, spec.base == BaseFamily::ConstantPower, spec.a,
          spec.m_root);
      return {s * L * base.coeff, base.order};
    }
    case FactorFamily::BumpSine:
      return {s * bump_sine_power_coeff(spec.r, spec.alpha), 1 + spec.r};
    case FactorFamily::BumpPoly:
      return {s * bump_poly_power_coeff(spec.r, spec.alpha), 1 + spec.r};
    case FactorFamily::Composite: {
      const PowerBound tail = power_bound(*spec.tail);
      double coeff = tail.coeff;
      for (size_t i = 0; i < spec.head.size(); ++i)
        coeff = std::max(coeff, std::abs(spec.head[i]) *
                                    std::pow(static_cast<double>(i + 1),
                                             tail.order));
      return {s * coeff, tail.order};
    }
    case FactorFamily::Product: {
      const PowerBound a = power_bound(*spec.left);
      const PowerBound b = power_bound(*spec.right);
      return {s * a.coeff * b.coeff, a.order + b.order};
    }
  }
  throw std::logic_error("unknown factor family");
}

}  // namespace trigspline
