#pragma once

#include <memory>
#include <vector>

namespace trigspline {

enum class FactorFamily {
  ConstantPower,  // alpha / j^{1+r}
  SincPower,      // (sin(alpha j)/(alpha j))^{1+r}
  Transformed,    // equivalent-infinitesimal transform of a base family
  BumpSine,       // cosine coefficients of a compact sine-power bump
  BumpPoly,       // cosine coefficients of a compact polynomial bump
  Composite,      // explicit head table, decaying tail family
  Product,        // pointwise product of two factors
};

enum class TransformKind { Sin, Arcsin, Tan, Arctan, Log, Exp, Root };

enum class BaseFamily { ConstantPower, SincPower };

// Periodic sign modulation applied on top of a family; lets the alternating
// variants (-1)^j f(j) and (1+(-1)^j)/2 f(j) stay inside the closed factor
// language.
enum class Modulation { None, Alternating, EvenHalf };

// Closed description of one convergence-factor family instance.  Immutable
// after construction; values are safe to share across threads.
struct FactorSpec {
  FactorFamily family = FactorFamily::ConstantPower;
  int r = 1;
  double alpha = 1.0;
  double scale = 1.0;  // global multiplier; spline values are invariant to it
  double a = 2.0;      // base for the log/exp transforms, a > 0, a != 1
  int m_root = 2;      // root index, >= 2
  TransformKind transform = TransformKind::Sin;
  BaseFamily base = BaseFamily::ConstantPower;
  Modulation modulation = Modulation::None;
  std::vector<double> head;                  // Composite only
  std::shared_ptr<const FactorSpec> tail;    // Composite only
  std::shared_ptr<const FactorSpec> left;    // Product only
  std::shared_ptr<const FactorSpec> right;   // Product only

  static FactorSpec constant_power(double alpha, int r);
  static FactorSpec sinc_power(double alpha, int r);
  static FactorSpec transformed(TransformKind kind, BaseFamily base,
                                double alpha, int r, double a = 2.0,
                                int m_root = 2);
  static FactorSpec bump_sine(double alpha, int r);
  static FactorSpec bump_poly(double alpha, int r);
  static FactorSpec composite(std::vector<double> head, FactorSpec tail);
  static FactorSpec product(FactorSpec f1, FactorSpec f2);
  // (-1)^j alpha / j^{1+r}
  static FactorSpec alternating_power(double alpha, int r);
  // (1 + (-1)^j)/2 * alpha / j^{1+r}
  static FactorSpec even_half_power(double alpha, int r);

  FactorSpec scaled(double s) const;

  void validate() const;  // throws ConfigError on a malformed spec
};

bool operator==(const FactorSpec& a, const FactorSpec& b);

// Declared decay order q:  |factor| = O(j^{-q}).  1+r for the closed
// families, the tail's order for Composite, the sum of operand orders for
// Product.
int decay_order(const FactorSpec& spec);

// Evaluate the factor at integer frequency j >= 1.
double factor_value(const FactorSpec& spec, long j);

// Upper bound E(J) with |factor(j)| <= E(J) for all j >= J, nonincreasing
// in J.
double tail_envelope(const FactorSpec& spec, long J);

// Certified power-law majorant: |factor(n)| <= coeff * n^{-order} for every
// n >= 1.  Used to certify truncation of the aliased channel tails.
struct PowerBound {
  double coeff = 0.0;
  int order = 2;
};
PowerBound power_bound(const FactorSpec& spec);

// Closed-form cosine coefficients of the sine-power bump, r >= 1,
// 0 < alpha < pi.  Throws SingularDenominator at a resonant (alpha, k).
double bump_sine_coefficient(int r, double alpha, long k);

// Closed-form cosine coefficients of the polynomial bump, r in 1..4.
double bump_poly_coefficient(int r, double alpha, long k);

// Primitive family values (exposed for tests and the CLI factor dump).
double constant_power_value(double alpha, int r, long j);
double sinc_power_value(double alpha, int r, long j);
double transformed_value(const FactorSpec& spec, long j);
double composite_value(const std::vector<double>& head, const FactorSpec& tail,
                       long j);
double product_value(const FactorSpec& f1, const FactorSpec& f2, long j);

}  // namespace trigspline
