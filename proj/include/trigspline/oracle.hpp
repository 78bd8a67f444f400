#pragma once

#include <memory>
#include <vector>

#include "trigspline/spline.hpp"

namespace trigspline::oracle {

enum class BumpKind { SinePower, PolyPower };
enum class Convention { UnitIntegral, OverPi };

// Dense periodic kernel matrix A[i][k] = K(t_i - x_k) with its estimated
// condition number.
struct KernelMatrix {
  int n = 0;
  std::vector<double> entries;  // row-major n x n
  double condition = 0.0;

  double at(int i, int k) const { return entries[i * n + k]; }
};

// Brute-force cardinal construction: builds the unnormalized periodic
// kernel by deep direct summation (or an exact periodization when the
// factor family admits one), solves the interpolation system for cardinal
// weights, and evaluates the resulting cardinal function.  Independent of
// the channel-ratio evaluation path.
class CardinalSolveOracle {
 public:
  explicit CardinalSolveOracle(SplineConfig config);
  ~CardinalSolveOracle();
  CardinalSolveOracle(CardinalSolveOracle&&) noexcept;

  double evaluate(int k, double t) const;
  double kernel(double u) const;
  const KernelMatrix& matrix() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double cardinal_by_linear_solve(const SplineConfig& config, int k, double t);

// Fourier cosine coefficient of the normalized bump function by adaptive
// quadrature, to absolute accuracy 1e-12.  UnitIntegral returns the raw
// integral; OverPi divides by pi.
double quadrature_fourier_coefficient(BumpKind kind, int r, double alpha,
                                      long k, Convention convention);

// Normalization constant C_r of the bump (reciprocal of the unnormalized
// integral over one period).
double bump_normalization(BumpKind kind, int r, double alpha);

// Closed-form bump value at offset t (normalized), zero outside [-alpha,alpha].
double bump_value(BumpKind kind, int r, double alpha, double t);

// Deterministic scan deciding which convention the printed closed forms
// follow.  Throws if none or both conventions match.
Convention select_convention(BumpKind kind, int r);

// |D+ - D-| of one-sided finite-difference estimates of the order-th
// derivative of the k-th fundamental spline at a stitching node.
double derivative_jump_estimate(const SplineConfig& config, int k, double node,
                                int order, double h = 1e-3);

}  // namespace trigspline::oracle
