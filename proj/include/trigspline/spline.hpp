#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "trigspline/atoms.hpp"
#include "trigspline/factors.hpp"
#include "trigspline/grids.hpp"

namespace trigspline {

// Which sign bookkeeping the channel sums use.  ConstantSign applies
// (-1)^{m(I1+I2)} per aliasing level with an extra (-1)^{1+r} weight on the
// mN-j branch; SignChanging applies (-1)^{m(r+1+I1+I2)} to both branches.
enum class SignVariant { ConstantSign, SignChanging };

enum class Branch { Minus, Plus };

int sign_exponent(SignVariant variant, int r, int i1, int i2, long m,
                  Branch branch);

// Per-band weights for the even (gamma) and odd (eta) channels:
// components weight the j, mN-j and mN+j frequency groups.
struct FilterVectors {
  std::array<double, 3> gamma{1.0, 1.0, 1.0};
  std::array<double, 3> eta{1.0, 1.0, 1.0};

  bool is_simple() const;      // gamma == eta == (1,1,1)
  bool is_polynomial() const;  // all aliased-band weights zero
};

struct TruncationControl {
  double epsilon = 1e-10;
  long m_max = 1000000;
};

struct SplineConfig {
  int stitch_indicator = 0;  // I1
  int interp_indicator = 0;  // I2
  FilterVectors filters;
  int r = 1;
  int node_count = 9;
  FactorSpec factor = FactorSpec::constant_power(1.0, 1);
  SignVariant variant = SignVariant::ConstantSign;
  TruncationControl truncation;

  void validate() const;
  GridSpec interp_grid() const { return {node_count, interp_indicator}; }
  GridSpec stitch_grid() const { return {node_count, stitch_indicator}; }
};

// Sample values bound to the interpolation grid, 1-based f_k order.
struct SampleSet {
  std::vector<double> values;
};

struct EvalReport {
  double value = 0.0;
  double tail_bound = 0.0;
  long terms_used = 0;
  bool truncation_incomplete = false;
};

// Evaluates fundamental splines, interpolants and derivatives for one
// configuration.  Channel denominators are computed once at construction
// and shared; all evaluation methods are const and safe to call
// concurrently.
class SplineEvaluator {
 public:
  explicit SplineEvaluator(SplineConfig config);

  const SplineConfig& config() const { return config_; }

  // Value of the k-th fundamental spline at t.
  EvalReport fundamental(int k, double t) const;

  // Interpolation spline through the samples at t.
  EvalReport interpolant(const SampleSet& samples, double t) const;

  // order-th derivative of the k-th fundamental spline, 1 <= order <= r.
  EvalReport derivative(int k, double t, int order) const;

  // Even channel (numerator, denominator) for channel index j.
  std::pair<EvalReport, EvalReport> channel_even(int j, int k, double t) const;

  // Odd channel (numerator, denominator).
  std::pair<EvalReport, EvalReport> channel_odd(int j, int k, double t) const;

 private:
  struct Ladder {
    long first;
    int step;
    double weight;
  };

  struct SumResult {
    double value = 0.0;
    double abs_scale = 0.0;     // magnitude proxy for roundoff accounting
    double tail = 0.0;          // certified bound on what was not summed
    long terms = 0;
    bool certified = true;
  };

  // Collapsed ladder sum: weight1*sigma(j)*trig(j u) plus the aliased
  // branches, with every frequency carried to power `deriv` and the trig
  // selected by (use_sin, sign).
  SumResult weighted_sum(int j, const std::array<double, 3>& weights, double u,
                         bool use_sin, double sign, int deriv,
                         double budget) const;

  SumResult ladder_atoms(const Ladder& lad, double u, bool use_sin,
                         double sign, int deriv) const;
  SumResult ladder_direct(const Ladder& lad, double u, bool use_sin,
                          double sign, int deriv, double budget) const;

  std::vector<Ladder> build_ladders(int j, double w_minus,
                                    double w_plus) const;
  double branch_weight_minus() const;  // (-1)^{1+r} under ConstantSign
  int level_parity() const;            // parity of the per-level sign

  EvalReport assemble(int k, double t, int deriv) const;

  SplineConfig config_;
  std::optional<atoms::AtomSeries> atoms_;
  bool atoms_support_derivatives_ = false;
  int channel_count_ = 0;
  std::vector<EvalReport> den_gamma_;  // per j, 1-based offset j-1
  std::vector<EvalReport> den_eta_;
  std::vector<double> den_scale_gamma_;  // largest-term scale per channel
  std::vector<double> den_scale_eta_;
};

// One-shot conveniences.
EvalReport fundamental_value(const SplineConfig& config, int k, double t);
EvalReport interpolant_value(const SplineConfig& config,
                             const SampleSet& samples, double t);
EvalReport fundamental_derivative(const SplineConfig& config, int k, double t,
                                  int order);

}  // namespace trigspline
