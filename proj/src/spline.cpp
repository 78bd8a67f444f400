#include "trigspline/spline.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "trigspline/errors.hpp"
#include "trigspline/series.hpp"

namespace trigspline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

int pow_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Rotation of the target trig under d-fold differentiation:
// d^d/du^d cos(w u) = w^d * rot_sign * trig(w u).
struct TrigRotation {
  bool use_sin;
  double sign;
};

TrigRotation derivative_rotation(int d) {
  switch (d % 4) {
    case 0: return {false, 1.0};
    case 1: return {true, -1.0};
    case 2: return {false, -1.0};
    default: return {true, 1.0};
  }
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

int sign_exponent(SignVariant variant, int r, int i1, int i2, long m,
                  Branch branch) {
  if (m < 1) throw std::invalid_argument("sign_exponent requires m >= 1");
  if (variant == SignVariant::SignChanging)
    return pow_sign(m * static_cast<long>(r + 1 + i1 + i2));
  int s = pow_sign(m * static_cast<long>(i1 + i2));
  if (branch == Branch::Minus) s *= pow_sign(1 + r);
  return s;
}

bool FilterVectors::is_simple() const {
  return gamma == std::array<double, 3>{1.0, 1.0, 1.0} &&
         eta == std::array<double, 3>{1.0, 1.0, 1.0};
}

bool FilterVectors::is_polynomial() const {
  return gamma[1] == 0.0 && gamma[2] == 0.0 && eta[1] == 0.0 && eta[2] == 0.0;
}

void SplineConfig::validate() const {
  if (stitch_indicator != 0 && stitch_indicator != 1)
    throw ConfigError("stitch indicator must be 0 or 1");
  if (interp_indicator != 0 && interp_indicator != 1)
    throw ConfigError("interpolation indicator must be 0 or 1");
  if (r < 1) throw ConfigError("spline order r must be >= 1");
  if (node_count < 3 || node_count % 2 == 0)
    throw ConfigError("node count must be odd and >= 3");
  factor.validate();
  if (decay_order(factor) != 1 + r)
    throw ConfigError("factor decay order " +
                      std::to_string(decay_order(factor)) +
                      " does not match 1 + r = " + std::to_string(1 + r));
  if (factor.family == FactorFamily::Composite &&
      static_cast<int>(factor.head.size()) != node_count)
    throw ConfigError("composite head length must equal the node count");
  if (!(truncation.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (truncation.m_max < 1) throw ConfigError("m_max must be >= 1");
}

SplineEvaluator::SplineEvaluator(SplineConfig config)
    : config_(std::move(config)) {
  config_.validate();
  const int N = config_.node_count;
  channel_count_ = (N - 1) / 2;

  // Smallest aliased frequency that ever enters a ladder.
  const long n_min = N - channel_count_;
  atoms_ = atoms::decompose_factor(config_.factor, n_min);
  if (atoms_) {
    atoms_support_derivatives_ = atoms_->pair_atoms.empty();
    for (const auto& a : atoms_->power_atoms)
      if (a.shift != 0.0) atoms_support_derivatives_ = false;
  }

  const auto compute_denominators = [&](const std::array<double, 3>& weights,
                                        std::vector<EvalReport>& dens,
                                        std::vector<double>& scales) {
    dens.resize(channel_count_);
    scales.resize(channel_count_);
    for (int j = 1; j <= channel_count_; ++j) {
      // Largest-term scale: the direct term plus the leading aliased terms.
      double scale = std::abs(weights[0] * factor_value(config_.factor, j));
      const double wm = branch_weight_minus();
      for (long m = 1; m <= 3; ++m) {
        scale = std::max(scale, std::abs(weights[1] * wm *
                                         factor_value(config_.factor,
                                                      m * N - j)));
        scale = std::max(scale, std::abs(weights[2] *
                                         factor_value(config_.factor,
                                                      m * N + j)));
      }
      scales[j - 1] = scale;
      const double budget =
          1e-4 * config_.truncation.epsilon * std::max(scale, 1e-300);
      const SumResult den =
          weighted_sum(j, weights, 0.0, false, 1.0, 0, budget);
      EvalReport rep;
      rep.value = den.value;
      rep.tail_bound = den.tail;
      rep.terms_used = den.terms;
      rep.truncation_incomplete = !den.certified || den.tail > budget;
      dens[j - 1] = rep;
      if (std::abs(rep.value) < 1e-12 * scale)
        throw DenominatorDegenerate(
            "aliased channel denominator cancels at j = " + std::to_string(j),
            j);
    }
  };

  compute_denominators(config_.filters.gamma, den_gamma_, den_scale_gamma_);
  if (config_.filters.gamma == config_.filters.eta) {
    den_eta_ = den_gamma_;
    den_scale_eta_ = den_scale_gamma_;
  } else {
    compute_denominators(config_.filters.eta, den_eta_, den_scale_eta_);
  }
}

double SplineEvaluator::branch_weight_minus() const {
  return config_.variant == SignVariant::ConstantSign
             ? static_cast<double>(pow_sign(1 + config_.r))
             : 1.0;
}

int SplineEvaluator::level_parity() const {
  const int I = config_.stitch_indicator + config_.interp_indicator;
  return config_.variant == SignVariant::ConstantSign
             ? I % 2
             : (config_.r + 1 + I) % 2;
}

std::vector<SplineEvaluator::Ladder> SplineEvaluator::build_ladders(
    int j, double w_minus, double w_plus) const {
  const int N = config_.node_count;
  std::vector<Ladder> ladders;
  if (level_parity() == 0) {
    if (w_minus != 0.0) ladders.push_back({N - j, N, w_minus});
    if (w_plus != 0.0) ladders.push_back({N + j, N, w_plus});
  } else {
    if (w_minus != 0.0) {
      ladders.push_back({N - j, 2 * N, -w_minus});
      ladders.push_back({2L * N - j, 2 * N, w_minus});
    }
    if (w_plus != 0.0) {
      ladders.push_back({N + j, 2 * N, -w_plus});
      ladders.push_back({2L * N + j, 2 * N, w_plus});
    }
  }
  return ladders;
}

SplineEvaluator::SumResult SplineEvaluator::weighted_sum(
    int j, const std::array<double, 3>& weights, double u, bool use_sin,
    double sign, int deriv, double budget) const {
  SumResult total;
  // Direct (m = 0) term.
  if (weights[0] != 0.0) {
    const double s = factor_value(config_.factor, j);
    const double trig = use_sin ? std::sin(j * u) : std::cos(j * u);
    const double term =
        weights[0] * s * ipow(static_cast<double>(j), deriv) * trig * sign;
    total.value += term;
    total.abs_scale += std::abs(term);
    ++total.terms;
  }
  const auto ladders =
      build_ladders(j, weights[1] * branch_weight_minus(), weights[2]);
  if (ladders.empty()) return total;
  const double per_ladder = budget / static_cast<double>(ladders.size());
  const bool exact_ok =
      atoms_.has_value() && (deriv == 0 || atoms_support_derivatives_);
  for (const Ladder& lad : ladders) {
    const SumResult part = exact_ok
                               ? ladder_atoms(lad, u, use_sin, sign, deriv)
                               : ladder_direct(lad, u, use_sin, sign, deriv,
                                               per_ladder);
    total.value += part.value;
    total.abs_scale += part.abs_scale;
    total.tail += part.tail;
    total.terms += part.terms;
    total.certified = total.certified && part.certified;
  }
  return total;
}

SplineEvaluator::SumResult SplineEvaluator::ladder_atoms(const Ladder& lad,
                                                         double u,
                                                         bool use_sin,
                                                         double sign,
                                                         int deriv) const {
  SumResult out;
  long first = lad.first;
  // Elements below the representation's validity are summed explicitly.
  while (first < atoms_->valid_from) {
    const double s = factor_value(config_.factor, first);
    const double trig = use_sin ? std::sin(first * u) : std::cos(first * u);
    const double term = lad.weight * sign * s *
                        ipow(static_cast<double>(first), deriv) * trig;
    out.value += term;
    out.abs_scale += std::abs(term);
    ++out.terms;
    first += lad.step;
  }

  const double w = lad.weight * sign;
  for (const auto& atom : atoms_->power_atoms) {
    if (atom.is_sin && atom.freq == 0.0) continue;
    const int pp = atom.power - deriv;
    const double amp = 0.5 * w * atom.amp;
    const auto plus =
        series::ladder_power_sum(u + atom.freq, first, lad.step, pp,
                                 atom.shift);
    const auto minus =
        series::ladder_power_sum(u - atom.freq, first, lad.step, pp,
                                 atom.shift);
    double v;
    if (!atom.is_sin && !use_sin)
      v = amp * (plus.cos_part + minus.cos_part);
    else if (atom.is_sin && !use_sin)
      v = amp * (plus.sin_part - minus.sin_part);
    else if (!atom.is_sin)
      v = amp * (plus.sin_part + minus.sin_part);
    else
      v = amp * (minus.cos_part - plus.cos_part);
    out.value += v;
    out.abs_scale += std::abs(amp) * (std::abs(plus.cos_part) +
                                      std::abs(plus.sin_part) +
                                      std::abs(minus.cos_part) +
                                      std::abs(minus.sin_part));
    out.terms += 2;
  }
  for (const auto& atom : atoms_->pair_atoms) {
    const double amp = 0.5 * w * atom.amp;
    const auto plus = series::ladder_pair_sum(u + atom.freq, first, lad.step,
                                              atom.shift1, atom.shift2);
    const auto minus = series::ladder_pair_sum(u - atom.freq, first, lad.step,
                                               atom.shift1, atom.shift2);
    double v;
    if (!atom.is_sin && !use_sin)
      v = amp * (plus.cos_part + minus.cos_part);
    else if (atom.is_sin && !use_sin)
      v = amp * (plus.sin_part - minus.sin_part);
    else if (!atom.is_sin)
      v = amp * (plus.sin_part + minus.sin_part);
    else
      v = amp * (minus.cos_part - plus.cos_part);
    out.value += v;
    out.abs_scale += std::abs(amp) * (std::abs(plus.cos_part) +
                                      std::abs(plus.sin_part) +
                                      std::abs(minus.cos_part) +
                                      std::abs(minus.sin_part));
    out.terms += 2;
  }
  // Certified slack of the truncated representation over the ladder.
  if (atoms_->remainder_coeff > 0.0) {
    const int e = atoms_->remainder_order - deriv;
    if (e >= 2) {
      const double f = static_cast<double>(first);
      out.tail += std::abs(lad.weight) * atoms_->remainder_coeff *
                  (std::pow(f, -e) +
                   std::pow(f, 1.0 - e) / ((e - 1.0) * lad.step));
    } else {
      out.certified = false;
      out.tail = kInf;
    }
  }
  return out;
}

SplineEvaluator::SumResult SplineEvaluator::ladder_direct(
    const Ladder& lad, double u, bool use_sin, double sign, int deriv,
    double budget) const {
  SumResult out;
  const PowerBound pb = power_bound(config_.factor);
  const int e = pb.order - deriv;
  const bool certifiable = e >= 2 && std::isfinite(pb.coeff);

  Kahan acc;
  double abs_acc = 0.0;
  const double delta = lad.step * u;
  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  double c = std::cos(lad.first * u);
  double s = std::sin(lad.first * u);
  long n = lad.first;
  double tail = kInf;
  long i = 0;
  const long max_elems = config_.truncation.m_max;
  for (; i < max_elems; ++i, n += lad.step) {
    if (i > 0) {
      if (i % 4096 == 0) {
        c = std::cos(n * u);
        s = std::sin(n * u);
      } else {
        const double cn = c * cd - s * sd;
        s = s * cd + c * sd;
        c = cn;
      }
    }
    const double sig = factor_value(config_.factor, n);
    const double term = lad.weight * sign * sig *
                        std::pow(static_cast<double>(n), deriv) *
                        (use_sin ? s : c);
    acc.add(term);
    abs_acc += std::abs(term);
    if (certifiable && (i % 16 == 15 || i + 1 == max_elems)) {
      const double next = static_cast<double>(n + lad.step);
      tail = std::abs(lad.weight) * pb.coeff *
             (std::pow(next, -e) +
              std::pow(next, 1.0 - e) / ((e - 1.0) * lad.step));
      if (tail <= budget) {
        ++i;
        break;
      }
    }
  }
  out.value = acc.sum;
  out.abs_scale = abs_acc;
  out.terms = i;
  if (certifiable && std::isfinite(tail)) {
    out.tail = tail;
    out.certified = tail <= budget;
  } else {
    out.tail = kInf;
    out.certified = false;
  }
  return out;
}

EvalReport SplineEvaluator::assemble(int k, double t, int deriv) const {
  const int N = config_.node_count;
  if (k < 1 || k > N)
    throw IndexOutOfRange("fundamental spline index k outside 1..N");
  const double x = selected_node(k, config_.interp_indicator, N);
  const double u_minus = t - x;
  const double u_plus = t + x;
  const bool collapsed = config_.filters.gamma == config_.filters.eta;
  const TrigRotation rot = derivative_rotation(deriv);
  const double eps = config_.truncation.epsilon;
  const int sub_channels = channel_count_ * (collapsed ? 1 : 2);
  const double ratio_budget =
      eps * N / (2.0 * std::max(1, sub_channels)) / 1.05;

  EvalReport rep;
  Kahan sum;
  double tail = 0.0;
  double abs_ratios = 0.0;
  bool incomplete = false;
  long terms = 0;

  const auto ratio_error = [&](const SumResult& num, const EvalReport& den) {
    const double dv = std::abs(den.value);
    const double dt = den.tail_bound;
    if (!(dt < 0.5 * dv)) return kInf;
    return (num.tail + std::abs(num.value) / dv * dt) / (dv - dt);
  };

  for (int j = 1; j <= channel_count_; ++j) {
    if (collapsed) {
      const EvalReport& den = den_gamma_[j - 1];
      const double budget = 0.5 * ratio_budget * std::abs(den.value);
      const SumResult num = weighted_sum(j, config_.filters.gamma, u_minus,
                                         rot.use_sin, rot.sign, deriv, budget);
      sum.add(num.value / den.value);
      abs_ratios += std::abs(num.value / den.value);
      tail += ratio_error(num, den);
      incomplete = incomplete || !num.certified || den.truncation_incomplete;
      terms += num.terms;
    } else {
      const auto& gw = config_.filters.gamma;
      const auto& ew = config_.filters.eta;
      if (gw[0] != 0.0 || gw[1] != 0.0 || gw[2] != 0.0) {
        const EvalReport& den = den_gamma_[j - 1];
        const double budget = 0.25 * ratio_budget * std::abs(den.value);
        const SumResult a = weighted_sum(j, gw, u_minus, rot.use_sin, rot.sign,
                                         deriv, budget);
        const SumResult b = weighted_sum(j, gw, u_plus, rot.use_sin, rot.sign,
                                         deriv, budget);
        SumResult num;
        num.value = 0.5 * (a.value + b.value);
        num.tail = 0.5 * (a.tail + b.tail);
        num.abs_scale = 0.5 * (a.abs_scale + b.abs_scale);
        num.certified = a.certified && b.certified;
        sum.add(num.value / den.value);
        abs_ratios += std::abs(num.value / den.value);
        tail += ratio_error(num, den);
        incomplete = incomplete || !num.certified || den.truncation_incomplete;
        terms += a.terms + b.terms;
      }
      if (ew[0] != 0.0 || ew[1] != 0.0 || ew[2] != 0.0) {
        const EvalReport& den = den_eta_[j - 1];
        const double budget = 0.25 * ratio_budget * std::abs(den.value);
        const SumResult a = weighted_sum(j, ew, u_minus, rot.use_sin, rot.sign,
                                         deriv, budget);
        const SumResult b = weighted_sum(j, ew, u_plus, rot.use_sin, rot.sign,
                                         deriv, budget);
        SumResult num;
        num.value = 0.5 * (a.value - b.value);
        num.tail = 0.5 * (a.tail + b.tail);
        num.abs_scale = 0.5 * (a.abs_scale + b.abs_scale);
        num.certified = a.certified && b.certified;
        sum.add(num.value / den.value);
        abs_ratios += std::abs(num.value / den.value);
        tail += ratio_error(num, den);
        incomplete = incomplete || !num.certified || den.truncation_incomplete;
        terms += a.terms + b.terms;
      }
    }
  }

  const double scale = 2.0 / N;
  rep.value = deriv == 0 ? (1.0 + 2.0 * sum.sum) / N : scale * sum.sum;
  rep.tail_bound = scale * tail + 1e-14 * (1.0 + abs_ratios);
  rep.terms_used = terms;
  rep.truncation_incomplete = incomplete || !(rep.tail_bound <= eps);
  return rep;
}

EvalReport SplineEvaluator::fundamental(int k, double t) const {
  return assemble(k, t, 0);
}

EvalReport SplineEvaluator::interpolant(const SampleSet& samples,
                                        double t) const {
  if (static_cast<int>(samples.values.size()) != config_.node_count)
    throw ConfigError("sample count must equal the node count");
  EvalReport rep;
  Kahan sum;
  for (int k = 1; k <= config_.node_count; ++k) {
    const double f = samples.values[k - 1];
    if (f == 0.0) continue;
    const EvalReport part = fundamental(k, t);
    sum.add(f * part.value);
    rep.tail_bound += std::abs(f) * part.tail_bound;
    rep.terms_used += part.terms_used;
    rep.truncation_incomplete =
        rep.truncation_incomplete || part.truncation_incomplete;
  }
  rep.value = sum.sum;
  return rep;
}

EvalReport SplineEvaluator::derivative(int k, double t, int order) const {
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (order > config_.r)
    throw OrderTooHigh("derivative order " + std::to_string(order) +
                       " exceeds smoothness order r = " +
                       std::to_string(config_.r));
  return assemble(k, t, order);
}

std::pair<EvalReport, EvalReport> SplineEvaluator::channel_even(
    int j, int k, double t) const {
  if (j < 1 || j > channel_count_)
    throw IndexOutOfRange("channel index j outside 1..(N-1)/2");
  if (k < 1 || k > config_.node_count)
    throw IndexOutOfRange("node index k outside 1..N");
  const double x = selected_node(k, config_.interp_indicator,
                                 config_.node_count);
  const double budget = 0.25 * config_.truncation.epsilon;
  const SumResult a = weighted_sum(j, config_.filters.gamma, t - x, false, 1.0,
                                   0, budget);
  const SumResult b = weighted_sum(j, config_.filters.gamma, t + x, false, 1.0,
                                   0, budget);
  EvalReport num;
  num.value = 0.5 * (a.value + b.value);
  num.tail_bound = 0.5 * (a.tail + b.tail) + 1e-15 * (a.abs_scale + b.abs_scale);
  num.terms_used = a.terms + b.terms;
  num.truncation_incomplete = !(a.certified && b.certified);
  return {num, den_gamma_[j - 1]};
}

std::pair<EvalReport, EvalReport> SplineEvaluator::channel_odd(int j, int k,
                                                               double t) const {
  if (j < 1 || j > channel_count_)
    throw IndexOutOfRange("channel index j outside 1..(N-1)/2");
  if (k < 1 || k > config_.node_count)
    throw IndexOutOfRange("node index k outside 1..N");
  const double x = selected_node(k, config_.interp_indicator,
                                 config_.node_count);
  const double budget = 0.25 * config_.truncation.epsilon;
  const SumResult a = weighted_sum(j, config_.filters.eta, t - x, false, 1.0,
                                   0, budget);
  const SumResult b = weighted_sum(j, config_.filters.eta, t + x, false, 1.0,
                                   0, budget);
  EvalReport num;
  num.value = 0.5 * (a.value - b.value);
  num.tail_bound = 0.5 * (a.tail + b.tail) + 1e-15 * (a.abs_scale + b.abs_scale);
  num.terms_used = a.terms + b.terms;
  num.truncation_incomplete = !(a.certified && b.certified);
  return {num, den_eta_[j - 1]};
}

EvalReport fundamental_value(const SplineConfig& config, int k, double t) {
  return SplineEvaluator(config).fundamental(k, t);
}

EvalReport interpolant_value(const SplineConfig& config,
                             const SampleSet& samples, double t) {
  return SplineEvaluator(config).interpolant(samples, t);
}

EvalReport fundamental_derivative(const SplineConfig& config, int k, double t,
                                  int order) {
  return SplineEvaluator(config).derivative(k, t, order);
}

}  // namespace trigspline
