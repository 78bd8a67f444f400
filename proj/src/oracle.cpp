#include "trigspline/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "trigspline/errors.hpp"
#include "trigspline/grids.hpp"

namespace trigspline::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0)
    throw QuadratureNoConvergence("adaptive quadrature subdivision cap hit");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  // Split into panels roughly one oscillation wide before going adaptive.
  const int panels = 8;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double pa = a + (b - a) * i / panels;
    const double pb = a + (b - a) * (i + 1) / panels;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(pm), fb = f(pb);
    const double whole = simpson(pa, pb, fa, fm, fb);
    total += adaptive_step(f, pa, pb, fa, fm, fb, whole, tol / panels, 40);
  }
  return total;
}

double bump_base(BumpKind kind, int r, double alpha, double t) {
  const double z = std::abs(t) / alpha;
  if (z > 1.0) return 0.0;
  if (kind == BumpKind::SinePower)
    return ipow(std::sin(kPi / 2.0 * (1.0 - z)), r);
  return ipow(1.0 - z * z, r);
}

// ---------------------------------------------------------------------------
// Kernel assembly.

// Per-residue channel weights: the value chi(n) multiplying sigma(n) in the
// unnormalized kernel, constant on residue classes mod N (or 2N when the
// per-level sign alternates).
struct ChiPattern {
  int period = 0;
  std::vector<double> weight;  // index n mod period

  bool is_even() const {
    for (int a = 0; a < period; ++a)
      if (weight[a] != weight[(period - a) % period]) return false;
    return true;
  }
};

ChiPattern chi_pattern(const SplineConfig& cfg) {
  const int N = cfg.node_count;
  const int half = (N - 1) / 2;
  const double g2 = cfg.filters.gamma[1];
  const double g3 = cfg.filters.gamma[2];
  const double wm = cfg.variant == SignVariant::ConstantSign
                        ? ((1 + cfg.r) % 2 == 0 ? 1.0 : -1.0)
                        : 1.0;
  const int I = cfg.stitch_indicator + cfg.interp_indicator;
  const int parity = cfg.variant == SignVariant::ConstantSign
                         ? I % 2
                         : (cfg.r + 1 + I) % 2;
  ChiPattern chi;
  chi.period = parity == 0 ? N : 2 * N;
  chi.weight.assign(chi.period, 0.0);
  for (int j = 1; j <= half; ++j) {
    if (parity == 0) {
      chi.weight[j % N] += g3;                    // j and every mN+j share it
      chi.weight[(N - j) % N] += g2 * wm;
    } else {
      chi.weight[j % (2 * N)] += g3;              // even levels, plus branch
      chi.weight[(N + j) % (2 * N)] += -g3;       // odd levels
      chi.weight[(2 * N - j) % (2 * N)] += g2 * wm;
      chi.weight[(N - j) % (2 * N)] += -g2 * wm;
    }
  }
  // The m = 0 term carries gamma1 instead of the plus-branch weight the
  // pattern assigns to its residue; callers add the finite
  // (gamma1 - gamma3) sigma(j) cos(ju) correction over j = 1..half.
  return chi;
}

double cos_series_closed(int q, double theta) {
  // sum_{n>=1} cos(n theta)/n^q for even q via Bernoulli polynomials.
  double th = std::fmod(theta, 2.0 * kPi);
  if (th < 0) th += 2.0 * kPi;
  if (q == 2) return kPi * kPi / 6.0 - kPi * th / 2.0 + th * th / 4.0;
  if (q == 4) {
    const double t2 = th * th;
    return ipow(kPi, 4) / 90.0 - kPi * kPi * t2 / 12.0 + kPi * t2 * th / 12.0 -
           t2 * t2 / 48.0;
  }
  throw std::logic_error("cos_series_closed: unsupported order");
}

}  // namespace

double bump_value(BumpKind kind, int r, double alpha, double t) {
  return bump_normalization(kind, r, alpha) * bump_base(kind, r, alpha, t);
}

double bump_normalization(BumpKind kind, int r, double alpha) {
  const auto f = [&](double t) { return bump_base(kind, r, alpha, t); };
  const double integral = 2.0 * integrate(f, 0.0, alpha, 1e-13);
  return 1.0 / integral;
}

double quadrature_fourier_coefficient(BumpKind kind, int r, double alpha,
                                      long k, Convention convention) {
  if (!(alpha > 0.0 && alpha < kPi))
    throw ConfigError("bump quadrature requires 0 < alpha < pi");
  const double c = bump_normalization(kind, r, alpha);
  const auto f = [&](double t) {
    return c * bump_base(kind, r, alpha, t) * std::cos(k * t);
  };
  const double integral = 2.0 * integrate(f, 0.0, alpha, 1e-12);
  return convention == Convention::UnitIntegral ? integral : integral / kPi;
}

Convention select_convention(BumpKind kind, int r) {
  const double alphas[] = {0.3, 0.5, 1.0};
  bool unit_ok = true;
  bool over_pi_ok = true;
  for (double alpha : alphas) {
    for (long k = 1; k <= 10; ++k) {
      const double closed = kind == BumpKind::SinePower
                                ? bump_sine_coefficient(r, alpha, k)
                                : bump_poly_coefficient(r, alpha, k);
      const double unit = quadrature_fourier_coefficient(
          kind, r, alpha, k, Convention::UnitIntegral);
      const double over = quadrature_fourier_coefficient(kind, r, alpha, k,
                                                         Convention::OverPi);
      const double scale = std::max({std::abs(closed), std::abs(unit), 1e-30});
      if (std::abs(closed - unit) > 1e-6 * scale) unit_ok = false;
      if (std::abs(closed - over) > 1e-6 * scale) over_pi_ok = false;
    }
  }
  if (unit_ok == over_pi_ok)
    throw std::runtime_error(
        "convention scan did not isolate exactly one normalization");
  return unit_ok ? Convention::UnitIntegral : Convention::OverPi;
}

// ---------------------------------------------------------------------------
// CardinalSolveOracle

struct CardinalSolveOracle::Impl {
  SplineConfig cfg;
  KernelMatrix km;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  std::vector<double> nodes;

  enum class Route { ClosedPower, PeriodizedBump, Direct } route;
  // ClosedPower / PeriodizedBump machinery
  ChiPattern chi;
  double bump_norm = 0.0;
  // Direct-route ladder of factor values, per channel: sigma(mN-j) and
  // sigma(mN+j) for m = 1..depth, computed once and reused for every kernel
  // evaluation point.
  struct ChannelLadder {
    std::vector<double> minus_vals;
    std::vector<double> plus_vals;
  };
  std::vector<ChannelLadder> ladders;

  void build_direct_ladders();
  double kernel(double u) const;
  double kernel_direct(double u) const;
  double kernel_closed_power(double u) const;
  double kernel_periodized_bump(double u) const;
};

CardinalSolveOracle::CardinalSolveOracle(SplineConfig config)
    : impl_(std::make_unique<Impl>()) {
  config.validate();
  if (config.filters.gamma != config.filters.eta)
    throw ConfigError(
        "cardinal solve oracle requires matching even/odd filter vectors "
        "(translation kernel form)");
  impl_->cfg = std::move(config);
  const SplineConfig& cfg = impl_->cfg;
  const int N = cfg.node_count;
  impl_->nodes = grid_nodes(cfg.interp_grid());

  // Pick the kernel route.
  impl_->route = Impl::Route::Direct;
  const FactorSpec& f = cfg.factor;
  if (f.family == FactorFamily::ConstantPower && f.modulation == Modulation::None &&
      (cfg.r == 1 || cfg.r == 3) && cfg.variant == SignVariant::ConstantSign) {
    impl_->route = Impl::Route::ClosedPower;
    impl_->chi = chi_pattern(cfg);
  } else if ((f.family == FactorFamily::BumpSine ||
              f.family == FactorFamily::BumpPoly) &&
             f.modulation == Modulation::None && cfg.r % 2 == 1 &&
             cfg.variant == SignVariant::ConstantSign) {
    impl_->route = Impl::Route::PeriodizedBump;
    impl_->chi = chi_pattern(cfg);
    impl_->bump_norm = bump_normalization(f.family == FactorFamily::BumpSine
                                              ? BumpKind::SinePower
                                              : BumpKind::PolyPower,
                                          f.r, f.alpha);
  }
  if ((impl_->route == Impl::Route::ClosedPower ||
       impl_->route == Impl::Route::PeriodizedBump) &&
      !impl_->chi.is_even())
    impl_->route = Impl::Route::Direct;
  if (impl_->route == Impl::Route::Direct) impl_->build_direct_ladders();

  // Circulant kernel matrix: A[i][k] = K(t_i - x_k) = K(2 pi (i-k)/N).
  std::vector<double> column(N);
  for (int d = 0; d < N; ++d)
    column[d] = impl_->kernel(2.0 * kPi * d / N);
  Eigen::MatrixXd A(N, N);
  impl_->km.n = N;
  impl_->km.entries.resize(static_cast<size_t>(N) * N);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < N; ++k) {
      const int d = ((i - k) % N + N) % N;
      A(i, k) = column[d];
      impl_->km.entries[static_cast<size_t>(i) * N + k] = column[d];
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  impl_->km.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(impl_->km.condition <= 1e12))
    throw IllConditioned("kernel matrix condition " +
                         std::to_string(impl_->km.condition) +
                         " exceeds 1e12 (degenerate factor choice)");
  impl_->lu = Eigen::PartialPivLU<Eigen::MatrixXd>(A);
}

CardinalSolveOracle::~CardinalSolveOracle() = default;
CardinalSolveOracle::CardinalSolveOracle(CardinalSolveOracle&&) noexcept =
    default;

double CardinalSolveOracle::Impl::kernel(double u) const {
  switch (route) {
    case Route::ClosedPower:
      return kernel_closed_power(u);
    case Route::PeriodizedBump:
      return kernel_periodized_bump(u);
    case Route::Direct:
      return kernel_direct(u);
  }
  return 0.0;
}

void CardinalSolveOracle::Impl::build_direct_ladders() {
  const int N = cfg.node_count;
  const int half = (N - 1) / 2;
  const double g2 = cfg.filters.gamma[1];
  const double g3 = cfg.filters.gamma[2];
  ladders.assign(half, {});
  if (g2 == 0.0 && g3 == 0.0) return;
  const PowerBound pb = power_bound(cfg.factor);
  constexpr long kCap = 100000;
  for (int j = 1; j <= half; ++j) {
    ChannelLadder& lad = ladders[j - 1];
    for (long m = 1; m <= kCap; ++m) {
      lad.minus_vals.push_back(factor_value(cfg.factor, m * N - j));
      lad.plus_vals.push_back(factor_value(cfg.factor, m * N + j));
      if (m % 64 == 0) {
        const double next = static_cast<double>((m + 1) * N - j);
        const double bound =
            (std::abs(g2) + std::abs(g3)) * pb.coeff *
            (std::pow(next, -pb.order) +
             std::pow(next, 1.0 - pb.order) / ((pb.order - 1.0) * N));
        if (bound < 1e-14) break;
      }
    }
  }
}

double CardinalSolveOracle::Impl::kernel_direct(double u) const {
  const int N = cfg.node_count;
  const int half = (N - 1) / 2;
  const double g1 = cfg.filters.gamma[0];
  const double g2 = cfg.filters.gamma[1];
  const double g3 = cfg.filters.gamma[2];
  const double wm = cfg.variant == SignVariant::ConstantSign
                        ? ((1 + cfg.r) % 2 == 0 ? 1.0 : -1.0)
                        : 1.0;
  const int I = cfg.stitch_indicator + cfg.interp_indicator;
  const int parity = cfg.variant == SignVariant::ConstantSign
                         ? I % 2
                         : (cfg.r + 1 + I) % 2;
  double total = 0.0;
  for (int j = 1; j <= half; ++j) {
    double acc = g1 * factor_value(cfg.factor, j) * std::cos(j * u);
    const ChannelLadder& lad = ladders[j - 1];
    // rotation recurrences for cos((mN -+ j) u), resynced periodically
    const double cd = std::cos(N * u), sd = std::sin(N * u);
    double cm = std::cos((N - j) * u), sm = std::sin((N - j) * u);
    double cp = std::cos((N + j) * u), sp = std::sin((N + j) * u);
    double compensation = 0.0;
    const size_t depth = lad.minus_vals.size();
    for (size_t i = 0; i < depth; ++i) {
      const long m = static_cast<long>(i) + 1;
      if (i > 0) {
        if (i % 4096 == 0) {
          cm = std::cos((m * N - j) * u);
          sm = std::sin((m * N - j) * u);
          cp = std::cos((m * N + j) * u);
          sp = std::sin((m * N + j) * u);
        } else {
          double t = cm * cd - sm * sd;
          sm = sm * cd + cm * sd;
          cm = t;
          t = cp * cd - sp * sd;
          sp = sp * cd + cp * sd;
          cp = t;
        }
      }
      const double s = (parity == 1 && m % 2 == 1) ? -1.0 : 1.0;
      const double term =
          s * (g2 * wm * lad.minus_vals[i] * cm + g3 * lad.plus_vals[i] * cp);
      const double y = term - compensation;
      const double t2 = acc + y;
      compensation = (t2 - acc) - y;
      acc = t2;
    }
    total += acc;
  }
  return (1.0 + 2.0 * total) / N;
}

double CardinalSolveOracle::Impl::kernel_closed_power(double u) const {
  const int N = cfg.node_count;
  const int half = (N - 1) / 2;
  const int q = 1 + cfg.r;
  const double alpha = cfg.factor.alpha * cfg.factor.scale;
  // Full chi-weighted series plus the finite gamma1-vs-gamma3 correction on
  // the unaliased band.
  double series = 0.0;
  const int M = chi.period;
  for (int l = 0; l < M; ++l) {
    // real cosine DFT coefficients of the even weight pattern
    double coeff = 0.0;
    for (int a = 0; a < M; ++a)
      coeff += chi.weight[a] * std::cos(2.0 * kPi * l * a / M);
    coeff /= M;
    if (coeff == 0.0) continue;
    const double phi = 2.0 * kPi * l / M;
    series += coeff * 0.5 *
              (cos_series_closed(q, u + phi) + cos_series_closed(q, u - phi));
  }
  series *= alpha;
  double correction = 0.0;
  const double g1 = cfg.filters.gamma[0];
  const double g3 = cfg.filters.gamma[2];
  for (int j = 1; j <= half; ++j)
    correction += (g1 - g3) * factor_value(cfg.factor, j) * std::cos(j * u);
  return (1.0 + 2.0 * (series + correction)) / N;
}

double CardinalSolveOracle::Impl::kernel_periodized_bump(double u) const {
  const int N = cfg.node_count;
  const int half = (N - 1) / 2;
  const FactorSpec& f = cfg.factor;
  const BumpKind kind = f.family == FactorFamily::BumpSine
                            ? BumpKind::SinePower
                            : BumpKind::PolyPower;
  // G(x) = sum_{n>=1} mu_n cos(n x) from the periodized bump:
  //   SinePower carries the unit-integral convention, PolyPower the /pi one.
  const auto G = [&](double x) {
    double xr = std::remainder(x, 2.0 * kPi);
    const double g = bump_norm * bump_base(kind, f.r, f.alpha, xr);
    if (kind == BumpKind::SinePower) return kPi * g - 0.5;
    return g - 0.5 / kPi;
  };
  double series = 0.0;
  const int M = chi.period;
  for (int l = 0; l < M; ++l) {
    double coeff = 0.0;
    for (int a = 0; a < M; ++a)
      coeff += chi.weight[a] * std::cos(2.0 * kPi * l * a / M);
    coeff /= M;
    if (std::abs(coeff) < 1e-15) continue;
    const double phi = 2.0 * kPi * l / M;
    series += coeff * 0.5 * (G(u + phi) + G(u - phi));
  }
  series *= f.scale;
  double correction = 0.0;
  const double g1 = cfg.filters.gamma[0];
  const double g3 = cfg.filters.gamma[2];
  for (int j = 1; j <= half; ++j)
    correction += (g1 - g3) * factor_value(cfg.factor, j) * std::cos(j * u);
  return (1.0 + 2.0 * (series + correction)) / N;
}

double CardinalSolveOracle::evaluate(int k, double t) const {
  const int N = impl_->cfg.node_count;
  if (k < 1 || k > N) throw IndexOutOfRange("cardinal index k outside 1..N");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
  e(k - 1) = 1.0;
  const Eigen::VectorXd w = impl_->lu.solve(e);
  double value = 0.0;
  for (int i = 0; i < N; ++i)
    value += w(i) * impl_->kernel(t - impl_->nodes[i]);
  return value;
}

double CardinalSolveOracle::kernel(double u) const { return impl_->kernel(u); }

const KernelMatrix& CardinalSolveOracle::matrix() const { return impl_->km; }

double cardinal_by_linear_solve(const SplineConfig& config, int k, double t) {
  return CardinalSolveOracle(config).evaluate(k, t);
}

double derivative_jump_estimate(const SplineConfig& config, int k, double node,
                                int order, double h) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("jump estimate supports orders 0..2");
  if (!(h >= 1e-4 && h <= 1e-2))
    throw std::invalid_argument("stencil width h must lie in [1e-4, 1e-2]");
  // The probe point must be a stitching-grid node.
  const auto stitch = grid_nodes(config.stitch_grid());
  bool on_grid = false;
  for (double s : stitch) {
    const double d = std::remainder(node - s, 2.0 * kPi);
    if (std::abs(d) < 1e-9) {
      on_grid = true;
      break;
    }
  }
  if (!on_grid)
    throw std::invalid_argument("jump probe point is not a stitching node");

  const SplineEvaluator eval(config);
  const auto f = [&](double t) { return eval.fundamental(k, t).value; };
  double dplus = 0.0, dminus = 0.0;
  switch (order) {
    case 0:
      dplus = 4.0 * f(node + h) - 6.0 * f(node + 2 * h) +
              4.0 * f(node + 3 * h) - f(node + 4 * h);
      dminus = 4.0 * f(node - h) - 6.0 * f(node - 2 * h) +
               4.0 * f(node - 3 * h) - f(node - 4 * h);
      break;
    case 1:
      dplus = (-11.0 * f(node) + 18.0 * f(node + h) - 9.0 * f(node + 2 * h) +
               2.0 * f(node + 3 * h)) /
              (6.0 * h);
      dminus = (11.0 * f(node) - 18.0 * f(node - h) + 9.0 * f(node - 2 * h) -
                2.0 * f(node - 3 * h)) /
               (6.0 * h);
      break;
    case 2:
      dplus = (2.0 * f(node) - 5.0 * f(node + h) + 4.0 * f(node + 2 * h) -
               f(node + 3 * h)) /
              (h * h);
      dminus = (2.0 * f(node) - 5.0 * f(node - h) + 4.0 * f(node - 2 * h) -
                f(node - 3 * h)) /
               (h * h);
      break;
  }
  return std::abs(dplus - dminus);
}

}  // namespace trigspline::oracle
