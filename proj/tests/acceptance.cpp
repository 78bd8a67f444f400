// Acceptance suite: runs every top-level requirement at its stated
// tolerance and prints one PASS/FAIL line per criterion.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trigspline/cli_app.hpp"
#include "trigspline/factors.hpp"
#include "trigspline/grids.hpp"
#include "trigspline/oracle.hpp"
#include "trigspline/spline.hpp"

using namespace trigspline;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Calibrated smoothness fixtures (see the jump-estimate calibration
// procedure): theta_cont is ten times the stencil discrepancy measured on
// cos(t); theta_kink is half the smallest significant first-derivative jump
// observed across the four N = 9, r = 1 configurations.
constexpr double kThetaCont = 4.7e-9;
constexpr double kThetaKink = 0.716;

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;
};

SplineConfig make_config(int n, int r, int i1, int i2, FactorSpec factor,
                         SignVariant variant = SignVariant::ConstantSign) {
  SplineConfig cfg;
  cfg.node_count = n;
  cfg.r = r;
  cfg.stitch_indicator = i1;
  cfg.interp_indicator = i2;
  cfg.factor = std::move(factor);
  cfg.variant = variant;
  return cfg;
}

std::string metric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Criterion criterion_cardinality() {
  Criterion c{"cardinality at interpolation nodes", true, ""};
  double worst = 0.0;
  for (int n : {3, 5, 9})
    for (int r : {1, 2, 3})
      for (int i1 : {0, 1})
        for (int i2 : {0, 1}) {
          const auto cfg =
              make_config(n, r, i1, i2, FactorSpec::constant_power(1.0, r));
          const SplineEvaluator eval(cfg);
          const auto nodes = grid_nodes(cfg.interp_grid());
          for (int k = 1; k <= n; ++k)
            for (int i = 1; i <= n; ++i)
              worst = std::max(worst,
                               std::abs(eval.fundamental(k, nodes[i - 1]).value -
                                        (k == i ? 1.0 : 0.0)));
        }
  c.pass = worst <= 1e-8;
  c.detail = "max |st_k(t_i) - delta| = " + metric(worst);
  return c;
}

std::vector<std::vector<double>> read_curve(const fs::path& file) {
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

Criterion criterion_figures() {
  Criterion c{"figure curves: node values and stitching kinks", true, ""};
  const fs::path dir =
      fs::temp_directory_path() / ("trigspline_accept_fig_" +
                                   std::to_string(::getpid()));
  fs::create_directories(dir);
  if (cli::run({"figures", "--outdir", dir.string()}) != 0) {
    c.pass = false;
    c.detail = "figures subcommand failed";
    return c;
  }
  double worst_node = 0.0;
  for (int i1 : {0, 1}) {
    for (int i2 : {0, 1}) {
      const fs::path file = dir / ("st5_I1" + std::to_string(i1) + "_I2" +
                                   std::to_string(i2) + ".csv");
      const auto rows = read_curve(file);
      if (rows.size() != 721) {
        c.pass = false;
        c.detail = "unexpected sample count";
        return c;
      }
      for (int i = 1; i <= 9; ++i) {
        const int idx = 80 * (i - 1) + (i2 == 1 ? 40 : 0);
        const double expect = (i == 5) ? 1.0 : 0.0;
        worst_node = std::max(worst_node,
                              std::abs(rows[idx][1] - expect));
      }
    }
  }
  // degree-1 stitching on the base grid: kinks at the support nodes of the
  // (0,0) curve, value continuity everywhere
  const auto cfg = make_config(9, 1, 0, 0, FactorSpec::constant_power(1.0, 1));
  const auto stitch = grid_nodes(cfg.stitch_grid());
  double min_support_kink = 1e300;
  double worst_cont = 0.0;
  for (int node_index : {4, 5, 6})  // peak and both support edges of st_5
    min_support_kink = std::min(
        min_support_kink,
        oracle::derivative_jump_estimate(cfg, 5, stitch[node_index - 1], 1));
  for (double node : stitch)
    worst_cont =
        std::max(worst_cont, oracle::derivative_jump_estimate(cfg, 5, node, 0));
  fs::remove_all(dir);
  c.pass = worst_node <= 1e-8 && min_support_kink >= kThetaKink &&
           worst_cont <= 1e-6;
  c.detail = "max node error = " + metric(worst_node) +
             ", min support kink = " + metric(min_support_kink) +
             ", max value jump = " + metric(worst_cont);
  return c;
}

Criterion criterion_partition_of_unity() {
  Criterion c{"partition of unity at random points", true, ""};
  std::mt19937 rng(20250810);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int n : {3, 5, 9})
    for (int r : {1, 2, 3})
      for (int i1 : {0, 1})
        for (int i2 : {0, 1}) {
          const auto cfg =
              make_config(n, r, i1, i2, FactorSpec::constant_power(1.0, r));
          const SplineEvaluator eval(cfg);
          for (int rep = 0; rep < 100; ++rep) {
            const double t = dist(rng);
            double sum = 0.0;
            for (int k = 1; k <= n; ++k) sum += eval.fundamental(k, t).value;
            worst = std::max(worst, std::abs(sum - 1.0));
          }
        }
  c.pass = worst <= 1e-8;
  c.detail = "max |sum st_k - 1| = " + metric(worst);
  return c;
}

Criterion criterion_oracle_equivalence() {
  Criterion c{"oracle equivalence across factor families", true, ""};
  struct Instance {
    const char* label;
    SplineConfig cfg;
  };
  std::vector<double> head(9);
  for (int j = 1; j <= 9; ++j)
    head[j - 1] = std::pow(j, -4.0) * (1.0 + 0.2 * std::sin(double(j)));
  const std::vector<Instance> instances = {
      {"constant-power",
       make_config(9, 1, 0, 0, FactorSpec::constant_power(1.0, 1))},
      {"sinc-power",
       make_config(9, 3, 0, 1, FactorSpec::sinc_power(0.25, 3),
                   SignVariant::SignChanging)},
      {"sin transform",
       make_config(9, 3, 0, 0,
                   FactorSpec::transformed(TransformKind::Sin,
                                           BaseFamily::ConstantPower, 1.0, 3))},
      {"arcsin transform",
       make_config(9, 3, 1, 0,
                   FactorSpec::transformed(TransformKind::Arcsin,
                                           BaseFamily::ConstantPower, 0.8, 3))},
      {"tan transform",
       make_config(9, 3, 0, 0,
                   FactorSpec::transformed(TransformKind::Tan,
                                           BaseFamily::ConstantPower, 0.9, 3))},
      {"arctan transform",
       make_config(9, 3, 0, 1,
                   FactorSpec::transformed(TransformKind::Arctan,
                                           BaseFamily::ConstantPower, 1.0, 3))},
      {"log transform",
       make_config(9, 3, 0, 0,
                   FactorSpec::transformed(TransformKind::Log,
                                           BaseFamily::ConstantPower, 1.0, 3,
                                           3.0))},
      {"exp transform",
       make_config(9, 3, 1, 1,
                   FactorSpec::transformed(TransformKind::Exp,
                                           BaseFamily::ConstantPower, 1.0, 3,
                                           2.0))},
      {"root transform",
       make_config(9, 3, 0, 0,
                   FactorSpec::transformed(TransformKind::Root,
                                           BaseFamily::ConstantPower, 1.0, 3,
                                           2.0, 3))},
      {"sine bump",
       make_config(9, 1, 0, 0, FactorSpec::bump_sine(1.0, 1))},
      {"poly bump r1",
       make_config(9, 1, 0, 0, FactorSpec::bump_poly(1.0, 1))},
      {"poly bump r2",
       make_config(9, 2, 0, 0, FactorSpec::bump_poly(1.0, 2))},
      {"poly bump r3",
       make_config(9, 3, 0, 1, FactorSpec::bump_poly(0.8, 3))},
      {"poly bump r4",
       make_config(9, 4, 0, 0, FactorSpec::bump_poly(1.0, 4))},
      {"composite",
       make_config(9, 3, 0, 0,
                   FactorSpec::composite(head,
                                         FactorSpec::constant_power(1.0, 3)))},
      {"product",
       make_config(
           9, 4, 0, 0,
           FactorSpec::product(
               FactorSpec::transformed(TransformKind::Sin,
                                       BaseFamily::ConstantPower, 0.7, 1),
               FactorSpec::sinc_power(0.3, 2)),
           SignVariant::SignChanging)},
  };
  double worst = 0.0;
  std::string worst_label = "-";
  for (const auto& inst : instances) {
    const SplineEvaluator eval(inst.cfg);
    const oracle::CardinalSolveOracle solve(inst.cfg);
    double local = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double t = 2.0 * kPi * i / 512.0;
      local = std::max(local, std::abs(eval.fundamental(5, t).value -
                                       solve.evaluate(5, t)));
    }
    if (local > worst) {
      worst = local;
      worst_label = inst.label;
    }
    if (local > 1e-8) c.pass = false;
  }
  c.detail = "max |closed - solve| = " + metric(worst) + " (" + worst_label +
             "), " + std::to_string(instances.size()) + " instances";
  return c;
}

Criterion criterion_scale_invariance() {
  Criterion c{"global factor-scale invariance", true, ""};
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  const std::vector<SplineConfig> configs = {
      make_config(9, 1, 0, 0, FactorSpec::constant_power(1.0, 1)),
      make_config(9, 3, 0, 1, FactorSpec::sinc_power(0.25, 3),
                  SignVariant::SignChanging),
      make_config(9, 1, 1, 0, FactorSpec::bump_poly(1.0, 1)),
      make_config(9, 2, 0, 0, FactorSpec::bump_sine(0.8, 2)),
  };
  double worst = 0.0;
  for (const auto& cfg : configs) {
    const SplineEvaluator base(cfg);
    for (double s : {1e-3, 1e3}) {
      SplineConfig scaled = cfg;
      scaled.factor = cfg.factor.scaled(s);
      const SplineEvaluator eval(scaled);
      for (int i = 0; i < 100; ++i) {
        const double t = dist(rng);
        const int k = 1 + i % 9;
        worst = std::max(worst, std::abs(eval.fundamental(k, t).value -
                                         base.fundamental(k, t).value));
      }
    }
  }
  c.pass = worst <= 1e-8;
  c.detail = "max value drift = " + metric(worst);
  return c;
}

Criterion criterion_quadrature_agreement() {
  Criterion c{"bump coefficient closed forms against quadrature", true, ""};
  using oracle::BumpKind;
  using oracle::Convention;
  double worst = 0.0;
  bool scan_ok = true;
  try {
    for (int r : {1, 2, 3, 4}) {
      if (oracle::select_convention(BumpKind::SinePower, r) !=
          Convention::UnitIntegral)
        scan_ok = false;
      if (oracle::select_convention(BumpKind::PolyPower, r) !=
          Convention::OverPi)
        scan_ok = false;
    }
  } catch (const std::exception&) {
    scan_ok = false;
  }
  for (int r : {1, 2, 3, 4}) {
    for (double alpha : {0.3, 0.5, 1.0}) {
      for (long k = 1; k <= 50; ++k) {
        const double mu = bump_sine_coefficient(r, alpha, k);
        const double mu_quad = oracle::quadrature_fourier_coefficient(
            BumpKind::SinePower, r, alpha, k, Convention::UnitIntegral);
        worst = std::max(worst, std::abs(mu - mu_quad) /
                                    std::max(std::abs(mu), 1e-9));
        const double v = bump_poly_coefficient(r, alpha, k);
        const double v_quad = oracle::quadrature_fourier_coefficient(
            BumpKind::PolyPower, r, alpha, k, Convention::OverPi);
        worst = std::max(worst, std::abs(v - v_quad) /
                                    std::max(std::abs(v), 1e-9));
      }
    }
  }
  c.pass = worst <= 1e-6 && scan_ok;
  c.detail = "max relative gap = " + metric(worst) +
             (scan_ok ? ", convention scan unique" : ", convention scan FAILED");
  return c;
}

Criterion criterion_method_equivalence() {
  Criterion c{"sign-changing sinc at alpha = pi/N matches the constant-sign build", true, ""};
  double worst = 0.0;
  for (int r : {1, 2}) {
    for (int i1 : {0, 1}) {
      for (int i2 : {0, 1}) {
        const auto constant =
            make_config(9, r, i1, i2, FactorSpec::constant_power(1.0, r));
        const auto changing =
            make_config(9, r, i1, i2, FactorSpec::sinc_power(kPi / 9.0, r),
                        SignVariant::SignChanging);
        const SplineEvaluator a(constant);
        const SplineEvaluator b(changing);
        for (int k = 1; k <= 9; ++k) {
          for (int i = 0; i < 512; ++i) {
            const double t = 2.0 * kPi * i / 512.0;
            worst = std::max(worst, std::abs(a.fundamental(k, t).value -
                                             b.fundamental(k, t).value));
          }
        }
      }
    }
  }
  c.pass = worst <= 1e-6;
  c.detail = "max |constant-sign - sign-changing| = " + metric(worst);
  return c;
}

Criterion criterion_smoothness_ladder() {
  Criterion c{"smoothness ladder at stitching nodes", true, ""};
  double worst_value_jump = 0.0;
  double worst_smooth = 0.0;
  double min_kink = 1e300;
  for (int i1 : {0, 1}) {
    for (int i2 : {0, 1}) {
      for (int r : {1, 2, 3}) {
        const auto cfg =
            make_config(9, r, i1, i2, FactorSpec::constant_power(1.0, r));
        const auto stitch = grid_nodes(cfg.stitch_grid());
        for (int k : {1, 5}) {
          double max_jump = 0.0;
          for (double node : stitch) {
            worst_value_jump =
                std::max(worst_value_jump,
                         oracle::derivative_jump_estimate(cfg, k, node, 0));
            const double d1 =
                oracle::derivative_jump_estimate(cfg, k, node, 1);
            max_jump = std::max(max_jump, d1);
            if (r >= 2) worst_smooth = std::max(worst_smooth, d1);
          }
          if (r == 1) min_kink = std::min(min_kink, max_jump);
        }
      }
    }
  }
  c.pass = worst_value_jump <= 1e-6 && worst_smooth <= kThetaCont &&
           min_kink >= kThetaKink;
  c.detail = "value jumps = " + metric(worst_value_jump) +
             ", r>=2 slope jumps = " + metric(worst_smooth) +
             ", min r=1 kink = " + metric(min_kink);
  return c;
}

Criterion criterion_infinitesimal_ratios() {
  Criterion c{"equivalent-infinitesimal transform ratios", true, ""};
  struct Kind {
    TransformKind kind;
    const char* label;
  };
  const Kind kinds[] = {
      {TransformKind::Sin, "sin"},     {TransformKind::Arcsin, "arcsin"},
      {TransformKind::Tan, "tan"},     {TransformKind::Arctan, "arctan"},
      {TransformKind::Log, "log"},     {TransformKind::Exp, "exp"},
      {TransformKind::Root, "root"},
  };
  const auto base = FactorSpec::constant_power(1.0, 1);
  double worst = 0.0;
  std::string worst_label;
  std::string failures;
  for (const auto& [kind, label] : kinds) {
    const auto spec = FactorSpec::transformed(kind, BaseFamily::ConstantPower,
                                              1.0, 1, 2.0, 3);
    double local = 0.0;
    // base(j) <= 1e-4 from j* = 100 on
    for (long j : {100L, 120L, 150L, 200L, 400L, 1000L, 5000L}) {
      const double ratio = factor_value(spec, j) / factor_value(base, j);
      local = std::max(local, std::abs(ratio - 1.0));
    }
    if (local > worst) {
      worst = local;
      worst_label = label;
    }
    if (local > 1e-6) {
      if (!failures.empty()) failures += "/";
      failures += label;
      failures += "=" + metric(local);
    }
  }
  c.pass = worst <= 1e-6;
  c.detail = c.pass ? ("max |ratio - 1| = " + metric(worst) + " (" +
                       worst_label + ")")
                    : ("first-order kinds exceed the bar at base = 1e-4: " +
                       failures + "; their |ratio-1| scales like base/2, so "
                       "1e-6 is unreachable at that threshold");
  return c;
}

Criterion criterion_determinism() {
  Criterion c{"figure emission is byte-deterministic", true, ""};
  const fs::path a = fs::temp_directory_path() /
                     ("trigspline_accept_det_a_" + std::to_string(::getpid()));
  const fs::path b = fs::temp_directory_path() /
                     ("trigspline_accept_det_b_" + std::to_string(::getpid()));
  fs::create_directories(a);
  fs::create_directories(b);
  bool same = cli::run({"figures", "--outdir", a.string()}) == 0 &&
              cli::run({"figures", "--outdir", b.string()}) == 0;
  for (const char* name :
       {"st5_I10_I20.csv", "st5_I10_I21.csv", "st5_I11_I20.csv",
        "st5_I11_I21.csv"}) {
    std::ifstream fa(a / name, std::ios::binary);
    std::ifstream fb(b / name, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    same = same && sa.str() == sb.str() && !sa.str().empty();
  }
  fs::remove_all(a);
  fs::remove_all(b);
  c.pass = same;
  c.detail = same ? "two runs byte-identical" : "outputs differ";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> criteria = {
      criterion_cardinality,        criterion_figures,
      criterion_partition_of_unity, criterion_oracle_equivalence,
      criterion_scale_invariance,   criterion_quadrature_agreement,
      criterion_method_equivalence, criterion_smoothness_ladder,
      criterion_infinitesimal_ratios, criterion_determinism,
  };
  int failures = 0;
  int index = 0;
  for (const auto& make : criteria) {
    ++index;
    Criterion c;
    try {
      c = make();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    if (!c.pass) ++failures;
    std::printf("[%s] %2d %s: %s\n", c.pass ? "PASS" : "FAIL", index,
                c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0)
    std::printf("%d of %d criteria failed\n", failures,
                static_cast<int>(criteria.size()));
  else
    std::printf("all %d criteria passed\n", static_cast<int>(criteria.size()));
  return failures == 0 ? 0 : 1;
}
