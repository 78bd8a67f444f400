#pragma once

#include <optional>
#include <vector>

#include "trigspline/factors.hpp"

namespace trigspline::atoms {

// amp * trig(freq * n) * (n - shift)^{-power}
struct TrigAtom {
  double amp = 0.0;
  bool is_sin = false;
  double freq = 0.0;
  int power = 2;
  double shift = 0.0;
};

// amp * trig(freq * n) * [ (n - shift1)^{-1} - (n - shift2)^{-1} ]
// First-order poles always come in difference pairs so their ladder sums
// stay absolutely convergent.
struct PairAtom {
  double amp = 0.0;
  bool is_sin = false;
  double freq = 0.0;
  double shift1 = 0.0;
  double shift2 = 0.0;
};

// Finite trig/power representation of a factor family, valid pointwise for
// every integer n >= valid_from up to a certified remainder:
//   |factor(n) - atoms(n)| <= remainder_coeff * n^{-remainder_order}.
struct AtomSeries {
  std::vector<TrigAtom> power_atoms;
  std::vector<PairAtom> pair_atoms;
  long valid_from = 1;
  double remainder_coeff = 0.0;
  int remainder_order = 2;
};

// Build the atom representation of a factor, valid from n_min upward.
// Returns nullopt when the family has no representation there (Taylor
// expansion out of range, oversized product); callers then fall back to
// direct summation.
std::optional<AtomSeries> decompose_factor(const FactorSpec& spec, long n_min);

// Evaluate the atoms pointwise (tests compare this against factor_value).
double atom_series_value(const AtomSeries& series, long n);

}  // namespace trigspline::atoms
