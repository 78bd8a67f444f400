#pragma once

#include <vector>

namespace trigspline {

// Uniform periodic grid on [0, 2pi).  Indicator 0 starts at 0; indicator 1
// is the half-step-shifted grid whose nodes sit midway between the
// indicator-0 nodes.  Node count must be odd (the channel sums run to
// (N-1)/2 and the cardinality argument needs odd N).
struct GridSpec {
  int node_count = 9;
  int indicator = 0;

  void validate() const;
};

// All N nodes, 1-based ordering, strictly increasing in [0, 2pi).
std::vector<double> grid_nodes(const GridSpec& spec);

// Node t_k of the grid, k in 1..N.
double grid_node(const GridSpec& spec, int k);

// Interpolation-center selector: node x_k of the indicator-I2 grid.
double selected_node(int k, int interp_indicator, int node_count);

}  // namespace trigspline
