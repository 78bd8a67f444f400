#include "trigspline/grids.hpp"

#include <numbers>
#include <string>

#include "trigspline/errors.hpp"

namespace trigspline {

namespace {
constexpr double kPi = std::numbers::pi;
}

void GridSpec::validate() const {
  if (node_count < 3 || node_count % 2 == 0)
    throw InvalidGrid("grid node count must be odd and >= 3, got " +
                      std::to_string(node_count));
  if (indicator != 0 && indicator != 1)
    throw InvalidGrid("grid indicator must be 0 or 1");
}

std::vector<double> grid_nodes(const GridSpec& spec) {
  spec.validate();
  std::vector<double> nodes(spec.node_count);
  for (int k = 1; k <= spec.node_count; ++k) nodes[k - 1] = grid_node(spec, k);
  return nodes;
}

double grid_node(const GridSpec& spec, int k) {
  spec.validate();
  if (k < 1 || k > spec.node_count)
    throw IndexOutOfRange("grid node index " + std::to_string(k) +
                          " outside 1.." + std::to_string(spec.node_count));
  const double step = 2.0 * kPi / spec.node_count;
  return step * (k - 1) + (spec.indicator == 1 ? 0.5 * step : 0.0);
}

double selected_node(int k, int interp_indicator, int node_count) {
  return grid_node(GridSpec{node_count, interp_indicator}, k);
}

}  // namespace trigspline
