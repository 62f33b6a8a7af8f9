#pragma once

#include <vector>

#include "sagraph/graph.hpp"

namespace sagraph {

/// Finite connected subgraph (V_l, E_l) of a covering.
struct CoveringCell {
  std::vector<VertexIndex> vertices;
  std::vector<EdgeIndex> edges;
};

struct GoodCovering {
  std::vector<CoveringCell> cells;
  int m = 1;
};

/// Checks that the cells cover every vertex, that every edge lies in between
/// 1 and m cells, and that each cell is connected through its own edges.
ValidationReport validate_covering(const WeightedGraph& g, const GoodCovering& cover);

/// Lowest eigenvalue of the cell Laplacian with unit weights on E_l and the
/// host measure and phase restricted to the cell.
double cell_lowest_eigenvalue(const WeightedGraph& g, const PhaseAssignment& theta,
                              const CoveringCell& cell);

struct EffectivePotential {
  /// W_e(x) = (1/m) sum_{l : x in V_l} p_l inf_{E_l} b.
  std::vector<double> values;
  std::vector<double> cell_p;
  std::vector<double> cell_inf_b;
};

/// Throws InputError if the covering does not validate.
EffectivePotential effective_potential(const WeightedGraph& g, const PhaseAssignment& theta,
                                       const GoodCovering& cover);

struct TriangleCovering {
  GoodCovering cover;
  PhaseAssignment theta;
};

/// One cell per horizontal edge (x_{j,k}, x_{j,k+1}): the triangle closed by
/// x_{j-1,1}. Tree edges get phase 0 and horizontals phase pi, so every
/// triangle carries flux pi. Throws InputError("not a triangle-covered
/// family") on any other shape.
TriangleCovering triangle_covering(const WeightedGraph& g);

}  // namespace sagraph
