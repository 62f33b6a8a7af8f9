#pragma once

#include <limits>
#include <span>
#include <vector>

#include "sagraph/graph.hpp"

namespace sagraph {

inline constexpr double kIntrinsicTolerance = 1e-12;
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Positive length on every edge; induces the path metric d_sigma.
struct EdgeLengthAssignment {
  std::vector<double> values;

  double operator[](EdgeIndex e) const { return values[e]; }
  std::size_t size() const noexcept { return values.size(); }
};

struct IntrinsicCheckResult {
  double max_ratio = 0.0;
  VertexIndex worst_vertex = 0;
  bool passes = true;
};

/// sigma_1(x,y) = b^{-1/2} * min(mu(x)/deg(x), mu(y)/deg(y))^{1/2}.
/// Throws InputError("degree zero") if some vertex is isolated.
EdgeLengthAssignment sigma1_default(const WeightedGraph& g);

/// sigma_q(x,y) = min(q(x)^{-1/2}, q(y)^{-1/2}) * sigma(x,y); q >= 1 required.
EdgeLengthAssignment sigma_q(const WeightedGraph& g, const EdgeLengthAssignment& sigma,
                             std::span<const double> q);

/// Lengths from the bundle's overrides if present, else sigma_1.
EdgeLengthAssignment edge_lengths(const GraphBundle& bundle);

/// max_x (1/mu(x)) sum_y b(x,y) d(x,y)^2 with d the path metric induced by
/// `len`, evaluated on neighbor pairs.
IntrinsicCheckResult check_intrinsic(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                     double tol = kIntrinsicTolerance);

/// Same sum with the edge lengths themselves in place of d.
IntrinsicCheckResult check_strongly_intrinsic(const WeightedGraph& g,
                                              const EdgeLengthAssignment& len,
                                              double tol = kIntrinsicTolerance);

/// Single-source shortest paths (binary-heap Dijkstra). Unreachable vertices
/// get kUnreachable.
std::vector<double> path_metric(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                VertexIndex source);

/// Dijkstra that stops once every remaining tentative distance exceeds
/// `radius`; vertices beyond it are left at kUnreachable.
std::vector<double> path_metric_within(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                       VertexIndex source, double radius);

/// min over s in `sources` of d(s, x), for every x (multi-source Dijkstra).
std::vector<double> distance_to_set(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                    std::span<const VertexIndex> sources);

/// Least K with |f(x) - f(y)| <= K len(x,y) on every edge.
double lipschitz_constant(const WeightedGraph& g, const EdgeLengthAssignment& len,
                          std::span<const double> f);

}  // namespace sagraph
