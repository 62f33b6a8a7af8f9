#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sagraph/families.hpp"
#include "sagraph/graph.hpp"
#include "sagraph/metrics.hpp"

namespace sagraph {

/// Bracket for the distance D(x) from x to the Cauchy boundary.
struct DistanceBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<std::string> assumptions;
};

inline const char* const kFrontierAssumption =
    "every Cauchy point is a limit of paths exiting through the frontier";

/// lower = min_f d(x,f) + tail_lb, upper = min_f d(x,f) + tail_ub, with d the
/// path metric of the truncation.
DistanceBounds truncation_distance_bounds(const WeightedGraph& truncation,
                                          const EdgeLengthAssignment& len, VertexIndex x,
                                          std::span<const VertexIndex> frontier, double tail_lb,
                                          double tail_ub);

struct TailBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds for sum_{j >= n} (j+1)^{-p}, p > 1, by integral comparison.
/// Throws InputError("divergent tail") for p <= 1.
TailBounds tail_power_sum_bounds(double p, std::int64_t n);

/// Bounds for the length any escape path must spend beyond row `row`
/// (lower) and the spine tail from x_{row,1} (upper). Both are +infinity
/// when the certified series diverges, and (0, inf) without a certificate.
TailBounds family_tail_bounds(const LayeredFamilySpec& spec, LengthKind kind, std::int64_t row);

/// Bounds on D(x) for a vertex of a generated truncation, using the family
/// lengths of the requested kind and the certified tails.
DistanceBounds family_distance_bounds(const LayeredFamilySpec& spec, LengthKind kind,
                                      const GraphBundle& truncation, VertexIndex x);

/// Closed-form D bounds for every vertex of row n of the infinite graph,
/// from the step certificate alone: lower from the escape steps, upper (for
/// the spine vertex x_{n,1}) from the spine steps.
TailBounds row_distance_bounds(const LayeredFamilySpec& spec, LengthKind kind, std::int64_t n);

enum class Completeness { Complete, Incomplete, Inconclusive };
std::string to_string(Completeness c);

struct CompletenessVerdict {
  Completeness verdict = Completeness::Inconclusive;
  std::string evidence;
  double exponent = 0.0;
};

CompletenessVerdict completeness_verdict(const LayeredFamilySpec& spec, LengthKind kind);

}  // namespace sagraph
