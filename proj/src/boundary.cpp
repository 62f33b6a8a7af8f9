#include "sagraph/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sagraph/error.hpp"

namespace sagraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DistanceBounds truncation_distance_bounds(const WeightedGraph& truncation,
                                          const EdgeLengthAssignment& len, VertexIndex x,
                                          std::span<const VertexIndex> frontier, double tail_lb,
                                          double tail_ub) {
  if (x >= truncation.vertex_count()) throw InputError("vertex not found in truncation");
  DistanceBounds out;
  out.assumptions.emplace_back(kFrontierAssumption);
  if (frontier.empty()) {
    out.lower = kInf;
    out.upper = kInf;
    out.assumptions.emplace_back("empty frontier: the graph is finite and has no Cauchy boundary");
    return out;
  }
  const auto dist = path_metric(truncation, len, x);
  double nearest = kInf;
  for (VertexIndex f : frontier) nearest = std::min(nearest, dist.at(f));
  out.lower = nearest + tail_lb;
  out.upper = nearest + tail_ub;
  return out;
}

TailBounds tail_power_sum_bounds(double p, std::int64_t n) {
  if (!(p > 1.0)) throw InputError("divergent tail");
  if (n < 1) throw InputError("tail start must be a positive integer");
  const auto nn = static_cast<double>(n);
  TailBounds out;
  out.lower = std::pow(nn + 1.0, 1.0 - p) / (p - 1.0);
  out.upper = std::pow(nn, 1.0 - p) / (p - 1.0) + std::pow(nn + 1.0, -p);
  return out;
}

TailBounds row_distance_bounds(const LayeredFamilySpec& spec, LengthKind kind, std::int64_t n) {
  const auto cert = spec.step_certificate(kind);
  if (!cert) return {0.0, kInf};
  if (cert->exponent <= 1.0) return {kInf, kInf};
  const auto tail = tail_power_sum_bounds(cert->exponent, n);
  TailBounds out;
  out.lower = cert->escape_coef * tail.lower;
  out.upper = cert->spine_coef * (std::pow(static_cast<double>(n), -cert->exponent) + tail.upper);
  return out;
}

TailBounds family_tail_bounds(const LayeredFamilySpec& spec, LengthKind kind, std::int64_t row) {
  return row_distance_bounds(spec, kind, row);
}

DistanceBounds family_distance_bounds(const LayeredFamilySpec& spec, LengthKind kind,
                                      const GraphBundle& truncation, VertexIndex x) {
  const WeightedGraph& g = truncation.graph;
  EdgeLengthAssignment len;
  len.values.reserve(g.edge_count());
  int last_row = 1;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) last_row = std::max(last_row, row_of(g, v));
  for (const auto& e : g.edges()) {
    len.values.push_back(spec.length(*g.id(e.u).layer(), *g.id(e.v).layer(), kind));
  }
  const auto tail = family_tail_bounds(spec, kind, last_row);
  auto out = truncation_distance_bounds(g, len, x, truncation.frontier, tail.lower, tail.upper);
  const auto cert = spec.step_certificate(kind);
  if (cert) out.assumptions.push_back(cert->statement);
  else out.assumptions.emplace_back("no step certificate: tail bounds are 0 and infinity");
  return out;
}

std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::Complete: return "Complete";
    case Completeness::Incomplete: return "Incomplete";
    case Completeness::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CompletenessVerdict completeness_verdict(const LayeredFamilySpec& spec, LengthKind kind) {
  CompletenessVerdict out;
  const auto cert = spec.step_certificate(kind);
  if (!cert) {
    out.evidence = "family carries no step-length certificate";
    return out;
  }
  out.exponent = cert->exponent;
  std::ostringstream os;
  os.precision(17);
  if (cert->exponent > 1.0) {
    if (!cert->spine_geodesic) {
      os << "spine series converges (p = " << cert->exponent
         << ") but the spine is not certified geodesic";
      out.evidence = os.str();
      return out;
    }
    out.verdict = Completeness::Incomplete;
    os << "spine length sum_j " << cert->spine_coef << " j^-" << cert->exponent
       << " converges; " << cert->statement;
  } else {
    out.verdict = Completeness::Complete;
    os << "every escape path crosses all row boundaries at cost >= " << cert->escape_coef
       << " (j+1)^-" << cert->exponent << ", a divergent series; " << cert->statement;
  }
  out.evidence = os.str();
  return out;
}

}  // namespace sagraph
