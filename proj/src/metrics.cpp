#include "sagraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <utility>

#include "sagraph/error.hpp"

namespace sagraph {

EdgeLengthAssignment sigma1_default(const WeightedGraph& g) {
  std::vector<double> ratio(g.vertex_count());
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const std::size_t deg = vertex_degree(g, x);
    if (deg == 0) throw InputError("degree zero: " + g.id(x).name());
    ratio[x] = g.mu(x) / static_cast<double>(deg);
  }
  EdgeLengthAssignment out;
  out.values.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    out.values.push_back(std::sqrt(std::min(ratio[e.u], ratio[e.v]) / e.b));
  }
  return out;
}

EdgeLengthAssignment sigma_q(const WeightedGraph& g, const EdgeLengthAssignment& sigma,
                             std::span<const double> q) {
  if (q.size() != g.vertex_count()) throw InputError("q must be defined on every vertex");
  for (VertexIndex x = 0; x < q.size(); ++x) {
    if (!(q[x] >= 1.0)) throw InputError("q below one at " + g.id(x).name());
  }
  EdgeLengthAssignment out;
  out.values.reserve(g.edge_count());
  for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const double scale = std::min(1.0 / std::sqrt(q[e.u]), 1.0 / std::sqrt(q[e.v]));
    out.values.push_back(scale * sigma[k]);
  }
  return out;
}

EdgeLengthAssignment edge_lengths(const GraphBundle& bundle) {
  if (bundle.sigma) return EdgeLengthAssignment{*bundle.sigma};
  return sigma1_default(bundle.graph);
}

namespace {

IntrinsicCheckResult summarize(const WeightedGraph& g, const std::vector<double>& sums,
                               double tol) {
  IntrinsicCheckResult r;
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const double ratio = sums[x] / g.mu(x);
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.worst_vertex = x;
    }
  }
  r.passes = r.max_ratio <= 1.0 + tol;
  return r;
}

struct QueueEntry {
  double dist;
  VertexIndex vertex;
  friend bool operator>(const QueueEntry& a, const QueueEntry& b) {
    return a.dist > b.dist || (a.dist == b.dist && a.vertex > b.vertex);
  }
};

}  // namespace

IntrinsicCheckResult check_strongly_intrinsic(const WeightedGraph& g,
                                              const EdgeLengthAssignment& len, double tol) {
  std::vector<double> sums(g.vertex_count(), 0.0);
  for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    if (e.u == e.v) continue;
    const double w = e.b * len[k] * len[k];
    sums[e.u] += w;
    sums[e.v] += w;
  }
  return summarize(g, sums, tol);
}

IntrinsicCheckResult check_intrinsic(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                     double tol) {
  std::vector<double> sums(g.vertex_count(), 0.0);
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    double radius = 0.0;
    for (const auto& inc : g.incident(x)) radius = std::max(radius, len[inc.edge]);
    const auto d = path_metric_within(g, len, x, radius);
    for (const auto& inc : g.incident(x)) {
      const double dist = d[inc.neighbor];
      sums[x] += inc.b * dist * dist;
    }
  }
  return summarize(g, sums, tol);
}

namespace {

std::vector<double> dijkstra(const WeightedGraph& g, const EdgeLengthAssignment& len,
                             std::span<const VertexIndex> sources, double radius) {
  std::vector<double> dist(g.vertex_count(), kUnreachable);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> heap;
  for (VertexIndex s : sources) {
    dist.at(s) = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    const QueueEntry top = heap.top();
    heap.pop();
    if (top.dist > dist[top.vertex]) continue;
    if (top.dist > radius) break;
    for (const auto& inc : g.incident(top.vertex)) {
      const double cand = top.dist + len[inc.edge];
      if (cand < dist[inc.neighbor]) {
        dist[inc.neighbor] = cand;
        heap.push({cand, inc.neighbor});
      }
    }
  }
  for (double& d : dist) {
    if (d > radius) d = kUnreachable;
  }
  return dist;
}

}  // namespace

std::vector<double> path_metric_within(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                       VertexIndex source, double radius) {
  const VertexIndex sources[] = {source};
  return dijkstra(g, len, sources, radius);
}

std::vector<double> distance_to_set(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                    std::span<const VertexIndex> sources) {
  return dijkstra(g, len, sources, kUnreachable);
}

std::vector<double> path_metric(const WeightedGraph& g, const EdgeLengthAssignment& len,
                                VertexIndex source) {
  return path_metric_within(g, len, source, kUnreachable);
}

double lipschitz_constant(const WeightedGraph& g, const EdgeLengthAssignment& len,
                          std::span<const double> f) {
  if (f.size() != g.vertex_count()) throw InputError("function must be defined on every vertex");
  double k = 0.0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    k = std::max(k, std::abs(f[edge.u] - f[edge.v]) / len[e]);
  }
  return k;
}

}  // namespace sagraph
