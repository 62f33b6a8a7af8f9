#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "sagraph/error.hpp"
#include "sagraph/metrics.hpp"
#include "sagraph/verification.hpp"

using namespace sagraph;

namespace {

/// Connected random graph on 2..8 vertices with random lengths attached.
GraphBundle small_random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  const int n = size(rng);
  while (true) {
    BundleBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(VertexId("v" + std::to_string(i)), weight(rng));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (unit(rng) < 0.45) b.add_edge(i, j, weight(rng));
      }
    }
    GraphBundle g = std::move(b).build();
    if (g.graph.connected()) return g;
  }
}

}  // namespace

TEST_CASE("sigma_1 follows its definition edge by edge") {
  const GraphBundle g = random_bundle(3);
  const auto s = sigma1_default(g.graph);
  for (EdgeIndex e = 0; e < g.graph.edge_count(); ++e) {
    const auto& edge = g.graph.edge(e);
    const double ru = g.graph.mu(edge.u) / vertex_degree(g.graph, edge.u);
    const double rv = g.graph.mu(edge.v) / vertex_degree(g.graph, edge.v);
    CHECK(s[e] == doctest::Approx(std::sqrt(std::min(ru, rv) / edge.b)).epsilon(1e-14));
  }
}

TEST_CASE("sigma_1 rejects isolated vertices") {
  BundleBuilder b;
  b.add_vertex(VertexId("a"), 1.0);
  b.add_vertex(VertexId("b"), 1.0);
  b.add_vertex(VertexId("c"), 1.0);
  b.add_edge(0, 1, 1.0);
  CHECK_THROWS_WITH_AS(sigma1_default(std::move(b).build().graph), doctest::Contains("degree zero"),
                       InputError);
}

TEST_CASE("sigma_1 is strongly intrinsic on random graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GraphBundle g = random_bundle(instance_seed(11, seed));
    const auto s = sigma1_default(g.graph);
    CHECK(check_strongly_intrinsic(g.graph, s).passes);
    CHECK(check_intrinsic(g.graph, s).passes);
  }
}

TEST_CASE("doubling the lengths breaks the intrinsic bound") {
  const GraphBundle g = random_bundle(5);
  auto s = sigma1_default(g.graph);
  for (double& v : s.values) v *= 2.0;
  const auto r = check_strongly_intrinsic(g.graph, s);
  CHECK_FALSE(r.passes);
  CHECK(r.max_ratio > 1.0);
}

TEST_CASE("Dijkstra agrees exactly with exhaustive path enumeration") {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> length(0.01, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const GraphBundle g = small_random_graph(rng);
    EdgeLengthAssignment len;
    for (EdgeIndex e = 0; e < g.graph.edge_count(); ++e) len.values.push_back(length(rng));
    for (VertexIndex src = 0; src < g.size(); ++src) {
      const auto fast = path_metric(g.graph, len, src);
      const auto slow = oracle::exhaustive_distances(g.graph, len.values, src);
      for (VertexIndex x = 0; x < g.size(); ++x) CHECK(fast[x] == slow[x]);
    }
  }
}

TEST_CASE("multi-source distances are the pointwise minimum") {
  const GraphBundle g = random_bundle(17);
  const auto len = sigma1_default(g.graph);
  const std::vector<VertexIndex> sources{0, g.size() - 1};
  const auto d = distance_to_set(g.graph, len, sources);
  const auto a = path_metric(g.graph, len, sources[0]);
  const auto b = path_metric(g.graph, len, sources[1]);
  for (VertexIndex x = 0; x < g.size(); ++x) CHECK(d[x] == std::min(a[x], b[x]));
}

TEST_CASE("bounded Dijkstra matches the full run inside the radius") {
  const GraphBundle g = random_bundle(23);
  const auto len = sigma1_default(g.graph);
  const auto full = path_metric(g.graph, len, 0);
  std::vector<double> sorted = full;
  std::sort(sorted.begin(), sorted.end());
  const double radius = sorted[sorted.size() / 2];
  const auto part = path_metric_within(g.graph, len, 0, radius);
  for (VertexIndex x = 0; x < g.size(); ++x) {
    if (full[x] <= radius) {
      CHECK(part[x] == full[x]);
    } else {
      CHECK(part[x] == kUnreachable);
    }
  }
}

TEST_CASE("sigma_q scales by the smaller q^{-1/2}") {
  const GraphBundle g = random_bundle(29);
  const auto s = sigma1_default(g.graph);
  std::vector<double> q(g.size());
  for (VertexIndex x = 0; x < g.size(); ++x) q[x] = 1.0 + static_cast<double>(x);
  const auto sq = sigma_q(g.graph, s, q);
  for (EdgeIndex e = 0; e < g.graph.edge_count(); ++e) {
    const auto& edge = g.graph.edge(e);
    const double f = std::min(1.0 / std::sqrt(q[edge.u]), 1.0 / std::sqrt(q[edge.v]));
    CHECK(sq[e] == doctest::Approx(f * s[e]).epsilon(1e-14));
  }
  q[0] = 0.5;
  CHECK_THROWS_AS(sigma_q(g.graph, s, q), InputError);
}

TEST_CASE("Lipschitz constant is the worst edge quotient") {
  BundleBuilder b;
  for (int i = 0; i < 4; ++i) b.add_vertex(VertexId("p" + std::to_string(i)), 1.0);
  b.add_edge(0, 1, 1.0);
  b.add_edge(1, 2, 1.0);
  b.add_edge(2, 3, 1.0);
  const GraphBundle g = std::move(b).build();
  const EdgeLengthAssignment len{{1.0, 0.5, 2.0}};
  const std::vector<double> f{0.0, 1.0, 3.0, 3.5};
  CHECK(lipschitz_constant(g.graph, len, f) == doctest::Approx(4.0));
}
