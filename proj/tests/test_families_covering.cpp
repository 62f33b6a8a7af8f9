#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sagraph/covering.hpp"
#include "sagraph/error.hpp"
#include "sagraph/families.hpp"
#include "sagraph/metrics.hpp"

using namespace sagraph;

namespace {

// Written out from the construction: ceil(sqrt(j)) vertices in row j.
std::int64_t row_size_by_search(std::int64_t j) {
  std::int64_t k = 0;
  while (k * k < j) ++k;
  return k;
}

}  // namespace

TEST_CASE("integer square roots are exact") {
  for (std::int64_t n = 1; n < 5000; ++n) {
    const auto f = floor_sqrt(n);
    CHECK(f * f <= n);
    CHECK((f + 1) * (f + 1) > n);
    CHECK(ceil_sqrt(n) == row_size_by_search(n));
  }
  CHECK(floor_sqrt(999999999999LL) == 999999);
}

TEST_CASE("triangular rows have ceil(sqrt(j)) vertices and the listed edges") {
  const auto spec = LayeredFamilySpec::triangular(1.0, 0.5);
  const GraphBundle g = generate(spec, 30);
  std::size_t expected_vertices = 0;
  for (int j = 1; j <= 30; ++j) expected_vertices += row_size_by_search(j);
  CHECK(g.size() == expected_vertices);
  // Type (i) edges: sum over j < 30 of ceil(sqrt(j+1)); type (ii): ceil(sqrt(j)) - 1.
  std::size_t expected_edges = 0;
  for (int j = 1; j < 30; ++j) expected_edges += row_size_by_search(j + 1);
  for (int j = 2; j <= 30; ++j) expected_edges += row_size_by_search(j) - 1;
  CHECK(g.graph.edge_count() == expected_edges);
  CHECK(validate(g).valid());
}

TEST_CASE("interior vertices of a truncation see exactly their infinite-graph neighbours") {
  for (const auto& spec : {LayeredFamilySpec::triangular(1.3, 0.4), LayeredFamilySpec::bipartite(),
                           LayeredFamilySpec::path(2.0, 1.0, 1.0, -1.0)}) {
    const int rows = 25;
    const GraphBundle g = generate(spec, rows);
    for (VertexIndex x = 0; x < g.size(); ++x) {
      const RowIndex at = *g.graph.id(x).layer();
      if (at.row >= rows) continue;
      CHECK(vertex_degree(g.graph, x) == spec.degree(at));
      CHECK(weighted_degree(g.graph, x) == doctest::Approx(spec.weighted_degree(at)).epsilon(1e-13));
    }
  }
}

TEST_CASE("frontier is exactly the vertices with neighbours past the last row") {
  const GraphBundle g = generate(LayeredFamilySpec::triangular(1.0, 0.5), 10);
  for (VertexIndex x = 0; x < g.size(); ++x) {
    const bool listed = std::find(g.frontier.begin(), g.frontier.end(), x) != g.frontier.end();
    const RowIndex at = *g.graph.id(x).layer();
    // Only x_{j,1} has edges to the next row, so the frontier is x_{10,1}.
    CHECK(listed == (at.row == 10 && at.index == 1));
  }
}

TEST_CASE("spine sigma_1 steps match the closed form") {
  const auto spec = LayeredFamilySpec::triangular(1.0, 0.5);
  const GraphBundle g = generate(spec, 60);
  const auto s = sigma1_default(g.graph);
  for (int j = 1; j < 59; ++j) {
    const auto e = *g.graph.edge_between(*g.graph.find(VertexId(j, 1)), *g.graph.find(VertexId(j + 1, 1)));
    const double expected =
        std::pow(j, -0.5) * std::pow(j + 1.0, -0.5) / std::sqrt(std::floor(std::sqrt(j + 1.0)) + 3.0);
    CHECK(std::abs(s[e] - expected) <= 1e-12 * expected);
    CHECK(std::abs(closed_form_sigma1_step(spec, j) - expected) <= 1e-14 * expected);
  }
}

TEST_CASE("bipartite family has the stated degrees and steps") {
  const GraphBundle g = generate(LayeredFamilySpec::bipartite(), 40);
  const auto s = sigma1_default(g.graph);
  for (EdgeIndex e = 0; e < g.graph.edge_count(); ++e) {
    const auto& edge = g.graph.edge(e);
    const int k = std::min(g.graph.id(edge.u).layer()->row, g.graph.id(edge.v).layer()->row);
    if (k >= 39) continue;
    CHECK(s[e] == doctest::Approx(std::sqrt(0.5) * std::pow(k + 1.0, -0.25)).epsilon(1e-12));
  }
}

TEST_CASE("parameter checks name the constraint") {
  CHECK_THROWS_WITH_AS(LayeredFamilySpec::triangular(1.0, 0.8).check(), doctest::Contains("beta"), InputError);
  CHECK_THROWS_WITH_AS(LayeredFamilySpec::triangular(-1.0, 0.5).check(), doctest::Contains("alpha"),
                       InputError);
  CHECK_THROWS_AS(family_kind_from_string("ex99"), InputError);
  CHECK(family_kind_from_string("ex51") == FamilyKind::Triangular);
  CHECK(family_kind_from_string("bipartite") == FamilyKind::Bipartite);
}

TEST_CASE("lowest eigenvalue of a flux-pi triangle is 1") {
  BundleBuilder b;
  for (int i = 0; i < 3; ++i) b.add_vertex(VertexId("t" + std::to_string(i)), 1.0);
  b.add_edge(0, 1, 1.0, std::numbers::pi);
  b.add_edge(1, 2, 1.0);
  b.add_edge(0, 2, 1.0);
  const GraphBundle t = std::move(b).build();
  const CoveringCell cell{{0, 1, 2}, {0, 1, 2}};
  CHECK(std::abs(cell_lowest_eigenvalue(t.graph, t.theta, cell) - 1.0) <= 1e-10);
}

TEST_CASE("triangle covering: one cell per horizontal edge, degree 2, W_e bound") {
  const auto spec = LayeredFamilySpec::triangular(1.0, 0.5);
  const GraphBundle g4 = generate(spec, 4);
  const auto tc4 = triangle_covering(g4.graph);
  // Rows 2..4 have two vertices each and so one horizontal edge each.
  CHECK(tc4.cover.cells.size() == 3);
  CHECK(tc4.cover.m == 2);
  CHECK(validate_covering(g4.graph, tc4.cover).valid());

  const int rows = 40;
  const GraphBundle g = generate(spec, rows);
  const auto tc = triangle_covering(g.graph);
  const auto eff = effective_potential(g.graph, g.theta, tc.cover);
  // With the host measure mu <= 1 the flux-pi cells sit at or above the
  // unit-measure value 1.
  for (double p : eff.cell_p) CHECK(p >= 1.0 - 1e-10);
  for (VertexIndex x = 0; x < g.size(); ++x) {
    const int j = g.graph.id(x).layer()->row;
    if (j == 1) {
      CHECK(eff.values[x] >= 0.5 * 1.0 - 1e-9);
    } else if (j < rows) {
      CHECK(eff.values[x] >= 0.5 * std::pow(j - 1.0, 1.0) - 1e-9);
    }
  }
}

TEST_CASE("covering validation catches each defect") {
  const GraphBundle g = generate(LayeredFamilySpec::triangular(1.0, 0.5), 5);
  const auto good = triangle_covering(g.graph).cover;

  GoodCovering too_thin = good;
  too_thin.m = 1;
  CHECK(validate_covering(g.graph, too_thin).has("edge covered more than m times"));

  GoodCovering missing = good;
  missing.cells.pop_back();
  CHECK(validate_covering(g.graph, missing).has("edge uncovered"));

  GoodCovering leaking = good;
  leaking.cells[0].vertices.pop_back();
  CHECK(validate_covering(g.graph, leaking).has("cell edge leaves cell"));

  GoodCovering split = good;
  split.cells[0].edges = {split.cells[0].edges.front()};
  CHECK(validate_covering(g.graph, split).has("disconnected cell"));

  CHECK_THROWS_AS(effective_potential(g.graph, g.theta, split), InputError);
}

TEST_CASE("shapes without triangles are refused") {
  const GraphBundle g = generate(LayeredFamilySpec::bipartite(), 5);
  CHECK_THROWS_WITH_AS(triangle_covering(g.graph), doctest::Contains("not a triangle-covered family"),
                       InputError);
}
