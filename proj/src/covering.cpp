#include "sagraph/covering.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>

#include "sagraph/error.hpp"
#include "sagraph/operators.hpp"

namespace sagraph {

ValidationReport validate_covering(const WeightedGraph& g, const GoodCovering& cover) {
  ValidationReport report;
  const std::size_t n = g.vertex_count();
  if (cover.m < 1) report.violations.push_back({"non-positive degree", "m must be positive"});

  std::vector<int> vertex_hits(n, 0);
  std::vector<int> edge_hits(g.edge_count(), 0);
  for (std::size_t l = 0; l < cover.cells.size(); ++l) {
    const auto& cell = cover.cells[l];
    const std::string tag = "cell " + std::to_string(l);
    if (cell.vertices.empty()) {
      report.violations.push_back({"empty cell", tag});
      continue;
    }
    bool in_range = true;
    for (VertexIndex v : cell.vertices) {
      if (v >= n) {
        report.violations.push_back({"cell vertex not in graph", tag});
        in_range = false;
      }
    }
    for (EdgeIndex e : cell.edges) {
      if (e >= g.edge_count()) {
        report.violations.push_back({"cell edge not in graph", tag});
        in_range = false;
      }
    }
    if (!in_range) continue;

    std::vector<VertexIndex> sorted = cell.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.violations.push_back({"duplicate cell vertex", tag});
    }
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (VertexIndex v : sorted) ++vertex_hits[v];

    auto local = [&](VertexIndex v) -> std::ptrdiff_t {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
      return (it != sorted.end() && *it == v) ? it - sorted.begin() : -1;
    };
    std::vector<std::size_t> parent(sorted.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::vector<EdgeIndex> edges = cell.edges;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (EdgeIndex e : edges) {
      ++edge_hits[e];
      const auto a = local(g.edge(e).u);
      const auto b = local(g.edge(e).v);
      if (a < 0 || b < 0) {
        report.violations.push_back({"cell edge leaves cell", tag});
        continue;
      }
      parent[find(static_cast<std::size_t>(a))] = find(static_cast<std::size_t>(b));
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) roots += find(i) == i ? 1 : 0;
    if (roots > 1) report.violations.push_back({"disconnected cell", tag});
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (vertex_hits[v] == 0) report.violations.push_back({"vertex uncovered", g.id(v).name()});
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const std::string name = g.id(edge.u).name() + "-" + g.id(edge.v).name();
    if (edge_hits[e] == 0) report.violations.push_back({"edge uncovered", name});
    if (cover.m >= 1 && edge_hits[e] > cover.m) {
      report.violations.push_back({"edge covered more than m times", name});
    }
  }
  report.connected = g.connected();
  return report;
}

double cell_lowest_eigenvalue(const WeightedGraph& g, const PhaseAssignment& theta,
                              const CoveringCell& cell) {
  std::vector<VertexIndex> vertices = cell.vertices;
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  BundleBuilder builder;
  for (VertexIndex v : vertices) builder.add_vertex(g.id(v), g.mu(v));
  auto local = [&](VertexIndex v) {
    return static_cast<VertexIndex>(std::lower_bound(vertices.begin(), vertices.end(), v) -
                                    vertices.begin());
  };
  std::vector<EdgeIndex> edges = cell.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (EdgeIndex e : edges) {
    const auto& edge = g.edge(e);
    builder.add_edge(local(edge.u), local(edge.v), 1.0, theta.canonical(e));
  }
  const GraphBundle bundle = std::move(builder).build();
  return spectrum(assemble(bundle)).eigenvalues.front();
}

EffectivePotential effective_potential(const WeightedGraph& g, const PhaseAssignment& theta,
                                       const GoodCovering& cover) {
  const auto report = validate_covering(g, cover);
  if (!report.valid()) {
    throw InputError("invalid covering: " + report.violations.front().kind + " (" +
                     report.violations.front().detail + ")");
  }
  const std::size_t cells = cover.cells.size();
  EffectivePotential out;
  out.cell_p.assign(cells, 0.0);
  out.cell_inf_b.assign(cells, 0.0);
  std::vector<std::exception_ptr> errors(cells);

  const auto count = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t l = 0; l < count; ++l) {
    const auto& cell = cover.cells[static_cast<std::size_t>(l)];
    try {
      double inf_b = std::numeric_limits<double>::infinity();
      for (EdgeIndex e : cell.edges) inf_b = std::min(inf_b, g.edge(e).b);
      out.cell_inf_b[static_cast<std::size_t>(l)] = cell.edges.empty() ? 0.0 : inf_b;
      out.cell_p[static_cast<std::size_t>(l)] = cell_lowest_eigenvalue(g, theta, cell);
    } catch (...) {
      errors[static_cast<std::size_t>(l)] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  out.values.assign(g.vertex_count(), 0.0);
  for (std::size_t l = 0; l < cells; ++l) {
    const double contribution = out.cell_p[l] * out.cell_inf_b[l] / cover.m;
    std::vector<VertexIndex> vertices = cover.cells[l].vertices;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (VertexIndex v : vertices) out.values[v] += contribution;
  }
  return out;
}

TriangleCovering triangle_covering(const WeightedGraph& g) {
  const char* const shape_error = "not a triangle-covered family";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!g.id(v).layer()) throw InputError(shape_error);
  }
  std::vector<double> phase(g.edge_count(), 0.0);
  TriangleCovering out;
  out.cover.m = 2;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    RowIndex a = *g.id(edge.u).layer();
    RowIndex b = *g.id(edge.v).layer();
    if (b < a) std::swap(a, b);
    if (a.row + 1 == b.row) {
      if (a.index != 1) throw InputError(shape_error);
      continue;
    }
    if (a.row != b.row || a.index + 1 != b.index || a.row < 2) throw InputError(shape_error);
    phase[e] = std::numbers::pi;
    const auto apex = g.find(VertexId(a.row - 1, 1));
    if (!apex) throw InputError(shape_error);
    const auto lo = g.index_of(VertexId(a.row, a.index));
    const auto hi = g.index_of(VertexId(b.row, b.index));
    const auto e1 = g.edge_between(*apex, lo);
    const auto e2 = g.edge_between(*apex, hi);
    if (!e1 || !e2) throw InputError(shape_error);
    out.cover.cells.push_back(CoveringCell{{*apex, lo, hi}, {*e1, e, *e2}});
  }
  out.theta = PhaseAssignment(std::move(phase));
  return out;
}

}  // namespace sagraph
