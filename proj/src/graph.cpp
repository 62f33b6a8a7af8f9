#include "sagraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "sagraph/error.hpp"

namespace sagraph {

VertexId::VertexId(std::string name) : name_(std::move(name)) {}

VertexId::VertexId(int row, int index)
    : name_("x" + std::to_string(row) + "," + std::to_string(index)),
      layer_(RowIndex{row, index}) {}

std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
  if (a.layer_ && b.layer_) {
    if (auto c = *a.layer_ <=> *b.layer_; c != 0) return c;
  }
  return a.name_ <=> b.name_;
}

std::optional<VertexIndex> WeightedGraph::find(const std::string& name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexIndex> WeightedGraph::find(const VertexId& id) const {
  return find(id.name());
}

VertexIndex WeightedGraph::index_of(const std::string& name) const {
  if (auto x = find(name)) return *x;
  throw InputError("vertex not found: " + name);
}

VertexIndex WeightedGraph::index_of(const VertexId& id) const {
  return index_of(id.name());
}

std::optional<EdgeIndex> WeightedGraph::edge_between(VertexIndex x, VertexIndex y) const {
  auto inc = incident(x);
  auto it = std::lower_bound(inc.begin(), inc.end(), y,
                             [](const Incidence& a, VertexIndex v) { return a.neighbor < v; });
  if (it != inc.end() && it->neighbor == y) return it->edge;
  return std::nullopt;
}

std::size_t WeightedGraph::component_count() const {
  const std::size_t n = vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<VertexIndex> stack;
  std::size_t components = 0;
  for (VertexIndex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexIndex x = stack.back();
      stack.pop_back();
      for (const auto& inc : incident(x)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
  }
  return components;
}

VertexIndex GraphBuilder::add_vertex(VertexId id, double mu) {
  const VertexIndex x = graph_.mu_.size();
  if (!graph_.lookup_.emplace(id.name(), x).second) {
    throw InputError("duplicate vertex id: " + id.name());
  }
  graph_.ids_.push_back(std::move(id));
  graph_.mu_.push_back(mu);
  return x;
}

GraphBuilder::AddedEdge GraphBuilder::add_edge(VertexIndex u, VertexIndex v, double b) {
  const std::size_t n = graph_.mu_.size();
  if (u >= n || v >= n) throw InputError("edge endpoint out of range");
  const bool flipped = v < u;
  if (flipped) std::swap(u, v);
  graph_.edges_.push_back(Edge{u, v, b});
  return {graph_.edges_.size() - 1, flipped};
}

WeightedGraph GraphBuilder::build() && {
  WeightedGraph& g = graph_;
  const std::size_t n = g.mu_.size();
  std::vector<std::size_t> counts(n, 0);
  for (const auto& e : g.edges_) {
    if (e.u == e.v) continue;
    ++counts[e.u];
    ++counts[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) g.offsets_[x + 1] = g.offsets_[x] + counts[x];
  g.adjacency_.assign(g.offsets_[n], Incidence{});
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeIndex k = 0; k < g.edges_.size(); ++k) {
    const auto& e = g.edges_[k];
    if (e.u == e.v) continue;
    g.adjacency_[fill[e.u]++] = Incidence{e.v, k, true, e.b};
    g.adjacency_[fill[e.v]++] = Incidence{e.u, k, false, e.b};
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::stable_sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x]),
                     g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[x + 1]),
                     [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
  return std::move(g);
}

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) return theta;
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

PhaseAssignment::PhaseAssignment(std::vector<double> canonical) : values_(std::move(canonical)) {
  for (double& t : values_) t = wrap_angle(t);
}

cplx GraphBundle::phase(const Incidence& inc) const {
  const double t = theta.canonical(inc.edge);
  const cplx z = std::polar(1.0, t);
  return inc.forward ? z : std::conj(z);
}

VertexIndex BundleBuilder::add_vertex(VertexId id, double mu, double potential) {
  VertexIndex x = graph_.add_vertex(std::move(id), mu);
  potential_.push_back(potential);
  return x;
}

EdgeIndex BundleBuilder::add_edge(VertexIndex u, VertexIndex v, double b, double theta,
                                  std::optional<double> sigma) {
  auto added = graph_.add_edge(u, v, b);
  theta_.push_back(added.flipped ? -theta : theta);
  sigma_.push_back(sigma.value_or(0.0));
  any_sigma_ = any_sigma_ || sigma.has_value();
  return added.index;
}

GraphBundle BundleBuilder::build() && {
  GraphBundle bundle;
  bundle.graph = std::move(graph_).build();
  bundle.theta = PhaseAssignment(std::move(theta_));
  bundle.potential = PotentialAssignment{std::move(potential_)};
  if (any_sigma_) bundle.sigma = std::move(sigma_);
  std::sort(frontier_.begin(), frontier_.end());
  frontier_.erase(std::unique(frontier_.begin(), frontier_.end()), frontier_.end());
  bundle.frontier = std::move(frontier_);
  return bundle;
}

bool ValidationReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const GraphBundle& bundle) {
  ValidationReport report;
  const WeightedGraph& g = bundle.graph;
  auto add = [&](std::string kind, std::string detail) {
    report.violations.push_back({std::move(kind), std::move(detail)});
  };

  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    const double mu = g.mu(x);
    if (!(mu > 0.0) || !std::isfinite(mu)) {
      std::ostringstream os;
      os << g.id(x).name() << " has mu=" << mu;
      add("non-positive measure", os.str());
    }
  }

  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    const std::string label = g.id(e.u).name() + "-" + g.id(e.v).name();
    if (e.u == e.v) add("self-loop", label);
    if (!(e.b > 0.0) || !std::isfinite(e.b)) {
      std::ostringstream os;
      os << label << " has b=" << e.b;
      add("non-positive edge weight", os.str());
    }
    if (!seen.emplace(e.u, e.v).second) add("duplicate edge", label);
  }

  if (bundle.theta.size() != g.edge_count()) {
    add("size mismatch", "phase assignment does not cover every edge");
  } else {
    for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
      const double t = bundle.theta.canonical(k);
      if (!std::isfinite(t) || t <= -std::numbers::pi || t > std::numbers::pi) {
        const Edge& e = g.edge(k);
        add("phase out of range", g.id(e.u).name() + "-" + g.id(e.v).name());
      }
    }
  }

  if (bundle.potential.size() != g.vertex_count()) {
    add("size mismatch", "potential does not cover every vertex");
  } else {
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
      if (!std::isfinite(bundle.potential[x])) add("non-finite potential", g.id(x).name());
    }
  }

  if (bundle.sigma) {
    if (bundle.sigma->size() != g.edge_count()) {
      add("size mismatch", "edge lengths do not cover every edge");
    } else {
      for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
        const double s = (*bundle.sigma)[k];
        if (!(s > 0.0) || !std::isfinite(s)) {
          const Edge& e = g.edge(k);
          add("non-positive edge length", g.id(e.u).name() + "-" + g.id(e.v).name());
        }
      }
    }
  }

  for (VertexIndex f : bundle.frontier) {
    if (f >= g.vertex_count()) add("size mismatch", "frontier vertex out of range");
  }

  const std::size_t components = g.component_count();
  report.connected = components <= 1;
  if (!report.connected) {
    add("disconnected", std::to_string(components) + " components");
  }
  return report;
}

std::size_t vertex_degree(const WeightedGraph& g, VertexIndex x) { return g.incident(x).size(); }

std::size_t vertex_degree(const WeightedGraph& g, const VertexId& x) {
  return vertex_degree(g, g.index_of(x));
}

double weighted_degree(const WeightedGraph& g, VertexIndex x) {
  double sum = 0.0;
  for (const auto& inc : g.incident(x)) sum += inc.b;
  return sum / g.mu(x);
}

double weighted_degree(const WeightedGraph& g, const VertexId& x) {
  return weighted_degree(g, g.index_of(x));
}

std::vector<NeighborEntry> neighbors(const WeightedGraph& g, const VertexId& x) {
  std::vector<NeighborEntry> out;
  for (const auto& inc : g.incident(g.index_of(x))) out.push_back({g.id(inc.neighbor), inc.b});
  return out;
}

}  // namespace sagraph
