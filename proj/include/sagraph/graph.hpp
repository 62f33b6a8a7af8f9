#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sagraph {

using cplx = std::complex<double>;
using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Position of a vertex inside a layered family: x_{row,index}, both 1-based.
struct RowIndex {
  int row = 0;
  int index = 0;

  friend auto operator<=>(const RowIndex&, const RowIndex&) = default;
};

/// Opaque vertex label. Layered-family vertices additionally carry their
/// (row, index) position; the name is then "x<row>,<index>".
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::string name);
  VertexId(int row, int index);

  const std::string& name() const noexcept { return name_; }
  const std::optional<RowIndex>& layer() const noexcept { return layer_; }

  friend bool operator==(const VertexId& a, const VertexId& b) {
    return a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b);

 private:
  std::string name_;
  std::optional<RowIndex> layer_;
};

/// Undirected edge stored once with u < v.
struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;
  double b = 0.0;
};

/// One endpoint's view of an incident edge. `forward` is true when the
/// owning vertex is the edge's canonical `u`, i.e. the stored phase applies
/// as-is; otherwise it is negated.
struct Incidence {
  VertexIndex neighbor = 0;
  EdgeIndex edge = 0;
  bool forward = true;
  double b = 0.0;
};

class GraphBuilder;

/// Finite weighted graph (V, b, mu) with dense vertex indices assigned in
/// insertion order. Immutable once built. May hold invalid data (zero
/// weights, self-loops, non-positive measure); `validate` reports those.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t vertex_count() const noexcept { return mu_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const VertexId& id(VertexIndex x) const { return ids_.at(x); }
  std::optional<VertexIndex> find(const VertexId& id) const;
  std::optional<VertexIndex> find(const std::string& name) const;
  /// Throws InputError("vertex not found: ...") for unknown labels.
  VertexIndex index_of(const VertexId& id) const;
  VertexIndex index_of(const std::string& name) const;

  double mu(VertexIndex x) const { return mu_[x]; }
  std::span<const double> measures() const noexcept { return mu_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  /// Incident non-loop edges of x, ordered by ascending neighbor index.
  std::span<const Incidence> incident(VertexIndex x) const {
    return {adjacency_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }

  std::optional<EdgeIndex> edge_between(VertexIndex x, VertexIndex y) const;

  /// Number of connected components (0 for the empty graph).
  std::size_t component_count() const;
  bool connected() const { return component_count() <= 1; }

 private:
  friend class GraphBuilder;

  std::vector<VertexId> ids_;
  std::vector<double> mu_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> adjacency_;
  std::unordered_map<std::string, VertexIndex> lookup_;
};

/// Accumulates vertices and edges, canonicalizing edge orientation.
class GraphBuilder {
 public:
  struct AddedEdge {
    EdgeIndex index;
    bool flipped;  ///< caller's (u, v) was stored as (v, u)
  };

  /// Throws InputError on duplicate labels.
  VertexIndex add_vertex(VertexId id, double mu);
  AddedEdge add_edge(VertexIndex u, VertexIndex v, double b);

  std::size_t vertex_count() const noexcept { return graph_.mu_.size(); }
  const WeightedGraph& peek() const noexcept { return graph_; }

  WeightedGraph build() &&;

 private:
  WeightedGraph graph_;
};

/// Reduces an angle into (-pi, pi]; -pi maps to pi.
double wrap_angle(double theta);

/// Antisymmetric phase theta on directed edges, stored once per edge for the
/// canonical direction u -> v.
class PhaseAssignment {
 public:
  PhaseAssignment() = default;
  /// Values are wrapped into (-pi, pi] on construction.
  explicit PhaseAssignment(std::vector<double> canonical);
  static PhaseAssignment zero(std::size_t edge_count) {
    return PhaseAssignment(std::vector<double>(edge_count, 0.0));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double canonical(EdgeIndex e) const { return values_[e]; }
  /// theta(x, y) seen from the endpoint owning `inc`.
  double along(const Incidence& inc) const {
    return inc.forward ? values_[inc.edge] : -values_[inc.edge];
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Real vertex function. Used for W and for q-type minorant tables.
struct PotentialAssignment {
  std::vector<double> values;

  static PotentialAssignment zero(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
  double operator[](VertexIndex x) const { return values[x]; }
  std::size_t size() const noexcept { return values.size(); }
};

/// Graph plus magnetic phase and potential. `frontier` lists vertices that
/// were adjacent to removed vertices when the graph is a truncation of an
/// infinite family; it is empty for genuinely finite graphs.
struct GraphBundle {
  WeightedGraph graph;
  PhaseAssignment theta;
  PotentialAssignment potential;
  /// Optional per-edge length overrides read from a graph file.
  std::optional<std::vector<double>> sigma;
  std::vector<VertexIndex> frontier;

  std::size_t size() const noexcept { return graph.vertex_count(); }

  /// e^{i theta(x,y)} for the incidence seen from x.
  cplx phase(const Incidence& inc) const;
};

/// Builds a bundle with theta and potential in lock-step with the graph.
class BundleBuilder {
 public:
  VertexIndex add_vertex(VertexId id, double mu, double potential = 0.0);
  /// theta is given for the direction u -> v and negated if the edge is
  /// stored flipped.
  EdgeIndex add_edge(VertexIndex u, VertexIndex v, double b, double theta = 0.0,
                     std::optional<double> sigma = std::nullopt);
  void set_potential(VertexIndex x, double w) { potential_[x] = w; }
  void mark_frontier(VertexIndex x) { frontier_.push_back(x); }

  const WeightedGraph& peek() const noexcept { return graph_.peek(); }

  GraphBundle build() &&;

 private:
  GraphBuilder graph_;
  std::vector<double> theta_;
  std::vector<double> potential_;
  std::vector<double> sigma_;
  bool any_sigma_ = false;
  std::vector<VertexIndex> frontier_;
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool connected = true;

  bool valid() const noexcept { return violations.empty(); }
  bool has(const std::string& kind) const;
};

/// Structural check of a bundle; never throws.
ValidationReport validate(const GraphBundle& bundle);

std::size_t vertex_degree(const WeightedGraph& g, VertexIndex x);
std::size_t vertex_degree(const WeightedGraph& g, const VertexId& x);
/// Deg(x) = (1/mu(x)) * sum_y b(x, y).
double weighted_degree(const WeightedGraph& g, VertexIndex x);
double weighted_degree(const WeightedGraph& g, const VertexId& x);

struct NeighborEntry {
  VertexId id;
  double b;
};
/// Neighbors of x in ascending vertex-index order.
std::vector<NeighborEntry> neighbors(const WeightedGraph& g, const VertexId& x);

}  // namespace sagraph

template <>
struct std::hash<sagraph::VertexId> {
  std::size_t operator()(const sagraph::VertexId& v) const noexcept {
    return std::hash<std::string>{}(v.name());
  }
};
