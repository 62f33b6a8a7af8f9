#pragma once

// Layered infinite graphs given row by row: the triangular family with
// growing weights, the complete-bipartite ladder, and a weighted half-line.
// Each family knows its own infinite neighborhood structure, so row-local
// quantities can be evaluated far beyond any materialized truncation.

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sagraph/graph.hpp"
#include "sagraph/power_law.hpp"

namespace sagraph {

enum class FamilyKind { Triangular, Bipartite, Path };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& name);

/// Which edge lengths a statement refers to: sigma itself or the q-rescaled
/// sigma_q.
enum class LengthKind { Sigma, SigmaQ };

/// Certified comparison of edge lengths against a power law in the row.
/// Every edge between rows j and j+1 has length >= escape_coef (j+1)^{-p};
/// the spine edge (x_{j,1}, x_{j+1,1}) has length <= spine_coef j^{-p}.
struct StepCertificate {
  double exponent = 0.0;
  double escape_coef = 0.0;
  double spine_coef = 0.0;
  /// The spine realizes the distance to infinity along the rows.
  bool spine_geodesic = false;
  std::string statement;
};

struct LocalNeighbor {
  RowIndex at;
  double b = 0.0;
  /// theta for the direction from the queried vertex to `at`.
  double theta = 0.0;
};

/// Lower (and, when known, upper) bound for the effective potential of the
/// family's built-in covering, by row.
struct EffectivePotentialBounds {
  double first_row_lower = 0.0;
  /// Valid for rows >= 2.
  RowFormula lower;
  std::optional<RowFormula> upper;
  std::string statement;
};

struct LayeredFamilySpec {
  FamilyKind kind = FamilyKind::Triangular;

  // Triangular family: b_j = j^alpha, mu = j^{-2 beta}.
  double alpha = 1.0;
  double beta = 0.5;
  /// Flux through each triangle.
  double holonomy = std::numbers::pi;

  // Path family: b(x_n, x_{n+1}) = b_coef n^b_exp, mu(x_n) = mu_coef n^mu_exp.
  double b_coef = 1.0;
  double b_exp = 0.0;
  double mu_coef = 1.0;
  double mu_exp = 0.0;

  RowFormula potential;
  std::optional<RowFormula> q;

  static LayeredFamilySpec triangular(double alpha, double beta);
  static LayeredFamilySpec bipartite();
  static LayeredFamilySpec path(double b_coef, double b_exp, double mu_coef, double mu_exp);

  /// Throws InputError naming the violated parameter constraint.
  void check() const;

  // capability flags
  bool incompleteness_regime() const;  // alpha + 2 beta > 3/2
  bool raabe_regime() const;           // 1/2 < beta < 3/4

  std::int64_t row_size(std::int64_t row) const;
  double measure(std::int64_t row) const;
  double potential_at(std::int64_t row) const { return potential(row); }
  /// q by row; 1 when no q is attached.
  double q_at(std::int64_t row) const;

  /// Neighbors in the infinite graph, sorted by (row, index).
  std::vector<LocalNeighbor> local_neighbors(RowIndex x) const;
  std::size_t degree(RowIndex x) const;
  double weighted_degree(RowIndex x) const;
  /// sigma_1 of the infinite graph on the edge x ~ y.
  double sigma1(RowIndex x, RowIndex y) const;
  double length(RowIndex x, RowIndex y, LengthKind kind) const;

  std::optional<StepCertificate> step_certificate(LengthKind kind) const;
  std::optional<EffectivePotentialBounds> effective_potential_bounds() const;

  /// Descriptor used in reports and graph files.
  std::string describe() const;
};

/// Vertices of the first `rows` rows with all edges among them. Potential
/// follows the family formula, edge lengths are the infinite-graph sigma_1
/// (stored as overrides), and the frontier lists vertices with neighbors
/// beyond the last row.
GraphBundle generate(const LayeredFamilySpec& spec, int rows);

/// Row of a vertex carrying a layer label; throws otherwise.
int row_of(const WeightedGraph& g, VertexIndex x);

/// q evaluated on every vertex of a generated truncation.
std::vector<double> q_values(const LayeredFamilySpec& spec, const WeightedGraph& g);

/// Exact integer ceil(sqrt(n)) and floor(sqrt(n)).
std::int64_t ceil_sqrt(std::int64_t n);
std::int64_t floor_sqrt(std::int64_t n);

// Closed forms of the triangular family.
double closed_form_sigma1_step(const LayeredFamilySpec& spec, std::int64_t j);
double closed_form_spine_degree(std::int64_t j);
double closed_form_spine_weighted_degree(const LayeredFamilySpec& spec, std::int64_t j);
/// (n+1)^{-beta-alpha/2+3/4} / (sqrt(3) (beta + alpha/2 - 3/4)).
double closed_form_D_lower(const LayeredFamilySpec& spec, std::int64_t n);
/// 3 (4 beta + 2 alpha - 3)^2 (n+1)^{2 beta + alpha - 3/2} / 32.
double closed_form_forcing_bound(const LayeredFamilySpec& spec, std::int64_t n);

// Closed forms of the bipartite family.
double closed_form_bipartite_sigma_step(std::int64_t k);
double closed_form_bipartite_sigma_q_step(std::int64_t k);
/// (delta + |lambda|)^{2n-2} / (4^{n-1} (n-1)!), evaluated in log space.
double closed_form_golenia_an2(std::int64_t n, double delta, double lambda);

}  // namespace sagraph
