#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sagraph/graph.hpp"

namespace sagraph {

/// Complex vertex function, measured in l^2_mu.
struct MuVector {
  std::vector<cplx> values;

  static MuVector zero(std::size_t n) { return {std::vector<cplx>(n, cplx{0.0, 0.0})}; }
  std::size_t size() const noexcept { return values.size(); }
  cplx& operator[](VertexIndex x) { return values[x]; }
  cplx operator[](VertexIndex x) const { return values[x]; }
};

/// (f, g)_mu = sum_x mu(x) f(x) conj(g(x)).
cplx inner(const WeightedGraph& g, const MuVector& f, const MuVector& h);
double norm(const WeightedGraph& g, const MuVector& f);

/// H u = Delta_{b,mu;theta} u + W u evaluated pointwise, without assembly.
MuVector apply(const GraphBundle& bundle, const MuVector& u);

/// H as a sparse matrix A (acting on vertex values) together with its
/// mu-symmetrization S = D^{1/2} A D^{-1/2}, which is Hermitian by
/// construction: S(y,x) is built as the exact conjugate of S(x,y).
class OperatorMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

  std::size_t size() const noexcept { return measures_.size(); }
  const Sparse& operator_form() const noexcept { return a_; }
  const Sparse& symmetrized() const noexcept { return s_; }
  std::span<const double> measures() const noexcept { return measures_; }
  /// Smallest vertex measure; the D^{1/2} conjugation is conditioned by it.
  double min_mu() const noexcept { return min_mu_; }

  Eigen::MatrixXcd dense_operator() const { return Eigen::MatrixXcd(a_); }
  Eigen::MatrixXcd dense_symmetrized() const { return Eigen::MatrixXcd(s_); }

 private:
  friend OperatorMatrix assemble(const GraphBundle& bundle);

  Sparse a_;
  Sparse s_;
  std::vector<double> measures_;
  double min_mu_ = 0.0;
};

OperatorMatrix assemble(const GraphBundle& bundle);

struct SpectralOptions {
  /// Full dense spectrum up to this size; larger matrices go to Lanczos.
  std::size_t dense_limit = 4096;
  /// Number of lowest eigenvalues returned on the iterative path.
  std::size_t extremal_count = 6;
  bool eigenvectors = false;
  /// Krylov subspace cap for the iterative path (0 = automatic).
  std::size_t max_iterations = 0;
  double tolerance = 1e-10;
};

struct SpectralResult {
  /// Ascending. Complete spectrum on the dense path, lowest
  /// `extremal_count` on the iterative path.
  std::vector<double> eigenvalues;
  /// Columns are eigenvectors of A, orthonormal in l^2_mu.
  std::optional<Eigen::MatrixXcd> eigenvectors;
  /// max_j ||S w_j - lambda_j w_j|| / ||w_j||.
  double residual = 0.0;
  double spectral_radius = 0.0;
  bool complete = true;
  int iterations = 0;
};

/// Throws NumericalError when a solver misses its tolerance.
SpectralResult spectrum(const OperatorMatrix& op, const SpectralOptions& options = {});

/// Lowest eigenvalue and its l^2_mu-normalized eigenvector.
struct GroundState {
  double eigenvalue = 0.0;
  MuVector vector;
};
GroundState ground_state(const GraphBundle& bundle, const SpectralOptions& options = {});

/// sum_{unordered edges} b |u(x) - e^{i theta(x,y)} u(y)|^2 + sum_x mu W |u|^2.
double quadratic_form(const GraphBundle& bundle, const MuVector& u);

/// theta'(x,y) = wrap(theta(x,y) + tau(y) - tau(x)); b, mu, W unchanged.
GraphBundle gauge_transform(const GraphBundle& bundle, std::span<const double> tau);

/// T_u: square root of the ordered-pair sum
/// sum_{x,y} b(x,y) min(1/q(x), 1/q(y)) |u(x) - e^{i theta(x,y)} u(y)|^2.
double graph_energy_q(const GraphBundle& bundle, std::span<const double> q, const MuVector& u);

}  // namespace sagraph
