#pragma once

// Reference computations that share no code with the library: a cyclic
// complex Jacobi eigensolver, closed-form eigenvalues for tiny matrices, the
// operator matrix written straight from its defining sum, and exhaustive
// simple-path enumeration.

#include <complex>
#include <vector>

#include "sagraph/graph.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

/// H(x,x) = (1/mu(x)) sum_y b(x,y) + W(x),  H(x,y) = -(1/mu(x)) b(x,y) e^{i theta(x,y)}.
Matrix operator_matrix(const sagraph::GraphBundle& bundle);

/// sqrt(mu(x)/mu(y)) H(x,y).
Matrix symmetrized_matrix(const sagraph::GraphBundle& bundle);

/// Ascending eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(Matrix a);

/// Ascending eigenvalues of a Hermitian matrix of size 1, 2 or 3 from the
/// roots of its characteristic polynomial.
std::vector<double> closed_form_eigenvalues(const Matrix& a);

/// Shortest path lengths from `source` by trying every simple path. Only
/// sensible for a handful of vertices.
std::vector<double> exhaustive_distances(const sagraph::WeightedGraph& g, const std::vector<double>& len,
                                         sagraph::VertexIndex source);

/// (u, H u) in l^2_mu computed as sum_x mu(x) conj(u(x)) (H u)(x).
double quadratic_form(const sagraph::GraphBundle& bundle, const std::vector<cplx>& u);

}  // namespace oracle
