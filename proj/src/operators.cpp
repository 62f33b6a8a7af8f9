#include "sagraph/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "sagraph/error.hpp"
#include "sagraph/kernels.hpp"

namespace sagraph {

cplx inner(const WeightedGraph& g, const MuVector& f, const MuVector& h) {
  cplx acc{0.0, 0.0};
  for (VertexIndex x = 0; x < f.size(); ++x) acc += g.mu(x) * f[x] * std::conj(h[x]);
  return acc;
}

double norm(const WeightedGraph& g, const MuVector& f) {
  double acc = 0.0;
  for (VertexIndex x = 0; x < f.size(); ++x) acc += g.mu(x) * std::norm(f[x]);
  return std::sqrt(acc);
}

MuVector apply(const GraphBundle& bundle, const MuVector& u) {
  if (u.size() != bundle.size()) throw InputError("dimension mismatch in apply");
  MuVector out = MuVector::zero(u.size());
  kernels::apply(bundle, u.values, out.values);
  return out;
}

OperatorMatrix assemble(const GraphBundle& bundle) {
  const WeightedGraph& g = bundle.graph;
  const std::size_t n = g.vertex_count();
  using Triplet = Eigen::Triplet<cplx>;
  std::vector<Triplet> a_entries;
  std::vector<Triplet> s_entries;
  a_entries.reserve(n + 2 * g.edge_count());
  s_entries.reserve(n + 2 * g.edge_count());

  OperatorMatrix op;
  op.measures_.assign(g.measures().begin(), g.measures().end());
  op.min_mu_ = n == 0 ? 0.0 : *std::min_element(op.measures_.begin(), op.measures_.end());

  for (VertexIndex x = 0; x < n; ++x) {
    const cplx diag{weighted_degree(g, x) + bundle.potential[x], 0.0};
    a_entries.emplace_back(static_cast<int>(x), static_cast<int>(x), diag);
    s_entries.emplace_back(static_cast<int>(x), static_cast<int>(x), diag);
  }
  for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edge(k);
    if (e.u == e.v) continue;
    const cplx z = std::polar(1.0, bundle.theta.canonical(k));
    const int u = static_cast<int>(e.u);
    const int v = static_cast<int>(e.v);
    a_entries.emplace_back(u, v, -e.b * z / g.mu(e.u));
    a_entries.emplace_back(v, u, -e.b * std::conj(z) / g.mu(e.v));
    const cplx s = -e.b * z / std::sqrt(g.mu(e.u) * g.mu(e.v));
    s_entries.emplace_back(u, v, s);
    s_entries.emplace_back(v, u, std::conj(s));
  }
  op.a_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.s_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.a_.setFromTriplets(a_entries.begin(), a_entries.end());
  op.s_.setFromTriplets(s_entries.begin(), s_entries.end());
  return op;
}

namespace {

double max_residual(const OperatorMatrix::Sparse& s, const Eigen::MatrixXcd& vectors,
                    std::span<const double> values) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    const Eigen::VectorXcd w = vectors.col(j);
    const Eigen::VectorXcd r = s * w - values[static_cast<std::size_t>(j)] * w;
    worst = std::max(worst, r.norm() / w.norm());
  }
  return worst;
}

Eigen::MatrixXcd to_operator_basis(const OperatorMatrix& op, Eigen::MatrixXcd w) {
  for (Eigen::Index x = 0; x < w.rows(); ++x) {
    w.row(x) /= std::sqrt(op.measures()[static_cast<std::size_t>(x)]);
  }
  return w;
}

SpectralResult dense_spectrum(const OperatorMatrix& op, const SpectralOptions& options) {
  SpectralResult result;
  const Eigen::MatrixXcd s = op.dense_symmetrized();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense Hermitian eigensolver failed", 0);
  }
  const Eigen::VectorXd& values = solver.eigenvalues();
  result.eigenvalues.assign(values.data(), values.data() + values.size());
  result.spectral_radius =
      values.size() == 0 ? 0.0 : std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  result.residual = max_residual(op.symmetrized(), solver.eigenvectors(), result.eigenvalues);
  if (result.residual > options.tolerance * (result.spectral_radius + 1.0)) {
    throw NumericalError("dense eigensolver residual above tolerance", 0);
  }
  if (options.eigenvectors) result.eigenvectors = to_operator_basis(op, solver.eigenvectors());
  return result;
}

// Lanczos with full reorthogonalization for the lowest eigenvalues of S.
SpectralResult lanczos_spectrum(const OperatorMatrix& op, const SpectralOptions& options) {
  const OperatorMatrix::Sparse& s = op.symmetrized();
  const auto n = static_cast<Eigen::Index>(op.size());
  const auto wanted = static_cast<Eigen::Index>(std::min<std::size_t>(options.extremal_count, op.size()));
  const Eigen::Index cap =
      options.max_iterations > 0
          ? std::min<Eigen::Index>(n, static_cast<Eigen::Index>(options.max_iterations))
          : std::min<Eigen::Index>(n, std::max<Eigen::Index>(300, 30 * wanted));

  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  auto random_vector = [&] {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx{normal(rng), normal(rng)};
    return v;
  };

  Eigen::MatrixXcd basis(n, cap);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXcd v = random_vector();
  v.normalize();

  SpectralResult result;
  result.complete = false;
  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_vectors;
  bool converged = false;
  double running_scale = 1.0;

  for (Eigen::Index j = 0; j < cap; ++j) {
    basis.col(j) = v;
    Eigen::VectorXcd w = s * v;
    const double a = (v.adjoint() * w)(0).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeff = basis.leftCols(j + 1).adjoint() * w;
      w -= basis.leftCols(j + 1) * coeff;
    }
    double b = w.norm();
    running_scale = std::max(running_scale, std::abs(a) + b + 1.0);
    const Eigen::Index m = j + 1;
    const bool check = m == cap || (m >= wanted && m % 10 == 0);
    if (!check) {
      v = w / b;
      beta.push_back(b);
      if (b < 1e-13 * running_scale) {
        w = random_vector();
        for (int pass = 0; pass < 2; ++pass) {
          const Eigen::VectorXcd coeff = basis.leftCols(m).adjoint() * w;
          w -= basis.leftCols(m) * coeff;
        }
        v = w.normalized();
        beta.back() = 0.0;
      }
      continue;
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
    ritz_values = tri.eigenvalues();
    ritz_vectors = tri.eigenvectors();
    const double scale = ritz_values.cwiseAbs().maxCoeff() + 1.0;
    result.iterations = static_cast<int>(m);

    if (m >= wanted) {
      converged = true;
      for (Eigen::Index i = 0; i < wanted; ++i) {
        if (b * std::abs(ritz_vectors(m - 1, i)) > 0.1 * options.tolerance * scale) {
          converged = false;
          break;
        }
      }
    }
    if (converged || m == cap) break;

    if (b < 1e-13 * scale) {
      // Invariant subspace: continue from a fresh direction orthogonal to it.
      w = random_vector();
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd coeff = basis.leftCols(m).adjoint() * w;
        w -= basis.leftCols(m) * coeff;
      }
      v = w.normalized();
      beta.push_back(0.0);
    } else {
      v = w / b;
      beta.push_back(b);
    }
  }

  const Eigen::Index m = ritz_values.size();
  const Eigen::Index count = std::min(wanted, m);
  Eigen::MatrixXcd vectors = basis.leftCols(m) * ritz_vectors.leftCols(count).cast<cplx>();
  result.eigenvalues.assign(ritz_values.data(), ritz_values.data() + count);
  result.spectral_radius = ritz_values.cwiseAbs().maxCoeff();
  result.residual = max_residual(s, vectors, result.eigenvalues);
  if (!converged || result.residual > options.tolerance * (result.spectral_radius + 1.0)) {
    throw NumericalError("Lanczos did not converge after " + std::to_string(result.iterations) +
                             " iterations",
                         result.iterations);
  }
  result.complete = m == n;
  if (options.eigenvectors) result.eigenvectors = to_operator_basis(op, std::move(vectors));
  return result;
}

}  // namespace

SpectralResult spectrum(const OperatorMatrix& op, const SpectralOptions& options) {
  if (op.size() == 0) return {};
  if (op.size() <= options.dense_limit) return dense_spectrum(op, options);
  return lanczos_spectrum(op, options);
}

GroundState ground_state(const GraphBundle& bundle, const SpectralOptions& options) {
  SpectralOptions opts = options;
  opts.eigenvectors = true;
  opts.extremal_count = std::max<std::size_t>(1, opts.extremal_count);
  const SpectralResult r = spectrum(assemble(bundle), opts);
  GroundState gs;
  gs.eigenvalue = r.eigenvalues.front();
  const Eigen::VectorXcd v = r.eigenvectors->col(0);
  gs.vector.values.assign(v.data(), v.data() + v.size());
  return gs;
}

double quadratic_form(const GraphBundle& bundle, const MuVector& u) {
  if (u.size() != bundle.size()) throw InputError("dimension mismatch in quadratic_form");
  std::vector<double> energies(bundle.graph.edge_count());
  kernels::edge_energies(bundle, u.values, {}, energies);
  double acc = 0.0;
  for (double e : energies) acc += e;
  for (VertexIndex x = 0; x < u.size(); ++x) {
    acc += bundle.graph.mu(x) * bundle.potential[x] * std::norm(u[x]);
  }
  return acc;
}

GraphBundle gauge_transform(const GraphBundle& bundle, std::span<const double> tau) {
  if (tau.size() != bundle.size()) throw InputError("gauge must be defined on every vertex");
  GraphBundle out = bundle;
  std::vector<double> theta(bundle.graph.edge_count());
  for (EdgeIndex k = 0; k < theta.size(); ++k) {
    const Edge& e = bundle.graph.edge(k);
    theta[k] = bundle.theta.canonical(k) + tau[e.v] - tau[e.u];
  }
  out.theta = PhaseAssignment(std::move(theta));
  return out;
}

double graph_energy_q(const GraphBundle& bundle, std::span<const double> q, const MuVector& u) {
  const WeightedGraph& g = bundle.graph;
  if (q.size() != g.vertex_count() || u.size() != g.vertex_count()) {
    throw InputError("dimension mismatch in graph_energy_q");
  }
  std::vector<double> weight(g.edge_count());
  for (EdgeIndex k = 0; k < weight.size(); ++k) {
    const Edge& e = g.edge(k);
    weight[k] = std::min(1.0 / q[e.u], 1.0 / q[e.v]);
  }
  std::vector<double> energies(g.edge_count());
  kernels::edge_energies(bundle, u.values, weight, energies);
  double acc = 0.0;
  for (double e : energies) acc += e;
  // each unordered edge appears twice in the ordered-pair sum
  return std::sqrt(2.0 * acc);
}

}  // namespace sagraph
